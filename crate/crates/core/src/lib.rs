//! Exact combinatorics of operads with involution and the dihedral bar
//! construction.
//!
//! The crate provides, in machine-checkable form:
//!
//! - partial compositions making the symmetric and hyperoctahedral group
//!   families into operads, with independent box/matrix oracles ([`perm`],
//!   [`hyper`], [`operad`]);
//! - word groups over a commutation graph with canonical normal forms and
//!   their operad calculus ([`dnwords`]);
//! - the simplex category and its cyclic and dihedral extensions, with
//!   unique factored normal forms and edgewise subdivision ([`crossed`]);
//! - the cyclic/dihedral bar construction of a finite pointed monoid, its
//!   subdivision fixed points and diagonal identification, and an integer
//!   homology engine ([`barthh`], [`snf`]);
//! - matrices over a pointed set, the free homotopy-commutative monoid on a
//!   pointed set, and the trace between their bar constructions
//!   ([`mattrace`]);
//! - the free-algebra monad of a discrete operad with its filtration census
//!   ([`freemonad`]).

pub mod barthh;
pub mod crossed;
pub mod dnwords;
pub mod error;
pub mod freemonad;
pub mod hyper;
pub mod mattrace;
pub mod monoid;
pub mod operad;
pub mod perm;
pub mod report;
pub mod snf;
pub mod suites;

pub use error::Error;

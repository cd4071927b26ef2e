//! Signed permutations: the hyperoctahedral groups and their operad
//! structure, in both the semidirect-product and the matrix model.

use std::fmt;

use crate::error::Error;
use crate::perm::{perm_compose_i, Permutation};

/// A vector of signs, written multiplicatively: entries are +1 or -1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector {
    signs: Vec<i8>,
}

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<Self, Error> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::invariant("sign entries must be +1 or -1"));
        }
        Ok(SignVector { signs })
    }

    pub fn all_plus(n: usize) -> Self {
        SignVector { signs: vec![1; n] }
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// 1-indexed entry.
    pub fn get(&self, i: usize) -> i8 {
        self.signs[i - 1]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Entrywise product; both factors must have equal length.
    pub fn pointwise_mul(&self, other: &SignVector) -> SignVector {
        assert_eq!(self.len(), other.len());
        SignVector {
            signs: self
                .signs
                .iter()
                .zip(&other.signs)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    /// Non-equivariant composition on sign vectors: insert `other` at slot i
    /// when the sign there is +1, else the negated reversal of `other`.
    pub fn compose_i(&self, other: &SignVector, i: usize) -> Result<SignVector, Error> {
        if i == 0 || i > self.len() {
            return Err(Error::argument("sign composition index out of range"));
        }
        let mut out = Vec::with_capacity(self.len() + other.len() - 1);
        out.extend_from_slice(&self.signs[..i - 1]);
        if self.signs[i - 1] == 1 {
            out.extend_from_slice(&other.signs);
        } else {
            out.extend(other.signs.iter().rev().map(|s| -s));
        }
        out.extend_from_slice(&self.signs[i..]);
        Ok(SignVector { signs: out })
    }

    pub fn enumerate(n: usize) -> Vec<SignVector> {
        (0..(1usize << n))
            .map(|mask| SignVector {
                signs: (0..n).map(|b| if mask >> b & 1 == 1 { -1 } else { 1 }).collect(),
            })
            .collect()
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.signs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", if *s == 1 { "+" } else { "-" })?;
        }
        write!(f, ")")
    }
}

/// An element of the hyperoctahedral group: a sign vector and a permutation.
/// As a matrix it is D(signs) * P(perm), the generalized permutation matrix
/// with entry `signs[perm(t)]` in row `perm(t)`, column `t`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPerm {
    pub signs: SignVector,
    pub perm: Permutation,
}

impl SignedPerm {
    pub fn new(signs: SignVector, perm: Permutation) -> Result<Self, Error> {
        if signs.len() != perm.degree() {
            return Err(Error::invariant("sign vector and permutation degrees differ"));
        }
        Ok(SignedPerm { signs, perm })
    }

    pub fn identity(n: usize) -> Self {
        SignedPerm {
            signs: SignVector::all_plus(n),
            perm: Permutation::identity(n),
        }
    }

    pub fn degree(&self) -> usize {
        self.perm.degree()
    }

    /// Right action of a plain permutation, matrix-wise A |-> A P(sigma).
    pub fn act(&self, sigma: &Permutation) -> SignedPerm {
        SignedPerm {
            signs: self.signs.clone(),
            perm: self.perm.compose(sigma),
        }
    }

    /// Group product of signed permutations (matrix product).
    pub fn group_mul(&self, other: &SignedPerm) -> SignedPerm {
        let n = self.degree();
        assert_eq!(n, other.degree());
        // D(x)P(r) D(y)P(s) = D(x . r(y)) P(rs) where r(y)_t = y_{r^{-1}(t)}
        let moved: Vec<i8> = (1..=n)
            .map(|t| other.signs.get(self.perm.inverse().apply(t)))
            .collect();
        SignedPerm {
            signs: self.signs.pointwise_mul(&SignVector { signs: moved }),
            perm: self.perm.compose(&other.perm),
        }
    }

    pub fn to_matrix(&self) -> GenPermMatrix {
        let n = self.degree();
        let mut entries = vec![vec![0i8; n]; n];
        for t in 1..=n {
            let r = self.perm.apply(t);
            entries[r - 1][t - 1] = self.signs.get(r);
        }
        GenPermMatrix { entries }
    }

    pub fn enumerate(n: usize) -> Vec<SignedPerm> {
        let mut out = Vec::new();
        for signs in SignVector::enumerate(n) {
            for perm in Permutation::enumerate(n) {
                out.push(SignedPerm {
                    signs: signs.clone(),
                    perm,
                });
            }
        }
        out
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.signs, self.perm)
    }
}

/// Semidirect-product composition on signed permutations:
/// `(x,r) o_i (y,u) = (x o_{r(i)} y, r o_i (tau(x_{r(i)}) u))`
/// where tau(-1) is the order reversal and tau(+1) the identity.
pub fn hyper_compose_i(a: &SignedPerm, b: &SignedPerm, i: usize) -> Result<SignedPerm, Error> {
    let k = a.degree();
    let j = b.degree();
    if i == 0 || i > k {
        return Err(Error::argument("composition index out of range"));
    }
    let pivot = a.perm.apply(i);
    let sign = a.signs.get(pivot);
    let twisted = if sign == 1 {
        b.perm.clone()
    } else {
        Permutation::reversal(j).compose(&b.perm)
    };
    Ok(SignedPerm {
        signs: a.signs.compose_i(&b.signs, pivot)?,
        perm: perm_compose_i(&a.perm, &twisted, i)?,
    })
}

/// A generalized permutation matrix: one entry of +-1 in each row and column
/// (or, for degree 0, the empty matrix).
#[derive(Clone, PartialEq, Eq)]
pub struct GenPermMatrix {
    entries: Vec<Vec<i8>>,
}

impl GenPermMatrix {
    pub fn new(entries: Vec<Vec<i8>>) -> Result<Self, Error> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(Error::invariant("matrix is not square"));
        }
        for r in 0..n {
            let nz: Vec<i8> = entries[r].iter().copied().filter(|&v| v != 0).collect();
            if nz.len() != 1 || (nz[0] != 1 && nz[0] != -1) {
                return Err(Error::invariant("each row needs exactly one +-1 entry"));
            }
        }
        for c in 0..n {
            let nz = (0..n).filter(|&r| entries[r][c] != 0).count();
            if nz != 1 {
                return Err(Error::invariant("each column needs exactly one nonzero entry"));
            }
        }
        Ok(GenPermMatrix { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn to_signed_perm(&self) -> Result<SignedPerm, Error> {
        let n = self.dim();
        let mut images = vec![0usize; n];
        let mut signs = vec![0i8; n];
        for c in 0..n {
            for r in 0..n {
                if self.entries[r][c] != 0 {
                    images[c] = r + 1;
                    signs[r] = self.entries[r][c];
                }
            }
        }
        SignedPerm::new(SignVector::new(signs)?, Permutation::new(images)?)
    }

    /// Matrix T_n with -1 on the antidiagonal.
    pub fn antidiagonal_t(n: usize) -> GenPermMatrix {
        let mut entries = vec![vec![0i8; n]; n];
        for r in 0..n {
            entries[r][n - 1 - r] = -1;
        }
        GenPermMatrix { entries }
    }

    pub fn mat_mul(&self, other: &GenPermMatrix) -> GenPermMatrix {
        let n = self.dim();
        assert_eq!(n, other.dim());
        let mut entries = vec![vec![0i8; n]; n];
        for r in 0..n {
            for c in 0..n {
                let mut acc = 0i32;
                for t in 0..n {
                    acc += self.entries[r][t] as i32 * other.entries[t][c] as i32;
                }
                entries[r][c] = acc as i8;
            }
        }
        GenPermMatrix { entries }
    }
}

impl fmt::Debug for GenPermMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for row in &self.entries {
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

/// Block-substitution composition in the matrix model: the oracle for
/// [`hyper_compose_i`].  The pivot of A sits in column i; B (or T B when the
/// pivot is -1) replaces it as a block.
pub fn hyper_matrix_compose_i(
    a: &GenPermMatrix,
    b: &GenPermMatrix,
    i: usize,
) -> Result<GenPermMatrix, Error> {
    let m = a.dim();
    let n = b.dim();
    if i == 0 || i > m {
        return Err(Error::argument("composition index out of range"));
    }
    let pivot_row = (0..m)
        .find(|&r| a.entries[r][i - 1] != 0)
        .expect("valid matrix has a pivot");
    let sign = a.entries[pivot_row][i - 1];
    let block = if sign == 1 {
        b.clone()
    } else {
        GenPermMatrix::antidiagonal_t(n).mat_mul(b)
    };
    let dim = m + n - 1;
    let mut entries = vec![vec![0i8; dim]; dim];
    let map_row = |r: usize| if r < pivot_row { r } else { r + n - 1 };
    let map_col = |c: usize| if c < i - 1 { c } else { c + n - 1 };
    for r in 0..m {
        if r == pivot_row {
            continue;
        }
        for c in 0..m {
            if c == i - 1 {
                continue;
            }
            entries[map_row(r)][map_col(c)] = a.entries[r][c];
        }
    }
    for r in 0..n {
        for c in 0..n {
            entries[pivot_row + r][i - 1 + c] = block.entries[r][c];
        }
    }
    GenPermMatrix::new(entries)
}

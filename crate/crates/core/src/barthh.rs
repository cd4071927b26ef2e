//! The cyclic (dihedral, when an involution is present) bar construction of
//! a finite pointed monoid: smash-power levels with multiplication faces,
//! unit degeneracies, rotation and reversal; edgewise subdivision fixed
//! points with the diagonal identification; and integer homology of
//! presented objects through the normalized chain complex.

use crate::crossed::{Flavor, PresentedObject};
use crate::error::Error;
use crate::monoid::PointedMonoid;
use crate::report::Report;
use crate::snf::{smith_normal_form, IntMatrix};
use num_bigint::BigInt;

/// An element of a smash power of a pointed monoid: the basepoint, or a
/// tuple of non-basepoint elements.  Tuples containing the basepoint
/// collapse at construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SmashTuple {
    Star,
    Tuple(Vec<usize>),
}

impl SmashTuple {
    pub fn new(entries: Vec<usize>) -> SmashTuple {
        if entries.iter().any(|&x| x == 0) {
            SmashTuple::Star
        } else {
            SmashTuple::Tuple(entries)
        }
    }

    pub fn arity(&self) -> Option<usize> {
        match self {
            SmashTuple::Star => None,
            SmashTuple::Tuple(v) => Some(v.len()),
        }
    }
}

/// Operator kinds of a dihedral object.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpKind {
    Face(usize),
    Degeneracy(usize),
    Cyclic,
    Involutive,
}

/// Apply a bar operator to a tuple of length q+1.
///
/// Faces multiply adjacent slots (the last face rotates the final entry to
/// the front and multiplies from the left), degeneracies insert the unit,
/// the cyclic operator rotates last-to-first, and the involutive operator
/// applies the involution everywhere, fixes slot 0 and reverses the rest.
pub fn thh_operator(
    kind: OpKind,
    x: &SmashTuple,
    q: usize,
    monoid: &PointedMonoid,
) -> Result<SmashTuple, Error> {
    let entries = match x {
        SmashTuple::Star => {
            return Ok(SmashTuple::Star);
        }
        SmashTuple::Tuple(v) => {
            if v.len() != q + 1 {
                return Err(Error::argument("tuple arity does not match the degree"));
            }
            v
        }
    };
    match kind {
        OpKind::Face(i) => {
            if i > q || q == 0 {
                return Err(Error::argument("face index out of range"));
            }
            let mut out = Vec::with_capacity(q);
            if i < q {
                out.extend_from_slice(&entries[..i]);
                out.push(monoid.mul(entries[i], entries[i + 1]));
                out.extend_from_slice(&entries[i + 2..]);
            } else {
                // rotate the last entry to the front, multiply on the left
                out.push(monoid.mul(entries[q], entries[0]));
                out.extend_from_slice(&entries[1..q]);
            }
            Ok(SmashTuple::new(out))
        }
        OpKind::Degeneracy(i) => {
            if i > q {
                return Err(Error::argument("degeneracy index out of range"));
            }
            let mut out = Vec::with_capacity(q + 2);
            out.extend_from_slice(&entries[..=i]);
            out.push(1);
            out.extend_from_slice(&entries[i + 1..]);
            Ok(SmashTuple::new(out))
        }
        OpKind::Cyclic => {
            let mut out = Vec::with_capacity(q + 1);
            out.push(entries[q]);
            out.extend_from_slice(&entries[..q]);
            Ok(SmashTuple::new(out))
        }
        OpKind::Involutive => {
            let mut out = Vec::with_capacity(q + 1);
            out.push(monoid.involute(entries[0])?);
            for t in (1..=q).rev() {
                out.push(monoid.involute(entries[t])?);
            }
            Ok(SmashTuple::new(out))
        }
    }
}

/// Encoding of smash tuples as dense indices: 0 is the basepoint, tuples
/// are numbered with the first slot most significant.
pub fn encode_tuple(x: &SmashTuple, q: usize, m: usize) -> usize {
    match x {
        SmashTuple::Star => 0,
        SmashTuple::Tuple(v) => {
            debug_assert_eq!(v.len(), q + 1);
            let base = m - 1;
            let mut code = 0usize;
            for &e in v {
                code = code * base + (e - 1);
            }
            code + 1
        }
    }
}

pub fn decode_tuple(code: usize, q: usize, m: usize) -> SmashTuple {
    if code == 0 {
        return SmashTuple::Star;
    }
    let base = m - 1;
    let mut v = vec![0usize; q + 1];
    let mut c = code - 1;
    for t in (0..=q).rev() {
        v[t] = c % base + 1;
        c /= base;
    }
    SmashTuple::Tuple(v)
}

/// The bar construction of a pointed monoid up to degree q_max, packaged as
/// a presented cyclic (dihedral) object.  Levels grow as (|M|-1)^(q+1);
/// requests whose tables would not fit in memory are refused.
pub fn build_bar(monoid: &PointedMonoid, q_max: usize) -> Result<PresentedObject, Error> {
    let m = monoid.size();
    if (m - 1)
        .checked_pow((q_max + 1) as u32)
        .map(|cells| cells > 2_000_000)
        .unwrap_or(true)
    {
        return Err(Error::precondition(
            "bar level would exceed the cell budget; lower the degree or subdivision",
        ));
    }
    let flavor = if monoid.has_involution() {
        Flavor::Dihedral { r: 1 }
    } else {
        Flavor::Cyclic { r: 1 }
    };
    let sizes: Vec<usize> = (0..=q_max)
        .map(|q| (m - 1).pow((q + 1) as u32) + 1)
        .collect();
    PresentedObject::build(
        flavor,
        sizes,
        |q, i, x| {
            let t = decode_tuple(x, q, m);
            let y = thh_operator(OpKind::Face(i), &t, q, monoid).expect("valid face");
            encode_tuple(&y, q - 1, m)
        },
        |q, i, x| {
            let t = decode_tuple(x, q, m);
            let y = thh_operator(OpKind::Degeneracy(i), &t, q, monoid).expect("valid degeneracy");
            encode_tuple(&y, q + 1, m)
        },
        |q, x| {
            let t = decode_tuple(x, q, m);
            let y = thh_operator(OpKind::Cyclic, &t, q, monoid).expect("valid rotation");
            encode_tuple(&y, q, m)
        },
        |q, x| {
            let t = decode_tuple(x, q, m);
            let y = thh_operator(OpKind::Involutive, &t, q, monoid).expect("valid reversal");
            encode_tuple(&y, q, m)
        },
    )
}

/// The fixed points of the order-r cyclic action on the r-fold subdivision
/// of the bar at degree q: tuples of length r(q+1) invariant under rotation
/// by q+1, together with the restricted operators as a presented object of
/// the base multiplicity.
pub struct SubdivisionFixedPoints {
    /// the r-fold repeated tuples, listed by their short form
    pub level_elements: Vec<Vec<SmashTuple>>,
    pub object: PresentedObject,
}

/// The diagonal: a tuple of length q+1 repeated r times.
pub fn diagonal_map(x: &SmashTuple, r: usize) -> SmashTuple {
    match x {
        SmashTuple::Star => SmashTuple::Star,
        SmashTuple::Tuple(v) => {
            let mut out = Vec::with_capacity(v.len() * r);
            for _ in 0..r {
                out.extend_from_slice(v);
            }
            SmashTuple::Tuple(out)
        }
    }
}

/// Inverse of the diagonal on the fixed subset: the first block.
pub fn diagonal_inverse(x: &SmashTuple, q: usize, r: usize) -> Result<SmashTuple, Error> {
    match x {
        SmashTuple::Star => Ok(SmashTuple::Star),
        SmashTuple::Tuple(v) => {
            if v.len() != r * (q + 1) {
                return Err(Error::argument("tuple is not in the subdivided level"));
            }
            let block = &v[..q + 1];
            for b in 1..r {
                if &v[b * (q + 1)..(b + 1) * (q + 1)] != block {
                    return Err(Error::argument("tuple is not diagonal"));
                }
            }
            Ok(SmashTuple::Tuple(block.to_vec()))
        }
    }
}

/// Check whether a subdivided-level tuple is fixed by the rotation by q+1.
pub fn is_rotation_fixed(x: &SmashTuple, q: usize, r: usize) -> bool {
    diagonal_inverse(x, q, r).is_ok()
}

/// Enumerate the fixed points of the cyclic action on level q of the r-fold
/// subdivision: exactly the r-fold repetitions.
pub fn fixed_points_of_subdivision(
    monoid: &PointedMonoid,
    q: usize,
    r: usize,
) -> Result<Vec<SmashTuple>, Error> {
    if r == 0 {
        return Err(Error::argument("subdivision parameter must be positive"));
    }
    let m = monoid.size();
    let mut out = vec![SmashTuple::Star];
    let count = (m - 1).pow((q + 1) as u32);
    for code in 1..=count {
        let short = decode_tuple(code, q, m);
        out.push(diagonal_map(&short, r));
    }
    Ok(out)
}

/// The fixed points of the subdivision rotation packaged as a presented
/// object of the base multiplicity: level q holds the r-fold repeated
/// tuples, encoded by their short forms, with operators obtained by
/// restricting the subdivided object.  Errors if an operator ever leaves
/// the fixed subset.
pub fn fixed_points_object(
    monoid: &PointedMonoid,
    q_max: usize,
    r: usize,
) -> Result<PresentedObject, Error> {
    let m = monoid.size();
    let bar = build_bar(monoid, r * (q_max + 2) - 1)?;
    let sd = bar.subdivide(r)?;
    let diag_code = |q: usize, code: usize| {
        let short = decode_tuple(code, q, m);
        encode_tuple(&diagonal_map(&short, r), r * (q + 1) - 1, m)
    };
    let restrict = |q_to: usize, big: usize| -> usize {
        let t = decode_tuple(big, r * (q_to + 1) - 1, m);
        let short = diagonal_inverse(&t, q_to, r)
            .expect("operator left the fixed subset");
        encode_tuple(&short, q_to, m)
    };
    let sizes: Vec<usize> = (0..=q_max)
        .map(|q| (m - 1).pow((q + 1) as u32) + 1)
        .collect();
    let flavor = if monoid.has_involution() {
        Flavor::Dihedral { r: 1 }
    } else {
        Flavor::Cyclic { r: 1 }
    };
    PresentedObject::build(
        flavor,
        sizes,
        |q, i, x| restrict(q - 1, sd.face(q, i, diag_code(q, x))),
        |q, i, x| restrict(q + 1, sd.degeneracy(q, i, diag_code(q, x))),
        |q, x| restrict(q, sd.cyclic(q, diag_code(q, x))),
        |q, x| restrict(q, sd.involutive(q, diag_code(q, x))),
    )
}

/// Report on the cyclotomic combinatorics at one (q, r): the fixed subset
/// equals the diagonal image, operators restrict to it, and the diagonal
/// conjugates every bar operator to the corresponding subdivided operator.
pub fn check_cyclotomic_structure(
    monoid: &PointedMonoid,
    q_max: usize,
    r: usize,
) -> Result<Report, Error> {
    let mut report = Report::new("cyclotomic")
        .with_param("monoid", monoid.name())
        .with_param("q_max", q_max)
        .with_param("r", r);
    let m = monoid.size();
    let bar = build_bar(monoid, r * (q_max + 2) - 1)?;
    let sd = bar.subdivide(r)?;
    let mut checked = 0usize;

    for q in 0..=q_max {
        let level = r * (q + 1) - 1;
        // fixed subset == diagonal image
        let fixed_by_scan: Vec<usize> = (0..bar.size(level))
            .filter(|&code| {
                let t = decode_tuple(code, level, m);
                is_rotation_fixed(&t, q, r)
            })
            .collect();
        let diag_image: Vec<usize> = (0..(m - 1).pow((q + 1) as u32) + 1)
            .map(|code| {
                let short = decode_tuple(code, q, m);
                encode_tuple(&diagonal_map(&short, r), level, m)
            })
            .collect();
        let mut sorted = diag_image.clone();
        sorted.sort_unstable();
        checked += 1;
        if fixed_by_scan != sorted {
            report.record(
                "fixed-set=diagonal-image",
                false,
                Some(format!("q={q} r={r}")),
            );
        }
        // the diagonal is injective
        checked += 1;
        let distinct: std::collections::HashSet<usize> = diag_image.iter().copied().collect();
        if distinct.len() != diag_image.len() {
            report.record("diagonal-injective", false, Some(format!("q={q} r={r}")));
        }

        // operator compatibility: diagonal o (bar op) = (sd op) o diagonal,
        // which also shows the operators preserve the fixed subset
        let mut ops: Vec<OpKind> = Vec::new();
        if q >= 1 {
            for i in 0..=q {
                ops.push(OpKind::Face(i));
            }
        }
        if q + 1 <= sd.max_degree() {
            for i in 0..=q {
                ops.push(OpKind::Degeneracy(i));
            }
        }
        ops.push(OpKind::Cyclic);
        if monoid.has_involution() {
            ops.push(OpKind::Involutive);
        }
        for kind in ops {
            for code in 0..bar.size(q).min((m - 1).pow((q + 1) as u32) + 1) {
                checked += 1;
                let short = decode_tuple(code, q, m);
                let bar_then_diag = {
                    let y = thh_operator(kind, &short, q, monoid)?;
                    diagonal_map(&y, r)
                };
                let diag_code = encode_tuple(&diagonal_map(&short, r), level, m);
                let sd_applied = match kind {
                    OpKind::Face(i) => sd.face(q, i, diag_code),
                    OpKind::Degeneracy(i) => sd.degeneracy(q, i, diag_code),
                    OpKind::Cyclic => sd.cyclic(q, diag_code),
                    OpKind::Involutive => sd.involutive(q, diag_code),
                };
                let target_level = match kind {
                    OpKind::Face(_) => r * q - 1,
                    OpKind::Degeneracy(_) => r * (q + 2) - 1,
                    _ => level,
                };
                let expect = encode_tuple(&bar_then_diag, target_level, m);
                if sd_applied != expect {
                    report.record(
                        "diagonal-commutes",
                        false,
                        Some(format!("q={q} r={r} kind={kind:?} x={short:?}")),
                    );
                }
            }
        }

        // the cyclic action on the subdivided level is rotation by q+1:
        // its fixed points under t^(q+1) are precisely the diagonal image
        checked += 1;
        let mut failures = 0usize;
        for code in 0..sd.size(q) {
            let mut y = code;
            for _ in 0..q + 1 {
                y = sd.cyclic(q, y);
            }
            let t = decode_tuple(code, level, m);
            let fixed = y == code;
            if fixed != is_rotation_fixed(&t, q, r) {
                failures += 1;
            }
        }
        if failures > 0 {
            report.record(
                "generator-fixes-diagonals",
                false,
                Some(format!("q={q} r={r} failures={failures}")),
            );
        }
    }
    report.record_bulk("cyclotomic-structure", checked);
    Ok(report)
}

/// Two-stage against one-stage subdivision: restricting the rs-fold
/// diagonal through the s-fold then r-fold identifications gives the same
/// answer as the single identification.
pub fn check_cyclotomic_pair(
    monoid: &PointedMonoid,
    q_max: usize,
    r: usize,
    s: usize,
) -> Result<Report, Error> {
    let mut report = Report::new("cyclotomic-pair")
        .with_param("monoid", monoid.name())
        .with_param("q_max", q_max)
        .with_param("r", r)
        .with_param("s", s);
    let m = monoid.size();
    let mut checked = 0usize;
    for q in 0..=q_max {
        for code in 0..(m - 1).pow((q + 1) as u32) + 1 {
            checked += 1;
            let short = decode_tuple(code, q, m);
            let big = diagonal_map(&short, r * s);
            // one stage
            let one = diagonal_inverse(&big, q, r * s)?;
            // two stages: first undo the s-fold repetition of blocks of
            // length r(q+1), then the r-fold repetition
            let mid = diagonal_inverse(&big, r * (q + 1) - 1, s)?;
            let two = diagonal_inverse(&mid, q, r)?;
            if one != two || one != short {
                report.record(
                    "pair-coherence",
                    false,
                    Some(format!("q={q} r={r} s={s} x={short:?}")),
                );
            }
        }
    }
    report.record_bulk("pair-coherence", checked);
    Ok(report)
}

/// Boundary matrices of the normalized chain complex of a presented object:
/// basis the nondegenerate non-basepoint cells, boundary the alternating
/// face sum with degenerate images dropped.
pub fn normalized_chain_complex(
    x: &PresentedObject,
    n_max: usize,
) -> Result<Vec<IntMatrix>, Error> {
    if n_max > x.max_degree() {
        return Err(Error::precondition("object not presented that far"));
    }
    let bases: Vec<Vec<usize>> = (0..=n_max).map(|n| x.nondegenerate(n)).collect();
    let index: Vec<std::collections::HashMap<usize, usize>> = bases
        .iter()
        .map(|b| {
            b.iter()
                .enumerate()
                .map(|(i, &cell)| (cell, i))
                .collect()
        })
        .collect();
    let mut boundaries = Vec::new();
    for n in 1..=n_max {
        let degenerate = x.degenerate_set(n - 1);
        let mut matrix = IntMatrix::zero(bases[n - 1].len(), bases[n].len());
        for (col, &cell) in bases[n].iter().enumerate() {
            for i in 0..=n {
                let image = x.face(n, i, cell);
                if image == 0 || degenerate[image] {
                    continue;
                }
                let row = index[n - 1][&image];
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let v = matrix.get(row, col) + BigInt::from(sign);
                matrix.set(row, col, v);
            }
        }
        boundaries.push(matrix);
    }
    Ok(boundaries)
}

/// Homology of one degree: free rank and torsion coefficients.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

/// Reduced integer homology of the presented object in degrees 0..=n_max;
/// requires data up to degree n_max + 1.
pub fn homology(x: &PresentedObject, n_max: usize) -> Result<Vec<HomologyGroup>, Error> {
    let report = x.check_identities(n_max + 1);
    if !report.ok() {
        return Err(Error::precondition("object fails its identity check"));
    }
    let boundaries = normalized_chain_complex(x, n_max + 1)?;
    let dims: Vec<usize> = (0..=n_max + 1).map(|n| x.nondegenerate(n).len()).collect();
    // boundary composite must vanish
    for n in 1..boundaries.len() {
        let prod = boundaries[n - 1].mul(&boundaries[n]);
        if !prod.is_zero() {
            return Err(Error::invariant("boundary squared is nonzero"));
        }
    }
    let snfs: Vec<_> = boundaries.iter().map(smith_normal_form).collect();
    let mut out = Vec::new();
    for n in 0..=n_max {
        let rank_dn = if n == 0 { 0 } else { snfs[n - 1].rank() };
        let rank_dn1 = snfs[n].rank();
        let rank = dims[n] - rank_dn - rank_dn1;
        let torsion: Vec<u64> = snfs[n]
            .torsion()
            .iter()
            .map(|b| u64::try_from(b).expect("torsion fits in u64"))
            .collect();
        out.push(HomologyGroup { rank, torsion });
    }
    Ok(out)
}

//! Matrices over a pointed monoid with at most one entry per row and
//! column, the wedge model of elementary matrices, cycled lexicographic
//! orderings, the free homotopy-commutative monoid on a pointed set with
//! its dihedral operators, and the trace connecting the two bar
//! constructions, with its additivity and homotopy-inverse identities.

use std::collections::HashMap;
use std::fmt;

use crate::barthh::{thh_operator, OpKind, SmashTuple};
use crate::error::Error;
use crate::monoid::PointedMonoid;
use crate::perm::Permutation;
use crate::report::Report;

/// A square matrix over the non-basepoint part of a pointed monoid with at
/// most one entry per row and per column.  Rows and columns are 1-indexed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatrixElem {
    pub n: usize,
    entries: Vec<(usize, usize, usize)>,
}

impl fmt::Debug for MatrixElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{}{:?}", self.n, self.entries)
    }
}

impl MatrixElem {
    pub fn new(n: usize, mut entries: Vec<(usize, usize, usize)>) -> Result<Self, Error> {
        entries.retain(|&(_, _, x)| x != 0);
        entries.sort_unstable();
        let mut rows = vec![false; n + 1];
        let mut cols = vec![false; n + 1];
        for &(r, c, _) in &entries {
            if r == 0 || r > n || c == 0 || c > n {
                return Err(Error::argument("matrix index out of range"));
            }
            if rows[r] || cols[c] {
                return Err(Error::invariant(
                    "at most one entry per row and per column",
                ));
            }
            rows[r] = true;
            cols[c] = true;
        }
        Ok(MatrixElem { n, entries })
    }

    pub fn zero(n: usize) -> Self {
        MatrixElem {
            n,
            entries: Vec::new(),
        }
    }

    /// Diagonal matrix with x in every slot.
    pub fn unit(x: usize, n: usize) -> Self {
        MatrixElem::new(n, (1..=n).map(|i| (i, i, x)).collect()).expect("diagonal is valid")
    }

    pub fn entries(&self) -> &[(usize, usize, usize)] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> usize {
        self.entries
            .iter()
            .find(|&&(er, ec, _)| er == r && ec == c)
            .map(|&(_, _, x)| x)
            .unwrap_or(0)
    }

    pub fn transpose(&self) -> MatrixElem {
        MatrixElem::new(
            self.n,
            self.entries.iter().map(|&(r, c, x)| (c, r, x)).collect(),
        )
        .expect("transpose keeps the invariant")
    }

    pub fn direct_sum(&self, other: &MatrixElem) -> MatrixElem {
        let mut entries = self.entries.clone();
        entries.extend(
            other
                .entries
                .iter()
                .map(|&(r, c, x)| (r + self.n, c + self.n, x)),
        );
        MatrixElem::new(self.n + other.n, entries).expect("blocks do not collide")
    }

    /// Matrix product with entries multiplied in the monoid; products equal
    /// to the basepoint leave the slot empty.
    pub fn mul(&self, other: &MatrixElem, monoid: &PointedMonoid) -> Result<MatrixElem, Error> {
        if self.n != other.n {
            return Err(Error::argument("matrix dimension mismatch"));
        }
        let mut entries = Vec::new();
        for &(r, k, x) in &self.entries {
            for &(k2, c, y) in &other.entries {
                if k == k2 {
                    let v = monoid.mul(x, y);
                    if v != 0 {
                        entries.push((r, c, v));
                    }
                }
            }
        }
        MatrixElem::new(self.n, entries)
    }

    /// All matrices of the given size over a monoid.
    pub fn enumerate(n: usize, monoid: &PointedMonoid) -> Vec<MatrixElem> {
        let mut out = Vec::new();
        // choose k rows, k columns, a bijection and values
        let positions: Vec<(usize, usize)> = (1..=n)
            .flat_map(|r| (1..=n).map(move |c| (r, c)))
            .collect();
        let mut stack: Vec<(Vec<(usize, usize, usize)>, usize)> = vec![(Vec::new(), 0)];
        while let Some((entries, next)) = stack.pop() {
            if MatrixElem::new(n, entries.clone()).is_ok() {
                out.push(MatrixElem::new(n, entries.clone()).unwrap());
            } else {
                continue;
            }
            for idx in next..positions.len() {
                let (r, c) = positions[idx];
                if entries.iter().any(|&(er, ec, _)| er == r || ec == c) {
                    continue;
                }
                for x in 1..monoid.size() {
                    let mut e2 = entries.clone();
                    e2.push((r, c, x));
                    stack.push((e2, idx + 1));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Number of matrices with exactly k entries: C(n,k)^2 k! (|X|-1)^k.
pub fn mat_census(n: usize, k: usize, x_count: usize) -> Result<u64, Error> {
    if k > n {
        return Err(Error::argument("more entries than rows"));
    }
    if x_count < 1 {
        return Err(Error::argument("pointed set needs a basepoint"));
    }
    let binom = |n: u64, k: u64| -> u64 {
        let mut r = 1u64;
        for i in 0..k {
            r = r * (n - i) / (i + 1);
        }
        r
    };
    let fact = |k: u64| (1..=k).product::<u64>().max(1);
    let b = binom(n as u64, k as u64);
    Ok(b * b * fact(k as u64) * ((x_count - 1) as u64).pow(k as u32))
}

/// An elementary matrix: basepoint or (row, value, column).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WedgeElem {
    Star,
    Entry(usize, usize, usize),
}

impl WedgeElem {
    pub fn new(a: usize, x: usize, b: usize, n: usize) -> Result<Self, Error> {
        if a == 0 || a > n || b == 0 || b > n {
            return Err(Error::argument("wedge index out of range"));
        }
        Ok(if x == 0 {
            WedgeElem::Star
        } else {
            WedgeElem::Entry(a, x, b)
        })
    }
}

pub fn wn_mul(a: &WedgeElem, b: &WedgeElem, monoid: &PointedMonoid) -> WedgeElem {
    match (a, b) {
        (WedgeElem::Entry(ar, ax, ac), WedgeElem::Entry(br, bx, bc)) if ac == br => {
            let v = monoid.mul(*ax, *bx);
            if v == 0 {
                WedgeElem::Star
            } else {
                WedgeElem::Entry(*ar, v, *bc)
            }
        }
        _ => WedgeElem::Star,
    }
}

pub fn wn_to_mat(w: &WedgeElem, n: usize) -> MatrixElem {
    match w {
        WedgeElem::Star => MatrixElem::zero(n),
        WedgeElem::Entry(a, x, b) => {
            MatrixElem::new(n, vec![(*a, *b, *x)]).expect("single entry is valid")
        }
    }
}

/// The trace of a tuple of elementary matrices: the value tuple when the
/// index chain closes cyclically, else the basepoint.
pub fn wn_trace(ws: &[WedgeElem]) -> SmashTuple {
    let mut values = Vec::with_capacity(ws.len());
    for t in 0..ws.len() {
        let WedgeElem::Entry(_, x, b) = ws[t] else {
            return SmashTuple::Star;
        };
        let next = &ws[(t + 1) % ws.len()];
        let WedgeElem::Entry(a2, _, _) = next else {
            return SmashTuple::Star;
        };
        if b != *a2 {
            return SmashTuple::Star;
        }
        values.push(x);
    }
    SmashTuple::new(values)
}

/// The cycled lexicographic ordering of index tuples: tuples are compared
/// coordinatewise starting at position s and wrapping around.
pub struct LexOrdering {
    pub n: usize,
    pub q: usize,
    pub s: usize,
    order: Vec<Vec<usize>>,
    position: HashMap<Vec<usize>, usize>,
}

impl LexOrdering {
    pub fn new(n: usize, q: usize, s: usize) -> Result<Self, Error> {
        if s > q {
            return Err(Error::argument("shift exceeds the degree"));
        }
        let mut order = all_tuples(n, q + 1);
        order.sort_by(|a, b| {
            for off in 0..=q {
                let i = (s + off) % (q + 1);
                match a[i].cmp(&b[i]) {
                    std::cmp::Ordering::Equal => continue,
                    other => return other,
                }
            }
            std::cmp::Ordering::Equal
        });
        let position = order
            .iter()
            .enumerate()
            .map(|(k, t)| (t.clone(), k + 1))
            .collect();
        Ok(LexOrdering {
            n,
            q,
            s,
            order,
            position,
        })
    }

    pub fn arity(&self) -> usize {
        self.order.len()
    }

    /// The k-th tuple, k in 1..=n^(q+1).
    pub fn tuple(&self, k: usize) -> &[usize] {
        &self.order[k - 1]
    }

    pub fn position(&self, tuple: &[usize]) -> usize {
        self.position[tuple]
    }
}

fn all_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * n);
        for t in &out {
            for v in 1..=n {
                let mut t2 = t.clone();
                t2.push(v);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// The permutation lambda_s^{-1} lambda_0 of positions.
pub fn lambda_perm(lex0: &LexOrdering, lex_s: &LexOrdering) -> Permutation {
    let m = lex0.arity();
    Permutation::new((1..=m).map(|k| lex_s.position(lex0.tuple(k))).collect())
        .expect("orderings are bijections")
}

/// The permutation lambda_s^{-1} o rho o lambda_0, where rho reverses index
/// tuples.
pub fn lambda_perm_reversed(lex0: &LexOrdering, lex_s: &LexOrdering) -> Permutation {
    let m = lex0.arity();
    Permutation::new(
        (1..=m)
            .map(|k| {
                let mut t = lex0.tuple(k).to_vec();
                t.reverse();
                lex_s.position(&t)
            })
            .collect(),
    )
    .expect("orderings are bijections")
}

/// The restriction of a permutation along a strictly increasing injection:
/// the unique permutation making the square with the monotone image
/// enumeration commute.
pub fn restriction(alpha: &[usize], sigma: &Permutation) -> Result<Permutation, Error> {
    let n = sigma.degree();
    if alpha.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::argument("restriction needs a strictly increasing map"));
    }
    if alpha.iter().any(|&v| v == 0 || v > n) {
        return Err(Error::argument("restriction map out of range"));
    }
    let mut image: Vec<usize> = alpha.iter().map(|&v| sigma.apply(v)).collect();
    let mut sorted = image.clone();
    sorted.sort_unstable();
    let rank: HashMap<usize, usize> = sorted
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i + 1))
        .collect();
    for v in image.iter_mut() {
        *v = rank[v];
    }
    Permutation::new(image)
}

/// Entirety: positions outside the image must hold the basepoint.
pub fn is_entire(alpha: &[usize], coords: &[SmashTuple]) -> bool {
    let im: std::collections::HashSet<usize> = alpha.iter().copied().collect();
    coords
        .iter()
        .enumerate()
        .all(|(idx, c)| im.contains(&(idx + 1)) || *c == SmashTuple::Star)
}

/// Speciality of a monotone injection into positions: every coordinate
/// projection of the selected index tuples is injective.
pub fn is_special(beta: &[usize], lex0: &LexOrdering) -> bool {
    if beta.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    for i in 0..=lex0.q {
        let mut seen = std::collections::HashSet::new();
        for &pos in beta {
            if !seen.insert(lex0.tuple(pos)[i]) {
                return false;
            }
        }
    }
    true
}

/// A canonical element of the free homotopy-commutative monoid on smash
/// tuples: permutations (sigma_0 = id) and non-basepoint coordinates, with
/// the arity minimal.
#[derive(Clone, PartialEq, Eq)]
pub struct BEElement {
    pub q: usize,
    pub perms: Vec<Permutation>,
    pub coords: Vec<SmashTuple>,
}

impl fmt::Debug for BEElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}; {:?}]", self.perms, self.coords)
    }
}

impl BEElement {
    /// The zero element of degree q.
    pub fn zero(q: usize) -> Self {
        BEElement {
            q,
            perms: vec![Permutation::identity(0); q + 1],
            coords: Vec::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

/// Canonicalize a raw pair: strip basepoint coordinates along the unique
/// monotone entire injection, then act so the first permutation becomes the
/// identity.
pub fn be_canonicalize(
    q: usize,
    perms: &[Permutation],
    coords: &[SmashTuple],
) -> Result<BEElement, Error> {
    if perms.len() != q + 1 {
        return Err(Error::argument("one permutation per simplicial level required"));
    }
    let m = coords.len();
    if perms.iter().any(|p| p.degree() != m) {
        return Err(Error::argument("permutation degree must match the arity"));
    }
    let alpha: Vec<usize> = (1..=m)
        .filter(|&idx| coords[idx - 1] != SmashTuple::Star)
        .collect();
    let restricted: Vec<Permutation> = perms
        .iter()
        .map(|p| restriction(&alpha, p))
        .collect::<Result<_, _>>()?;
    let kept: Vec<SmashTuple> = alpha.iter().map(|&idx| coords[idx - 1].clone()).collect();
    // right action by the inverse of the first permutation
    let inv0 = restricted[0].inverse();
    let perms: Vec<Permutation> = restricted.iter().map(|p| p.compose(&inv0)).collect();
    let coords: Vec<SmashTuple> = (1..=kept.len())
        .map(|u| kept[inv0.apply(u) - 1].clone())
        .collect();
    Ok(BEElement { q, perms, coords })
}

/// Addition: block sum of permutations, concatenated coordinates.
pub fn be_add(u: &BEElement, v: &BEElement) -> Result<BEElement, Error> {
    if u.q != v.q {
        return Err(Error::argument("degree mismatch in addition"));
    }
    let m1 = u.arity();
    let m2 = v.arity();
    let perms: Vec<Permutation> = u
        .perms
        .iter()
        .zip(&v.perms)
        .map(|(a, b)| {
            let mut images = Vec::with_capacity(m1 + m2);
            images.extend(a.images().iter().copied());
            images.extend(b.images().iter().map(|&x| x + m1));
            Permutation::new(images).expect("block sum is a permutation")
        })
        .collect();
    let mut coords = u.coords.clone();
    coords.extend(v.coords.iter().cloned());
    be_canonicalize(u.q, &perms, &coords)
}

/// The dihedral operators on degree-q elements over smash tuples of length
/// q+1: simplicial data on the permutation coordinates, the bar operator on
/// every stored tuple.
pub fn be_bar_operator(
    kind: OpKind,
    u: &BEElement,
    monoid: &PointedMonoid,
) -> Result<BEElement, Error> {
    let q = u.q;
    let new_perms: Vec<Permutation> = match kind {
        OpKind::Face(i) => {
            if i > q || q == 0 {
                return Err(Error::argument("face index out of range"));
            }
            u.perms
                .iter()
                .enumerate()
                .filter(|&(t, _)| t != i)
                .map(|(_, p)| p.clone())
                .collect()
        }
        OpKind::Degeneracy(i) => {
            if i > q {
                return Err(Error::argument("degeneracy index out of range"));
            }
            let mut out = Vec::with_capacity(q + 2);
            for (t, p) in u.perms.iter().enumerate() {
                out.push(p.clone());
                if t == i {
                    out.push(p.clone());
                }
            }
            out
        }
        OpKind::Cyclic => {
            let mut out = Vec::with_capacity(q + 1);
            out.push(u.perms[q].clone());
            out.extend(u.perms[..q].iter().cloned());
            out
        }
        OpKind::Involutive => u.perms.iter().rev().cloned().collect(),
    };
    let new_coords: Vec<SmashTuple> = u
        .coords
        .iter()
        .map(|c| thh_operator(kind, c, q, monoid))
        .collect::<Result<_, _>>()?;
    let new_q = match kind {
        OpKind::Face(_) => q - 1,
        OpKind::Degeneracy(_) => q + 1,
        _ => q,
    };
    be_canonicalize(new_q, &new_perms, &new_coords)
}

/// The trace of a tuple of q+1 matrices: one coordinate per index tuple in
/// plain lexicographic position, with the cycled orderings as permutation
/// data, canonicalized.
pub fn trace_q(ms: &[MatrixElem], monoid: &PointedMonoid) -> Result<BEElement, Error> {
    let q = ms
        .len()
        .checked_sub(1)
        .ok_or_else(|| Error::argument("trace needs at least one matrix"))?;
    let n = ms[0].n;
    if ms.iter().any(|m| m.n != n) {
        return Err(Error::argument("matrix dimension mismatch"));
    }
    if ms
        .iter()
        .any(|m| m.entries.iter().any(|&(_, _, x)| x >= monoid.size()))
    {
        return Err(Error::argument("matrix entry outside the coefficient monoid"));
    }
    let lex0 = LexOrdering::new(n, q, 0)?;
    let perms: Vec<Permutation> = (0..=q)
        .map(|s| {
            let lex_s = LexOrdering::new(n, q, s).expect("shift in range");
            lambda_perm(&lex0, &lex_s)
        })
        .collect();
    let coords: Vec<SmashTuple> = (1..=lex0.arity())
        .map(|k| {
            let idx = lex0.tuple(k);
            let mut values = Vec::with_capacity(q + 1);
            values.push(ms[0].get(idx[q], idx[0]));
            for t in 1..=q {
                values.push(ms[t].get(idx[t - 1], idx[t]));
            }
            SmashTuple::new(values)
        })
        .collect();
    be_canonicalize(q, &perms, &coords)
}

/// A smash tuple of elementary matrices: basepoint or one triple per slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WnTuple {
    Star,
    Tuple(Vec<(usize, usize, usize)>),
}

impl WnTuple {
    pub fn new(ws: Vec<WedgeElem>) -> WnTuple {
        let mut out = Vec::with_capacity(ws.len());
        for w in ws {
            match w {
                WedgeElem::Star => return WnTuple::Star,
                WedgeElem::Entry(a, x, b) => out.push((a, x, b)),
            }
        }
        WnTuple::Tuple(out)
    }

    fn wedges(&self) -> Option<Vec<WedgeElem>> {
        match self {
            WnTuple::Star => None,
            WnTuple::Tuple(v) => Some(v.iter().map(|&(a, x, b)| WedgeElem::Entry(a, x, b)).collect()),
        }
    }
}

/// Face maps on tuples of elementary matrices, multiplying adjacent slots
/// (the last face with the rotation).
pub fn wn_face(i: usize, t: &WnTuple, q: usize, monoid: &PointedMonoid) -> Result<WnTuple, Error> {
    let Some(ws) = t.wedges() else {
        return Ok(WnTuple::Star);
    };
    if ws.len() != q + 1 || i > q || q == 0 {
        return Err(Error::argument("face index out of range"));
    }
    let mut out = Vec::with_capacity(q);
    if i < q {
        out.extend_from_slice(&ws[..i]);
        out.push(wn_mul(&ws[i], &ws[i + 1], monoid));
        out.extend_from_slice(&ws[i + 2..]);
    } else {
        out.push(wn_mul(&ws[q], &ws[0], monoid));
        out.extend_from_slice(&ws[1..q]);
    }
    Ok(WnTuple::new(out))
}

/// The chain inclusion of the bar of the monoid into the bar of elementary
/// matrices: every slot goes to the (1,1) entry.
pub fn wn_incl(t: &SmashTuple) -> WnTuple {
    match t {
        SmashTuple::Star => WnTuple::Star,
        SmashTuple::Tuple(v) => WnTuple::Tuple(v.iter().map(|&x| (1, x, 1)).collect()),
    }
}

/// The trace on tuples of elementary matrices.
pub fn wn_tuple_trace(t: &WnTuple) -> SmashTuple {
    match t.wedges() {
        None => SmashTuple::Star,
        Some(ws) => wn_trace(&ws),
    }
}

/// The homotopy operators between the identity and incl o trace: close the
/// chain through the first i slots, route the rest through the unit.
pub fn wn_homotopy(i: usize, t: &WnTuple, q: usize) -> Result<WnTuple, Error> {
    let Some(ws) = t.wedges() else {
        return Ok(WnTuple::Star);
    };
    if ws.len() != q + 1 || i > q {
        return Err(Error::argument("homotopy index out of range"));
    }
    let triple = |w: &WedgeElem| match w {
        WedgeElem::Entry(a, x, b) => (*a, *x, *b),
        WedgeElem::Star => unreachable!(),
    };
    // chain condition through the first i slots
    for t0 in 0..i {
        let (_, _, b) = triple(&ws[t0]);
        let (a, _, _) = triple(&ws[t0 + 1]);
        if b != a {
            return Ok(WnTuple::Star);
        }
    }
    let mut out = Vec::with_capacity(q + 2);
    for (t0, w) in ws.iter().enumerate() {
        let (a, x, b) = triple(w);
        if t0 == 0 {
            out.push((a, x, 1));
        } else if t0 <= i {
            out.push((1, x, 1));
        } else {
            out.push((a, x, b));
        }
        if t0 == i {
            // the fresh unit slot carrying the pending column index
            out.push((1, 1, b));
        }
    }
    Ok(WnTuple::Tuple(out))
}

fn all_matrices(n: usize, monoid: &PointedMonoid) -> Vec<MatrixElem> {
    MatrixElem::enumerate(n, monoid)
}

fn matrix_tuples(n: usize, len: usize, monoid: &PointedMonoid) -> Vec<Vec<MatrixElem>> {
    let ms = all_matrices(n, monoid);
    let mut out: Vec<Vec<MatrixElem>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * ms.len());
        for t in &out {
            for m in &ms {
                let mut t2 = t.clone();
                t2.push(m.clone());
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// Apply a bar operator to a tuple of matrices (faces multiply, the last
/// one after rotation; degeneracies insert the unit matrix; the rotation
/// and reversal act slotwise, the reversal transposing every matrix).
pub fn matrix_bar_operator(
    kind: OpKind,
    ms: &[MatrixElem],
    monoid: &PointedMonoid,
) -> Result<Vec<MatrixElem>, Error> {
    let q = ms.len() - 1;
    let n = ms[0].n;
    match kind {
        OpKind::Face(i) => {
            if i > q || q == 0 {
                return Err(Error::argument("face index out of range"));
            }
            let mut out = Vec::with_capacity(q);
            if i < q {
                out.extend_from_slice(&ms[..i]);
                out.push(ms[i].mul(&ms[i + 1], monoid)?);
                out.extend_from_slice(&ms[i + 2..]);
            } else {
                out.push(ms[q].mul(&ms[0], monoid)?);
                out.extend_from_slice(&ms[1..q]);
            }
            Ok(out)
        }
        OpKind::Degeneracy(i) => {
            if i > q {
                return Err(Error::argument("degeneracy index out of range"));
            }
            let mut out = Vec::with_capacity(q + 2);
            out.extend_from_slice(&ms[..=i]);
            out.push(MatrixElem::unit(1, n));
            out.extend_from_slice(&ms[i + 1..]);
            Ok(out)
        }
        OpKind::Cyclic => {
            let mut out = Vec::with_capacity(q + 1);
            out.push(ms[q].clone());
            out.extend_from_slice(&ms[..q]);
            Ok(out)
        }
        OpKind::Involutive => {
            let mut out = Vec::with_capacity(q + 1);
            out.push(ms[0].transpose());
            for t in (1..=q).rev() {
                out.push(ms[t].transpose());
            }
            Ok(out)
        }
    }
}

/// Exhaustive verification that the trace commutes with the four operator
/// kinds, that addition matches the direct sum, and that the wedge-model
/// homotopy identities hold.
pub fn verify_trace_suite(n: usize, q_max: usize, monoid: &PointedMonoid) -> Report {
    verify_trace_suite_with(n, q_max, monoid, false)
}

/// As [`verify_trace_suite`], optionally corrupting the shifted ordering to
/// demonstrate that the equivariance checks can fail.
pub fn verify_trace_suite_with(
    n: usize,
    q_max: usize,
    monoid: &PointedMonoid,
    corrupt_lambda: bool,
) -> Report {
    let mut report = Report::new("matrix-trace")
        .with_param("n", n)
        .with_param("q_max", q_max)
        .with_param("monoid", monoid.name());

    let trace = |ms: &[MatrixElem]| -> BEElement {
        let mut out = trace_q(ms, monoid).expect("trace evaluates");
        if corrupt_lambda && out.q >= 1 && out.arity() >= 2 {
            // swap the level-1 permutation with a damaged copy
            let m = out.arity();
            let twist = Permutation::reversal(m);
            out.perms[1] = out.perms[1].compose(&twist);
        }
        out
    };

    // equivariance of the trace with each operator kind
    let mut checked = 0usize;
    for q in 0..=q_max {
        for ms in matrix_tuples(n, q + 1, monoid) {
            let traced = trace(&ms);
            let mut kinds: Vec<OpKind> = Vec::new();
            if q >= 1 {
                for i in 0..=q {
                    kinds.push(OpKind::Face(i));
                }
            }
            for i in 0..=q {
                kinds.push(OpKind::Degeneracy(i));
            }
            kinds.push(OpKind::Cyclic);
            if monoid.has_involution() {
                kinds.push(OpKind::Involutive);
            }
            for kind in kinds {
                checked += 1;
                let lhs = trace(&matrix_bar_operator(kind, &ms, monoid).expect("operator"));
                let rhs = be_bar_operator(kind, &traced, monoid).expect("operator");
                if lhs != rhs {
                    report.record(
                        match kind {
                            OpKind::Face(_) => "trace/face",
                            OpKind::Degeneracy(_) => "trace/degeneracy",
                            OpKind::Cyclic => "trace/cyclic",
                            OpKind::Involutive => "trace/involutive",
                        },
                        false,
                        Some(format!("q={q} kind={kind:?} ms={ms:?}")),
                    );
                }
            }
        }
    }
    report.record_bulk("trace-equivariance", checked);

    // additivity under direct sum, blocks of size 1
    let mut checked = 0usize;
    for q in 0..=q_max.min(2) {
        for left in matrix_tuples(1, q + 1, monoid) {
            for right in matrix_tuples(1, q + 1, monoid) {
                checked += 1;
                let summed: Vec<MatrixElem> = left
                    .iter()
                    .zip(&right)
                    .map(|(a, b)| a.direct_sum(b))
                    .collect();
                let lhs = trace(&summed);
                let rhs = be_add(&trace(&left), &trace(&right)).expect("addition");
                if lhs != rhs {
                    report.record(
                        "trace/additivity",
                        false,
                        Some(format!("q={q} left={left:?} right={right:?}")),
                    );
                }
            }
        }
    }
    report.record_bulk("trace-additivity", checked);

    // wedge-model identities: trace o incl = id, homotopy faces
    let mut checked = 0usize;
    for q in 0..=q_max {
        // trace o incl = id on monoid tuples
        for code in 0..(monoid.size() - 1).pow((q + 1) as u32) + 1 {
            checked += 1;
            let t = crate::barthh::decode_tuple(code, q, monoid.size());
            let back = wn_tuple_trace(&wn_incl(&t));
            if back != t {
                report.record("wn/trace-incl", false, Some(format!("q={q} t={t:?}")));
            }
        }
        // homotopy identities on all wedge tuples
        let wedges: Vec<WedgeElem> = {
            let mut v = vec![WedgeElem::Star];
            for a in 1..=n {
                for b in 1..=n {
                    for x in 1..monoid.size() {
                        v.push(WedgeElem::Entry(a, x, b));
                    }
                }
            }
            v
        };
        let mut tuples: Vec<Vec<WedgeElem>> = vec![Vec::new()];
        for _ in 0..=q {
            let mut next = Vec::new();
            for t in &tuples {
                for w in &wedges {
                    let mut t2 = t.clone();
                    t2.push(*w);
                    next.push(t2);
                }
            }
            tuples = next;
        }
        for raw in tuples {
            let t = WnTuple::new(raw);
            // d_0 h_0 = id
            checked += 1;
            let h0 = wn_homotopy(0, &t, q).expect("homotopy");
            if wn_face(0, &h0, q + 1, monoid).expect("face") != t {
                report.record("wn/d0-h0", false, Some(format!("q={q} t={t:?}")));
            }
            // d_{q+1} h_q = incl o trace
            checked += 1;
            let hq = wn_homotopy(q, &t, q).expect("homotopy");
            let lhs = wn_face(q + 1, &hq, q + 1, monoid).expect("face");
            let rhs = wn_incl(&wn_tuple_trace(&t));
            if lhs != rhs {
                report.record("wn/dq1-hq", false, Some(format!("q={q} t={t:?}")));
            }
            // interchange identities
            for j in 0..=q {
                let hj = wn_homotopy(j, &t, q).expect("homotopy");
                for i in 0..=q + 1 {
                    if q == 0 {
                        continue;
                    }
                    if i < j {
                        checked += 1;
                        let lhs = wn_face(i, &hj, q + 1, monoid).expect("face");
                        let rhs = wn_homotopy(
                            j - 1,
                            &wn_face(i, &t, q, monoid).expect("face"),
                            q - 1,
                        )
                        .expect("homotopy");
                        if lhs != rhs {
                            report.record(
                                "wn/di-hj-low",
                                false,
                                Some(format!("q={q} i={i} j={j} t={t:?}")),
                            );
                        }
                    } else if i == j && i >= 1 {
                        checked += 1;
                        let lhs = wn_face(i, &hj, q + 1, monoid).expect("face");
                        let hprev = wn_homotopy(j - 1, &t, q).expect("homotopy");
                        let rhs = wn_face(i, &hprev, q + 1, monoid).expect("face");
                        if lhs != rhs {
                            report.record(
                                "wn/di-hi",
                                false,
                                Some(format!("q={q} i={i} t={t:?}")),
                            );
                        }
                    } else if i > j + 1 && i <= q {
                        checked += 1;
                        let lhs = wn_face(i, &hj, q + 1, monoid).expect("face");
                        let rhs = wn_homotopy(
                            j,
                            &wn_face(i - 1, &t, q, monoid).expect("face"),
                            q - 1,
                        )
                        .expect("homotopy");
                        if lhs != rhs {
                            report.record(
                                "wn/di-hj-high",
                                false,
                                Some(format!("q={q} i={i} j={j} t={t:?}")),
                            );
                        }
                    }
                }
            }
        }
    }
    report.record_bulk("wn-homotopy", checked);
    report
}

//! Permutations of {1..k} and the partial compositions making the symmetric
//! groups into an operad.
//!
//! Permutations are 1-indexed at the interface: `images[t-1]` is the image of
//! `t`.  Degree 0 (the empty permutation) is allowed; composing with it
//! deletes a slot.

use std::fmt;

use crate::error::Error;

/// A permutation of {1, ..., k}, stored by its image sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, Error> {
        let k = images.len();
        let mut seen = vec![false; k + 1];
        for &v in &images {
            if v == 0 || v > k || seen[v] {
                return Err(Error::invariant("images are not a bijection of 1..k"));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(k: usize) -> Self {
        Permutation {
            images: (1..=k).collect(),
        }
    }

    /// Order reversing permutation t -> k+1-t.
    pub fn reversal(k: usize) -> Self {
        Permutation {
            images: (1..=k).rev().collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Image of t, 1-indexed.
    pub fn apply(&self, t: usize) -> usize {
        self.images[t - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// Group product: `(self * other)(t) = self(other(t))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&t| self.images[t - 1]).collect(),
        }
    }

    /// All permutations of degree k in lexicographic order of image sequences.
    pub fn enumerate(k: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        let mut used = vec![false; k + 1];
        fn go(k: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            if cur.len() == k {
                out.push(Permutation { images: cur.clone() });
                return;
            }
            for v in 1..=k {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    go(k, cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        go(k, &mut cur, &mut used, &mut out);
        out
    }

    /// Permute a tuple on the right: slot t of the result holds the entry
    /// from slot `self^{-1}(t)`, so the entry in slot s moves to slot
    /// `self(s)`.
    pub fn permute_tuple<T: Clone>(&self, xs: &[T]) -> Vec<T> {
        assert_eq!(self.degree(), xs.len(), "arity mismatch");
        let mut out: Vec<Option<T>> = vec![None; xs.len()];
        for (s, x) in xs.iter().enumerate() {
            out[self.images[s] - 1] = Some(x.clone());
        }
        out.into_iter().map(|x| x.unwrap()).collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Partial composition of permutations by the piecewise formula.
///
/// `rho` has degree k, `ups` degree j, and 1 <= i <= k.  The result has
/// degree k+j-1; j = 0 deletes the slot.
pub fn perm_compose_i(rho: &Permutation, ups: &Permutation, i: usize) -> Result<Permutation, Error> {
    let k = rho.degree();
    let j = ups.degree();
    if i == 0 || i > k {
        return Err(Error::argument("composition index out of range"));
    }
    let ri = rho.apply(i);
    let mut images = Vec::with_capacity(k + j - 1);
    for t in 1..=(k + j).saturating_sub(1) {
        let v = if t < i {
            let r = rho.apply(t);
            if r < ri {
                r
            } else {
                r + j - 1
            }
        } else if t < j + i {
            ups.apply(t - i + 1) + ri - 1
        } else {
            let r = rho.apply(t - j + 1);
            if r < ri {
                r
            } else {
                r + j - 1
            }
        };
        images.push(v);
    }
    Permutation::new(images)
}

/// Box-model evaluation of the same composition: put boxes around 1..k+j-1,
/// permute the i'th box internally by `ups`, permute the boxes by `rho`,
/// flatten and read off where each value landed.  Independent oracle for
/// [`perm_compose_i`].
pub fn box_compose_i(rho: &Permutation, ups: &Permutation, i: usize) -> Result<Permutation, Error> {
    let k = rho.degree();
    let j = ups.degree();
    if i == 0 || i > k {
        return Err(Error::argument("composition index out of range"));
    }
    // boxes: 1..i-1 singletons, box i = [i..i+j-1], then singletons
    let mut boxes: Vec<Vec<usize>> = Vec::with_capacity(k);
    for t in 1..i {
        boxes.push(vec![t]);
    }
    let inner: Vec<usize> = (i..i + j).collect();
    // element at position s of the box moves to position ups(s)
    let mut permuted_inner = vec![0; j];
    for (s, &v) in inner.iter().enumerate() {
        permuted_inner[ups.apply(s + 1) - 1] = v;
    }
    boxes.push(permuted_inner);
    for t in (i + j)..=(k + j - 1) {
        boxes.push(vec![t]);
    }
    // box at position t moves to position rho(t)
    let mut placed: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (t, b) in boxes.into_iter().enumerate() {
        placed[rho.apply(t + 1) - 1] = b;
    }
    let flat: Vec<usize> = placed.into_iter().flatten().collect();
    let mut images = vec![0; flat.len()];
    for (pos, &v) in flat.iter().enumerate() {
        images[v - 1] = pos + 1;
    }
    Permutation::new(images)
}

/// The action of a permutation on a tuple of monoid elements:
/// `(rho; g_1..g_j) -> g_{rho^{-1}(1)} ... g_{rho^{-1}(j)}`.
pub fn theta_action(
    rho: &Permutation,
    gs: &[usize],
    monoid: &crate::monoid::PointedMonoid,
) -> Result<usize, Error> {
    if rho.degree() != gs.len() {
        return Err(Error::argument("arity mismatch in theta action"));
    }
    let inv = rho.inverse();
    let factors: Vec<usize> = (1..=gs.len()).map(|t| gs[inv.apply(t) - 1]).collect();
    Ok(monoid.product(&factors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::PointedMonoid;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn worked_composition_examples() {
        let rho = p(&[2, 4, 1, 3]);
        let ups = p(&[3, 2, 1]);
        assert_eq!(perm_compose_i(&rho, &ups, 1).unwrap(), p(&[4, 3, 2, 6, 1, 5]));
        // the third-slot composition; frozen from the box-model oracle
        let oracle = box_compose_i(&rho, &ups, 3).unwrap();
        assert_eq!(oracle, p(&[4, 6, 3, 2, 1, 5]));
        assert_eq!(perm_compose_i(&rho, &ups, 3).unwrap(), oracle);
    }

    #[test]
    fn unity_with_identity_of_degree_one() {
        let rho = p(&[2, 4, 1, 3]);
        let one = Permutation::identity(1);
        for i in 1..=4 {
            assert_eq!(perm_compose_i(&rho, &one, i).unwrap(), rho);
        }
        assert_eq!(perm_compose_i(&one, &rho, 1).unwrap(), rho);
    }

    #[test]
    fn matches_box_model_up_to_degree_four() {
        for k in 1..=4 {
            for j in 0..=4 {
                for rho in Permutation::enumerate(k) {
                    for ups in Permutation::enumerate(j) {
                        for i in 1..=k {
                            assert_eq!(
                                perm_compose_i(&rho, &ups, i).unwrap(),
                                box_compose_i(&rho, &ups, i).unwrap(),
                                "rho={rho:?} ups={ups:?} i={i}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn slot_deletion() {
        let rho = p(&[2, 4, 1, 3]);
        let empty = Permutation::identity(0);
        // deleting slot 2 removes row 4 and column 2
        assert_eq!(perm_compose_i(&rho, &empty, 2).unwrap(), p(&[2, 1, 3]));
    }

    #[test]
    fn index_out_of_range_is_an_error() {
        let rho = p(&[1, 2]);
        assert!(perm_compose_i(&rho, &rho, 0).is_err());
        assert!(perm_compose_i(&rho, &rho, 3).is_err());
    }

    #[test]
    fn theta_examples() {
        let m = PointedMonoid::right_zero_band();
        let (a, b) = (2usize, 3usize);
        assert_eq!(theta_action(&Permutation::identity(2), &[a, b], &m).unwrap(), m.mul(a, b));
        assert_eq!(theta_action(&p(&[2, 1]), &[a, b], &m).unwrap(), m.mul(b, a));
    }

    #[test]
    fn theta_with_inverse_indexing() {
        // rho = [2,4,1,3] has inverse [3,1,4,2], so the product is g3 g1 g4 g2
        let m = PointedMonoid::cyclic_group(5);
        let rho = p(&[2, 4, 1, 3]);
        let gs = [2usize, 3, 4, 5];
        let got = theta_action(&rho, &gs, &m).unwrap();
        let expect = m.product(&[gs[2], gs[0], gs[3], gs[1]]);
        assert_eq!(got, expect);
    }

    #[test]
    fn five_formulas_exhaustive() {
        // group-product interactions of partial composition, degrees <= 4
        for k in 1..=4usize {
            for j in 1..=4usize {
                let perms_k = Permutation::enumerate(k);
                let perms_j = Permutation::enumerate(j);
                for rho in &perms_k {
                    for rho2 in &perms_k {
                        for ups in &perms_j {
                            for ups2 in &perms_j {
                                for i in 1..=k {
                                    check_five(rho, rho2, ups, ups2, i, k, j);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    fn check_five(
        rho: &Permutation,
        rho2: &Permutation,
        ups: &Permutation,
        ups2: &Permutation,
        i: usize,
        k: usize,
        j: usize,
    ) {
        let idk = Permutation::identity(k);
        let idj = Permutation::identity(j);
        let c = |a: &Permutation, b: &Permutation, s: usize| perm_compose_i(a, b, s).unwrap();
        // i) rho o_i ups = (rho o_i id)(id o_i ups)
        assert_eq!(c(rho, ups, i), c(rho, &idj, i).compose(&c(&idk, ups, i)));
        // ii) rho o_i ups = (id o_{rho(i)} ups)(rho o_i id)
        assert_eq!(c(rho, ups, i), c(&idk, ups, rho.apply(i)).compose(&c(rho, &idj, i)));
        // iii) id o_i (u u') = (id o_i u)(id o_i u')
        assert_eq!(
            c(&idk, &ups.compose(ups2), i),
            c(&idk, ups, i).compose(&c(&idk, ups2, i))
        );
        // iv) (r r') o_i id = (r o_{r'(i)} id)(r' o_i id)
        assert_eq!(
            c(&rho.compose(rho2), &idj, i),
            c(rho, &idj, rho2.apply(i)).compose(&c(rho2, &idj, i))
        );
        // v) (r r') o_i (u u') = (r o_{r'(i)} u)(r' o_i u')
        assert_eq!(
            c(&rho.compose(rho2), &ups.compose(ups2), i),
            c(rho, ups, rho2.apply(i)).compose(&c(rho2, ups2, i))
        );
    }

    #[test]
    fn iterated_composition_exhaustive() {
        for k in 1..=3usize {
            for j in 1..=3usize {
                for l in 1..=3usize {
                    for rho in Permutation::enumerate(k) {
                        for ups in Permutation::enumerate(j) {
                            for mu in Permutation::enumerate(l) {
                                for a in 1..=k {
                                    for b in 1..=(k + j - 1) {
                                        let lhs = perm_compose_i(
                                            &perm_compose_i(&rho, &ups, a).unwrap(),
                                            &mu,
                                            b,
                                        )
                                        .unwrap();
                                        let rhs = if b < a {
                                            perm_compose_i(
                                                &perm_compose_i(&rho, &mu, b).unwrap(),
                                                &ups,
                                                a + l - 1,
                                            )
                                            .unwrap()
                                        } else if b < a + j {
                                            perm_compose_i(
                                                &rho,
                                                &perm_compose_i(&ups, &mu, b - a + 1).unwrap(),
                                                a,
                                            )
                                            .unwrap()
                                        } else {
                                            perm_compose_i(
                                                &perm_compose_i(&rho, &mu, b - j + 1).unwrap(),
                                                &ups,
                                                a,
                                            )
                                            .unwrap()
                                        };
                                        assert_eq!(lhs, rhs);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn theta_interacts_with_composition() {
        // two-stage multiplication equals one-stage through the composite
        let m = PointedMonoid::cyclic_group(4);
        for k in 1..=3usize {
            for j in 1..=3usize {
                for rho in Permutation::enumerate(k) {
                    for ups in Permutation::enumerate(j) {
                        for i in 1..=k {
                            let gs: Vec<usize> =
                                (0..k + j - 1).map(|t| (t % (m.size() - 1)) + 1).collect();
                            let inner = theta_action(&ups, &gs[i - 1..i + j - 1], &m).unwrap();
                            let mut outer_args = Vec::new();
                            outer_args.extend_from_slice(&gs[..i - 1]);
                            outer_args.push(inner);
                            outer_args.extend_from_slice(&gs[i + j - 1..]);
                            let two_stage = theta_action(&rho, &outer_args, &m).unwrap();
                            let comp = perm_compose_i(&rho, &ups, i).unwrap();
                            let one_stage = theta_action(&comp, &gs, &m).unwrap();
                            assert_eq!(two_stage, one_stage);
                        }
                    }
                }
            }
        }
    }
}

//! A generic interface for discrete operads, instances for the symmetric,
//! commutative and hyperoctahedral operads, an axiom checker, and algebra
//! actions on finite pointed monoids.

use std::fmt::Debug;

use crate::error::Error;
use crate::hyper::{hyper_compose_i, SignedPerm};
use crate::monoid::PointedMonoid;
use crate::perm::{perm_compose_i, theta_action, Permutation};
use crate::report::Report;

/// A discrete operad presented through per-level value sets.  Level 0 is
/// always the two-point set {*, 1}; only the non-basepoint element is
/// represented, as [`Operad::unit0`].
pub trait Operad {
    type Elem: Clone + Eq + Ord + Debug;

    fn name(&self) -> &str;
    fn level_of(&self, e: &Self::Elem) -> usize;
    /// The operad unit in level 1.
    fn unit1(&self) -> Self::Elem;
    /// The non-basepoint element of level 0.
    fn unit0(&self) -> Self::Elem;
    fn compose(&self, a: &Self::Elem, i: usize, b: &Self::Elem) -> Result<Self::Elem, Error>;
    /// Right action of a permutation of the same degree.
    fn act(&self, a: &Self::Elem, sigma: &Permutation) -> Self::Elem;
    /// All elements of a level, or None when the level is infinite.
    fn enumerate_level(&self, j: usize) -> Option<Vec<Self::Elem>>;
    /// Whether the right symmetric action on the level is free.
    fn sigma_action_free(&self, j: usize) -> bool;

    /// The least representative of the orbit {(op.s, args.s^{-1})} under the
    /// simultaneous symmetric action, comparing (op, args) lexicographically.
    /// The default search is factorial in the arity; operads with a visible
    /// permutation component override it.
    fn canonical_pair<V: Clone + Ord>(
        &self,
        op: Self::Elem,
        args: Vec<V>,
    ) -> (Self::Elem, Vec<V>) {
        let k = args.len();
        let mut best: Option<(Self::Elem, Vec<V>)> = None;
        for sigma in Permutation::enumerate(k) {
            let cand_op = self.act(&op, &sigma);
            let cand_args: Vec<V> = (1..=k).map(|t| args[sigma.apply(t) - 1].clone()).collect();
            let cand = (cand_op, cand_args);
            if best.as_ref().map(|b| cand < *b).unwrap_or(true) {
                best = Some(cand);
            }
        }
        best.expect("orbit is nonempty")
    }
}

/// Canonical pair for operads whose elements carry a free permutation
/// coordinate: act by its inverse, so the coordinate becomes the identity.
fn canonical_pair_by_perm<P: Operad, V: Clone + Ord>(
    p: &P,
    op: P::Elem,
    perm_part: &Permutation,
    args: Vec<V>,
) -> (P::Elem, Vec<V>) {
    let sigma = perm_part.inverse();
    let new_op = p.act(&op, &sigma);
    let new_args: Vec<V> = (1..=args.len())
        .map(|t| args[sigma.apply(t) - 1].clone())
        .collect();
    (new_op, new_args)
}

/// The operad of symmetric groups, encoding monoids with unit.
#[derive(Debug, Clone, Default)]
pub struct MayOperad;

impl Operad for MayOperad {
    type Elem = Permutation;

    fn name(&self) -> &str {
        "M"
    }
    fn level_of(&self, e: &Permutation) -> usize {
        e.degree()
    }
    fn unit1(&self) -> Permutation {
        Permutation::identity(1)
    }
    fn unit0(&self) -> Permutation {
        Permutation::identity(0)
    }
    fn compose(&self, a: &Permutation, i: usize, b: &Permutation) -> Result<Permutation, Error> {
        perm_compose_i(a, b, i)
    }
    fn act(&self, a: &Permutation, sigma: &Permutation) -> Permutation {
        a.compose(sigma)
    }
    fn enumerate_level(&self, j: usize) -> Option<Vec<Permutation>> {
        Some(Permutation::enumerate(j))
    }
    fn sigma_action_free(&self, _j: usize) -> bool {
        true
    }
    fn canonical_pair<V: Clone + Ord>(&self, op: Permutation, args: Vec<V>) -> (Permutation, Vec<V>) {
        let perm = op.clone();
        canonical_pair_by_perm(self, op, &perm, args)
    }
}

/// The one-point-per-level operad, encoding commutative monoids.
#[derive(Debug, Clone, Default)]
pub struct CommOperad;

impl Operad for CommOperad {
    type Elem = usize; // the level itself; each level has a single point

    fn name(&self) -> &str {
        "N"
    }
    fn level_of(&self, e: &usize) -> usize {
        *e
    }
    fn unit1(&self) -> usize {
        1
    }
    fn unit0(&self) -> usize {
        0
    }
    fn compose(&self, a: &usize, i: usize, b: &usize) -> Result<usize, Error> {
        if i == 0 || i > *a {
            return Err(Error::argument("composition index out of range"));
        }
        Ok(a + b - 1)
    }
    fn act(&self, a: &usize, _sigma: &Permutation) -> usize {
        *a
    }
    fn enumerate_level(&self, j: usize) -> Option<Vec<usize>> {
        Some(vec![j])
    }
    fn sigma_action_free(&self, j: usize) -> bool {
        j <= 1
    }
    fn canonical_pair<V: Clone + Ord>(&self, op: usize, mut args: Vec<V>) -> (usize, Vec<V>) {
        args.sort();
        (op, args)
    }
}

/// The hyperoctahedral operad, encoding monoids with anti-involution.
#[derive(Debug, Clone, Default)]
pub struct HyperOperad;

impl Operad for HyperOperad {
    type Elem = SignedPerm;

    fn name(&self) -> &str {
        "H"
    }
    fn level_of(&self, e: &SignedPerm) -> usize {
        e.degree()
    }
    fn unit1(&self) -> SignedPerm {
        SignedPerm::identity(1)
    }
    fn unit0(&self) -> SignedPerm {
        SignedPerm::identity(0)
    }
    fn compose(&self, a: &SignedPerm, i: usize, b: &SignedPerm) -> Result<SignedPerm, Error> {
        hyper_compose_i(a, b, i)
    }
    fn act(&self, a: &SignedPerm, sigma: &Permutation) -> SignedPerm {
        a.act(sigma)
    }
    fn enumerate_level(&self, j: usize) -> Option<Vec<SignedPerm>> {
        Some(SignedPerm::enumerate(j))
    }
    fn sigma_action_free(&self, _j: usize) -> bool {
        true
    }
    fn canonical_pair<V: Clone + Ord>(&self, op: SignedPerm, args: Vec<V>) -> (SignedPerm, Vec<V>) {
        let perm = op.perm.clone();
        canonical_pair_by_perm(self, op, &perm, args)
    }
}

/// Wrapper that corrupts one composition instance; a negative control for
/// the axiom checker.
pub struct CorruptedOperad<P: Operad> {
    pub inner: P,
    /// swap the result of compose(a, i, b) at this (level_a, i, level_b)
    pub corrupt_at: (usize, usize, usize),
}

impl<P: Operad> Operad for CorruptedOperad<P> {
    type Elem = P::Elem;

    fn name(&self) -> &str {
        "corrupted"
    }
    fn level_of(&self, e: &Self::Elem) -> usize {
        self.inner.level_of(e)
    }
    fn unit1(&self) -> Self::Elem {
        self.inner.unit1()
    }
    fn unit0(&self) -> Self::Elem {
        self.inner.unit0()
    }
    fn compose(&self, a: &Self::Elem, i: usize, b: &Self::Elem) -> Result<Self::Elem, Error> {
        let result = self.inner.compose(a, i, b)?;
        if (self.inner.level_of(a), i, self.inner.level_of(b)) == self.corrupt_at {
            // act by the reversal to damage the value
            let deg = self.inner.level_of(&result);
            return Ok(self.inner.act(&result, &Permutation::reversal(deg)));
        }
        Ok(result)
    }
    fn act(&self, a: &Self::Elem, sigma: &Permutation) -> Self::Elem {
        self.inner.act(a, sigma)
    }
    fn enumerate_level(&self, j: usize) -> Option<Vec<Self::Elem>> {
        self.inner.enumerate_level(j)
    }
    fn sigma_action_free(&self, j: usize) -> bool {
        self.inner.sigma_action_free(j)
    }
}

/// Check the associativity, equivariance and unity axioms of an operad on
/// every element of every level up to `k_max` (levels must be enumerable).
/// Failures are report entries carrying the instantiating tuple.
pub fn operad_axioms_check<P: Operad>(p: &P, k_max: usize) -> Report {
    let mut report = Report::new(&format!("operad-axioms-{}", p.name())).with_param("k_max", k_max);
    let levels: Vec<Vec<P::Elem>> = (0..=k_max)
        .map(|j| p.enumerate_level(j).expect("axiom checker needs enumerable levels"))
        .collect();

    // unity: a o_i 1 = a and 1 o_1 a = a
    let mut checked = 0usize;
    for k in 0..=k_max {
        for a in &levels[k] {
            for i in 1..=k {
                checked += 1;
                let got = p.compose(a, i, &p.unit1()).unwrap();
                if got != *a {
                    report.record(
                        "unity/right",
                        false,
                        Some(format!("a={a:?} i={i} got={got:?}")),
                    );
                }
            }
            if k >= 1 {
                checked += 1;
                let got = p.compose(&p.unit1(), 1, a).unwrap();
                if got != *a {
                    report.record("unity/left", false, Some(format!("a={a:?} got={got:?}")));
                }
            }
        }
    }
    report.record_bulk("unity", checked);

    // associativity, all three range cases
    let mut checked = 0usize;
    for k in 1..=k_max {
        for j in 0..=k_max {
            for l in 0..=k_max {
                for a in &levels[k] {
                    for b in &levels[j] {
                        for c in &levels[l] {
                            for i in 1..=k {
                                for h in 1..=(k + j - 1).max(1) {
                                    if h > k + j - 1 {
                                        continue;
                                    }
                                    checked += 1;
                                    let lhs = p
                                        .compose(&p.compose(a, i, b).unwrap(), h, c)
                                        .unwrap();
                                    let rhs = if h < i {
                                        p.compose(&p.compose(a, h, c).unwrap(), i + l - 1, b)
                                    } else if h < i + j {
                                        p.compose(a, i, &p.compose(b, h - i + 1, c).unwrap())
                                    } else {
                                        p.compose(&p.compose(a, h - j + 1, c).unwrap(), i, b)
                                    }
                                    .unwrap();
                                    if lhs != rhs {
                                        report.record(
                                            "associativity",
                                            false,
                                            Some(format!(
                                                "a={a:?} b={b:?} c={c:?} i={i} h={h} lhs={lhs:?} rhs={rhs:?}"
                                            )),
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report.record_bulk("associativity", checked);

    // equivariance: (a.r) o_i (b.u) = (a o_{r(i)} b).(r o_i u)
    let mut checked = 0usize;
    for k in 1..=k_max {
        for j in 0..=k_max {
            for a in &levels[k] {
                for b in &levels[j] {
                    for rho in Permutation::enumerate(k) {
                        for ups in Permutation::enumerate(j) {
                            for i in 1..=k {
                                checked += 1;
                                let lhs = p
                                    .compose(&p.act(a, &rho), i, &p.act(b, &ups))
                                    .unwrap();
                                let rhs = p.act(
                                    &p.compose(a, rho.apply(i), b).unwrap(),
                                    &perm_compose_i(&rho, &ups, i).unwrap(),
                                );
                                if lhs != rhs {
                                    report.record(
                                        "equivariance",
                                        false,
                                        Some(format!(
                                            "a={a:?} b={b:?} rho={rho:?} ups={ups:?} i={i}"
                                        )),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report.record_bulk("equivariance", checked);
    report
}

/// An algebra action of an operad on the non-basepoint part of a finite
/// pointed monoid; elements are monoid indices, with 0 the basepoint.
pub struct AlgebraAction<'a, P: Operad> {
    pub monoid: &'a PointedMonoid,
    theta: Box<dyn Fn(&P::Elem, &[usize]) -> usize + 'a>,
}

impl<'a, P: Operad> AlgebraAction<'a, P> {
    pub fn new(
        monoid: &'a PointedMonoid,
        theta: impl Fn(&P::Elem, &[usize]) -> usize + 'a,
    ) -> Self {
        AlgebraAction {
            monoid,
            theta: Box::new(theta),
        }
    }

    /// Evaluate the action; any basepoint argument collapses the result.
    pub fn theta(&self, c: &P::Elem, args: &[usize]) -> usize {
        if args.iter().any(|&x| x == 0) {
            return 0;
        }
        (self.theta)(c, args)
    }
}

/// The symmetric-operad action on a plain monoid: multiply in the order
/// prescribed by the inverse permutation.
pub fn m_algebra_from_monoid(m: &PointedMonoid) -> AlgebraAction<'_, MayOperad> {
    AlgebraAction::new(m, move |rho, gs| theta_action(rho, gs, m).unwrap())
}

/// The hyperoctahedral action on a monoid with anti-involution:
/// `theta((x, rho); g) = prod_t iota^{x_t}(g_{rho^{-1}(t)})`.
pub fn h_algebra_from_involutive_monoid(
    m: &PointedMonoid,
) -> Result<AlgebraAction<'_, HyperOperad>, Error> {
    if !m.has_involution() {
        return Err(Error::precondition("monoid lacks an involution"));
    }
    Ok(AlgebraAction::new(m, move |sp: &SignedPerm, gs: &[usize]| {
        let inv = sp.perm.inverse();
        let factors: Vec<usize> = (1..=gs.len())
            .map(|t| {
                let g = gs[inv.apply(t) - 1];
                if sp.signs.get(t) == -1 {
                    m.involute(g).unwrap()
                } else {
                    g
                }
            })
            .collect();
        m.product(&factors)
    }))
}

/// Check the three operad-algebra axioms exhaustively: the action axiom,
/// triviality of the unit, and equivariance.
pub fn algebra_axioms_check<P: Operad>(
    p: &P,
    algebra: &AlgebraAction<'_, P>,
    k_max: usize,
) -> Report {
    let mut report = Report::new(&format!("algebra-axioms-{}", p.name()))
        .with_param("k_max", k_max)
        .with_param("monoid", algebra.monoid.name());
    let m = algebra.monoid;
    let elems: Vec<usize> = (1..m.size()).collect();
    let levels: Vec<Vec<P::Elem>> = (0..=k_max)
        .map(|j| p.enumerate_level(j).expect("algebra checker needs enumerable levels"))
        .collect();

    // unit triviality
    let mut checked = 0usize;
    for &x in &elems {
        checked += 1;
        if algebra.theta(&p.unit1(), &[x]) != x {
            report.record("unit", false, Some(format!("x={x}")));
        }
    }
    if algebra.theta(&p.unit0(), &[]) != 1 {
        report.record("unit/nullary", false, Some("theta_0 misses the unit".into()));
    }
    report.record_bulk("unit", checked + 1);

    // theta acts
    let mut checked = 0usize;
    for k in 1..=k_max {
        for j in 0..=k_max {
            if k + j - 1 > k_max + 1 {
                continue;
            }
            for a in &levels[k] {
                for b in &levels[j] {
                    for i in 1..=k {
                        for gs in tuples(&elems, k + j - 1) {
                            checked += 1;
                            let inner = algebra.theta(b, &gs[i - 1..i + j - 1]);
                            let mut outer = Vec::with_capacity(k);
                            outer.extend_from_slice(&gs[..i - 1]);
                            outer.push(inner);
                            outer.extend_from_slice(&gs[i + j - 1..]);
                            let two_stage = algebra.theta(a, &outer);
                            let one_stage =
                                algebra.theta(&p.compose(a, i, b).unwrap(), &gs);
                            if two_stage != one_stage {
                                report.record(
                                    "acts",
                                    false,
                                    Some(format!(
                                        "a={a:?} b={b:?} i={i} gs={gs:?} two={two_stage} one={one_stage}"
                                    )),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    report.record_bulk("acts", checked);

    // equivariance
    let mut checked = 0usize;
    for k in 1..=k_max {
        for a in &levels[k] {
            for rho in Permutation::enumerate(k) {
                for gs in tuples(&elems, k) {
                    checked += 1;
                    let lhs = algebra.theta(&p.act(a, &rho), &gs);
                    let moved = rho.permute_tuple(&gs);
                    let rhs = algebra.theta(a, &moved);
                    if lhs != rhs {
                        report.record(
                            "equivariance",
                            false,
                            Some(format!("a={a:?} rho={rho:?} gs={gs:?}")),
                        );
                    }
                }
            }
        }
    }
    report.record_bulk("equivariance", checked);
    report
}

/// All tuples of the given length over a slice, in lexicographic order.
pub fn tuples(xs: &[usize], len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * xs.len());
        for t in &out {
            for &x in xs {
                let mut t2 = t.clone();
                t2.push(x);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn may_operad_axioms_hold() {
        let report = operad_axioms_check(&MayOperad, 4);
        assert!(report.ok(), "{}", report.to_json());
    }

    #[test]
    fn hyper_operad_axioms_hold() {
        let report = operad_axioms_check(&HyperOperad, 3);
        assert!(report.ok(), "{}", report.to_json());
    }

    #[test]
    fn comm_operad_axioms_hold() {
        let report = operad_axioms_check(&CommOperad, 5);
        assert!(report.ok(), "{}", report.to_json());
    }

    #[test]
    fn corrupted_operad_is_caught() {
        let bad = CorruptedOperad {
            inner: MayOperad,
            corrupt_at: (2, 1, 2),
        };
        let report = operad_axioms_check(&bad, 3);
        assert!(!report.ok());
        let named: Vec<&str> = report
            .cases
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.case.as_str())
            .collect();
        assert!(named.iter().any(|n| n.contains("associativity") || n.contains("unity") || n.contains("equivariance")));
    }

    #[test]
    fn h_algebra_axioms_for_small_involutive_monoids() {
        for m in [
            PointedMonoid::trivial(),
            PointedMonoid::cyclic_group(2),
            PointedMonoid::cyclic_group(3),
            PointedMonoid::idempotent(),
        ] {
            let alg = h_algebra_from_involutive_monoid(&m).unwrap();
            let report = algebra_axioms_check(&HyperOperad, &alg, 2);
            assert!(report.ok(), "monoid {m}: {}", report.to_json());
        }
    }

    #[test]
    fn h_algebra_requires_involution() {
        let m = PointedMonoid::right_zero_band();
        assert!(h_algebra_from_involutive_monoid(&m).is_err());
    }

    #[test]
    fn h_algebra_on_examples() {
        use crate::hyper::{SignVector, SignedPerm};
        let m = PointedMonoid::cyclic_group(3);
        let alg = h_algebra_from_involutive_monoid(&m).unwrap();
        let g = 2usize;
        let h = 3usize;
        // theta_2(I_2; g, h) = g h
        assert_eq!(alg.theta(&SignedPerm::identity(2), &[g, h]), m.mul(g, h));
        // theta_1((-1); g) = iota(g)
        let minus = SignedPerm::new(SignVector::new(vec![-1]).unwrap(), Permutation::identity(1))
            .unwrap();
        assert_eq!(alg.theta(&minus, &[g]), m.involute(g).unwrap());
        // theta_2(antidiag(-1,-1); g, h) = iota(g h) = iota(h) iota(g)
        let anti = SignedPerm::new(
            SignVector::new(vec![-1, -1]).unwrap(),
            Permutation::new(vec![2, 1]).unwrap(),
        )
        .unwrap();
        assert_eq!(alg.theta(&anti, &[g, h]), m.involute(m.mul(g, h)).unwrap());
    }

    #[test]
    fn m_algebra_axioms_for_small_monoids() {
        for m in [PointedMonoid::cyclic_group(3), PointedMonoid::right_zero_band()] {
            let alg = m_algebra_from_monoid(&m);
            let report = algebra_axioms_check(&MayOperad, &alg, 3);
            assert!(report.ok(), "monoid {m}: {}", report.to_json());
        }
    }

    #[test]
    fn theta_axiom_on_every_monoid_up_to_size_four() {
        let mut monoids = vec![PointedMonoid::trivial()];
        monoids.extend(PointedMonoid::enumerate_all(3));
        monoids.extend(PointedMonoid::enumerate_all(4));
        assert!(monoids.len() > 10, "enumeration looks too small");
        for m in &monoids {
            let alg = m_algebra_from_monoid(m);
            let k_max = if m.size() <= 3 { 3 } else { 2 };
            let report = algebra_axioms_check(&MayOperad, &alg, k_max);
            assert!(report.ok(), "monoid {m}: {}", report.to_json());
        }
    }
}

//! The free-algebra construction of a discrete operad over a finite pointed
//! set with unit: canonical term forms under the injection relations, the
//! monad structure, the filtration census, and the levels of the two-sided
//! bar construction with their simplicial operators.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;
use crate::operad::{AlgebraAction, Operad};
use crate::report::Report;

/// A value of an iterated free construction: a base element (index into the
/// pointed alphabet), the basepoint of some free layer, or an operadic node
/// whose arguments live one layer down.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Val<E> {
    Base(usize),
    Star,
    Node(E, Vec<Val<E>>),
}

impl<E: fmt::Debug> fmt::Debug for Val<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Base(i) => write!(f, "b{i}"),
            Val::Star => write!(f, "*"),
            Val::Node(op, args) => write!(f, "[{op:?};{args:?}]"),
        }
    }
}

/// The free construction of an operad over a pointed alphabet of the given
/// size (index 0 the basepoint, index 1 the unit).
pub struct FreeMonad<'p, P: Operad> {
    pub operad: &'p P,
    pub alphabet: usize,
}

impl<'p, P: Operad> FreeMonad<'p, P> {
    pub fn new(operad: &'p P, alphabet: usize) -> Result<Self, Error> {
        if alphabet < 2 {
            return Err(Error::argument("alphabet needs a basepoint and a unit"));
        }
        Ok(FreeMonad { operad, alphabet })
    }

    /// The unit element at nesting depth d: the distinguished base letter at
    /// depth 0, the arity-zero node above.
    pub fn unit_at(&self, depth: usize) -> Val<P::Elem> {
        if depth == 0 {
            Val::Base(1)
        } else {
            Val::Node(self.operad.unit0(), Vec::new())
        }
    }

    /// The basepoint at nesting depth d.
    pub fn basepoint_at(&self, depth: usize) -> Val<P::Elem> {
        if depth == 0 {
            Val::Base(0)
        } else {
            Val::Star
        }
    }

    fn is_unit(&self, v: &Val<P::Elem>, depth: usize) -> bool {
        *v == self.unit_at(depth)
    }

    fn is_basepoint(&self, v: &Val<P::Elem>, depth: usize) -> bool {
        *v == self.basepoint_at(depth)
    }

    /// Canonical form of a node at depth >= 1 whose arguments are already
    /// canonical values of depth-1: collapse on basepoints, contract units
    /// through the nullary composition, then take the least representative
    /// of the symmetric orbit.
    pub fn canonicalize_node(
        &self,
        depth: usize,
        op: P::Elem,
        args: Vec<Val<P::Elem>>,
    ) -> Result<Val<P::Elem>, Error> {
        if depth == 0 {
            return Err(Error::argument("nodes live at positive depth"));
        }
        if self.operad.level_of(&op) != args.len() {
            return Err(Error::argument("operad level must match the argument count"));
        }
        if args.iter().any(|a| self.is_basepoint(a, depth - 1)) {
            return Ok(Val::Star);
        }
        let mut op = op;
        let mut args = args;
        while let Some(pos) = args.iter().position(|a| self.is_unit(a, depth - 1)) {
            op = self.operad.compose(&op, pos + 1, &self.operad.unit0())?;
            args.remove(pos);
        }
        let (op, args) = self.operad.canonical_pair(op, args);
        Ok(Val::Node(op, args))
    }

    /// Recursively canonicalize a raw value of the given depth.
    pub fn canonicalize(&self, v: &Val<P::Elem>, depth: usize) -> Result<Val<P::Elem>, Error> {
        match v {
            Val::Base(i) => {
                if depth != 0 {
                    return Err(Error::argument("base letter at positive depth"));
                }
                if *i >= self.alphabet {
                    return Err(Error::argument("letter outside the alphabet"));
                }
                Ok(v.clone())
            }
            Val::Star => {
                if depth == 0 {
                    return Err(Error::argument("the depth-zero basepoint is a base letter"));
                }
                Ok(Val::Star)
            }
            Val::Node(op, args) => {
                if depth == 0 {
                    return Err(Error::argument("nodes live at positive depth"));
                }
                let canon_args: Vec<Val<P::Elem>> = args
                    .iter()
                    .map(|a| self.canonicalize(a, depth - 1))
                    .collect::<Result<_, _>>()?;
                self.canonicalize_node(depth, op.clone(), canon_args)
            }
        }
    }

    /// The monad unit: wrap a value one layer deeper.
    pub fn eta(&self, v: Val<P::Elem>, depth: usize) -> Result<Val<P::Elem>, Error> {
        self.canonicalize_node(depth + 1, self.operad.unit1(), vec![v])
    }

    /// The monad multiplication on a canonical value of depth >= 2: merge
    /// the two outer layers through the iterated composition.
    pub fn mu(&self, v: &Val<P::Elem>, depth: usize) -> Result<Val<P::Elem>, Error> {
        if depth < 2 {
            return Err(Error::argument("multiplication needs two layers"));
        }
        match v {
            Val::Star => Ok(Val::Star),
            Val::Base(_) => Err(Error::argument("value is shallower than its depth")),
            Val::Node(op, args) => {
                let mut acc = op.clone();
                let mut all_args = Vec::new();
                let mut pos = 1usize;
                for arg in args {
                    let Val::Node(inner_op, inner_args) = arg else {
                        // canonical nodes have no basepoint arguments, and
                        // depth >= 2 rules out base letters
                        return Ok(Val::Star);
                    };
                    let j = self.operad.level_of(inner_op);
                    acc = self.operad.compose(&acc, pos, inner_op)?;
                    pos += j;
                    all_args.extend(inner_args.iter().cloned());
                }
                self.canonicalize_node(depth - 1, acc, all_args)
            }
        }
    }

    /// Apply a function to the values sitting `levels` layers below the top,
    /// re-canonicalizing every layer on the way out.
    fn map_at<F>(
        &self,
        v: &Val<P::Elem>,
        depth: usize,
        levels: usize,
        f: &F,
    ) -> Result<Val<P::Elem>, Error>
    where
        F: Fn(&Val<P::Elem>, usize) -> Result<Val<P::Elem>, Error>,
    {
        if levels == 0 {
            return f(v, depth);
        }
        match v {
            Val::Star => Ok(Val::Star),
            Val::Base(_) => Err(Error::argument("value is shallower than expected")),
            Val::Node(op, args) => {
                let new_args: Vec<Val<P::Elem>> = args
                    .iter()
                    .map(|a| self.map_at(a, depth - 1, levels - 1, f))
                    .collect::<Result<_, _>>()?;
                // the image depth below drops or grows with f; the caller
                // supplies the new depth of this node
                Ok(Val::Node(op.clone(), new_args))
            }
        }
    }

    /// Census of canonical terms of arity at most j over the letters: the
    /// basepoint, the unit, and one entry per orbit.  Levels with a non-free
    /// symmetric action are flagged in the result.
    pub fn census(&self, j: usize) -> Result<CensusTable, Error> {
        let letters: Vec<usize> = (2..self.alphabet).collect();
        let mut cumulative = 2usize; // basepoint and unit
        let mut rows = Vec::new();
        rows.push(CensusRow {
            arity: 0,
            increment: 2,
            cumulative,
            sigma_free: true,
        });
        for a in 1..=j {
            let ops = self
                .operad
                .enumerate_level(a)
                .ok_or_else(|| Error::precondition("operad level is not enumerable"))?;
            let mut seen: BTreeSet<Val<P::Elem>> = BTreeSet::new();
            for op in &ops {
                for tuple in crate::operad::tuples(&letters, a) {
                    let args: Vec<Val<P::Elem>> = tuple.iter().map(|&l| Val::Base(l)).collect();
                    let canon = self.canonicalize_node(1, op.clone(), args)?;
                    if let Val::Node(_, cargs) = &canon {
                        if cargs.len() == a {
                            seen.insert(canon);
                        }
                    }
                }
            }
            cumulative += seen.len();
            rows.push(CensusRow {
                arity: a,
                increment: seen.len(),
                cumulative,
                sigma_free: self.operad.sigma_action_free(a),
            });
        }
        Ok(CensusTable { rows })
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CensusRow {
    pub arity: usize,
    pub increment: usize,
    pub cumulative: usize,
    pub sigma_free: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CensusTable {
    pub rows: Vec<CensusRow>,
}

impl CensusTable {
    pub fn cardinality(&self) -> usize {
        self.rows.last().map(|r| r.cumulative).unwrap_or(0)
    }
}

/// Simplicial operators of the two-sided bar construction whose q-th level
/// is the (q+1)-fold free construction applied to the algebra's monoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BarOp {
    Face(usize),
    Degeneracy(usize),
}

/// Evaluate a bar operator on a canonical value of depth q+1 over the
/// algebra's monoid: inner faces merge adjacent free layers, the first face
/// merges the outer two, the last face evaluates the innermost layer
/// through the algebra action, and degeneracies insert a unit layer.
pub fn bar_level_eval<P: Operad>(
    fm: &FreeMonad<'_, P>,
    alg: &AlgebraAction<'_, P>,
    q: usize,
    op: BarOp,
    v: &Val<P::Elem>,
) -> Result<Val<P::Elem>, Error> {
    match op {
        BarOp::Face(i) => {
            if i > q {
                return Err(Error::argument("face index out of range"));
            }
            if i < q {
                // merge layers i and i+1 counted from the outside
                let f = |w: &Val<P::Elem>, d: usize| fm.mu(w, d);
                let out = fm.map_at(v, q + 1, i, &f)?;
                fm.canonicalize(&out, q)
            } else {
                // evaluate the innermost layer through the action
                let f = |w: &Val<P::Elem>, _d: usize| -> Result<Val<P::Elem>, Error> {
                    match w {
                        Val::Star => Ok(Val::Base(0)),
                        Val::Node(op, args) => {
                            let letters: Vec<usize> = args
                                .iter()
                                .map(|a| match a {
                                    Val::Base(x) => Ok(*x),
                                    _ => Err(Error::argument("innermost layer expected")),
                                })
                                .collect::<Result<_, _>>()?;
                            Ok(Val::Base(alg.theta(op, &letters)))
                        }
                        Val::Base(_) => Err(Error::argument("value is shallower than expected")),
                    }
                };
                let out = fm.map_at(v, q + 1, q, &f)?;
                fm.canonicalize(&out, q)
            }
        }
        BarOp::Degeneracy(i) => {
            if i > q {
                return Err(Error::argument("degeneracy index out of range"));
            }
            let f = |w: &Val<P::Elem>, d: usize| fm.eta(w.clone(), d);
            let out = fm.map_at(v, q + 1, i + 1, &f)?;
            fm.canonicalize(&out, q + 2)
        }
    }
}

/// Sampler interface for building random canonical values.
pub struct ValSampler<'a, P: Operad> {
    pub fm: &'a FreeMonad<'a, P>,
    pub sample_op: Box<dyn FnMut(usize, &mut rand_chacha::ChaCha8Rng) -> P::Elem + 'a>,
    pub max_arity: usize,
}

impl<'a, P: Operad> ValSampler<'a, P> {
    /// Random canonical value of the given depth, never the unit or the
    /// basepoint at the top layer.
    pub fn sample(
        &mut self,
        depth: usize,
        rng: &mut rand_chacha::ChaCha8Rng,
    ) -> Result<Val<P::Elem>, Error> {
        use rand::Rng;
        if depth == 0 {
            let letter = rng.gen_range(2..self.fm.alphabet);
            return Ok(Val::Base(letter));
        }
        loop {
            let arity = rng.gen_range(1..=self.max_arity);
            let op = (self.sample_op)(arity, rng);
            let args: Result<Vec<Val<P::Elem>>, Error> =
                (0..arity).map(|_| self.sample(depth - 1, rng)).collect();
            let node = self.fm.canonicalize_node(depth, op, args?)?;
            if !self.fm.is_unit(&node, depth) && !self.fm.is_basepoint(&node, depth) {
                return Ok(node);
            }
        }
    }
}

/// Randomized monad-law suite: both unit laws and associativity of the
/// multiplication on sampled nested values.
pub fn verify_monad_laws<P: Operad>(
    fm: &FreeMonad<'_, P>,
    sampler: &mut ValSampler<'_, P>,
    samples: usize,
    seed: u64,
) -> Report {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new(&format!("monad-laws-{}", fm.operad.name()))
        .with_param("samples", samples)
        .with_seed(seed);
    let mut checked = 0usize;
    for _ in 0..samples {
        // unit laws on depth-1 values
        let t = sampler.sample(1, &mut rng).expect("sampled value");
        checked += 2;
        let wrapped = fm.eta(t.clone(), 1).expect("eta");
        let back = fm.mu(&wrapped, 2).expect("mu");
        if back != t {
            report.record("mu-eta", false, Some(format!("{t:?}")));
        }
        // eta applied under the outer layer
        let inner_wrapped = fm
            .map_at(&t, 1, 1, &|w, d| fm.eta(w.clone(), d))
            .and_then(|v| fm.canonicalize(&v, 2))
            .expect("inner eta");
        let back2 = fm.mu(&inner_wrapped, 2).expect("mu");
        if back2 != t {
            report.record("mu-P-eta", false, Some(format!("{t:?}")));
        }
        // associativity on depth-3 values
        checked += 1;
        let deep = sampler.sample(3, &mut rng).expect("sampled value");
        let lhs = fm.mu(&fm.mu(&deep, 3).expect("mu"), 2).expect("mu");
        let inner_mu = fm
            .map_at(&deep, 3, 1, &|w, d| fm.mu(w, d))
            .and_then(|v| fm.canonicalize(&v, 2))
            .expect("inner mu");
        let rhs = fm.mu(&inner_mu, 2).expect("mu");
        if lhs != rhs {
            report.record("mu-assoc", false, Some(format!("{deep:?}")));
        }
    }
    report.record_bulk("monad-laws", checked);
    report
}

/// Randomized simplicial-identity suite for the two-sided bar levels.
pub fn verify_bar_identities<P: Operad>(
    fm: &FreeMonad<'_, P>,
    alg: &AlgebraAction<'_, P>,
    sampler: &mut ValSampler<'_, P>,
    q_max: usize,
    samples: usize,
    seed: u64,
) -> Report {
    use rand::Rng;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new(&format!("bar-identities-{}", fm.operad.name()))
        .with_param("samples", samples)
        .with_param("q_max", q_max)
        .with_seed(seed);
    let mut checked = 0usize;
    for _ in 0..samples {
        let q = rng.gen_range(1..=q_max);
        let v = sampler.sample(q + 1, &mut rng).expect("sampled value");
        let face = |i: usize, w: &Val<P::Elem>, at: usize| {
            bar_level_eval(fm, alg, at, BarOp::Face(i), w)
        };
        let degen = |i: usize, w: &Val<P::Elem>, at: usize| {
            bar_level_eval(fm, alg, at, BarOp::Degeneracy(i), w)
        };
        // d_i d_j = d_{j-1} d_i for i < j
        if q >= 1 {
            let j = rng.gen_range(1..=q);
            let i = rng.gen_range(0..j);
            checked += 1;
            let lhs = face(i, &face(j, &v, q).expect("face"), q - 1).expect("face");
            let rhs = face(j - 1, &face(i, &v, q).expect("face"), q - 1).expect("face");
            if lhs != rhs {
                report.record("dd", false, Some(format!("q={q} i={i} j={j} v={v:?}")));
            }
        }
        // d_i s_j identities
        let j = rng.gen_range(0..=q);
        for i in 0..=q + 1 {
            checked += 1;
            let sj = degen(j, &v, q).expect("degeneracy");
            let lhs = face(i, &sj, q + 1).expect("face");
            let rhs = if i < j {
                degen(j - 1, &face(i, &v, q).expect("face"), q - 1).expect("degeneracy")
            } else if i == j || i == j + 1 {
                v.clone()
            } else {
                degen(j, &face(i - 1, &v, q).expect("face"), q - 1).expect("degeneracy")
            };
            if lhs != rhs {
                report.record("ds", false, Some(format!("q={q} i={i} j={j} v={v:?}")));
            }
        }
        // s_i s_j = s_{j+1} s_i for i <= j
        let j = rng.gen_range(0..=q);
        let i = rng.gen_range(0..=j);
        checked += 1;
        let lhs = degen(i, &degen(j, &v, q).expect("degeneracy"), q + 1).expect("degeneracy");
        let rhs = degen(j + 1, &degen(i, &v, q).expect("degeneracy"), q + 1).expect("degeneracy");
        if lhs != rhs {
            report.record("ss", false, Some(format!("q={q} i={i} j={j} v={v:?}")));
        }
    }
    report.record_bulk("bar-identities", checked);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dnwords::{random_elem, CommutationContext, DnOperad};
    use crate::hyper::SignedPerm;
    use crate::monoid::PointedMonoid;
    use crate::perm::Permutation;
    use crate::operad::{
        h_algebra_from_involutive_monoid, m_algebra_from_monoid, CommOperad, HyperOperad,
        MayOperad,
    };
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn uniform_sampler<'a, P: Operad>(
        fm: &'a FreeMonad<'a, P>,
        max_arity: usize,
    ) -> ValSampler<'a, P> {
        ValSampler {
            fm,
            sample_op: Box::new(move |level, rng| {
                let ops = fm.operad.enumerate_level(level).expect("enumerable");
                ops[rng.gen_range(0..ops.len())].clone()
            }),
            max_arity,
        }
    }

    #[test]
    fn unit_term_contracts() {
        let p = MayOperad;
        let fm = FreeMonad::new(&p, 4).unwrap();
        // [id_1; (unit)] collapses to the nullary unit term
        let v = fm
            .canonicalize_node(1, Permutation::identity(1), vec![Val::Base(1)])
            .unwrap();
        assert_eq!(v, fm.unit_at(1));
        // a term with a basepoint argument collapses
        let v = fm
            .canonicalize_node(
                1,
                Permutation::new(vec![2, 1]).unwrap(),
                vec![Val::Base(2), Val::Base(0)],
            )
            .unwrap();
        assert_eq!(v, Val::Star);
    }

    #[test]
    fn unit_contraction_from_higher_arity() {
        let p = MayOperad;
        let fm = FreeMonad::new(&p, 4).unwrap();
        // [sigma in S3; (a, 1, b)] contracts to an arity-2 term
        let sigma = Permutation::new(vec![3, 1, 2]).unwrap();
        let v = fm
            .canonicalize_node(1, sigma.clone(), vec![Val::Base(2), Val::Base(1), Val::Base(3)])
            .unwrap();
        let Val::Node(op, args) = &v else {
            panic!("expected a node");
        };
        assert_eq!(op.degree(), 2);
        assert_eq!(args.len(), 2);
        // the contraction is the slot-deletion composite
        let expected_op = crate::perm::perm_compose_i(&sigma, &Permutation::identity(0), 2).unwrap();
        // both sides canonicalized in the same orbit
        let direct = fm
            .canonicalize_node(1, expected_op, vec![Val::Base(2), Val::Base(3)])
            .unwrap();
        assert_eq!(v, direct);
    }

    #[test]
    fn contraction_is_confluent() {
        let p = HyperOperad;
        let fm = FreeMonad::new(&p, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let arity = rng.gen_range(1..=4usize);
            let ops = p.enumerate_level(arity).unwrap();
            let op = ops[rng.gen_range(0..ops.len())].clone();
            let args: Vec<Val<SignedPerm>> = (0..arity)
                .map(|_| Val::Base(rng.gen_range(1..4)))
                .collect();
            let canon = fm.canonicalize_node(1, op.clone(), args.clone()).unwrap();
            // contract units in a random order by hand, then canonicalize
            let mut op2 = op;
            let mut args2 = args;
            loop {
                let units: Vec<usize> = args2
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| **a == Val::Base(1))
                    .map(|(i, _)| i)
                    .collect();
                if units.is_empty() {
                    break;
                }
                let pick = units[rng.gen_range(0..units.len())];
                op2 = p.compose(&op2, pick + 1, &p.unit0()).unwrap();
                args2.remove(pick);
            }
            let canon2 = fm.canonicalize_node(1, op2, args2).unwrap();
            assert_eq!(canon, canon2);
        }
    }

    #[test]
    fn orbit_representative_is_stable() {
        let p = MayOperad;
        let fm = FreeMonad::new(&p, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let arity = rng.gen_range(0..=4usize);
            let perms = Permutation::enumerate(arity);
            let op = perms[rng.gen_range(0..perms.len())].clone();
            let args: Vec<Val<Permutation>> =
                (0..arity).map(|_| Val::Base(rng.gen_range(2..5))).collect();
            let canon = fm.canonicalize_node(1, op.clone(), args.clone()).unwrap();
            // acting first must not change the canonical form
            let sigma = perms[rng.gen_range(0..perms.len())].clone();
            let acted_op = p.act(&op, &sigma);
            let acted_args: Vec<Val<Permutation>> =
                (1..=arity).map(|t| args[sigma.apply(t) - 1].clone()).collect();
            let canon2 = fm.canonicalize_node(1, acted_op, acted_args).unwrap();
            assert_eq!(canon, canon2);
        }
    }

    #[test]
    fn census_symmetric_operad_counts_words() {
        let p = MayOperad;
        // one letter: the free monoid on one generator
        let fm = FreeMonad::new(&p, 3).unwrap();
        for j in 0..=5 {
            assert_eq!(fm.census(j).unwrap().cardinality(), j + 2);
        }
        // two letters: words of length <= j
        let fm = FreeMonad::new(&p, 4).unwrap();
        let expect = |j: usize| 1 + (0..=j).map(|a| 2usize.pow(a as u32)).sum::<usize>();
        for j in 0..=4 {
            assert_eq!(fm.census(j).unwrap().cardinality(), expect(j));
        }
    }

    #[test]
    fn census_hyper_operad_counts_doubled_words() {
        let p = HyperOperad;
        let fm = FreeMonad::new(&p, 3).unwrap();
        let table = fm.census(2).unwrap();
        assert_eq!(table.rows[1].cumulative, 4);
        assert_eq!(table.rows[2].cumulative, 8);
        assert!(table.rows.iter().all(|r| r.sigma_free));
    }

    #[test]
    fn census_comm_operad_flags_non_free_levels() {
        let p = CommOperad;
        let fm = FreeMonad::new(&p, 4).unwrap();
        let table = fm.census(3).unwrap();
        assert!(table.rows[2..].iter().all(|r| !r.sigma_free));
        // multisets of size a over two letters: a+1 orbits
        for (a, row) in table.rows.iter().enumerate() {
            if a >= 1 {
                assert_eq!(row.increment, a + 1);
            }
        }
    }

    #[test]
    fn census_increment_matches_orbit_formula_for_free_actions() {
        // increment(j) = |P(j)|/j! * letters^j when the action is free
        let p = HyperOperad;
        let fm = FreeMonad::new(&p, 4).unwrap();
        let table = fm.census(3).unwrap();
        let fact = |k: usize| (1..=k).product::<usize>().max(1);
        for row in &table.rows[1..] {
            let a = row.arity;
            let level = p.enumerate_level(a).unwrap().len();
            assert_eq!(row.increment, level / fact(a) * 2usize.pow(a as u32));
        }
    }

    #[test]
    fn monad_laws_for_enumerable_operads() {
        let m = MayOperad;
        let fm = FreeMonad::new(&m, 4).unwrap();
        let mut sampler = uniform_sampler(&fm, 3);
        let report = verify_monad_laws(&fm, &mut sampler, 500, 11);
        assert!(report.ok(), "{}", report.to_json());

        let h = HyperOperad;
        let fm = FreeMonad::new(&h, 4).unwrap();
        let mut sampler = uniform_sampler(&fm, 3);
        let report = verify_monad_laws(&fm, &mut sampler, 500, 13);
        assert!(report.ok(), "{}", report.to_json());

        let n = CommOperad;
        let fm = FreeMonad::new(&n, 4).unwrap();
        let mut sampler = uniform_sampler(&fm, 3);
        let report = verify_monad_laws(&fm, &mut sampler, 500, 17);
        assert!(report.ok(), "{}", report.to_json());
    }

    #[test]
    fn monad_laws_for_word_operad() {
        let d = DnOperad;
        let fm = FreeMonad::new(&d, 4).unwrap();
        let counter = std::cell::Cell::new(0usize);
        let mut sampler = ValSampler {
            fm: &fm,
            sample_op: Box::new(move |level, rng| {
                let id = counter.get();
                counter.set(id + 1);
                let name = format!("g{id}");
                let ctx = CommutationContext::new(&[name.as_str()], &[], level).unwrap();
                random_elem(&ctx, rng, 4)
            }),
            max_arity: 3,
        };
        let report = verify_monad_laws(&fm, &mut sampler, 500, 19);
        assert!(report.ok(), "{}", report.to_json());
    }

    #[test]
    fn free_monoid_reading_of_mu() {
        // mu is concatenation under the word reading of symmetric terms
        let p = MayOperad;
        let fm = FreeMonad::new(&p, 4).unwrap();
        let word = |letters: &[usize]| {
            fm.canonicalize_node(
                1,
                Permutation::identity(letters.len()),
                letters.iter().map(|&l| Val::Base(l)).collect(),
            )
            .unwrap()
        };
        let read = |v: &Val<Permutation>| -> Vec<usize> {
            let Val::Node(op, args) = v else { panic!("node expected") };
            // position t of the word holds the argument op^{-1}(t)
            let inv = op.inverse();
            (1..=args.len())
                .map(|t| match args[inv.apply(t) - 1] {
                    Val::Base(l) => l,
                    _ => panic!("letter expected"),
                })
                .collect()
        };
        let a = word(&[2, 3]);
        let b = word(&[3]);
        let outer = fm
            .canonicalize_node(2, Permutation::identity(2), vec![a.clone(), b.clone()])
            .unwrap();
        let merged = fm.mu(&outer, 2).unwrap();
        assert_eq!(read(&merged), vec![2, 3, 3]);
        let outer_swapped = fm
            .canonicalize_node(2, Permutation::new(vec![2, 1]).unwrap(), vec![a, b])
            .unwrap();
        let merged = fm.mu(&outer_swapped, 2).unwrap();
        assert_eq!(read(&merged), vec![3, 2, 3]);
    }

    #[test]
    fn bar_identities_hold() {
        let p = MayOperad;
        let fm = FreeMonad::new(&p, 4).unwrap();
        let monoid = PointedMonoid::cyclic_group(3);
        let alg = m_algebra_from_monoid(&monoid);
        let mut sampler = uniform_sampler(&fm, 3);
        let report = verify_bar_identities(&fm, &alg, &mut sampler, 3, 200, 23);
        assert!(report.ok(), "{}", report.to_json());

        let h = HyperOperad;
        let fm = FreeMonad::new(&h, 3).unwrap();
        let monoid = PointedMonoid::cyclic_group(2);
        let alg = h_algebra_from_involutive_monoid(&monoid).unwrap();
        let mut sampler = uniform_sampler(&fm, 2);
        let report = verify_bar_identities(&fm, &alg, &mut sampler, 3, 150, 29);
        assert!(report.ok(), "{}", report.to_json());
    }

    #[test]
    fn first_face_is_multiplication() {
        // on the double layer the first face equals mu
        let p = MayOperad;
        let fm = FreeMonad::new(&p, 4).unwrap();
        let monoid = PointedMonoid::cyclic_group(3);
        let alg = m_algebra_from_monoid(&monoid);
        let mut sampler = uniform_sampler(&fm, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let v = sampler.sample(2, &mut rng).unwrap();
            let d0 = bar_level_eval(&fm, &alg, 1, BarOp::Face(0), &v).unwrap();
            assert_eq!(d0, fm.mu(&v, 2).unwrap());
        }
    }

    #[test]
    fn degeneracy_then_face_is_identity_but_not_conversely() {
        let p = MayOperad;
        let fm = FreeMonad::new(&p, 4).unwrap();
        let monoid = PointedMonoid::cyclic_group(3);
        let alg = m_algebra_from_monoid(&monoid);
        let mut sampler = uniform_sampler(&fm, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let mut saw_difference = false;
        for _ in 0..100 {
            let q = 1usize;
            let v = sampler.sample(q + 1, &mut rng).unwrap();
            let s0 = bar_level_eval(&fm, &alg, q, BarOp::Degeneracy(0), &v).unwrap();
            let back = bar_level_eval(&fm, &alg, q + 1, BarOp::Face(0), &s0).unwrap();
            assert_eq!(back, v);
            let d0 = bar_level_eval(&fm, &alg, q, BarOp::Face(0), &v).unwrap();
            let up = bar_level_eval(&fm, &alg, q - 1, BarOp::Degeneracy(0), &d0).unwrap();
            if up != v {
                saw_difference = true;
            }
        }
        assert!(saw_difference, "s0 d0 is not the identity in general");
    }

    #[test]
    fn pulled_back_word_action_factors_through_signs() {
        // evaluating a composite through the parity morphism gives the same
        // monoid value as composing the sign images first
        let monoid = PointedMonoid::cyclic_group(2);
        let halg = h_algebra_from_involutive_monoid(&monoid).unwrap();
        let ctx_a = CommutationContext::new(&["a", "b"], &[("a", "b")], 2).unwrap();
        let ctx_b = CommutationContext::new(&["p"], &[], 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..200 {
            let a = random_elem(&ctx_a, &mut rng, 6);
            let b = random_elem(&ctx_b, &mut rng, 4);
            let i = rng.gen_range(1..=2);
            let c = crate::dnwords::dn_pair_circ_i(&a, &b, i).unwrap();
            let gs: Vec<usize> = (0..2).map(|_| rng.gen_range(1..monoid.size())).collect();
            let lhs = halg.theta(&c.to_hyperoctahedral(), &gs);
            let rhs = halg.theta(
                &crate::hyper::hyper_compose_i(
                    &a.to_hyperoctahedral(),
                    &b.to_hyperoctahedral(),
                    i,
                )
                .unwrap(),
                &gs,
            );
            assert_eq!(lhs, rhs);
        }
    }
}

//! Ready-made verification batteries over the whole crate, one per
//! subsystem, each returning a structured report.  The command-line front
//! end and the acceptance tests drive these.

use num_traits::Signed;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::barthh::{build_bar, check_cyclotomic_pair, check_cyclotomic_structure, homology};
use crate::crossed::{cs_compose, enumerate_g, CSMorphism, DihedralElem, Flavor, MonotoneMap};
use crate::dnwords::{bar_automorphism, verify_dn_suite};
use crate::error::Error;
use crate::hyper::{hyper_compose_i, hyper_matrix_compose_i, SignedPerm};
use crate::monoid::PointedMonoid;
use crate::operad::{
    algebra_axioms_check, h_algebra_from_involutive_monoid, m_algebra_from_monoid,
    operad_axioms_check, CommOperad, HyperOperad, MayOperad, Operad,
};
use crate::perm::{box_compose_i, perm_compose_i, Permutation};
use crate::report::Report;
use crate::snf::{smith_normal_form, IntMatrix};

/// Exhaustive agreement of the composition formula with the box model, the
/// worked instances, and the symmetric-operad axioms.
pub fn perm_suite(k_max: usize) -> Report {
    let mut report = Report::new("perm").with_param("k_max", k_max);

    let mut checked = 0usize;
    for k in 1..=k_max {
        for j in 0..=k_max {
            for rho in Permutation::enumerate(k) {
                for ups in Permutation::enumerate(j) {
                    for i in 1..=k {
                        checked += 1;
                        let lhs = perm_compose_i(&rho, &ups, i).unwrap();
                        let rhs = box_compose_i(&rho, &ups, i).unwrap();
                        if lhs != rhs {
                            report.record(
                                "box-agreement",
                                false,
                                Some(format!("rho={rho:?} ups={ups:?} i={i}")),
                            );
                        }
                    }
                }
            }
        }
    }
    report.record_bulk("box-agreement", checked);

    let rho = Permutation::new(vec![2, 4, 1, 3]).unwrap();
    let ups = Permutation::new(vec![3, 2, 1]).unwrap();
    let first = perm_compose_i(&rho, &ups, 1).unwrap();
    report.record(
        "worked-example",
        first == Permutation::new(vec![4, 3, 2, 6, 1, 5]).unwrap(),
        Some(format!("{first:?}")),
    );

    report.absorb(operad_axioms_check(&MayOperad, k_max.min(4)));
    report
}

/// Matrix-model agreement, hyperoctahedral operad axioms, and the involutive
/// monoid identities for every involutive pointed monoid up to size four.
pub fn hyper_suite(k_max: usize) -> Report {
    let mut report = Report::new("hyper").with_param("k_max", k_max);

    let mut checked = 0usize;
    for k in 1..=k_max {
        for j in 0..=k_max {
            for a in SignedPerm::enumerate(k) {
                for b in SignedPerm::enumerate(j) {
                    for i in 1..=k {
                        checked += 1;
                        let lhs = hyper_compose_i(&a, &b, i).unwrap().to_matrix();
                        let rhs =
                            hyper_matrix_compose_i(&a.to_matrix(), &b.to_matrix(), i).unwrap();
                        if lhs != rhs {
                            report.record(
                                "matrix-agreement",
                                false,
                                Some(format!("a={a:?} b={b:?} i={i}")),
                            );
                        }
                    }
                }
            }
        }
    }
    report.record_bulk("matrix-agreement", checked);

    report.absorb(operad_axioms_check(&HyperOperad, k_max.min(3)));

    let mut monoids = vec![PointedMonoid::trivial()];
    monoids.extend(PointedMonoid::enumerate_involutive(3));
    monoids.extend(PointedMonoid::enumerate_involutive(4));
    let mut checked = 0usize;
    for m in &monoids {
        let alg = match h_algebra_from_involutive_monoid(m) {
            Ok(a) => a,
            Err(e) => {
                report.record("involutive-monoid", false, Some(e.to_string()));
                continue;
            }
        };
        let minus = SignedPerm::new(
            crate::hyper::SignVector::new(vec![-1]).unwrap(),
            Permutation::identity(1),
        )
        .unwrap();
        let anti = hyper_compose_i(
            &hyper_compose_i(&SignedPerm::identity(2), &minus, 1).unwrap(),
            &minus,
            2,
        )
        .unwrap();
        for x in 1..m.size() {
            checked += 1;
            // iota squared is the identity, through the operad composition
            let twice = alg.theta(&hyper_compose_i(&minus, &minus, 1).unwrap(), &[x]);
            if twice != x {
                report.record("iota-squared", false, Some(format!("monoid={m} x={x}")));
            }
            for y in 1..m.size() {
                checked += 1;
                // iota(x y) = iota(y) iota(x), evaluated both ways
                let lhs = alg.theta(&anti, &[x, y]);
                let rhs = m.mul(m.involute(y).unwrap(), m.involute(x).unwrap());
                if lhs != rhs {
                    report.record(
                        "iota-anti-hom",
                        false,
                        Some(format!("monoid={m} x={x} y={y}")),
                    );
                }
            }
        }
        report.absorb(algebra_axioms_check(&HyperOperad, &alg, 2));
    }
    report.record_bulk("involutive-monoids", checked);
    report
}

/// Randomized word-group suite plus the rewrite-closure oracle at small
/// lengths.
pub fn dn_suite(samples: usize, seed: u64) -> Report {
    let mut report = verify_dn_suite(samples, seed, bar_automorphism);
    report.absorb(dn_bfs_oracle(6));
    report
}

/// Compare the canonical form against breadth-first rewrite closure for all
/// words up to the length bound over a three-label context.
pub fn dn_bfs_oracle(max_len: usize) -> Report {
    use crate::dnwords::{CommutationContext, DnWord, Letter};
    use std::collections::HashSet;

    let mut report = Report::new("dn-bfs").with_param("max_len", max_len);
    let ctx = CommutationContext::new(&["a", "b", "c"], &[("a", "b")], 2).unwrap();
    let letters: Vec<Letter> = (0..3)
        .flat_map(|label| (1..=2).map(move |slot| Letter { label, slot }))
        .collect();

    let commutes = |a: Letter, b: Letter| a.slot != b.slot && ctx.perp_by_index(a.label, b.label);
    let rewrite_class = |word: &[Letter]| -> HashSet<Vec<Letter>> {
        let mut seen = HashSet::new();
        let mut queue = vec![word.to_vec()];
        seen.insert(word.to_vec());
        while let Some(w) = queue.pop() {
            for t in 0..w.len().saturating_sub(1) {
                if w[t] == w[t + 1] {
                    let mut shorter = w.clone();
                    shorter.drain(t..t + 2);
                    if seen.insert(shorter.clone()) {
                        queue.push(shorter);
                    }
                } else if commutes(w[t], w[t + 1]) {
                    let mut swapped = w.clone();
                    swapped.swap(t, t + 1);
                    if seen.insert(swapped.clone()) {
                        queue.push(swapped);
                    }
                }
            }
        }
        seen
    };

    let mut frontier: Vec<Vec<Letter>> = vec![Vec::new()];
    let mut checked = 0usize;
    for _len in 0..=max_len {
        for w in &frontier {
            checked += 1;
            let class = rewrite_class(w);
            let min_len = class.iter().map(Vec::len).min().unwrap();
            let lex_least = class
                .iter()
                .filter(|c| c.len() == min_len)
                .min()
                .unwrap()
                .clone();
            let nf = DnWord::new(&ctx, w).unwrap();
            if nf.len() != min_len || nf.letters() != lex_least.as_slice() {
                report.record("bfs-oracle", false, Some(format!("w={w:?}")));
            }
        }
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                let mut w2 = w.clone();
                w2.push(l);
                next.push(w2);
            }
        }
        frontier = next;
    }
    report.record_bulk("bfs-oracle", checked);
    report
}

/// Morphism-calculus checks: associativity of composition on random factored
/// morphisms, the group-nerve censuses and the nerve identity checks.
pub fn crossed_suite(max_degree: usize, r_max: usize, seed: u64) -> Report {
    let mut report = Report::new("crossed")
        .with_param("max_degree", max_degree)
        .with_param("r_max", r_max)
        .with_seed(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut flavors = vec![Flavor::Involutive];
    for r in 1..=r_max {
        flavors.push(Flavor::Cyclic { r });
        flavors.push(Flavor::Dihedral { r });
    }

    let mut checked = 0usize;
    for &flavor in &flavors {
        for _ in 0..400 {
            let a = rng.gen_range(0..=max_degree);
            let b = rng.gen_range(0..=max_degree);
            let c = rng.gen_range(0..=max_degree);
            let d = rng.gen_range(0..=max_degree);
            let f = random_morphism(&mut rng, flavor, b, a);
            let g = random_morphism(&mut rng, flavor, c, b);
            let h = random_morphism(&mut rng, flavor, d, c);
            checked += 1;
            let lhs = cs_compose(&cs_compose(&f, &g).unwrap(), &h).unwrap();
            let rhs = cs_compose(&f, &cs_compose(&g, &h).unwrap()).unwrap();
            if lhs != rhs {
                report.record(
                    "associativity",
                    false,
                    Some(format!("{flavor:?} f={f:?} g={g:?} h={h:?}")),
                );
            }
        }
    }
    report.record_bulk("associativity", checked);

    // censuses
    let census = enumerate_g(Flavor::Involutive, 4).unwrap();
    report.record(
        "census/involutive",
        census.nondegenerate == vec![2, 0, 0, 0, 0],
        Some(format!("{:?}", census.nondegenerate)),
    );
    for r in 1..=r_max {
        let census = enumerate_g(Flavor::Cyclic { r }, 4).unwrap();
        let mut ok = census.nondegenerate == vec![r, r, 0, 0, 0];
        for &(rot, refl, d0, d1) in &census.one_cell_faces {
            let i = (rot + 1) / 2;
            ok &= !refl && rot % 2 == 1 && d0 == ((i - 1) % r, false) && d1 == (i % r, false);
        }
        report.record(
            "census/cyclic",
            ok,
            Some(format!("r={r} {:?}", census.nondegenerate)),
        );
        let census = enumerate_g(Flavor::Dihedral { r }, 4).unwrap();
        report.record(
            "census/dihedral",
            census.nondegenerate == vec![2 * r, 2 * r, 0, 0, 0]
                && census.euler_characteristic == 0
                && census.components == 2,
            Some(format!(
                "r={r} {:?} euler={} comps={}",
                census.nondegenerate, census.euler_characteristic, census.components
            )),
        );
    }

    // the group nerves satisfy their own identities
    for &flavor in &flavors {
        let obj = crate::crossed::PresentedObject::from_group_nerve(flavor, 4).unwrap();
        report.absorb(obj.check_identities(4));
    }
    report
}

fn random_morphism(
    rng: &mut ChaCha8Rng,
    flavor: Flavor,
    source: usize,
    target: usize,
) -> CSMorphism {
    let mut images: Vec<usize> = (0..=source).map(|_| rng.gen_range(0..=target)).collect();
    images.sort_unstable();
    let monotone = MonotoneMap::new(images, target).unwrap();
    let group = DihedralElem {
        degree: source,
        rot: if flavor.has_rotation() {
            rng.gen_range(0..flavor.rotation_order(source))
        } else {
            0
        },
        refl: flavor.has_reflection() && rng.gen_bool(0.5),
    };
    CSMorphism::new(flavor, monotone, group).unwrap()
}

/// Bar-construction battery for one monoid: identity checks, subdivision
/// fixed points with the diagonal identification, and the stage-compatible
/// square at small parameters.
pub fn bar_suite(monoid: &PointedMonoid, q_max: usize, r_max: usize) -> Result<Report, Error> {
    let mut report = Report::new("bar")
        .with_param("monoid", monoid.name())
        .with_param("q_max", q_max)
        .with_param("r_max", r_max);
    let bar = build_bar(monoid, q_max.max(4))?;
    report.absorb(bar.check_identities(q_max.max(4)));
    for r in 1..=r_max {
        report.absorb(check_cyclotomic_structure(monoid, q_max.min(3), r)?);
    }
    for r in 1..=2usize {
        for s in 1..=2usize {
            report.absorb(check_cyclotomic_pair(monoid, q_max.min(3), r, s)?);
        }
    }
    Ok(report)
}

/// Homology battery: the two-point monoid values, the component count of a
/// three-element group, and random round trips of the normal form engine.
pub fn homology_suite(seed: u64) -> Report {
    let mut report = Report::new("homology").with_seed(seed);

    let trivial = PointedMonoid::trivial();
    let bar = build_bar(&trivial, 4).unwrap();
    let h = homology(&bar, 3).unwrap();
    report.record(
        "trivial-monoid-point",
        h[0].rank == 1
            && h[0].torsion.is_empty()
            && h[1..].iter().all(|g| g.rank == 0 && g.torsion.is_empty()),
        Some(format!("{h:?}")),
    );

    let c2 = PointedMonoid::cyclic_group(2);
    let bar = build_bar(&c2, 5).unwrap();
    let h = homology(&bar, 3).unwrap();
    report.record(
        "two-element-group",
        h[0].rank == 2
            && h[0].torsion.is_empty()
            && h[1].rank == 0
            && h[1].torsion == vec![2, 2]
            && h[2].rank == 0
            && h[2].torsion.is_empty()
            && h[3].rank == 0
            && h[3].torsion == vec![2, 2],
        Some(format!("{h:?}")),
    );

    let c3 = PointedMonoid::cyclic_group(3);
    let bar = build_bar(&c3, 2).unwrap();
    let h = homology(&bar, 1).unwrap();
    report.record(
        "three-element-group-components",
        h[0].rank == 3 && h[0].torsion.is_empty(),
        Some(format!("{h:?}")),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0usize;
    for _ in 0..100 {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=6);
        let entries: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-9..=9)).collect();
        let a = IntMatrix::from_i64(rows, cols, &entries).unwrap();
        let snf = smith_normal_form(&a);
        checked += 1;
        let ok = snf.u.mul(&a).mul(&snf.v) == snf.d
            && snf.u.determinant().abs() == num_bigint::BigInt::from(1)
            && snf.v.determinant().abs() == num_bigint::BigInt::from(1);
        if !ok {
            report.record("snf-round-trip", false, Some(format!("{a:?}")));
        }
    }
    report.record_bulk("snf-round-trip", checked);
    report
}

/// Trace battery over the listed monoids.
pub fn trace_suite(n: usize, q_max: usize, monoid: &PointedMonoid) -> Report {
    crate::mattrace::verify_trace_suite(n, q_max, monoid)
}

/// Monad-law and census battery for the built-in operads.
pub fn monad_suite(samples: usize, seed: u64) -> Report {
    use crate::freemonad::{verify_monad_laws, FreeMonad, ValSampler};

    let mut report = Report::new("monad")
        .with_param("samples", samples)
        .with_seed(seed);

    fn uniform<'a, P: Operad>(fm: &'a FreeMonad<'a, P>, max_arity: usize) -> ValSampler<'a, P> {
        ValSampler {
            fm,
            sample_op: Box::new(move |level, rng| {
                let ops = fm.operad.enumerate_level(level).expect("enumerable");
                ops[rng.gen_range(0..ops.len())].clone()
            }),
            max_arity,
        }
    }

    let may = MayOperad;
    let fm = FreeMonad::new(&may, 4).unwrap();
    let mut sampler = uniform(&fm, 3);
    report.absorb(verify_monad_laws(&fm, &mut sampler, samples, seed));

    let comm = CommOperad;
    let fm = FreeMonad::new(&comm, 4).unwrap();
    let mut sampler = uniform(&fm, 3);
    report.absorb(verify_monad_laws(&fm, &mut sampler, samples, seed ^ 1));

    let hyp = HyperOperad;
    let fm = FreeMonad::new(&hyp, 4).unwrap();
    let mut sampler = uniform(&fm, 3);
    report.absorb(verify_monad_laws(&fm, &mut sampler, samples, seed ^ 2));

    let dn = crate::dnwords::DnOperad;
    let fm = FreeMonad::new(&dn, 4).unwrap();
    let mut counter = 0usize;
    let mut sampler = ValSampler {
        fm: &fm,
        sample_op: Box::new(move |level, rng| {
            counter += 1;
            let name = format!("g{counter}");
            let ctx =
                crate::dnwords::CommutationContext::new(&[name.as_str()], &[], level).unwrap();
            crate::dnwords::random_elem(&ctx, rng, 4)
        }),
        max_arity: 3,
    };
    report.absorb(verify_monad_laws(&fm, &mut sampler, samples, seed ^ 3));

    // census values
    let fm = FreeMonad::new(&may, 3).unwrap();
    for j in 0..=5 {
        let got = fm.census(j).unwrap().cardinality();
        report.record(
            "census/symmetric-one-letter",
            got == j + 2,
            Some(format!("j={j} got={got}")),
        );
    }
    let fm = FreeMonad::new(&hyp, 3).unwrap();
    let table = fm.census(2).unwrap();
    report.record(
        "census/hyper-one-letter",
        table.rows[1].cumulative == 4 && table.rows[2].cumulative == 8,
        Some(format!("{:?}", table.rows)),
    );

    // simplicial identities of the two-sided bar levels
    let monoid = PointedMonoid::cyclic_group(3);
    let alg = m_algebra_from_monoid(&monoid);
    let fm = FreeMonad::new(&may, monoid.size()).unwrap();
    let mut sampler = uniform(&fm, 3);
    report.absorb(crate::freemonad::verify_bar_identities(
        &fm,
        &alg,
        &mut sampler,
        3,
        200,
        seed ^ 4,
    ));
    report
}

/// The default acceptance battery across every subsystem.
pub fn all_suites(seed: u64) -> Vec<Report> {
    let mut out = vec![
        perm_suite(4),
        hyper_suite(3),
        dn_suite(1000, seed),
        crossed_suite(5, 3, seed),
    ];
    for m in [PointedMonoid::trivial(), PointedMonoid::cyclic_group(2)] {
        out.push(bar_suite(&m, 4, 3).expect("valid monoid"));
    }
    out.push(homology_suite(seed));
    out.push(trace_suite(2, 2, &PointedMonoid::cyclic_group(2)));
    out.push(monad_suite(500, seed));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_are_green() {
        let report = perm_suite(3);
        assert!(report.ok(), "{}", report.to_json());
        let report = hyper_suite(2);
        assert!(report.ok(), "{}", report.to_json());
        let report = crossed_suite(4, 2, 0);
        assert!(report.ok(), "{}", report.to_json());
        let report = homology_suite(0);
        assert!(report.ok(), "{}", report.to_json());
    }

    #[test]
    fn bar_suite_covers_triple_subdivision() {
        let report = bar_suite(&PointedMonoid::cyclic_group(2), 4, 3).unwrap();
        assert!(report.ok(), "{}", report.to_json());
    }
}

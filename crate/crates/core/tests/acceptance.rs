//! Acceptance battery: one test per criterion, each printing a pass line.
//! Every tolerance and bound is pinned here; run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::Instant;

use dihedra::barthh::build_bar;
use dihedra::dnwords::{bar_automorphism, verify_dn_suite};
use dihedra::mattrace::{mat_census, MatrixElem};
use dihedra::monoid::PointedMonoid;
use dihedra::perm::{box_compose_i, perm_compose_i, Permutation};
use dihedra::suites;

fn involutive_monoids_up_to(size: usize) -> Vec<PointedMonoid> {
    let mut out = vec![PointedMonoid::trivial()];
    for s in 3..=size {
        out.extend(PointedMonoid::enumerate_involutive(s));
    }
    out
}

#[test]
fn criterion_1_operad_arithmetic() {
    let start = Instant::now();

    // box-model agreement, exhaustive for k, j <= 5
    let mut cases = 0usize;
    for k in 1..=5usize {
        for j in 0..=5usize {
            for rho in Permutation::enumerate(k) {
                for ups in Permutation::enumerate(j) {
                    for i in 1..=k {
                        cases += 1;
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
    assert!(cases > 100_000, "expected about 1e5 cases, got {cases}");

    // the worked example reproduced exactly
    let rho = Permutation::new(vec![2, 4, 1, 3]).unwrap();
    let ups = Permutation::new(vec![3, 2, 1]).unwrap();
    assert_eq!(
        perm_compose_i(&rho, &ups, 1).unwrap(),
        Permutation::new(vec![4, 3, 2, 6, 1, 5]).unwrap()
    );

    // group-product formulas, exhaustive for k, j <= 4
    let c = |a: &Permutation, b: &Permutation, s: usize| perm_compose_i(a, b, s).unwrap();
    for k in 1..=4usize {
        for j in 1..=4usize {
            let idk = Permutation::identity(k);
            let idj = Permutation::identity(j);
            for rho in Permutation::enumerate(k) {
                for rho2 in Permutation::enumerate(k) {
                    for ups in Permutation::enumerate(j) {
                        for ups2 in Permutation::enumerate(j) {
                            for i in 1..=k {
                                assert_eq!(
                                    c(&rho, &ups, i),
                                    c(&rho, &idj, i).compose(&c(&idk, &ups, i))
                                );
                                assert_eq!(
                                    c(&rho, &ups, i),
                                    c(&idk, &ups, rho.apply(i)).compose(&c(&rho, &idj, i))
                                );
                                assert_eq!(
                                    c(&idk, &ups.compose(&ups2), i),
                                    c(&idk, &ups, i).compose(&c(&idk, &ups2, i))
                                );
                                assert_eq!(
                                    c(&rho.compose(&rho2), &idj, i),
                                    c(&rho, &idj, rho2.apply(i)).compose(&c(&rho2, &idj, i))
                                );
                                assert_eq!(
                                    c(&rho.compose(&rho2), &ups.compose(&ups2), i),
                                    c(&rho, &ups, rho2.apply(i)).compose(&c(&rho2, &ups2, i))
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    // iterated compositions, exhaustive for k, j, l <= 3
    for k in 1..=3usize {
        for j in 1..=3usize {
            for l in 1..=3usize {
                for rho in Permutation::enumerate(k) {
                    for ups in Permutation::enumerate(j) {
                        for mu in Permutation::enumerate(l) {
                            for a in 1..=k {
                                for b in 1..=(k + j - 1) {
                                    let lhs = c(&c(&rho, &ups, a), &mu, b);
                                    let rhs = if b < a {
                                        c(&c(&rho, &mu, b), &ups, a + l - 1)
                                    } else if b < a + j {
                                        c(&rho, &c(&ups, &mu, b - a + 1), a)
                                    } else {
                                        c(&c(&rho, &mu, b - j + 1), &ups, a)
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

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "criterion 1 exceeded 10 s: {elapsed:?}");
    println!("criterion 1 (operad arithmetic, {cases} box cases, {elapsed:?}): PASS");
}

#[test]
fn criterion_2_hyperoctahedral_consistency() {
    let report = suites::hyper_suite(3);
    assert!(report.ok(), "{}", report.to_json());
    println!("criterion 2 (hyperoctahedral consistency): PASS");
}

#[test]
fn criterion_3_word_groups() {
    // rewrite-closure oracle on all words of length <= 6 over three labels
    let bfs = suites::dn_bfs_oracle(6);
    assert!(bfs.ok(), "{}", bfs.to_json());

    // the composition formulas, parity interaction, associativity,
    // equivariance and the algebra action, >= 1000 seeded cases each
    let report = verify_dn_suite(2000, 0, bar_automorphism);
    assert!(report.ok(), "{}", report.to_json());
    for family in [
        "circ/i",
        "circ/ii-iii",
        "circ/iv-vii",
        "circ/viii-ix",
        "circ/x-xi",
        "parity/circ",
        "assoc/words",
        "assoc/pairs",
        "equivariance/pairs",
        "morphism/to-hyper",
        "algebra/acts",
    ] {
        let count = report
            .cases
            .iter()
            .filter(|c| c.case.starts_with(family))
            .count();
        assert!(count >= 1000, "family {family} ran only {count} cases");
    }
    println!("criterion 3 (word groups, {} cases): PASS", report.passed);
}

#[test]
fn criterion_4_crossed_simplicial() {
    let report = suites::crossed_suite(5, 3, 0);
    assert!(report.ok(), "{}", report.to_json());
    println!("criterion 4 (crossed simplicial calculus): PASS");
}

#[test]
fn criterion_5_cyclotomic_combinatorics() {
    let start = Instant::now();
    for m in involutive_monoids_up_to(3) {
        let bar = build_bar(&m, 4).expect("bar builds");
        let identities = bar.check_identities(4);
        assert!(identities.ok(), "monoid {m}: {}", identities.to_json());
        for r in 1..=2usize {
            let report = dihedra::barthh::check_cyclotomic_structure(&m, 3, r).unwrap();
            assert!(report.ok(), "monoid {m} r={r}: {}", report.to_json());
        }
        for r in 1..=2usize {
            for s in 1..=2usize {
                let report = dihedra::barthh::check_cyclotomic_pair(&m, 3, r, s).unwrap();
                assert!(report.ok(), "monoid {m} r={r} s={s}: {}", report.to_json());
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "criterion 5 exceeded 1 min: {elapsed:?}");
    println!("criterion 5 (cyclotomic combinatorics, {elapsed:?}): PASS");
}

#[test]
fn criterion_6_homology() {
    let report = suites::homology_suite(0);
    assert!(report.ok(), "{}", report.to_json());
    println!("criterion 6 (homology engine): PASS");
}

#[test]
fn criterion_7_matrix_trace() {
    // census formula against enumeration for n <= 3
    for n in 1..=3usize {
        for monoid in [PointedMonoid::trivial(), PointedMonoid::cyclic_group(2)] {
            let all = MatrixElem::enumerate(n, &monoid);
            let total: u64 = (0..=n)
                .map(|k| mat_census(n, k, monoid.size()).unwrap())
                .sum();
            assert_eq!(all.len() as u64, total, "n={n} monoid={monoid}");
        }
    }
    let seven: u64 = (0..=2).map(|k| mat_census(2, k, 2).unwrap()).sum();
    assert_eq!(seven, 7);

    // trace equivariance, additivity and the homotopy identities,
    // exhaustive for n <= 2, q <= 2, and every involutive monoid |M| <= 3
    for m in involutive_monoids_up_to(3) {
        let report = suites::trace_suite(2, 2, &m);
        assert!(report.ok(), "monoid {m}: {}", report.to_json());
    }
    println!("criterion 7 (matrix trace): PASS");
}

#[test]
fn criterion_8_free_monad() {
    let report = suites::monad_suite(500, 0);
    assert!(report.ok(), "{}", report.to_json());
    println!("criterion 8 (free monad): PASS");
}

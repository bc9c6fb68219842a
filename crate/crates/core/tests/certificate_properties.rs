mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use unidiff::certificate::{
    all_systems, block_gram_inequality_check, bound_audit, build_system, certify_all_systems,
    path_gram_det, path_matrix, smith_normal_form, type1_graph, verify_snf_theorem, MinorSampling,
    ViolationKind,
};
use unidiff::matrix::gram_det;
use unidiff::{unique_difference, IntMatrix, Prime, SymSet};

use common::{gram_det_gram_schmidt, rational_det, subsets};

/// Every symmetric set of 𝔽_p with at least two nonzero orbits and no
/// unique difference.
fn no_unique_difference_sets(p: u64) -> Vec<SymSet> {
    let prime = Prime::new(p).unwrap();
    let h = ((p - 1) / 2) as usize;
    let mut out = Vec::new();
    for k in 2..=h {
        for s in subsets(h, k) {
            let half: Vec<i64> = s.iter().map(|&i| i as i64 + 1).collect();
            for zero in [false, true] {
                let set = SymSet::new(prime, &half, zero).unwrap();
                if unique_difference(&set).is_none() {
                    out.push(set);
                }
            }
        }
    }
    out
}

#[test]
fn systems_have_zero_residual_and_exact_shape() {
    for p in [5u64, 7, 11, 13, 17] {
        for set in no_unique_difference_sets(p) {
            let (systems, _) = all_systems(&set, 64).unwrap();
            assert!(!systems.is_empty());
            assert_eq!(systems[0], build_system(&set).unwrap());
            for sys in systems {
                assert!(sys.residuals().iter().all(|&r| r == 0), "{set:?}");
                for (k, eq) in sys.equations.iter().enumerate() {
                    let row: Vec<i64> = sys
                        .matrix
                        .row(k)
                        .iter()
                        .map(|v| i64::try_from(v).unwrap())
                        .collect();
                    assert!(eq.matches_shape(&row), "{set:?} row {k}");
                }
            }
        }
    }
}

#[test]
fn every_equation_choice_is_certified() {
    let sampling = MinorSampling {
        samples: 50,
        ..MinorSampling::default()
    };
    for p in [5u64, 7, 11, 13, 17] {
        for set in no_unique_difference_sets(p) {
            let report = certify_all_systems(&set, 256, &sampling).unwrap();
            assert!(report.all_divisible, "{set:?}: {report:?}");
            assert!(!report.ranks.is_empty());
        }
    }
}

#[test]
fn every_set_without_unique_difference_is_certified() {
    let sampling = MinorSampling::default();
    for p in [5u64, 7, 11, 13, 17, 19] {
        for set in no_unique_difference_sets(p) {
            let cert =
                verify_snf_theorem(&set, &sampling).unwrap_or_else(|e| panic!("{set:?}: {e}"));
            assert!((cert.determinantal_divisor() % BigInt::from(p)).is_zero());
        }
    }
}

#[test]
fn type1_degrees_are_at_most_one() {
    for p in [5u64, 7, 11, 13, 17, 19] {
        for set in no_unique_difference_sets(p) {
            let sys = build_system(&set).unwrap();
            let graph = type1_graph(&sys).unwrap();
            for v in graph.violations() {
                assert!(
                    !matches!(v.kind, ViolationKind::InDegree | ViolationKind::OutDegree),
                    "{set:?}: {v:?}"
                );
            }
        }
    }
}

#[test]
fn audit_links_that_always_hold() {
    for p in [5u64, 7, 11, 13, 17] {
        for set in no_unique_difference_sets(p) {
            let audit = bound_audit(&set).unwrap();
            for name in ["peel_identity", "volume", "snf_floor"] {
                assert!(audit.check(name).unwrap().holds, "{set:?}: {name}");
            }
            if let Some(c) = audit.check("type1_bound") {
                assert!(c.holds, "{set:?}");
            }
            assert!(!audit.contradiction_confirmed);
        }
    }
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=7)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
}

proptest! {
    #[test]
    fn path_gram_for_any_signs(signs in prop::collection::vec(prop::bool::ANY, 1..=10)) {
        let signs: Vec<i8> = signs.iter().map(|&s| if s { 1 } else { -1 }).collect();
        prop_assert_eq!(gram_det(&path_matrix(&signs)), path_gram_det(signs.len()));
    }

    #[test]
    fn stacked_gram_at_most_product(a in matrix_strategy(), b in matrix_strategy()) {
        let cols = a[0].len().min(b[0].len());
        let a: Vec<Vec<i64>> = a.into_iter().map(|r| r[..cols].to_vec()).collect();
        let b: Vec<Vec<i64>> = b.into_iter().map(|r| r[..cols].to_vec()).collect();
        let report = block_gram_inequality_check(&[IntMatrix::from_rows(&a), IntMatrix::from_rows(&b)]);
        prop_assert!(report.holds);
        let stacked: Vec<Vec<i64>> = a.iter().chain(&b).cloned().collect();
        prop_assert_eq!(num_rational::BigRational::from_integer(report.stacked.clone()), gram_det_gram_schmidt(&stacked));
    }

    #[test]
    fn smith_form_reconstructs(rows in matrix_strategy()) {
        let m = IntMatrix::from_rows(&rows);
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.left.mul(&snf.d_matrix(m.rows(), m.cols())).mul(&snf.right), m.clone());
        prop_assert_eq!(snf.reconstruct(), m.clone());
        prop_assert!(rational_det(&snf.left).abs().is_one());
        prop_assert!(rational_det(&snf.right).abs().is_one());
        prop_assert_eq!(snf.rank, m.rank());
        for w in snf.diagonal.windows(2) {
            prop_assert!(w[0].is_positive() && (&w[1] % &w[0]).is_zero());
        }
    }
}

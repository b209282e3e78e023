use num_bigint::BigInt;
use proptest::prelude::*;

use cyclodet::groupdet::{self, ExponentVector};
use cyclodet::msp::{self, EvalInstance};
use cyclodet::partitions::{self, enumerate, BoundedPartition};
use cyclodet::verify::{self, VerifyConfig};

fn dp(parts: Vec<i64>, n: u32, k: u32) -> BigInt {
    msp::msp_value_dp(&EvalInstance::new(parts, n, k).unwrap()).unwrap()
}

#[test]
fn dp_matches_naive_on_zero_padded_partitions() {
    for (n, k) in [
        (1, 1),
        (2, 1),
        (2, 2),
        (3, 1),
        (3, 2),
        (4, 1),
        (2, 3),
        (1, 9),
    ] {
        for l in enumerate(n, (k * n) as usize, true) {
            let inst = EvalInstance::from_partition(&l, k).unwrap();
            assert_eq!(
                msp::msp_value_dp(&inst).unwrap(),
                msp::msp_value_naive(&inst).unwrap(),
                "{inst}"
            );
        }
    }
}

#[test]
fn dp_matches_expansion_beyond_the_permutation_guard() {
    for (n, k) in [(4, 3), (5, 2), (3, 4)] {
        let map = groupdet::dedekind_expand(n, k).unwrap();
        for l in enumerate(n, (k * n) as usize, false) {
            let e = ExponentVector::from_partition(&l).unwrap();
            assert_eq!(map.get(&e), dp(l.as_i64(), n, k), "({l}) n={n} k={k}");
        }
    }
}

#[test]
fn character_product_equals_permutation_determinant() {
    for n in 1..=7 {
        assert_eq!(
            groupdet::dedekind_expand(n, 1).unwrap(),
            groupdet::leibniz_determinant(n).unwrap(),
            "n={n}"
        );
    }
}

#[test]
fn powers_multiply() {
    for n in 1..=4 {
        for (k, l) in [(1, 1), (1, 2)] {
            let a = groupdet::dedekind_expand(n, k).unwrap();
            let b = groupdet::dedekind_expand(n, l).unwrap();
            assert_eq!(
                a.mul(&b),
                groupdet::dedekind_expand(n, k + l).unwrap(),
                "n={n} k={k} l={l}"
            );
        }
    }
}

#[test]
fn expansion_support_and_relabeling() {
    for n in 1..=6 {
        for k in 1..=2 {
            let map = groupdet::dedekind_expand(n, k).unwrap();
            assert!(map.iter().all(|(e, _)| e.weighted_sum() % n as u64 == 0));
            for l in 1..n as i64 {
                if partitions::gcd(l, n as i64) == 1 {
                    assert_eq!(map.relabel(l).unwrap(), map, "n={n} k={k} l={l}");
                }
            }
        }
    }
}

#[test]
fn closed_form_agrees_with_dp_everywhere_it_applies() {
    for n in 1..=6 {
        for k in 1..=2 {
            for l in enumerate(n, (k * n) as usize, false) {
                let inst = EvalInstance::from_partition(&l, k).unwrap();
                if let Some(r) = msp::closed_form(&inst) {
                    assert_eq!(r.unwrap().0, msp::msp_value_dp(&inst).unwrap(), "{inst}");
                }
            }
        }
    }
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let one = VerifyConfig::default();
    let many = VerifyConfig {
        jobs: 4,
        ..VerifyConfig::default()
    };
    for (n, k) in [(3, 1), (4, 2)] {
        let a = verify::check_theorems(n, k, &one).unwrap();
        let b = verify::check_theorems(n, k, &many).unwrap();
        assert!(a.passed(), "{a:?}");
        assert_eq!(a.to_json_without_timing(), b.to_json_without_timing());
    }
    let a = verify::explore_conjecture(6, 1, &one).unwrap();
    let b = verify::explore_conjecture(6, 1, &many).unwrap();
    assert_eq!(a.zero_coefficients, b.zero_coefficients);
}

#[test]
fn conjecture_report_partitions_lambda_tilde() {
    let cfg = VerifyConfig::default();
    for (n, k) in [(4, 1), (6, 1), (3, 2), (4, 2)] {
        let r = verify::explore_conjecture(n, k, &cfg).unwrap();
        assert_eq!(r.total, partitions::lambda_tilde_size(n, k));
        assert_eq!(
            partitions::to_u64(&r.total),
            Some(r.nonzero + r.zero_coefficients.len() as u64)
        );
        assert_eq!(
            r.consistent_with_conjecture,
            r.is_prime_power == r.zero_coefficients.is_empty()
        );
    }
}

#[test]
fn all_suites_pass_on_small_cases() {
    let cfg = VerifyConfig::default();
    for (n, k) in [(2, 1), (3, 1), (4, 1), (2, 2), (3, 2)] {
        for r in verify::run_suite(verify::Suite::All, n, k, 1, None, &cfg).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
    }
}

fn lambda_in(n: u32, k: u32) -> impl Strategy<Value = BoundedPartition> {
    prop::collection::vec(1..=n, (k * n) as usize)
        .prop_map(move |parts| BoundedPartition::new(parts, n).unwrap())
}

fn instance() -> impl Strategy<Value = (u32, u32)> {
    (1u32..=5, 1u32..=2)
}

proptest! {
    #[test]
    fn residue_reduction_scales_by_collision_factor(
        (n, k, parts) in instance().prop_flat_map(|(n, k)| {
            (Just(n), Just(k), prop::collection::vec(-20i64..20, (k * n) as usize))
        })
    ) {
        let canonical = partitions::canonical_residues(&parts, n);
        let factor = BigInt::from(msp::residue_collision_factor(&parts, n));
        prop_assert_eq!(dp(parts.clone(), n, k), factor * dp(canonical.as_i64(), n, k));
    }

    #[test]
    fn incongruent_parts_reduce_without_change(
        (n, k, parts) in instance().prop_flat_map(|(n, k)| {
            let shifted = prop::collection::vec((1..=n as i64, -3i64..3), (k * n) as usize);
            (Just(n), Just(k), shifted)
        })
    ) {
        // One integer lift per residue, so distinct parts are never congruent.
        let parts: Vec<i64> = parts
            .iter()
            .map(|&(r, _)| {
                let lift = parts.iter().find(|&&(s, _)| s == r).unwrap().1;
                r + lift * n as i64
            })
            .collect();
        let canonical = partitions::canonical_residues(&parts, n);
        prop_assert_eq!(dp(parts, n, k), dp(canonical.as_i64(), n, k));
    }

    #[test]
    fn scaling_by_units_preserves_values(
        (n, k, l, lambda) in instance().prop_flat_map(|(n, k)| (Just(n), Just(k), 1i64..60, lambda_in(n, k)))
    ) {
        prop_assume!(partitions::gcd(l, n as i64) == 1);
        let scaled = msp::scale_partition(&lambda.as_i64(), l, n).unwrap();
        prop_assert_eq!(dp(scaled.as_i64(), n, k), dp(lambda.as_i64(), n, k));
    }

    #[test]
    fn values_vanish_off_class_and_coefficient_matches(
        (n, k, lambda) in (1u32..=6, 1u32..=3).prop_flat_map(|(n, k)| (Just(n), Just(k), lambda_in(n, k)))
    ) {
        let v = dp(lambda.as_i64(), n, k);
        if lambda.size() % n as u64 != 0 {
            prop_assert_eq!(&v, &BigInt::from(0));
        }
        prop_assert_eq!(groupdet::coefficient(n, k, &lambda).unwrap(), v);
    }
}

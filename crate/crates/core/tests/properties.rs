//! Cross-module invariants, checked on random parameters.

use krw_core::krawtchouk::{krawtchouk_eval, krawtchouk_table, mirror_check, normalized_recurrence_residual};
use krw_core::model_bargmann::{bargmann_biorthogonality, bargmann_lambda_star, truncated_2f1_form};
use krw_core::model_bg::{bg_biorthogonality, exp_times_1f1};
use krw_core::model_fd::fd_biorthogonality;
use krw_core::pade_kummer::{kummer_residual, pade_exp, truncated_1f1};
use krw_core::su2_rep::{biorthogonality_gram, build_star_rep, star_from_tilde};
use krw_core::verify::{verify, Identity, VerifyOptions, VerifyReport};
use krw_core::{series_exp, ExactScalar};
use proptest::prelude::*;

/// `(N, n, k)` with `n, k <= N`.
fn lattice(max_n: usize) -> impl Strategy<Value = (usize, usize, usize)> {
    (1..=max_n).prop_flat_map(|big_n| (Just(big_n), 0..=big_n, 0..=big_n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn self_duality((big_n, n, k) in lattice(30)) {
        prop_assert_eq!(krawtchouk_eval(n, k, big_n).unwrap(), krawtchouk_eval(k, n, big_n).unwrap());
    }

    #[test]
    fn mirror_symmetry((big_n, n, k) in lattice(30)) {
        prop_assert!(mirror_check(n, k, big_n).unwrap());
    }

    #[test]
    fn monic_recurrence((big_n, n, k) in lattice(16)) {
        prop_assert!(normalized_recurrence_residual(n, k, big_n).unwrap().is_zero());
    }

    #[test]
    fn value_at_origin_is_one((big_n, n, _k) in lattice(20)) {
        let t = krawtchouk_table(big_n).unwrap();
        prop_assert!(t.get(n, 0).is_one());
    }

    #[test]
    fn kummer_for_any_integer_top(big_n in 1usize..=20, a in -40i64..=40) {
        prop_assert!(kummer_residual(a, big_n).unwrap().is_zero());
    }

    #[test]
    fn star_basis_by_conjugation(big_n in 1usize..=25) {
        prop_assert_eq!(star_from_tilde(big_n).unwrap(), build_star_rep(big_n).unwrap());
    }

    #[test]
    fn pade_uses_the_bg_truncations((big_n, _n, k) in lattice(15)) {
        // R_(k, N-k) carries the same truncated 1F1 as the BG generating functions.
        let p = pade_exp(k, big_n - k).unwrap();
        let two = ExactScalar::from_int(2);
        let direct = truncated_1f1(-(k as i64), big_n, &two).unwrap();
        prop_assert_eq!(p.numerator.to_series(big_n).scale_arg(&two), direct.coeffs);
        let adjoint = truncated_1f1(k as i64 - big_n as i64, big_n, &-two.clone()).unwrap();
        prop_assert_eq!(p.denominator.to_series(big_n).scale_arg(&two), adjoint.coeffs.clone());
        // and the BG closed form is the product with the exponential
        let closed = exp_times_1f1(1, k as i64 - big_n as i64, big_n, -2).unwrap();
        prop_assert_eq!(closed.to_series(big_n), &series_exp(big_n) * &adjoint.coeffs);
    }

    #[test]
    fn two_f1_form_matches_adjoint_eigenfunction((big_n, _n, k) in lattice(12)) {
        prop_assert_eq!(truncated_2f1_form(k, big_n).unwrap(), bargmann_lambda_star(k, big_n).unwrap());
    }
}

#[test]
fn grams_agree_across_models() {
    for big_n in 1..=6 {
        let rep = biorthogonality_gram(big_n).unwrap();
        assert_eq!(fd_biorthogonality(big_n).unwrap(), rep);
        assert_eq!(bargmann_biorthogonality(big_n).unwrap(), rep);
        assert_eq!(bg_biorthogonality(big_n).unwrap(), rep);
    }
}

#[test]
fn reports_round_trip_through_json() {
    for &identity in Identity::ALL {
        let report = verify(identity, 3, VerifyOptions::default()).unwrap();
        assert!(report.passed(), "{report:?}");
        let text = serde_json::to_string(&report).unwrap();
        let back: VerifyReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}

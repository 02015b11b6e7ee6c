mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn entropic_law(ci in 0usize..10, p in coords(), a in coords(), b in coords(), c in coords(), d in coords()) {
        entropic(ci, p, a, b, c, d)?;
    }

    #[test]
    fn idempotence(ci in 0usize..10, p in coords(), a in coords()) {
        idempotent(ci, p, a)?;
    }

    #[test]
    fn complement_parameter_levels(ci in 0usize..10, seed in prop::collection::vec(small_coords(), 1..4), n in 1usize..=2) {
        complement_levels(ci, seed, n)?;
    }

    #[test]
    fn affine_equivariance(ci in 0usize..10, a in small_coords(), b in small_coords(), n in 0usize..=3) {
        affine(ci, a, b, n)?;
    }

    #[test]
    fn levels_stay_in_seed_window(ci in 0usize..7, seed in prop::collection::vec(small_coords(), 1..4), n in 1usize..=2) {
        window_containment(ci, seed, n)?;
    }

    #[test]
    fn scheme_identity_holds(m in 1i64..=12, k in 0i64..12) {
        scheme_identity(m, 1 + k % m)?;
    }

    #[test]
    fn star_basis_round_trip(coeffs in prop::collection::vec(-6i64..=6, 1..7), extra in 0usize..5) {
        star_basis_roundtrip(coeffs, extra)?;
    }

    #[test]
    fn eta_positive_decreasing(d in 2i64..300, p in -20i64..=20, qi in 0usize..16) {
        eta_monotone(d, p, qi)?;
    }

    #[test]
    fn progression_meets_window_finitely(ci in 0usize..7, x in coords(), d in coords()) {
        ap_finite(ci, x, d)?;
    }
}

use proptest::prelude::*;
use qubitlab_core::bell::{
    closed_form, conditional_average, invariance_check, joint_from_density, joint_probabilities, bell_density,
    sample_joint, CommonRotation,
};
use qubitlab_core::measure::{binomial_band, expected_outcome};
use qubitlab_core::{BellKind, Outcome, SGSetup, Vec3, EXACT_TOL};

fn unit_vector() -> impl Strategy<Value = Vec3> {
    (0.0..std::f64::consts::PI, 0.0..2.0 * std::f64::consts::PI)
        .prop_map(|(t, p): (f64, f64)| [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()])
}

fn kind() -> impl Strategy<Value = BellKind> {
    prop_oneof![Just(BellKind::Singlet), Just(BellKind::PsiPlus), Just(BellKind::PhiMinus), Just(BellKind::PhiPlus)]
}

proptest! {
    #[test]
    fn marginals_are_uniform(k in kind(), a in unit_vector(), b in unit_vector()) {
        let j = joint_probabilities(k, &a, &b).unwrap();
        prop_assert!((j.alice_plus() - 0.5).abs() < EXACT_TOL);
        prop_assert!((j.bob_plus() - 0.5).abs() < EXACT_TOL);
        prop_assert!((j.as_array().iter().sum::<f64>() - 1.0).abs() < EXACT_TOL);
    }

    #[test]
    fn in_plane_symmetry_and_closed_form(k in kind(), alpha in -7.0..7.0f64, beta in -7.0..7.0f64) {
        let plane = k.symmetry_plane();
        let j = joint_probabilities(k, &plane.direction(alpha), &plane.direction(beta)).unwrap();
        prop_assert!((j.p_pm - j.p_mp).abs() < EXACT_TOL);
        prop_assert!(j.max_abs_diff(&closed_form(k, beta - alpha)) < EXACT_TOL);
    }

    #[test]
    fn average_only_conservation(k in kind(), alpha in -7.0..7.0f64, beta in -7.0..7.0f64) {
        let plane = k.symmetry_plane();
        let theta = beta - alpha;
        let single = expected_outcome(&SGSetup::from_z(theta).unwrap());
        let sign = if k.is_triplet() { 1.0 } else { -1.0 };
        let avg = conditional_average(k, &plane.direction(alpha), &plane.direction(beta), Outcome::Plus).unwrap();
        prop_assert!((avg - sign * single).abs() < EXACT_TOL);
    }

    #[test]
    fn singlet_invariant_under_any_common_rotation(n in unit_vector(), theta in -10.0..10.0f64) {
        let r = invariance_check(BellKind::Singlet, &CommonRotation::new(n, theta).unwrap());
        prop_assert!(r.invariant, "deviation {}", r.max_deviation);
    }

    #[test]
    fn triplets_invariant_about_their_axis(k in kind(), theta in -10.0..10.0f64) {
        if let Some(axis) = k.invariance_axis() {
            let r = invariance_check(k, &CommonRotation::about(axis, theta));
            prop_assert!(r.invariant, "{} deviation {}", k, r.max_deviation);
        }
    }

    #[test]
    fn trace_route_matches_density(k in kind(), a in unit_vector(), b in unit_vector()) {
        let direct = joint_probabilities(k, &a, &b).unwrap();
        let via_rho = joint_from_density(&bell_density(k), &a, &b).unwrap();
        prop_assert!(direct.max_abs_diff(&via_rho) < EXACT_TOL);
    }
}

#[test]
fn sampled_joint_within_band() {
    let n = 100_000u64;
    for k in BellKind::ALL {
        let plane = k.symmetry_plane();
        let (a, b) = (plane.direction(0.3), plane.direction(1.4));
        let exact = joint_probabilities(k, &a, &b).unwrap().as_array();
        let counts = sample_joint(k, &a, &b, n, 21).unwrap();
        for (f, p) in counts.frequencies().iter().zip(exact) {
            assert!((f - p).abs() < binomial_band(p, n, 3.0) + 1e-12, "{k}: {f} vs {p}");
        }
    }
}

#[test]
fn sampling_is_reproducible() {
    let plane = BellKind::PhiPlus.symmetry_plane();
    let (a, b) = (plane.direction(0.0), plane.direction(1.0));
    assert_eq!(
        sample_joint(BellKind::PhiPlus, &a, &b, 4096, 5).unwrap(),
        sample_joint(BellKind::PhiPlus, &a, &b, 4096, 5).unwrap()
    );
}

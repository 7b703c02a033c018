use proptest::prelude::*;
use qubitlab_core::qubit::{
    bloch_roundtrip, classical_pure_path, mat3_apply, mat3_mul, qubit_rotation_path, so3_image, su2_rotate,
    su2_rotate_about,
};
use qubitlab_core::{Axis, ClassicalBitState, QubitState, Vec3, EXACT_TOL, SCAN_TOL};

fn unit_vector() -> impl Strategy<Value = Vec3> {
    (0.0..std::f64::consts::PI, 0.0..2.0 * std::f64::consts::PI)
        .prop_map(|(t, p): (f64, f64)| [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()])
}

fn bloch_ball() -> impl Strategy<Value = Vec3> {
    (unit_vector(), 0.0..=1.0f64).prop_map(|(v, r)| [r * v[0], r * v[1], r * v[2]])
}

fn axis() -> impl Strategy<Value = Axis> {
    prop_oneof![Just(Axis::X), Just(Axis::Y), Just(Axis::Z)]
}

fn dist(a: &Vec3, b: &Vec3) -> f64 {
    (0..3).map(|i| (a[i] - b[i]).abs()).fold(0.0, f64::max)
}

proptest! {
    #[test]
    fn roundtrip_reproduces_state(r in bloch_ball()) {
        let s = QubitState::from_bloch(r).unwrap();
        let back = bloch_roundtrip(&s).unwrap();
        prop_assert!(back.approx_eq(&s, EXACT_TOL));
    }

    #[test]
    fn rotation_preserves_purity(r in bloch_ball(), ax in axis(), theta in -10.0..10.0f64) {
        let s = QubitState::from_bloch(r).unwrap();
        let rotated = su2_rotate(&s, ax, theta).unwrap();
        prop_assert!((rotated.bloch_length() - s.bloch_length()).abs() < EXACT_TOL);
        prop_assert_eq!(rotated.purity(), s.purity());
    }

    #[test]
    fn conjugation_matches_so3(r in bloch_ball(), n in unit_vector(), theta in -10.0..10.0f64) {
        let s = QubitState::from_bloch(r).unwrap();
        let rotated = su2_rotate_about(&s, &n, theta).unwrap();
        let expected = mat3_apply(&so3_image(&n, theta), &r);
        prop_assert!(dist(&rotated.bloch(), &expected) < SCAN_TOL);
    }

    #[test]
    fn homomorphism_respects_composition(
        r in bloch_ball(), n1 in unit_vector(), n2 in unit_vector(), t1 in -5.0..5.0f64, t2 in -5.0..5.0f64,
    ) {
        let s = QubitState::from_bloch(r).unwrap();
        let twice = su2_rotate_about(&su2_rotate_about(&s, &n1, t1).unwrap(), &n2, t2).unwrap();
        let composed = mat3_mul(&so3_image(&n2, t2), &so3_image(&n1, t1));
        prop_assert!(dist(&twice.bloch(), &mat3_apply(&composed, &r)) < SCAN_TOL);
    }

    #[test]
    fn qubit_paths_stay_on_sphere(n in unit_vector(), ax in axis(), theta in -4.0..4.0f64) {
        let start = QubitState::from_bloch(n).unwrap();
        for s in qubit_rotation_path(&start, ax, theta, 16).unwrap() {
            prop_assert!(s.is_pure());
        }
    }

    #[test]
    fn classical_paths_pass_through_mixed_states(steps in 1usize..50) {
        let a = ClassicalBitState::new(0.0).unwrap();
        let b = ClassicalBitState::new(1.0).unwrap();
        let path = classical_pure_path(a, b, steps).unwrap();
        prop_assert_eq!(path.len(), steps);
        prop_assert!(path.iter().all(|s| !s.is_pure()));
    }
}

#[test]
fn any_two_pure_states_are_connected_on_the_sphere() {
    // rotate |u> onto an arbitrary pure target about the axis perpendicular to both
    let target: Vec3 = [0.48, -0.6, 0.64];
    let up = QubitState::up();
    let z = [0.0, 0.0, 1.0];
    let cross = [z[1] * target[2] - z[2] * target[1], z[2] * target[0] - z[0] * target[2], z[0] * target[1] - z[1] * target[0]];
    let len = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
    let n = [cross[0] / len, cross[1] / len, cross[2] / len];
    let angle = target[2].acos();
    let segments = 20;
    let mut last = up;
    for k in 0..=segments {
        // Bloch angle φ corresponds to Θ = −φ/2 in this convention
        let theta = -0.5 * angle * k as f64 / segments as f64;
        last = su2_rotate_about(&up, &n, theta).unwrap();
        assert!(last.is_pure());
    }
    assert!(dist(&last.bloch(), &target) < SCAN_TOL);
}

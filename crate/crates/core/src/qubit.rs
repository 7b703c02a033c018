//! Qubit and classical-bit state spaces.
//!
//! Rotation convention: `U = exp(iΘσ_j)` acting as `ρ ↦ UρU†` rotates the
//! Bloch vector by `−2Θ` about axis `j` (right-hand rule). The real-space
//! angle is twice the Hilbert-space angle.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::hilbert::{pauli_decompose, ComplexMatrix};
use crate::{norm, require_unit, Error, Result, Vec3, EXACT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn unit(self) -> Vec3 {
        match self {
            Axis::X => [1.0, 0.0, 0.0],
            Axis::Y => [0.0, 1.0, 0.0],
            Axis::Z => [0.0, 0.0, 1.0],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Purity {
    Pure,
    Mixed,
    MaximallyMixed,
}

/// A single-qubit density matrix together with its Bloch vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    rho: ComplexMatrix,
    bloch: Vec3,
}

impl QubitState {
    /// Validates `rho` (Hermitian, unit trace, positive semidefinite).
    pub fn from_density(rho: ComplexMatrix) -> Result<Self> {
        if rho.dim() != 2 {
            return Err(Error::Dimension(format!("qubit density must be 2x2, got {}x{}", rho.dim(), rho.dim())));
        }
        let tr = rho.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > EXACT_TOL {
            return Err(Error::InvalidState(format!("trace {tr} ≠ 1")));
        }
        let coeffs = pauli_decompose(&rho).map_err(|e| Error::InvalidState(e.to_string()))?;
        let bloch = [2.0 * coeffs.mx, 2.0 * coeffs.my, 2.0 * coeffs.mz];
        let lowest = coeffs.eigenvalues()[0];
        if lowest < -EXACT_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {lowest}")));
        }
        Ok(Self { rho, bloch })
    }

    /// `ρ = (I + r·σ)/2`; requires `|r| ≤ 1`.
    pub fn from_bloch(bloch: Vec3) -> Result<Self> {
        let r = norm(&bloch);
        if !r.is_finite() || r > 1.0 + EXACT_TOL {
            return Err(Error::InvalidState(format!("Bloch vector outside the ball, |r| = {r}")));
        }
        Ok(Self { rho: density_from_bloch(&bloch), bloch })
    }

    /// The spin-up pole `|u⟩⟨u|`.
    pub fn up() -> Self {
        Self::from_bloch([0.0, 0.0, 1.0]).expect("pole is valid")
    }

    pub fn down() -> Self {
        Self::from_bloch([0.0, 0.0, -1.0]).expect("pole is valid")
    }

    pub fn maximally_mixed() -> Self {
        Self::from_bloch([0.0; 3]).expect("centre is valid")
    }

    pub fn rho(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn bloch(&self) -> Vec3 {
        self.bloch
    }

    pub fn bloch_length(&self) -> f64 {
        norm(&self.bloch)
    }

    /// `tr ρ²`.
    pub fn purity_value(&self) -> f64 {
        (self.rho * self.rho).trace().re
    }

    pub fn purity(&self) -> Purity {
        let r = self.bloch_length();
        if (r - 1.0).abs() <= EXACT_TOL {
            Purity::Pure
        } else if r <= EXACT_TOL {
            Purity::MaximallyMixed
        } else {
            Purity::Mixed
        }
    }

    pub fn is_pure(&self) -> bool {
        self.purity() == Purity::Pure
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rho.approx_eq(&other.rho, tol)
    }
}

fn density_from_bloch(r: &Vec3) -> ComplexMatrix {
    let [x, y, z] = ComplexMatrix::paulis();
    (ComplexMatrix::identity2() + x * r[0] + y * r[1] + z * r[2]) * 0.5
}

/// Density → Bloch → density. The result carries the recovered Bloch vector
/// and the pure/mixed classification.
pub fn bloch_roundtrip(state: &QubitState) -> Result<QubitState> {
    let validated = QubitState::from_density(*state.rho())?;
    QubitState::from_bloch(validated.bloch())
}

/// `ρ ↦ UρU†` with `U = exp(iΘσ_axis)`.
pub fn su2_rotate(state: &QubitState, axis: Axis, theta: f64) -> Result<QubitState> {
    su2_rotate_about(state, &axis.unit(), theta)
}

/// As [`su2_rotate`] for an arbitrary unit axis `n`, `U = exp(iΘ n·σ)`.
pub fn su2_rotate_about(state: &QubitState, axis: &Vec3, theta: f64) -> Result<QubitState> {
    require_unit(axis, "rotation axis")?;
    if !theta.is_finite() {
        return Err(Error::Domain(format!("rotation angle must be finite, got {theta}")));
    }
    let u = ComplexMatrix::su2(axis, theta);
    QubitState::from_density(state.rho().conjugate_by(&u)?)
}

/// Real-space rotation by `angle` about unit `axis` (Rodrigues form).
pub fn so3_rotation(axis: &Vec3, angle: f64) -> [[f64; 3]; 3] {
    let [x, y, z] = *axis;
    let (s, c) = angle.sin_cos();
    let t = 1.0 - c;
    [
        [c + x * x * t, x * y * t - z * s, x * z * t + y * s],
        [y * x * t + z * s, c + y * y * t, y * z * t - x * s],
        [z * x * t - y * s, z * y * t + x * s, c + z * z * t],
    ]
}

/// The SO(3) image of `exp(iΘ n·σ)` under the crate's sign convention.
pub fn so3_image(axis: &Vec3, theta: f64) -> [[f64; 3]; 3] {
    so3_rotation(axis, -2.0 * theta)
}

pub fn mat3_apply(m: &[[f64; 3]; 3], v: &Vec3) -> Vec3 {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

pub fn mat3_mul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            *cell = (0..3).map(|k| a[r][k] * b[k][c]).sum();
        }
    }
    out
}

/// Path of `segments + 1` states obtained by rotating `start` about `axis` in
/// equal Hilbert-space steps up to a total angle `theta`.
pub fn qubit_rotation_path(start: &QubitState, axis: Axis, theta: f64, segments: usize) -> Result<Vec<QubitState>> {
    if segments == 0 {
        return Err(Error::Domain("a path needs at least one segment".into()));
    }
    (0..=segments)
        .map(|k| su2_rotate(start, axis, theta * k as f64 / segments as f64))
        .collect()
}

/// Dimension of the state space of a generalized bit, `2^s − 1`.
pub fn gbit_dimension(s: u32) -> Result<u64> {
    if s < 1 {
        return Err(Error::Domain("gbit parameter s must be at least 1".into()));
    }
    if s > 63 {
        return Err(Error::Domain(format!("2^{s} − 1 does not fit in 64 bits")));
    }
    Ok((1u64 << s) - 1)
}

/// A point on the classical-bit simplex: probability `p1` of box 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalBitState {
    p1: f64,
}

impl ClassicalBitState {
    pub fn new(p1: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p1) {
            return Err(Error::InvalidState(format!("p1 = {p1} outside [0, 1]")));
        }
        Ok(Self { p1 })
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        1.0 - self.p1
    }

    pub fn is_pure(&self) -> bool {
        self.p1 == 0.0 || self.p1 == 1.0
    }
}

/// The straight path between two distinct pure classical states, returning
/// the `steps` interior points (endpoints excluded).
pub fn classical_pure_path(a: ClassicalBitState, b: ClassicalBitState, steps: usize) -> Result<Vec<ClassicalBitState>> {
    if !a.is_pure() || !b.is_pure() {
        return Err(Error::Domain("classical path endpoints must be pure".into()));
    }
    if a == b {
        return Err(Error::Domain("classical path endpoints must differ".into()));
    }
    let n = (steps + 1) as f64;
    (1..=steps)
        .map(|k| {
            let t = k as f64 / n;
            ClassicalBitState::new(a.p1 + t * (b.p1 - a.p1))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

    fn close3(a: Vec3, b: Vec3, tol: f64) -> bool {
        (0..3).all(|i| (a[i] - b[i]).abs() <= tol)
    }

    #[test]
    fn roundtrip_examples() {
        let up = bloch_roundtrip(&QubitState::up()).unwrap();
        assert_eq!(up.bloch(), [0.0, 0.0, 1.0]);
        assert!(up.is_pure());

        let mixed = bloch_roundtrip(&QubitState::maximally_mixed()).unwrap();
        assert_eq!(mixed.bloch(), [0.0; 3]);
        assert_eq!(mixed.purity(), Purity::MaximallyMixed);

        let s = QubitState::from_bloch([FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2]).unwrap();
        let expected = (ComplexMatrix::identity2()
            + (ComplexMatrix::pauli_x() + ComplexMatrix::pauli_z()) * FRAC_1_SQRT_2)
            * 0.5;
        assert!(s.rho().approx_eq(&expected, EXACT_TOL));
        let back = bloch_roundtrip(&s).unwrap();
        assert!(back.approx_eq(&s, EXACT_TOL));
        assert!(back.is_pure());
        let eig = s.rho().eigenvalues_hermitian().unwrap();
        assert!(eig[0].abs() < EXACT_TOL && (eig[1] - 1.0).abs() < EXACT_TOL);
    }

    #[test]
    fn invalid_states_rejected() {
        let bad_trace = ComplexMatrix::identity2();
        assert!(matches!(QubitState::from_density(bad_trace), Err(Error::InvalidState(_))));
        let negative = ComplexMatrix::from_real(2, &[1.5, 0.0, 0.0, -0.5]).unwrap();
        assert!(matches!(QubitState::from_density(negative), Err(Error::InvalidState(_))));
        assert!(QubitState::from_bloch([0.0, 0.8, 0.8]).is_err());
    }

    #[test]
    fn rotation_examples() {
        let r = su2_rotate(&QubitState::up(), Axis::X, FRAC_PI_4).unwrap();
        assert!(r.bloch()[2].abs() < EXACT_TOL);
        // convention check: −2Θ = −π/2 about x sends +z to +y
        assert!(close3(r.bloch(), [0.0, 1.0, 0.0], EXACT_TOL));

        let s = QubitState::from_bloch([0.3, -0.2, 0.5]).unwrap();
        assert_eq!(su2_rotate(&s, Axis::Y, 0.0).unwrap().bloch(), s.bloch());

        for theta in [0.1, 1.0, 2.5, -4.0] {
            let z = su2_rotate(&QubitState::up(), Axis::Z, theta).unwrap();
            assert!(close3(z.bloch(), [0.0, 0.0, 1.0], EXACT_TOL));
        }
    }

    #[test]
    fn gbit_dimensions() {
        assert_eq!(gbit_dimension(1).unwrap(), 1);
        assert_eq!(gbit_dimension(2).unwrap(), 3);
        assert_eq!(gbit_dimension(4).unwrap(), 15);
        assert!(gbit_dimension(0).is_err());
    }

    #[test]
    fn classical_paths_pass_through_mixed_states() {
        let zero = ClassicalBitState::new(0.0).unwrap();
        let one = ClassicalBitState::new(1.0).unwrap();
        let path = classical_pure_path(zero, one, 3).unwrap();
        let p: Vec<f64> = path.iter().map(|s| s.p1()).collect();
        assert_eq!(p, vec![0.25, 0.5, 0.75]);
        assert!(path.iter().all(|s| !s.is_pure()));

        let back = classical_pure_path(one, zero, 1).unwrap();
        assert_eq!(back.len(), 1);
        assert_eq!(back[0].p1(), 0.5);
        assert!(!back[0].is_pure());

        assert!(classical_pure_path(ClassicalBitState::new(0.5).unwrap(), one, 2).is_err());
        assert!(classical_pure_path(one, one, 2).is_err());
    }

    #[test]
    fn qubit_path_stays_pure() {
        // Θ = π/2 about x takes +z to −z in real space
        let path = qubit_rotation_path(&QubitState::up(), Axis::X, PI / 2.0, 10).unwrap();
        assert_eq!(path.len(), 11);
        assert!(path.iter().all(QubitState::is_pure));
        assert!(close3(path[10].bloch(), [0.0, 0.0, -1.0], EXACT_TOL));
    }
}

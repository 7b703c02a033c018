//! Bell states, their density matrices and joint ±1 measurement statistics.
//!
//! Two-qubit basis order is `|uu⟩, |ud⟩, |du⟩, |dd⟩` (Alice ⊗ Bob). Projectors
//! are `Π± = (I ± a·σ)/2` and every joint probability is `tr(ρ · Π_a ⊗ Π_b)`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::hilbert::{tensor, ComplexMatrix, ZERO};
use crate::measure::Outcome;
use crate::qubit::Axis;
use crate::rng::{trial_rng, Domain};
use crate::{require_unit, Error, Result, Vec3, EXACT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BellKind {
    /// ψ−, total spin 0.
    #[serde(rename = "singlet")]
    Singlet,
    /// ψ+, spin 1 in the xy-plane.
    #[serde(rename = "psi+")]
    PsiPlus,
    /// φ−, spin 1 in the yz-plane.
    #[serde(rename = "phi-")]
    PhiMinus,
    /// φ+, spin 1 in the xz-plane.
    #[serde(rename = "phi+")]
    PhiPlus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetryPlane {
    All,
    XY,
    YZ,
    XZ,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [BellKind::Singlet, BellKind::PsiPlus, BellKind::PhiMinus, BellKind::PhiPlus];

    pub fn symmetry_plane(self) -> SymmetryPlane {
        match self {
            BellKind::Singlet => SymmetryPlane::All,
            BellKind::PsiPlus => SymmetryPlane::XY,
            BellKind::PhiMinus => SymmetryPlane::YZ,
            BellKind::PhiPlus => SymmetryPlane::XZ,
        }
    }

    /// Generator of the one-parameter `exp(iΘσ)⊗exp(iΘσ)` subgroup leaving a
    /// triplet invariant; `None` for the singlet, which is invariant under all.
    pub fn invariance_axis(self) -> Option<Axis> {
        match self {
            BellKind::Singlet => None,
            BellKind::PsiPlus => Some(Axis::Z),
            BellKind::PhiMinus => Some(Axis::X),
            BellKind::PhiPlus => Some(Axis::Y),
        }
    }

    pub fn is_triplet(self) -> bool {
        self != BellKind::Singlet
    }

    /// Signs `(s_x, s_y, s_z)` in `ρ = (I + Σ s_k σ_k⊗σ_k)/4`.
    pub fn correlation_signs(self) -> [f64; 3] {
        match self {
            BellKind::Singlet => [-1.0, -1.0, -1.0],
            BellKind::PsiPlus => [1.0, 1.0, -1.0],
            BellKind::PhiMinus => [-1.0, 1.0, 1.0],
            BellKind::PhiPlus => [1.0, -1.0, 1.0],
        }
    }

    /// Amplitudes in the `uu, ud, du, dd` basis.
    pub fn state_vector(self) -> [Complex64; 4] {
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        match self {
            BellKind::Singlet => [ZERO, s, -s, ZERO],
            BellKind::PsiPlus => [ZERO, s, s, ZERO],
            BellKind::PhiMinus => [s, ZERO, ZERO, -s],
            BellKind::PhiPlus => [s, ZERO, ZERO, s],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BellKind::Singlet => "singlet",
            BellKind::PsiPlus => "psi+",
            BellKind::PhiMinus => "phi-",
            BellKind::PhiPlus => "phi+",
        }
    }
}

impl fmt::Display for BellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for BellKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "singlet" | "psi-" => Ok(BellKind::Singlet),
            "psi+" => Ok(BellKind::PsiPlus),
            "phi-" => Ok(BellKind::PhiMinus),
            "phi+" => Ok(BellKind::PhiPlus),
            other => Err(Error::Domain(format!("unknown Bell state '{other}'"))),
        }
    }
}

impl SymmetryPlane {
    /// Unit vector at `angle` inside the plane. The angle is measured from the
    /// first listed axis towards the second (z towards x for `XZ`, z towards y
    /// for `YZ`); `All` uses the xz-plane.
    pub fn direction(self, angle: f64) -> Vec3 {
        let (s, c) = angle.sin_cos();
        match self {
            SymmetryPlane::XY => [c, s, 0.0],
            SymmetryPlane::YZ => [0.0, s, c],
            SymmetryPlane::XZ | SymmetryPlane::All => [s, 0.0, c],
        }
    }
}

impl FromStr for SymmetryPlane {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "xy" | "yx" => Ok(SymmetryPlane::XY),
            "yz" | "zy" => Ok(SymmetryPlane::YZ),
            "xz" | "zx" => Ok(SymmetryPlane::XZ),
            "all" => Ok(SymmetryPlane::All),
            other => Err(Error::Domain(format!("unknown plane '{other}'"))),
        }
    }
}

/// `|ψ⟩⟨ψ|` from the state vector.
pub fn bell_density(kind: BellKind) -> ComplexMatrix {
    let v = kind.state_vector();
    let mut rho = ComplexMatrix::zeros(4).expect("4x4");
    for r in 0..4 {
        for c in 0..4 {
            rho.set(r, c, v[r] * v[c].conj());
        }
    }
    rho
}

/// `(I + s_x σx⊗σx + s_y σy⊗σy + s_z σz⊗σz)/4`.
pub fn pauli_expansion(kind: BellKind) -> ComplexMatrix {
    let mut rho = ComplexMatrix::identity(4).expect("4x4");
    for (sigma, sign) in ComplexMatrix::paulis().iter().zip(kind.correlation_signs()) {
        rho = rho + tensor(sigma, sigma).expect("2x2") * sign;
    }
    rho * 0.25
}

/// `a·σ` for a unit direction.
pub fn measurement_operator(direction: &Vec3) -> Result<ComplexMatrix> {
    require_unit(direction, "measurement direction")?;
    let [x, y, z] = ComplexMatrix::paulis();
    Ok(x * direction[0] + y * direction[1] + z * direction[2])
}

/// `(I ± a·σ)/2`.
pub fn projector(direction: &Vec3, outcome: Outcome) -> Result<ComplexMatrix> {
    let op = measurement_operator(direction)?;
    Ok((ComplexMatrix::identity2() + op * outcome.value()) * 0.5)
}

/// Joint outcome distribution for one pair of settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JointProbabilities {
    pub p_pp: f64,
    pub p_pm: f64,
    pub p_mp: f64,
    pub p_mm: f64,
}

impl JointProbabilities {
    pub fn new(p_pp: f64, p_pm: f64, p_mp: f64, p_mm: f64) -> Result<Self> {
        let j = Self { p_pp, p_pm, p_mp, p_mm };
        let entries = j.as_array();
        if entries.iter().any(|p| !p.is_finite() || *p < -EXACT_TOL) {
            return Err(Error::Domain(format!("negative or non-finite probability in {entries:?}")));
        }
        let total: f64 = entries.iter().sum();
        if (total - 1.0).abs() > EXACT_TOL {
            return Err(Error::Domain(format!("joint probabilities sum to {total}")));
        }
        Ok(j)
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.p_pp, self.p_pm, self.p_mp, self.p_mm]
    }

    pub fn get(&self, alice: Outcome, bob: Outcome) -> f64 {
        self.as_array()[2 * alice.index() + bob.index()]
    }

    /// `E(a·b) = Σ a·b·P(a, b)`.
    pub fn correlator(&self) -> f64 {
        self.p_pp - self.p_pm - self.p_mp + self.p_mm
    }

    pub fn alice_plus(&self) -> f64 {
        self.p_pp + self.p_pm
    }

    pub fn bob_plus(&self) -> f64 {
        self.p_pp + self.p_mp
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// `E[Bob | Alice = alice]`.
    pub fn conditional_bob_mean(&self, alice: Outcome) -> Result<f64> {
        let plus = self.get(alice, Outcome::Plus);
        let minus = self.get(alice, Outcome::Minus);
        let marginal = plus + minus;
        if marginal <= EXACT_TOL {
            return Err(Error::UndefinedConditional(format!(
                "P(Alice = {}) = {marginal}",
                alice.value()
            )));
        }
        Ok((plus - minus) / marginal)
    }
}

pub fn joint_probabilities(kind: BellKind, a_dir: &Vec3, b_dir: &Vec3) -> Result<JointProbabilities> {
    joint_from_density(&bell_density(kind), a_dir, b_dir)
}

/// `tr(ρ Π_a ⊗ Π_b)` for an arbitrary two-qubit density matrix.
pub fn joint_from_density(rho: &ComplexMatrix, a_dir: &Vec3, b_dir: &Vec3) -> Result<JointProbabilities> {
    let mut p = [0.0; 4];
    for alice in Outcome::BOTH {
        let pa = projector(a_dir, alice)?;
        for bob in Outcome::BOTH {
            let pb = projector(b_dir, bob)?;
            let joint = rho.checked_mul(&tensor(&pa, &pb)?)?;
            p[2 * alice.index() + bob.index()] = joint.trace().re;
        }
    }
    Ok(JointProbabilities { p_pp: p[0], p_pm: p[1], p_mp: p[2], p_mm: p[3] })
}

/// Closed-form in-plane probabilities at relative angle `theta`: like outcomes
/// `cos²(θ/2)/2` each for a triplet, unlike outcomes for the singlet.
pub fn closed_form(kind: BellKind, theta: f64) -> JointProbabilities {
    let like = 0.5 * (0.5 * theta).cos().powi(2);
    let unlike = 0.5 * (0.5 * theta).sin().powi(2);
    if kind.is_triplet() {
        JointProbabilities { p_pp: like, p_pm: unlike, p_mp: unlike, p_mm: like }
    } else {
        JointProbabilities { p_pp: unlike, p_pm: like, p_mp: like, p_mm: unlike }
    }
}

/// `E[Bob | Alice = alice_outcome]` via the trace formula.
pub fn conditional_average(kind: BellKind, a_dir: &Vec3, b_dir: &Vec3, alice_outcome: Outcome) -> Result<f64> {
    joint_probabilities(kind, a_dir, b_dir)?.conditional_bob_mean(alice_outcome)
}

/// The same SU(2) element applied to both qubits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CommonRotation {
    pub axis: Vec3,
    pub theta: f64,
}

impl CommonRotation {
    pub fn new(axis: Vec3, theta: f64) -> Result<Self> {
        require_unit(&axis, "rotation axis")?;
        Ok(Self { axis, theta })
    }

    pub fn about(axis: Axis, theta: f64) -> Self {
        Self { axis: axis.unit(), theta }
    }

    pub fn unitary(&self) -> ComplexMatrix {
        let u = ComplexMatrix::su2(&self.axis, self.theta);
        tensor(&u, &u).expect("2x2")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvarianceReport {
    pub kind: BellKind,
    pub invariant: bool,
    pub max_deviation: f64,
}

/// Compares `(U⊗U) ρ (U⊗U)†` with `ρ`. Off-symmetry rotations simply report
/// `invariant = false`.
pub fn invariance_check(kind: BellKind, rotation: &CommonRotation) -> InvarianceReport {
    let rho = bell_density(kind);
    let rotated = rho.conjugate_by(&rotation.unitary()).expect("4x4");
    let max_deviation = rotated.max_abs_diff(&rho);
    InvarianceReport { kind, invariant: max_deviation <= EXACT_TOL, max_deviation }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct JointCounts {
    pub pp: u64,
    pub pm: u64,
    pub mp: u64,
    pub mm: u64,
    pub n: u64,
    pub seed: u64,
}

impl JointCounts {
    pub fn frequencies(&self) -> [f64; 4] {
        let n = self.n as f64;
        [self.pp as f64 / n, self.pm as f64 / n, self.mp as f64 / n, self.mm as f64 / n]
    }

    /// Empirical `E[Bob | Alice = +1]` and the number of conditioning trials.
    pub fn conditional_bob_mean_given_plus(&self) -> Option<(f64, u64)> {
        let n_plus = self.pp + self.pm;
        (n_plus > 0).then(|| ((self.pp as f64 - self.pm as f64) / n_plus as f64, n_plus))
    }
}

/// One categorical draw over the four joint outcomes.
pub fn sample_joint_outcome(joint: &JointProbabilities, seed: u64, index: u64) -> (Outcome, Outcome) {
    let u: f64 = trial_rng(seed, Domain::JointOutcome, index).random();
    let mut acc = 0.0;
    let cells = [
        (Outcome::Plus, Outcome::Plus),
        (Outcome::Plus, Outcome::Minus),
        (Outcome::Minus, Outcome::Plus),
    ];
    for (p, cell) in joint.as_array().iter().zip(cells) {
        acc += p;
        if u < acc {
            return cell;
        }
    }
    (Outcome::Minus, Outcome::Minus)
}

pub fn sample_joint(kind: BellKind, a_dir: &Vec3, b_dir: &Vec3, n: u64, seed: u64) -> Result<JointCounts> {
    if n == 0 {
        return Err(Error::Domain("number of trials must be at least 1".into()));
    }
    let joint = joint_probabilities(kind, a_dir, b_dir)?;
    let counts = (0..n)
        .into_par_iter()
        .map(|i| {
            let (a, b) = sample_joint_outcome(&joint, seed, i);
            let mut c = [0u64; 4];
            c[2 * a.index() + b.index()] = 1;
            c
        })
        .reduce(|| [0u64; 4], |x, y| [x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]]);
    Ok(JointCounts { pp: counts[0], pm: counts[1], mp: counts[2], mm: counts[3], n, seed })
}

/// Identity check used when building Bell densities from scratch.
pub fn density_matches_expansion(kind: BellKind) -> f64 {
    bell_density(kind).max_abs_diff(&pauli_expansion(kind))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_3, FRAC_PI_4};

    const Z: Vec3 = [0.0, 0.0, 1.0];
    const X: Vec3 = [1.0, 0.0, 0.0];

    #[test]
    fn densities_match_pauli_expansions() {
        for kind in BellKind::ALL {
            assert!(density_matches_expansion(kind) < EXACT_TOL, "{kind}");
            let rho = bell_density(kind);
            assert!((rho.trace().re - 1.0).abs() < EXACT_TOL);
            assert!(((rho * rho).trace().re - 1.0).abs() < EXACT_TOL);
            let ev = rho.eigenvalues_hermitian().unwrap();
            assert!(ev[..3].iter().all(|e| e.abs() < EXACT_TOL));
            assert!((ev[3] - 1.0).abs() < EXACT_TOL);
        }
    }

    #[test]
    fn singlet_and_phi_plus_expansions_explicit() {
        let [x, y, z] = ComplexMatrix::paulis();
        let id = ComplexMatrix::identity(4).unwrap();
        let xx = tensor(&x, &x).unwrap();
        let yy = tensor(&y, &y).unwrap();
        let zz = tensor(&z, &z).unwrap();
        let singlet = (id - xx - yy - zz) * 0.25;
        let phi_plus = (id + xx - yy + zz) * 0.25;
        assert!(bell_density(BellKind::Singlet).approx_eq(&singlet, EXACT_TOL));
        assert!(bell_density(BellKind::PhiPlus).approx_eq(&phi_plus, EXACT_TOL));
    }

    #[test]
    fn measurement_operators() {
        assert_eq!(measurement_operator(&Z).unwrap(), ComplexMatrix::pauli_z());
        assert_eq!(measurement_operator(&X).unwrap(), ComplexMatrix::pauli_x());
        let d = [FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2];
        let op = measurement_operator(&d).unwrap();
        let expected = (ComplexMatrix::pauli_x() + ComplexMatrix::pauli_z()) * FRAC_1_SQRT_2;
        assert!(op.approx_eq(&expected, EXACT_TOL));
        let ev = op.eigenvalues_hermitian().unwrap();
        assert!((ev[0] + 1.0).abs() < EXACT_TOL && (ev[1] - 1.0).abs() < EXACT_TOL);
        assert!(measurement_operator(&[1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn joint_examples() {
        let plane = SymmetryPlane::XZ;
        let j = joint_probabilities(BellKind::PhiPlus, &plane.direction(0.0), &plane.direction(0.0)).unwrap();
        assert!(j.max_abs_diff(&JointProbabilities { p_pp: 0.5, p_pm: 0.0, p_mp: 0.0, p_mm: 0.5 }) < EXACT_TOL);

        let j = joint_probabilities(BellKind::Singlet, &Z, &Z).unwrap();
        assert!(j.max_abs_diff(&JointProbabilities { p_pp: 0.0, p_pm: 0.5, p_mp: 0.5, p_mm: 0.0 }) < EXACT_TOL);

        let j = joint_probabilities(BellKind::PhiPlus, &plane.direction(0.0), &plane.direction(FRAC_PI_3)).unwrap();
        let expected = JointProbabilities { p_pp: 0.375, p_pm: 0.125, p_mp: 0.125, p_mm: 0.375 };
        assert!(j.max_abs_diff(&expected) < EXACT_TOL);
        assert!(j.max_abs_diff(&closed_form(BellKind::PhiPlus, FRAC_PI_3)) < EXACT_TOL);
    }

    #[test]
    fn conditional_examples() {
        let plane = SymmetryPlane::XZ;
        let a = plane.direction(0.0);
        assert!((conditional_average(BellKind::PhiPlus, &a, &a, Outcome::Plus).unwrap() - 1.0).abs() < EXACT_TOL);
        let b = plane.direction(FRAC_PI_3);
        assert!((conditional_average(BellKind::PhiPlus, &a, &b, Outcome::Plus).unwrap() - 0.5).abs() < EXACT_TOL);
        assert!((conditional_average(BellKind::Singlet, &Z, &Z, Outcome::Plus).unwrap() + 1.0).abs() < EXACT_TOL);
    }

    #[test]
    fn zero_probability_conditioning_errors() {
        let j = JointProbabilities::new(0.0, 0.0, 0.5, 0.5).unwrap();
        assert!(matches!(j.conditional_bob_mean(Outcome::Plus), Err(Error::UndefinedConditional(_))));
        assert!(j.conditional_bob_mean(Outcome::Minus).is_ok());
    }

    #[test]
    fn invariance_examples() {
        let r = CommonRotation::new([0.48, -0.6, 0.64], 1.234).unwrap();
        assert!(invariance_check(BellKind::Singlet, &r).invariant);
        assert!(invariance_check(BellKind::PsiPlus, &CommonRotation::about(Axis::Z, 0.77)).invariant);
        let off = invariance_check(BellKind::PhiPlus, &CommonRotation::about(Axis::X, FRAC_PI_4));
        assert!(!off.invariant);
        assert!(off.max_deviation > 0.1);
        for kind in [BellKind::PsiPlus, BellKind::PhiMinus, BellKind::PhiPlus] {
            let axis = kind.invariance_axis().unwrap();
            for theta in [0.3, 1.9, -2.2] {
                assert!(invariance_check(kind, &CommonRotation::about(axis, theta)).invariant, "{kind}");
            }
        }
    }

    #[test]
    fn parse_kinds_and_planes() {
        assert_eq!("phi+".parse::<BellKind>().unwrap(), BellKind::PhiPlus);
        assert_eq!("Singlet".parse::<BellKind>().unwrap(), BellKind::Singlet);
        assert!("chi".parse::<BellKind>().is_err());
        assert_eq!("xz".parse::<SymmetryPlane>().unwrap(), SymmetryPlane::XZ);
    }

    #[test]
    fn joint_sampling_within_band() {
        let plane = SymmetryPlane::XZ;
        let counts =
            sample_joint(BellKind::PhiPlus, &plane.direction(0.0), &plane.direction(FRAC_PI_3), 100_000, 5).unwrap();
        assert_eq!(counts.pp + counts.pm + counts.mp + counts.mm, counts.n);
        let f = counts.frequencies();
        for (freq, p) in f.iter().zip([0.375, 0.125, 0.125, 0.375]) {
            assert!((freq - p).abs() < 3.0 * (p * (1.0 - p) / 100_000.0f64).sqrt());
        }
    }
}

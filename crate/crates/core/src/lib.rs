//! Numerical laboratory for qubit state spaces, Stern-Gerlach projection,
//! Bell-state correlations, CHSH / PR-box analysis and the quoin guessing game.
//!
//! Units: spin-½ outcomes are ±1 (ħ/2 = 1); spin-1 operators use ħ = 1.
//!
//! Setting labels for two-party boxes are fixed throughout the crate:
//! `a → x = 0`, `a′ → x = 1`, `b → y = 0`, `b′ → y = 1`.

pub mod bell;
pub mod boxes;
pub mod error;
pub mod hilbert;
pub mod measure;
pub mod quoin;
pub mod qubit;
pub mod rng;
pub mod spinops;

pub use bell::{BellKind, JointProbabilities, SymmetryPlane};
pub use boxes::{BehaviorBox, ChshResult, ConservationVerdict};
pub use error::{Error, Result};
pub use hilbert::{ComplexMatrix, PauliCoefficients};
pub use measure::{Outcome, OutcomeSample, SGSetup};
pub use quoin::{GameRecord, QuoinMechanics, Strategy};
pub use qubit::{Axis, ClassicalBitState, QubitState};
pub use spinops::SpinOperatorTriple;

/// Tolerance for exact-algebra checks.
pub const EXACT_TOL: f64 = 1e-12;
/// Tolerance for iterative results and angle scans.
pub const SCAN_TOL: f64 = 1e-9;

/// Three-component real vector (Bloch vectors, measurement directions).
pub type Vec3 = [f64; 3];

pub(crate) fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

/// Checks that `v` has unit length within [`EXACT_TOL`].
pub fn require_unit(v: &Vec3, what: &str) -> Result<()> {
    let n = norm(v);
    if !n.is_finite() || (n - 1.0).abs() > EXACT_TOL {
        return Err(Error::Domain(format!("{what} must be a unit vector, |v| = {n}")));
    }
    Ok(())
}

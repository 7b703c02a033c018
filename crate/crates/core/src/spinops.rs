//! Spin-1 measurement operators built from `L_z` by sequential SU(2) blocks.
//!
//! Each step embeds `exp(iΘσ)` on the two-dimensional subspace orthogonal to
//! one basis vector of the *current* frame (the `|u⟩, |0⟩, |d⟩` vectors after
//! all previous steps), leaving that vector fixed. The accumulated unitary
//! conjugates `L_z`. The literal sequence lands on the standard matrices up
//! to the diagonal phase `diag(1, 1, −1)`, which commutes with `L_z` and is
//! applied last.

use num_complex::Complex64;
use serde::Serialize;

use crate::hilbert::{commutator, ComplexMatrix, I, ONE, ZERO};
use crate::{Result, EXACT_TOL};

/// Index of `|u⟩`, `|0⟩`, `|d⟩` in the `L_z` eigenbasis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Up = 0,
    Zero = 1,
    Down = 2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    SigmaX,
    SigmaY,
}

/// One SU(2) block: `exp(iΘ·generator)` about the current image of `fixed`.
#[derive(Debug, Clone, Copy)]
pub struct BlockRotation {
    pub generator: Generator,
    pub fixed: Level,
    pub theta_degrees: f64,
}

pub const LX_SEQUENCE: [BlockRotation; 3] = [
    BlockRotation { generator: Generator::SigmaX, fixed: Level::Down, theta_degrees: 90.0 },
    BlockRotation { generator: Generator::SigmaX, fixed: Level::Up, theta_degrees: 45.0 },
    BlockRotation { generator: Generator::SigmaX, fixed: Level::Zero, theta_degrees: -45.0 },
];

pub const LY_SEQUENCE: [BlockRotation; 3] = [
    BlockRotation { generator: Generator::SigmaX, fixed: Level::Down, theta_degrees: -90.0 },
    BlockRotation { generator: Generator::SigmaX, fixed: Level::Up, theta_degrees: 45.0 },
    BlockRotation { generator: Generator::SigmaY, fixed: Level::Zero, theta_degrees: 45.0 },
];

fn phase_gauge() -> ComplexMatrix {
    ComplexMatrix::diagonal(&[ONE, ONE, -ONE]).expect("3x3")
}

pub fn lz() -> ComplexMatrix {
    ComplexMatrix::from_real(3, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0]).expect("3x3")
}

/// Embeds a 2×2 unitary on span{frame[:, i], frame[:, j]} (i < j, both ≠ fixed),
/// identity on frame[:, fixed].
fn embed(block: &ComplexMatrix, frame: &ComplexMatrix, fixed: Level) -> ComplexMatrix {
    let others: Vec<usize> = (0..3).filter(|&k| k != fixed as usize).collect();
    let col = |k: usize| -> [Complex64; 3] { [frame.get(0, k), frame.get(1, k), frame.get(2, k)] };
    let basis = [col(others[0]), col(others[1])];
    let keep = col(fixed as usize);
    let mut out = ComplexMatrix::zeros(3).expect("3x3");
    for r in 0..3 {
        for c in 0..3 {
            let mut v = keep[r] * keep[c].conj();
            for (p, bp) in basis.iter().enumerate() {
                for (q, bq) in basis.iter().enumerate() {
                    v += bp[r] * block.get(p, q) * bq[c].conj();
                }
            }
            out.set(r, c, v);
        }
    }
    out
}

/// Accumulated unitary of a block-rotation sequence.
pub fn sequence_unitary(sequence: &[BlockRotation]) -> ComplexMatrix {
    let mut total = ComplexMatrix::identity(3).expect("3x3");
    for step in sequence {
        let axis = match step.generator {
            Generator::SigmaX => [1.0, 0.0, 0.0],
            Generator::SigmaY => [0.0, 1.0, 0.0],
        };
        let block = ComplexMatrix::su2(&axis, step.theta_degrees.to_radians());
        let embedded = embed(&block, &total, step.fixed);
        total = embedded * total;
    }
    total
}

/// `U L_z U†` for the sequence, before the phase gauge.
pub fn literal_conjugation(sequence: &[BlockRotation]) -> ComplexMatrix {
    lz().conjugate_by(&sequence_unitary(sequence)).expect("3x3")
}

fn constructed(sequence: &[BlockRotation]) -> ComplexMatrix {
    literal_conjugation(sequence).conjugate_by(&phase_gauge()).expect("3x3")
}

pub fn construct_lx_from_lz() -> ComplexMatrix {
    constructed(&LX_SEQUENCE)
}

pub fn construct_ly_from_lz() -> ComplexMatrix {
    constructed(&LY_SEQUENCE)
}

/// The textbook spin-1 `L_x`.
pub fn reference_lx() -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_real(3, &[0.0, s, 0.0, s, 0.0, s, 0.0, s, 0.0]).expect("3x3")
}

/// The textbook spin-1 `L_y`.
pub fn reference_ly() -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let (p, m) = (I * s, -I * s);
    ComplexMatrix::new(3, &[ZERO, m, ZERO, p, ZERO, m, ZERO, p, ZERO]).expect("3x3")
}

/// Spin-1 operators in units ħ = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinOperatorTriple {
    pub lx: ComplexMatrix,
    pub ly: ComplexMatrix,
    pub lz: ComplexMatrix,
}

impl SpinOperatorTriple {
    /// `L_x` and `L_y` from the SU(2) construction, `L_z` diagonal.
    pub fn constructed() -> Self {
        Self { lx: construct_lx_from_lz(), ly: construct_ly_from_lz(), lz: lz() }
    }

    pub fn canonical() -> Self {
        Self { lx: reference_lx(), ly: reference_ly(), lz: lz() }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { lx: self.lx * factor, ly: self.ly * factor, lz: self.lz * factor }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: impl Into<String>, deviation: f64) {
        self.checks.push(Check { name: name.into(), passed: deviation <= EXACT_TOL, deviation });
    }
}

fn spectrum_deviation(m: &ComplexMatrix) -> f64 {
    match m.eigenvalues_hermitian() {
        Ok(ev) => ev.iter().zip([-1.0, 0.0, 1.0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max),
        Err(_) => f64::INFINITY,
    }
}

fn block_deviation(m: &ComplexMatrix, indices: &[usize], expected: &ComplexMatrix) -> Result<f64> {
    Ok(m.principal_block(indices)?.max_abs_diff(expected))
}

/// Checks the Pauli block structure, spectra and the cyclic commutator table.
///
/// `L_x` and `L_y` must show `σ/√2` on both overlapping 2×2 diagonal blocks
/// (levels {u,0} and {0,d}); `L_z` must show `σ_z` on the outer levels {u,d}.
/// Failures are reported, never raised.
pub fn verify_pauli_embedding(triple: &SpinOperatorTriple) -> VerificationReport {
    let mut report = VerificationReport { checks: Vec::new() };
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let [sx, sy, sz] = ComplexMatrix::paulis();
    let blocks = [("lx", &triple.lx, sx * s), ("ly", &triple.ly, sy * s)];
    for (name, m, expected) in blocks {
        for (label, idx) in [("u0", [0usize, 1]), ("0d", [1, 2])] {
            let dev = block_deviation(m, &idx, &expected).unwrap_or(f64::INFINITY);
            report.push(format!("{name} block {label} = sigma/sqrt2"), dev);
        }
    }
    let dev = block_deviation(&triple.lz, &[0, 2], &sz).unwrap_or(f64::INFINITY);
    report.push("lz block ud = sigma_z", dev);

    for (name, m) in [("lx", &triple.lx), ("ly", &triple.ly), ("lz", &triple.lz)] {
        report.push(format!("{name} spectrum = {{-1, 0, +1}}"), spectrum_deviation(m));
    }

    let table = [
        ("[lx, ly] = i lz", &triple.lx, &triple.ly, &triple.lz),
        ("[ly, lz] = i lx", &triple.ly, &triple.lz, &triple.lx),
        ("[lz, lx] = i ly", &triple.lz, &triple.lx, &triple.ly),
    ];
    for (name, a, b, c) in table {
        let dev = commutator(a, b).map(|k| k.max_abs_diff(&(*c * I))).unwrap_or(f64::INFINITY);
        report.push(name, dev);
    }
    report
}

//! Dense complex matrices of dimension 2, 3 and 4.
//!
//! Everything in the crate that is an operator or a density matrix lives in a
//! [`ComplexMatrix`]. There is no general-n engine: the storage is a fixed
//! 16-slot array and only the leading `dim²` entries are meaningful.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::{Error, Result, Vec3, EXACT_TOL};

const MAX_DIM: usize = 4;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Copy, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: [Complex64; MAX_DIM * MAX_DIM],
}

fn check_dim(dim: usize) -> Result<()> {
    if (2..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::Dimension(format!("unsupported dimension {dim}, expected 2, 3 or 4")))
    }
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries; `entries.len()` must be `dim²`.
    pub fn new(dim: usize, entries: &[Complex64]) -> Result<Self> {
        check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        let mut m = Self::zeros_unchecked(dim);
        m.data[..dim * dim].copy_from_slice(entries);
        Ok(m)
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        let c: Vec<Complex64> = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::new(dim, &c)
    }

    fn zeros_unchecked(dim: usize) -> Self {
        Self { dim, data: [ZERO; MAX_DIM * MAX_DIM] }
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self::zeros_unchecked(dim))
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.set(i, i, ONE);
        }
        Ok(m)
    }

    pub fn identity2() -> Self {
        Self::identity(2).expect("2 is supported")
    }

    pub fn pauli_x() -> Self {
        Self::from_real(2, &[0.0, 1.0, 1.0, 0.0]).expect("2x2")
    }

    pub fn pauli_y() -> Self {
        Self::new(2, &[ZERO, -I, I, ZERO]).expect("2x2")
    }

    pub fn pauli_z() -> Self {
        Self::from_real(2, &[1.0, 0.0, 0.0, -1.0]).expect("2x2")
    }

    /// `(σx, σy, σz)`.
    pub fn paulis() -> [Self; 3] {
        [Self::pauli_x(), Self::pauli_y(), Self::pauli_z()]
    }

    pub fn diagonal(values: &[Complex64]) -> Result<Self> {
        let mut m = Self::zeros(values.len())?;
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, v);
        }
        Ok(m)
    }

    /// `exp(iΘ n·σ) = cos Θ · I + i sin Θ · n·σ` for a unit axis `n`.
    pub fn su2(axis: &Vec3, theta: f64) -> Self {
        let [x, y, z] = Self::paulis();
        let generator = x * axis[0] + y * axis[1] + z * axis[2];
        Self::identity2() * theta.cos() + generator * (I * theta.sin())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries, length `dim²`.
    pub fn entries(&self) -> &[Complex64] {
        &self.data[..self.dim * self.dim]
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        assert!(row < self.dim && col < self.dim, "index ({row},{col}) out of range");
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        assert!(row < self.dim && col < self.dim, "index ({row},{col}) out of range");
        self.data[row * self.dim + col] = value;
    }

    fn same_dim(&self, other: &Self, op: &str) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "{op}: dimension mismatch {} vs {}",
                self.dim, other.dim
            )))
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other, "product")?;
        let n = self.dim;
        let mut out = Self::zeros_unchecked(n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = ZERO;
                for k in 0..n {
                    acc += self.data[r * n + k] * other.data[k * n + c];
                }
                out.data[r * n + c] = acc;
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other, "sum")?;
        let mut out = *self;
        for (o, b) in out.data.iter_mut().zip(other.data.iter()) {
            *o += b;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_dim(other, "difference")?;
        let mut out = *self;
        for (o, b) in out.data.iter_mut().zip(other.data.iter()) {
            *o -= b;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = *self;
        out.data.iter_mut().for_each(|x| *x *= factor);
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros_unchecked(n);
        for r in 0..n {
            for c in 0..n {
                out.data[c * n + r] = self.data[r * n + c].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros_unchecked(n);
        for r in 0..n {
            for c in 0..n {
                out.data[c * n + r] = self.data[r * n + c];
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.entries()
            .iter()
            .zip(other.entries())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    pub fn hermitian_deviation(&self) -> f64 {
        self.max_abs_diff(&self.dagger())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `U · self · U†`.
    pub fn conjugate_by(&self, unitary: &Self) -> Result<Self> {
        unitary.checked_mul(self)?.checked_mul(&unitary.dagger())
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::Dimension(format!(
                "vector of length {} applied to {}x{} matrix",
                v.len(),
                self.dim,
                self.dim
            )));
        }
        Ok((0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.get(r, c) * v[c]).sum())
            .collect())
    }

    /// The principal sub-matrix on `indices` (which must name 2 or more rows).
    pub fn principal_block(&self, indices: &[usize]) -> Result<Self> {
        let mut out = Self::zeros(indices.len())?;
        for (r, &i) in indices.iter().enumerate() {
            for (c, &j) in indices.iter().enumerate() {
                if i >= self.dim || j >= self.dim {
                    return Err(Error::Dimension(format!("block index out of range for dim {}", self.dim)));
                }
                out.set(r, c, self.get(i, j));
            }
        }
        Ok(out)
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    pub fn eigenvalues_hermitian(&self) -> Result<Vec<f64>> {
        let dev = self.hermitian_deviation();
        if dev > EXACT_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let n = self.dim;
        let m = DMatrix::from_fn(n, n, |r, c| self.get(r, c));
        let mut values: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
        values.sort_by(f64::total_cmp);
        Ok(values)
    }

    /// Eigenvector matrix columns for a Hermitian matrix, paired with ascending eigenvalues.
    pub fn eigen_hermitian(&self) -> Result<Vec<(f64, Vec<Complex64>)>> {
        let dev = self.hermitian_deviation();
        if dev > EXACT_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let n = self.dim;
        let m = DMatrix::from_fn(n, n, |r, c| self.get(r, c));
        let eig = SymmetricEigen::new(m);
        let mut pairs: Vec<(f64, Vec<Complex64>)> = (0..n)
            .map(|k| (eig.eigenvalues[k], eig.eigenvectors.column(k).iter().copied().collect()))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(pairs)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{}x{} ", self.dim, self.dim)?;
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.dim {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.dim {
                if c > 0 {
                    write!(f, ", ")?;
                }
                let z = self.get(r, c);
                write!(f, "{:.6}{:+.6}i", z.re, z.im)?;
            }
        }
        write!(f, "]")
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("matrix sum dimension mismatch")
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("matrix difference dimension mismatch")
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("matrix product dimension mismatch")
    }
}

impl Mul<f64> for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: f64) -> Self {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

impl Mul<Complex64> for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Complex64) -> Self {
        self.scale(rhs)
    }
}

impl Neg for ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> Self {
        self.scale(-ONE)
    }
}

/// Kronecker product of two 2×2 matrices.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.dim != 2 || b.dim != 2 {
        return Err(Error::Dimension(format!(
            "tensor supports 2x2 ⊗ 2x2 only, got {}x{} ⊗ {}x{}",
            a.dim, a.dim, b.dim, b.dim
        )));
    }
    let mut out = ComplexMatrix::zeros_unchecked(4);
    for ar in 0..2 {
        for ac in 0..2 {
            for br in 0..2 {
                for bc in 0..2 {
                    out.set(2 * ar + br, 2 * ac + bc, a.get(ar, ac) * b.get(br, bc));
                }
            }
        }
    }
    Ok(out)
}

/// `[a, b] = ab − ba`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.checked_mul(b)?.checked_sub(&b.checked_mul(a)?)
}

/// Real coefficients of `M = m0·I + mx·σx + my·σy + mz·σz`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PauliCoefficients {
    pub m0: f64,
    pub mx: f64,
    pub my: f64,
    pub mz: f64,
}

impl PauliCoefficients {
    pub fn new(m0: f64, mx: f64, my: f64, mz: f64) -> Self {
        Self { m0, mx, my, mz }
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let [x, y, z] = ComplexMatrix::paulis();
        ComplexMatrix::identity2() * self.m0 + x * self.mx + y * self.my + z * self.mz
    }

    /// Length of `(mx, my, mz)`.
    pub fn radius(&self) -> f64 {
        (self.mx * self.mx + self.my * self.my + self.mz * self.mz).sqrt()
    }

    /// `m0 ∓ |m|`, ascending.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let r = self.radius();
        [self.m0 - r, self.m0 + r]
    }
}

/// Expands a 2×2 Hermitian matrix in the Pauli basis.
pub fn pauli_decompose(m: &ComplexMatrix) -> Result<PauliCoefficients> {
    if m.dim() != 2 {
        return Err(Error::Dimension(format!("pauli_decompose needs 2x2, got {}x{}", m.dim(), m.dim())));
    }
    let dev = m.hermitian_deviation();
    if dev > EXACT_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let a = m.get(0, 0).re;
    let d = m.get(1, 1).re;
    let off = m.get(1, 0);
    // M = [[m0 + mz, mx − i·my], [mx + i·my, m0 − mz]]
    Ok(PauliCoefficients { m0: 0.5 * (a + d), mx: off.re, my: off.im, mz: 0.5 * (a - d) })
}

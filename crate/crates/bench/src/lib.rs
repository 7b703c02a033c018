//! Shared inputs for the criterion benchmarks.

use qubitlab_core::Vec3;

/// Evenly spaced in-plane angles on `[0, 2π)`.
pub fn angle_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| std::f64::consts::TAU * k as f64 / n as f64).collect()
}

/// Unit vectors in the xz-plane at the given angles.
pub fn xz_directions(angles: &[f64]) -> Vec<Vec3> {
    angles.iter().map(|a| [a.sin(), 0.0, a.cos()]).collect()
}

//! Single-qubit Stern-Gerlach measurement with ±1 outcomes.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::rng::{trial_rng, Domain};
use crate::{dot, require_unit, Error, Result, Vec3};

/// A spin-½ outcome in units of ħ/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];

    pub fn value(self) -> f64 {
        match self {
            Outcome::Plus => 1.0,
            Outcome::Minus => -1.0,
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Outcome::Plus => 1,
            Outcome::Minus => -1,
        }
    }

    /// 0 for +1, 1 for −1.
    pub fn index(self) -> usize {
        match self {
            Outcome::Plus => 0,
            Outcome::Minus => 1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Outcome::Plus => Outcome::Minus,
            Outcome::Minus => Outcome::Plus,
        }
    }
}

/// Preparation and measurement directions; θ is always derived from them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SGSetup {
    prep: Vec3,
    meas: Vec3,
    theta: f64,
}

impl SGSetup {
    pub fn new(prep: Vec3, meas: Vec3) -> Result<Self> {
        require_unit(&prep, "preparation direction")?;
        require_unit(&meas, "measurement direction")?;
        let theta = dot(&prep, &meas).clamp(-1.0, 1.0).acos();
        Ok(Self { prep, meas, theta })
    }

    /// Preparation along +z, measurement at `theta` in the xz-plane.
    pub fn from_z(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::Domain(format!("angle must be finite, got {theta}")));
        }
        Self::new([0.0, 0.0, 1.0], [theta.sin(), 0.0, theta.cos()])
    }

    pub fn prep(&self) -> Vec3 {
        self.prep
    }

    pub fn meas(&self) -> Vec3 {
        self.meas
    }

    /// Angle between the two directions, in `[0, π]`.
    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// `(P(+1|θ), P(−1|θ)) = (cos²(θ/2), sin²(θ/2))`.
pub fn projection_probabilities(setup: &SGSetup) -> (f64, f64) {
    let half = 0.5 * setup.theta;
    let p_plus = half.cos().powi(2);
    (p_plus, 1.0 - p_plus)
}

/// `(+1)·P(+1) + (−1)·P(−1)`; equals `cos θ`.
pub fn expected_outcome(setup: &SGSetup) -> f64 {
    let (p_plus, p_minus) = projection_probabilities(setup);
    p_plus - p_minus
}

/// The classical projection `S·b̂` of a unit spin on the measurement axis.
pub fn classical_projection(setup: &SGSetup) -> f64 {
    dot(&setup.prep, &setup.meas)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeSample {
    pub n_plus: u64,
    pub n_minus: u64,
    pub n: u64,
    pub seed: u64,
}

impl OutcomeSample {
    pub fn mean(&self) -> f64 {
        (self.n_plus as f64 - self.n_minus as f64) / self.n as f64
    }

    pub fn plus_fraction(&self) -> f64 {
        self.n_plus as f64 / self.n as f64
    }
}

/// Outcome of trial `index`; a pure function of `(seed, index)`.
pub fn sample_outcome(setup: &SGSetup, seed: u64, index: u64) -> Outcome {
    let (p_plus, _) = projection_probabilities(setup);
    let u: f64 = trial_rng(seed, Domain::SingleOutcome, index).random();
    if u < p_plus {
        Outcome::Plus
    } else {
        Outcome::Minus
    }
}

pub fn sample_outcomes(setup: &SGSetup, n: u64, seed: u64) -> Result<OutcomeSample> {
    if n == 0 {
        return Err(Error::Domain("number of trials must be at least 1".into()));
    }
    let n_plus = (0..n)
        .into_par_iter()
        .filter(|&i| sample_outcome(setup, seed, i) == Outcome::Plus)
        .count() as u64;
    Ok(OutcomeSample { n_plus, n_minus: n - n_plus, n, seed })
}

/// Half-width of the `k`-sigma binomial band for a proportion `p` over `n` trials.
pub fn binomial_band(p: f64, n: u64, k: f64) -> f64 {
    k * (p * (1.0 - p) / n as f64).sqrt()
}

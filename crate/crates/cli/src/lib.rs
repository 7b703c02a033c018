//! Command-line front end for `qubitlab-core`.

pub mod angle;
pub mod commands;
pub mod output;
pub mod session;

/// Seed used when `--seed` is not given, so bare invocations are reproducible.
pub const DEFAULT_SEED: u64 = 20_240_611;

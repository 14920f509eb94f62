//! Configured bounds for exhaustive checks.
//!
//! None of these bounds come from the mathematics; they keep every sweep
//! finite and every oracle tractable. Exceeding a bound is always reported
//! as an error, never silently truncated.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intpoly::BinPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_degree: u32,
    pub max_nvars: usize,
    /// Maximum number of grid points visited by a single sweep.
    pub sweep_cap: u64,
    /// Largest window `W` for IP-set searches.
    pub max_window: u64,
    /// Largest generator count `k` for windowed IP searches.
    pub max_generators: usize,
    /// Largest generator count accepted by `fs_expand`.
    pub max_fs_generators: usize,
    pub max_phase_denominator: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 8,
            max_nvars: 4,
            sweep_cap: 1_000_000,
            max_window: 12,
            max_generators: 4,
            max_fs_generators: 20,
            max_phase_denominator: 720,
        }
    }
}

impl Limits {
    pub fn with_sweep_cap(mut self, cap: u64) -> Self {
        self.sweep_cap = cap;
        self
    }

    pub fn check_poly(&self, f: &BinPoly) -> Result<()> {
        if f.nvars() > self.max_nvars {
            return Err(Error::CapExceeded {
                what: "variable count",
                value: f.nvars() as u64,
                cap: self.max_nvars as u64,
            });
        }
        if f.degree() > self.max_degree {
            return Err(Error::CapExceeded {
                what: "degree",
                value: f.degree() as u64,
                cap: self.max_degree as u64,
            });
        }
        Ok(())
    }

    pub fn check_sweep(&self, points: u64) -> Result<()> {
        if points > self.sweep_cap {
            Err(Error::SweepCapExceeded {
                points,
                cap: self.sweep_cap,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_window(&self, window: u64, generators: usize) -> Result<()> {
        if window > self.max_window {
            return Err(Error::CapExceeded {
                what: "window",
                value: window,
                cap: self.max_window,
            });
        }
        if generators > self.max_generators {
            return Err(Error::CapExceeded {
                what: "generator count",
                value: generators as u64,
                cap: self.max_generators as u64,
            });
        }
        Ok(())
    }
}

/// Number of points in a box with the given side lengths, saturating.
pub(crate) fn grid_size(sides: &[u64]) -> u64 {
    sides.iter().fold(1u64, |acc, &s| acc.saturating_mul(s))
}

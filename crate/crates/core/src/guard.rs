//! Resource ceilings on the ground-set size `n`.
//!
//! The combinatorics here grows superexponentially in `n`, so every entry
//! point that builds a partition complex or a tensor power checks a ceiling.

use crate::error::{Error, Result};

/// Environment variable overriding every `n`-ceiling at once.
pub const ENV_OVERRIDE: &str = "PLIE_GUARD_MAX_N";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guard {
    /// Homology of |Π_n| and the cochains of T(n).
    pub homology_n: usize,
    /// Constructions tensoring T(n) with n-fold powers (strict oracle at p = 2).
    pub tensor_n: usize,
    /// Strict oracle at odd p.
    pub tensor_n_odd: usize,
    /// Homotopy-fixed-point constructions.
    pub spectral_n: usize,
    /// Longest resolution the spectral oracle will build.
    pub max_resolution_len: usize,
    /// Largest total weight the basis enumeration accepts.
    pub max_weight: u64,
}

impl Default for Guard {
    fn default() -> Self {
        Guard { homology_n: 7, tensor_n: 4, tensor_n_odd: 3, spectral_n: 3, max_resolution_len: 200, max_weight: 4096 }
    }
}

impl Guard {
    /// Every n-ceiling set to `n`.
    pub fn with_max_n(n: usize) -> Self {
        Guard { homology_n: n, tensor_n: n, tensor_n_odd: n, spectral_n: n, ..Guard::default() }
    }

    /// Defaults, unless the override variable holds a number.
    pub fn from_env() -> Self {
        match std::env::var(ENV_OVERRIDE).ok().and_then(|s| s.trim().parse().ok()) {
            Some(n) => Guard::with_max_n(n),
            None => Guard::default(),
        }
    }

    pub(crate) fn check(what: &'static str, n: usize, max: usize) -> Result<()> {
        if n > max {
            Err(Error::Guard { what, n, max })
        } else {
            Ok(())
        }
    }
}

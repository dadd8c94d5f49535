//! Exact enumeration of simple paths, departure-unique walks and rooted
//! animals, together with the degree-profile upper bounds on their numbers.
//!
//! Every counter parallelises over the first extension step; each branch
//! owns its scratch state and only the immutable window is shared. When a
//! sink is supplied the enumeration runs on the calling thread so that the
//! sink sees objects one at a time.

mod animals;
mod bound;
mod paths;
mod theta;

use std::time::Duration;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use animals::{
    count_animals, count_connected_sets, fold_animals, for_each_animal, for_each_connected_set,
};
pub use bound::{ln_biguint, verify_exponential_bound, BoundVerdict};
pub use paths::{bound_13, count_simple_paths, for_each_simple_path};
pub use theta::{bound_12, count_theta_paths, for_each_theta_path};

use crate::graph::GraphError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnumerationError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{kind} of order {requested} exceeds the configured cap {cap}")]
    Cap {
        kind: &'static str,
        requested: u32,
        cap: u32,
    },
    #[error("order must be positive")]
    ZeroOrder,
}

/// Result of one exact count.
#[derive(Debug, Clone, PartialEq)]
pub struct CountResult {
    pub n: u32,
    pub count: BigUint,
    /// `max Σ n(y) log n(y)` over the walks counted (departure-unique walks only).
    pub bound_12: Option<f64>,
    /// `max Σ log n(y)` over the paths counted (simple paths only).
    pub bound_13: Option<f64>,
    pub wall_time: Duration,
}

impl CountResult {
    pub fn ln_count(&self) -> f64 {
        ln_biguint(&self.count)
    }
}

/// Largest orders the enumerators are asked to reach.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EnumerationCaps {
    pub animals: u32,
    pub theta: u32,
    pub paths: u32,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        Self {
            animals: 16,
            theta: 12,
            paths: 20,
        }
    }
}

impl EnumerationCaps {
    pub fn check_animals(&self, n: u32) -> Result<(), EnumerationError> {
        check_cap("animals", n, self.animals)
    }

    pub fn check_theta(&self, n: u32) -> Result<(), EnumerationError> {
        check_cap("theta walks", n, self.theta)
    }

    pub fn check_paths(&self, n: u32) -> Result<(), EnumerationError> {
        check_cap("simple paths", n, self.paths)
    }
}

fn check_cap(kind: &'static str, requested: u32, cap: u32) -> Result<(), EnumerationError> {
    if requested > cap {
        Err(EnumerationError::Cap {
            kind,
            requested,
            cap,
        })
    } else {
        Ok(())
    }
}

/// `n log n` with the convention `0 log 0 = 0`.
#[inline]
pub(crate) fn n_log_n(n: u32) -> f64 {
    if n == 0 {
        0.0
    } else {
        n as f64 * (n as f64).ln()
    }
}

#[inline]
pub(crate) fn log_degree(n: u32) -> f64 {
    if n == 0 {
        0.0
    } else {
        (n as f64).ln()
    }
}

//! Property-based fuzzing of every bound, constructed equality witnesses
//! and a derivative-free search for near-extremal inputs.

mod draws;
mod fuzz;
pub mod hexfloat;
mod identities;
mod sampler;
mod search;
mod witness;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog::BoundId;
use crate::error::{Error, Result};
use crate::space::Field;
use crate::tolerance::{DEFAULT_SLACK_GUARD, INEQUALITY_REL_TOL};

pub use fuzz::{fuzz, fuzz_all, fuzz_triangle, FuzzReport, FuzzTarget};
pub use identities::{identity_campaign, IdentitySummary};
pub use sampler::{
    sample_inputs, sample_inputs_at, sample_triangle, Sample, TriangleSample, MAX_FAMILY,
};
pub use search::{certify_sharpness, sharpness_search, Method, SharpnessResult};
pub use witness::{equality_witness, Witness};

/// Default dimensions drawn by the samplers.
pub const DEFAULT_DIMS: [usize; 5] = [1, 2, 3, 5, 8];

/// Largest dimension a config may request.
pub const MAX_DIM: usize = 4096;

/// Closed interval `[lo, hi]` for real and imaginary parts of sampled
/// scalars, with optional per-bound overrides. Positive parameters are
/// drawn from `(0, max(|lo|, |hi|)]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamRanges {
    pub scalar: (f64, f64),
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub per_bound: BTreeMap<BoundId, (f64, f64)>,
}

impl Default for ParamRanges {
    fn default() -> Self {
        ParamRanges {
            scalar: (-3.0, 3.0),
            per_bound: BTreeMap::new(),
        }
    }
}

impl ParamRanges {
    pub fn for_bound(&self, id: BoundId) -> (f64, f64) {
        self.per_bound.get(&id).copied().unwrap_or(self.scalar)
    }

    fn validate(&self) -> Result<()> {
        let ok = |(lo, hi): (f64, f64)| lo.is_finite() && hi.is_finite() && lo < hi;
        if !ok(self.scalar) {
            return Err(Error::param("scalar range must be finite with lo < hi"));
        }
        if let Some((id, _)) = self.per_bound.iter().find(|(_, r)| !ok(**r)) {
            return Err(Error::param(format!(
                "range for {id} must be finite with lo < hi"
            )));
        }
        Ok(())
    }
}

/// Budget and step schedule of [`sharpness_search`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Total objective evaluations, split evenly across restarts.
    pub evaluations: u64,
    pub restarts: u64,
    pub initial_step: f64,
    pub min_step: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            evaluations: 10_000,
            restarts: 16,
            initial_step: 0.5,
            min_step: 1e-7,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub samples: u64,
    pub dims: Vec<usize>,
    pub fields: Vec<Field>,
    /// Samples whose hypothesis slack is below this are not counted as
    /// admissible.
    pub slack_guard: f64,
    /// Relative tolerance of every inequality check.
    pub tolerance: f64,
    #[serde(default)]
    pub param_ranges: ParamRanges,
    /// Worker threads; 0 means available parallelism. Results do not
    /// depend on it.
    #[serde(default)]
    pub workers: usize,
    #[serde(default)]
    pub search: SearchConfig,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 42,
            samples: 10_000,
            dims: DEFAULT_DIMS.to_vec(),
            fields: vec![Field::Real, Field::Complex],
            slack_guard: DEFAULT_SLACK_GUARD,
            tolerance: INEQUALITY_REL_TOL,
            param_ranges: ParamRanges::default(),
            workers: 0,
            search: SearchConfig::default(),
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::param("`samples` must be >= 1"));
        }
        if !(self.slack_guard > 0.0 && self.slack_guard.is_finite()) {
            return Err(Error::param("`slack_guard` must be > 0"));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::param("`tolerance` must be > 0"));
        }
        if self.dims.is_empty() || self.dims.iter().any(|&d| d == 0 || d > MAX_DIM) {
            return Err(Error::param(format!(
                "`dims` must be a nonempty set of integers in 1..={MAX_DIM}"
            )));
        }
        if self.fields.is_empty() {
            return Err(Error::param("`fields` must not be empty"));
        }
        let s = &self.search;
        if s.evaluations == 0 || s.restarts == 0 {
            return Err(Error::param("search budget and restarts must be >= 1"));
        }
        if !(s.initial_step > 0.0 && s.min_step > 0.0 && s.min_step <= s.initial_step) {
            return Err(Error::param(
                "search steps must satisfy 0 < min_step <= initial_step",
            ));
        }
        self.param_ranges.validate()
    }

    pub(crate) fn pool(&self) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .expect("thread pool")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        FuzzConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_bad_configs() {
        let bad = [
            FuzzConfig {
                samples: 0,
                ..Default::default()
            },
            FuzzConfig {
                slack_guard: 0.0,
                ..Default::default()
            },
            FuzzConfig {
                tolerance: -1.0,
                ..Default::default()
            },
            FuzzConfig {
                dims: vec![],
                ..Default::default()
            },
            FuzzConfig {
                dims: vec![0, 2],
                ..Default::default()
            },
            FuzzConfig {
                fields: vec![],
                ..Default::default()
            },
        ];
        for cfg in bad {
            assert_eq!(cfg.validate().unwrap_err().code(), "PARAM_DOMAIN");
        }
    }
}

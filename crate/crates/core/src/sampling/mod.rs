// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Random multigraphs and the predictions they are compared against.
//!
//! [`sample_mnm`] draws `m` unordered pairs uniformly and independently with
//! repetition. [`sample_poisson`] gives every pair an independent
//! Poisson multiplicity. Both are pure functions of their arguments and
//! the seed.

mod predict;
mod rng;
mod tail;

use std::fmt;
use std::str::FromStr;

use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use predict::{predict, Prediction, PredictionError, Regime};
pub use rng::TrialRng;
pub use tail::{binomial_tail, degree_quantile_d0};

use crate::graph::{Multigraph, Vertex};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SampleError {
    #[error("cannot place {m} edges on {n} vertices")]
    TooFewVertices { n: usize, m: u64 },
    #[error("Poisson rate {0} must be finite and non-negative")]
    InvalidRate(f64),
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("quantile exponent {0} must be positive")]
    InvalidExponent(f64),
    #[error("unknown model '{0}' (expected iid-pairs or poisson)")]
    UnknownModel(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    #[default]
    IidPairs,
    Poisson,
}

impl Model {
    pub fn tag(self) -> &'static str {
        match self {
            Model::IidPairs => "iid-pairs",
            Model::Poisson => "poisson",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Model {
    type Err = SampleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "iid-pairs" => Ok(Model::IidPairs),
            "poisson" => Ok(Model::Poisson),
            other => Err(SampleError::UnknownModel(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub n: usize,
    pub m: u64,
    pub seed: u64,
    pub model: Model,
}

/// Number of unordered pairs on `n` vertices.
pub fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// The pair of lexicographic rank `r` among the `C(n, 2)` pairs `u < v`.
pub fn decode_pair(r: u64, n: usize) -> (Vertex, Vertex) {
    let total = pair_count(n);
    debug_assert!(r < total);
    // rank counted from the end: rows hold 1, 2, 3, ... pairs
    let t = total - 1 - r;
    let mut row = ((8 * t + 1).isqrt() - 1) / 2;
    while row * (row + 1) / 2 > t {
        row -= 1;
    }
    while (row + 1) * (row + 2) / 2 <= t {
        row += 1;
    }
    let u = n as u64 - 2 - row;
    let v = n as u64 - 1 - (t - row * (row + 1) / 2);
    (u as Vertex, v as Vertex)
}

/// `M(n, m)`: `m` pairs drawn uniformly with repetition.
pub fn sample_mnm(n: usize, m: u64, seed: u64) -> Result<Multigraph, SampleError> {
    if m == 0 {
        return Ok(Multigraph::empty(n));
    }
    if n < 2 {
        return Err(SampleError::TooFewVertices { n, m });
    }
    let total = pair_count(n);
    let mut rng = TrialRng::new(seed);
    let mut counts = vec![0u64; total as usize];
    for _ in 0..m {
        counts[rng.below(total) as usize] += 1;
    }
    Ok(from_counts(n, &counts))
}

/// Independent `Poisson(lambda)` multiplicity on every pair, drawn in
/// lexicographic pair order.
pub fn sample_poisson(n: usize, lambda: f64, seed: u64) -> Result<Multigraph, SampleError> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(SampleError::InvalidRate(lambda));
    }
    if lambda == 0.0 || n < 2 {
        return Ok(Multigraph::empty(n));
    }
    let dist = Poisson::new(lambda).map_err(|_| SampleError::InvalidRate(lambda))?;
    let mut rng = TrialRng::new(seed);
    let counts: Vec<u64> = (0..pair_count(n))
        .map(|_| dist.sample(rng.as_rng()) as u64)
        .collect();
    Ok(from_counts(n, &counts))
}

/// Samples under `cfg.model`; the Poisson rate is `m / C(n, 2)`.
pub fn sample(cfg: &SampleConfig) -> Result<Multigraph, SampleError> {
    match cfg.model {
        Model::IidPairs => sample_mnm(cfg.n, cfg.m, cfg.seed),
        Model::Poisson => {
            if cfg.n < 2 {
                return if cfg.m == 0 {
                    Ok(Multigraph::empty(cfg.n))
                } else {
                    Err(SampleError::TooFewVertices { n: cfg.n, m: cfg.m })
                };
            }
            sample_poisson(cfg.n, cfg.m as f64 / pair_count(cfg.n) as f64, cfg.seed)
        }
    }
}

fn from_counts(n: usize, counts: &[u64]) -> Multigraph {
    let edges = counts
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(r, &k)| {
            let (u, v) = decode_pair(r as u64, n);
            (u, v, k)
        });
    Multigraph::build(n, edges).expect("decoded pairs are valid")
}

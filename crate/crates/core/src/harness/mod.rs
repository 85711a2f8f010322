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

//! Monte Carlo experiments over random multigraphs.
//!
//! An [`ExperimentConfig`] expands to cells `(n, m)`; every cell runs
//! `trials` independent trials. Trial `t` of cell `c` uses seed
//! `base_seed + c * trials + t` (wrapping), so any record can be
//! recomputed from its stored seed with [`run_trial`].

mod aggregate;
mod emit;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use aggregate::{aggregate, CellSummary};
pub use emit::{emit_records, emit_summaries, parse_records, Format, RECORD_HEADER, SUMMARY_HEADER};

use crate::bounds::Density;
use crate::coloring::{color_optimal, ColoringOutcome};
use crate::graph::Multigraph;
use crate::sampling::{sample, Model, SampleConfig, SampleError};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("no records to aggregate")]
    Empty,
    #[error("unknown output format '{0}' (expected csv or json-lines)")]
    UnknownFormat(String),
    #[error("bad experiment config: {0}")]
    Config(String),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// An edge count, either absolute or as a multiple of `n^3 ln n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeCount {
    Absolute(u64),
    Scaled { scale: f64 },
}

impl EdgeCount {
    pub fn resolve(self, n: usize) -> u64 {
        match self {
            EdgeCount::Absolute(m) => m,
            EdgeCount::Scaled { scale } => {
                let nf = n as f64;
                (scale * nf * nf * nf * nf.ln()).round().max(0.0) as u64
            }
        }
    }
}

/// A grid of cells read from TOML:
///
/// ```toml
/// n = [8, 9]
/// m = [50, 500, { scale = 2.0 }]
/// trials = 100
/// base_seed = 0
/// model = "iid-pairs"
/// format = "csv"
/// parallelism = 0
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: Vec<usize>,
    pub m: Vec<EdgeCount>,
    pub trials: u64,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default)]
    pub model: Model,
    #[serde(default)]
    pub format: Format,
    /// Worker threads; 0 means one per available core.
    #[serde(default)]
    pub parallelism: usize,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.trials == 0 {
            return Err(HarnessError::NoTrials);
        }
        Ok(())
    }

    /// Cells in `n`-major order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for &n in &self.n {
            for &m in &self.m {
                out.push(Cell {
                    index: out.len() as u64,
                    n,
                    m: m.resolve(n),
                });
            }
        }
        out
    }

    pub fn seed_for(&self, cell: u64, trial: u64) -> u64 {
        self.base_seed
            .wrapping_add(cell.wrapping_mul(self.trials))
            .wrapping_add(trial)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub index: u64,
    pub n: usize,
    pub m: u64,
}

/// One trial. `rho_full` is `edges / floor(n/2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub cell: u64,
    pub trial: u64,
    pub seed: u64,
    pub model: Model,
    pub n: usize,
    /// Requested edge count; the Poisson model realises `edges` instead.
    pub m: u64,
    pub edges: u64,
    pub delta: u64,
    pub d2: u64,
    pub gap: u64,
    pub mu_max: u64,
    pub mu_min: u64,
    #[serde(with = "density_text")]
    pub rho_full: Density,
    pub lower_bound: usize,
    pub colors_used: usize,
    pub first_class: bool,
    pub strategy: crate::coloring::Strategy,
    pub wall_ms: u64,
}

impl TrialRecord {
    /// Equality ignoring wall time.
    pub fn same_outcome(&self, other: &TrialRecord) -> bool {
        TrialRecord {
            wall_ms: 0,
            ..self.clone()
        } == TrialRecord {
            wall_ms: 0,
            ..other.clone()
        }
    }
}

/// Samples and colours one graph.
pub fn trial_outcome(
    n: usize,
    m: u64,
    model: Model,
    seed: u64,
) -> Result<(Multigraph, ColoringOutcome), SampleError> {
    let g = sample(&SampleConfig { n, m, seed, model })?;
    let out = color_optimal(&g);
    Ok((g, out))
}

pub fn run_trial(
    n: usize,
    m: u64,
    model: Model,
    seed: u64,
    cell: u64,
    trial: u64,
) -> Result<TrialRecord, SampleError> {
    let start = Instant::now();
    let (g, out) = trial_outcome(n, m, model, seed)?;
    let wall_ms = start.elapsed().as_millis() as u64;
    let stats = g.degree_stats();
    Ok(TrialRecord {
        cell,
        trial,
        seed,
        model,
        n,
        m,
        edges: g.m(),
        delta: stats.max_degree,
        d2: stats.d(2),
        gap: stats.gap(),
        mu_max: stats.mu_max,
        mu_min: stats.mu_min,
        rho_full: Density::new(g.m(), (n / 2).max(1) as u64),
        lower_bound: out.lower_bound,
        colors_used: out.colors_used,
        first_class: out.first_class,
        strategy: out.strategy,
        wall_ms,
    })
}

/// Runs every feasible cell. Records come back ordered by `(cell, trial)`.
pub fn run_trials(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>, HarnessError> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    for cell in cfg.cells() {
        if cell.n < 2 && cell.m > 0 {
            log::warn!(
                "skipping cell {}: cannot place {} edges on {} vertices",
                cell.index,
                cell.m,
                cell.n
            );
            continue;
        }
        for t in 0..cfg.trials {
            jobs.push((cell, t));
        }
    }
    let work = || {
        jobs.par_iter()
            .map(|&(cell, t)| {
                run_trial(cell.n, cell.m, cfg.model, cfg.seed_for(cell.index, t), cell.index, t)
            })
            .collect::<Result<Vec<_>, _>>()
    };
    let records = if cfg.parallelism == 0 {
        work()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallelism)
            .build()
            .map_err(|e| HarnessError::Config(e.to_string()))?
            .install(work)?
    };
    Ok(records)
}

mod density_text {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::bounds::Density;

    pub fn serialize<S: Serializer>(d: &Density, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(d)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Density, D::Error> {
        let text = String::deserialize(d)?;
        let (a, b) = text
            .split_once('/')
            .ok_or_else(|| D::Error::custom(format!("bad density '{text}'")))?;
        let a: u64 = a.parse().map_err(D::Error::custom)?;
        let b: u64 = b.parse().map_err(D::Error::custom)?;
        if b == 0 {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Density::new(a, b))
    }
}

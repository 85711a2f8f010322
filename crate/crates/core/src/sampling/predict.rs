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

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::tail::degree_quantile_d0;
use crate::bounds::Density;

/// Quantile exponent used for `d0`.
pub const D0_EXPONENT: f64 = 0.9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PredictionError {
    #[error("epsilon {0} outside (0, 1)")]
    InvalidEpsilon(f64),
    #[error("need at least two vertices, got {0}")]
    TooFewVertices(usize),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    SubThreshold,
    SuperThreshold,
}

impl Regime {
    pub fn tag(self) -> &'static str {
        match self {
            Regime::SubThreshold => "sub-threshold",
            Regime::SuperThreshold => "super-threshold",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sub-threshold" => Ok(Regime::SubThreshold),
            "super-threshold" => Ok(Regime::SuperThreshold),
            other => Err(format!("unknown regime '{other}'")),
        }
    }
}

/// Theory-side expectations for `M(n, m)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub n: usize,
    pub m: u64,
    pub epsilon: f64,
    /// High-probability upper bound on the maximum degree.
    pub d_plus: f64,
    /// `m / floor(n/2)`.
    pub rho_full: Density,
    /// `n^3 ln n`.
    pub threshold: f64,
    pub regime: Regime,
    /// Largest `d` with `Pr[Bin(m, 2/n) >= d] >= n^-0.9`.
    pub d0: u64,
}

pub fn predict(n: usize, m: u64, epsilon: f64) -> Result<Prediction, PredictionError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(PredictionError::InvalidEpsilon(epsilon));
    }
    if n < 2 {
        return Err(PredictionError::TooFewVertices(n));
    }
    let (nf, mf) = (n as f64, m as f64);
    let ln_n = nf.ln();
    let d_plus = if m == 0 {
        0.0
    } else {
        2.0 * mf / nf + (1.0 + epsilon) * ((4.0 * mf / nf) * (1.0 - 2.0 / nf) * ln_n).sqrt()
    };
    let threshold = nf * nf * nf * ln_n;
    let regime = if mf >= threshold {
        Regime::SuperThreshold
    } else {
        Regime::SubThreshold
    };
    let d0 = degree_quantile_d0(n as u64, m, D0_EXPONENT).expect("valid quantile arguments");
    Ok(Prediction {
        n,
        m,
        epsilon,
        d_plus,
        rho_full: Density::new(m, (n / 2) as u64),
        threshold,
        regime,
        d0,
    })
}

impl Prediction {
    /// `key=value` lines in a fixed order. Floats use the shortest
    /// representation that parses back to the same value.
    pub fn to_text(&self) -> String {
        format!(
            "n={}\nm={}\nepsilon={}\nd_plus={}\nrho_full={}\nthreshold={}\nregime={}\nd0={}\n",
            self.n, self.m, self.epsilon, self.d_plus, self.rho_full, self.threshold, self.regime, self.d0
        )
    }

    pub fn from_text(text: &str) -> Result<Self, PredictionError> {
        let mut fields = std::collections::BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| PredictionError::Parse {
                line: i + 1,
                reason: format!("expected key=value, got '{line}'"),
            })?;
            fields.insert(k.trim().to_string(), (i + 1, v.trim().to_string()));
        }
        fn get<T: FromStr>(
            fields: &std::collections::BTreeMap<String, (usize, String)>,
            key: &str,
        ) -> Result<T, PredictionError> {
            let (line, v) = fields.get(key).ok_or_else(|| PredictionError::Parse {
                line: 0,
                reason: format!("missing key '{key}'"),
            })?;
            v.parse().map_err(|_| PredictionError::Parse {
                line: *line,
                reason: format!("bad value for '{key}': '{v}'"),
            })
        }
        let rho: String = get(&fields, "rho_full")?;
        let rho_full = rho
            .split_once('/')
            .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
            .filter(|&(_, b): &(u64, u64)| b > 0)
            .map(|(a, b)| Density::new(a, b))
            .ok_or_else(|| PredictionError::Parse {
                line: fields["rho_full"].0,
                reason: format!("bad density '{rho}'"),
            })?;
        Ok(Prediction {
            n: get(&fields, "n")?,
            m: get(&fields, "m")?,
            epsilon: get(&fields, "epsilon")?,
            d_plus: get(&fields, "d_plus")?,
            rho_full,
            threshold: get(&fields, "threshold")?,
            regime: get(&fields, "regime")?,
            d0: get(&fields, "d0")?,
        })
    }
}

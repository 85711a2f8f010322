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

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{HarnessError, TrialRecord};
use crate::coloring::Strategy;
use crate::sampling::Model;

/// Per-cell statistics. Medians are lower medians.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub cell: u64,
    pub n: usize,
    pub m: u64,
    pub model: Model,
    pub trials: u64,
    pub mean_gap: f64,
    pub median_gap: u64,
    pub mean_delta: f64,
    pub median_delta: u64,
    pub mean_colors: f64,
    pub median_colors: u64,
    pub first_class: u64,
    pub strategies: BTreeMap<Strategy, u64>,
}

impl CellSummary {
    /// `first_class / trials` in lowest terms.
    pub fn first_class_fraction(&self) -> (u64, u64) {
        let g = gcd(self.first_class, self.trials).max(1);
        (self.first_class / g, self.trials / g)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lower_median(mut xs: Vec<u64>) -> u64 {
    xs.sort_unstable();
    xs[(xs.len() - 1) / 2]
}

fn mean(xs: &[u64]) -> f64 {
    xs.iter().map(|&x| u128::from(x)).sum::<u128>() as f64 / xs.len() as f64
}

/// Summaries ordered by cell. The result does not depend on record order.
pub fn aggregate(records: &[TrialRecord]) -> Result<Vec<CellSummary>, HarnessError> {
    if records.is_empty() {
        return Err(HarnessError::Empty);
    }
    let mut cells: BTreeMap<(u64, usize, u64, Model), Vec<&TrialRecord>> = BTreeMap::new();
    for r in records {
        cells
            .entry((r.cell, r.n, r.m, r.model))
            .or_default()
            .push(r);
    }
    Ok(cells
        .into_iter()
        .map(|((cell, n, m, model), rs)| {
            let gaps: Vec<u64> = rs.iter().map(|r| r.gap).collect();
            let deltas: Vec<u64> = rs.iter().map(|r| r.delta).collect();
            let colors: Vec<u64> = rs.iter().map(|r| r.colors_used as u64).collect();
            let mut strategies = BTreeMap::new();
            for r in &rs {
                *strategies.entry(r.strategy).or_insert(0) += 1;
            }
            CellSummary {
                cell,
                n,
                m,
                model,
                trials: rs.len() as u64,
                mean_gap: mean(&gaps),
                median_gap: lower_median(gaps),
                mean_delta: mean(&deltas),
                median_delta: lower_median(deltas),
                mean_colors: mean(&colors),
                median_colors: lower_median(colors),
                first_class: rs.iter().filter(|r| r.first_class).count() as u64,
                strategies,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::Density;
    use proptest::prelude::{any, prop, prop_assert_eq, proptest};

    fn record(trial: u64, gap: u64, first_class: bool) -> TrialRecord {
        TrialRecord {
            cell: 0,
            trial,
            seed: trial,
            model: Model::IidPairs,
            n: 4,
            m: 10,
            edges: 10,
            delta: 7 + gap,
            d2: 7,
            gap,
            mu_max: 3,
            mu_min: 0,
            rho_full: Density::new(10, 2),
            lower_bound: 7 + gap as usize,
            colors_used: 7 + gap as usize + usize::from(!first_class),
            first_class,
            strategy: if first_class { Strategy::General } else { Strategy::VizingMulti },
            wall_ms: trial,
        }
    }

    #[test]
    fn single_record_echoes() {
        let r = record(0, 3, true);
        let s = aggregate(std::slice::from_ref(&r)).unwrap();
        assert_eq!(s.len(), 1);
        let s = &s[0];
        assert_eq!((s.n, s.m, s.trials), (r.n, r.m, 1));
        assert_eq!((s.mean_gap, s.median_gap), (3.0, 3));
        assert_eq!((s.mean_delta, s.median_delta), (10.0, 10));
        assert_eq!(s.median_colors, r.colors_used as u64);
        assert_eq!(s.first_class_fraction(), (1, 1));
        assert_eq!(s.strategies[&Strategy::General], 1);
    }

    #[test]
    fn lower_median_and_mean() {
        let s = aggregate(&[record(0, 2, true), record(1, 4, false)]).unwrap();
        assert_eq!(s[0].mean_gap, 3.0);
        assert_eq!(s[0].median_gap, 2);
        assert_eq!(s[0].first_class_fraction(), (1, 2));
    }

    #[test]
    fn empty_rejected() {
        assert!(matches!(aggregate(&[]), Err(HarnessError::Empty)));
    }

    proptest! {
        #[test]
        fn order_independent(gaps in prop::collection::vec((0u64..20, any::<bool>(), 0u64..3), 1..40), rot in 0usize..40) {
            let mut recs: Vec<TrialRecord> = gaps
                .iter()
                .enumerate()
                .map(|(i, &(g, fc, cell))| TrialRecord { cell, ..record(i as u64, g, fc) })
                .collect();
            let a = aggregate(&recs).unwrap();
            let k = rot % recs.len();
            recs.rotate_left(k);
            recs.reverse();
            prop_assert_eq!(a, aggregate(&recs).unwrap());
        }
    }
}

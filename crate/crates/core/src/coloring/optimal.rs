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

//! Strategy dispatch towards `max{Δ, ⌈ρ⌉}` colours.
//!
//! Strategies run in a fixed order, each only when its structural
//! precondition holds:
//!
//! 1. forests, by fan recolouring with `Δ` colours;
//! 2. simple graphs, by fan recolouring;
//! 3. matching removal, when its distance conditions hold;
//! 4. AlgC with `k = Δ` when `d₁ − d₂ ≥ max{2, μ}`;
//! 5. splitting off `μ_min` copies of `K_n`, coloured by a 1-factorization,
//!    and AlgC on the rest, when `d₁ − d₂ ≥ μ − μ_min ≥ 2`;
//! 6. the general engine from `k = max{Δ, ⌈ρ⌉}`, adding a colour whenever
//!    augmentation fails.
//!
//! The first result that meets the lower bound is returned. Otherwise the
//! general engine also runs and the best colouring wins; the multigraph
//! Vizing colouring is the last resort.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::algc::{edge_order, AlgC, AlgCOutput, EngineStats};
use super::matching_removal::matching_removal_color;
use super::vizing::{vizing_color_multi, vizing_color_simple};
use super::{Color, EdgeColoring};
use crate::bounds::{check_second_class_conditions, lower_bound, LowerBound, SecondClassCondition};
use crate::graph::{one_factorization, Multigraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Forest,
    VizingSimple,
    MatchingRemoval,
    BoundedAlgc,
    CompleteDecomposition,
    General,
    VizingMulti,
}

impl Strategy {
    pub const ALL: [Strategy; 7] = [
        Strategy::Forest,
        Strategy::VizingSimple,
        Strategy::MatchingRemoval,
        Strategy::BoundedAlgc,
        Strategy::CompleteDecomposition,
        Strategy::General,
        Strategy::VizingMulti,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Strategy::Forest => "forest",
            Strategy::VizingSimple => "vizing-simple",
            Strategy::MatchingRemoval => "matching-removal",
            Strategy::BoundedAlgc => "bounded-algc",
            Strategy::CompleteDecomposition => "complete-decomposition",
            Strategy::General => "general",
            Strategy::VizingMulti => "vizing-multi",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Strategy> {
        Strategy::ALL.into_iter().find(|s| s.tag() == tag)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// One strategy run: colours used, or why it did not apply.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attempt {
    pub strategy: Strategy,
    pub result: Result<usize, String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub lower_bound_exact: bool,
    pub attempts: Vec<Attempt>,
    pub engine: EngineStats,
    /// For odd `n` when the result is above the lower bound: the conditions
    /// that hold with `k = colors_used − 1`.
    pub second_class_conditions: Option<Vec<SecondClassCondition>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringOutcome {
    pub coloring: EdgeColoring,
    pub colors_used: usize,
    pub target_k: usize,
    pub lower_bound: usize,
    pub first_class: bool,
    pub strategy: Strategy,
    pub diagnostics: Diagnostics,
}

/// Tuning for [`color_optimal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorOptions {
    /// Switches allowed per stuck instance, as a multiple of `k * m`.
    pub budget_factor: u64,
    pub seed: u64,
}

impl Default for ColorOptions {
    fn default() -> Self {
        ColorOptions {
            budget_factor: 4,
            seed: 0,
        }
    }
}

/// [`color_optimal_with`] under default options.
pub fn color_optimal(g: &Multigraph) -> ColoringOutcome {
    color_optimal_with(g, &ColorOptions::default())
}

struct Best {
    coloring: EdgeColoring,
    strategy: Strategy,
    target: usize,
}

pub fn color_optimal_with(g: &Multigraph, opts: &ColorOptions) -> ColoringOutcome {
    let lb: LowerBound = lower_bound(g);
    let lbk = lb.k as usize;
    let stats = g.degree_stats();
    let delta = stats.max_degree;
    let mu = stats.mu_max;
    let gap = stats.gap();
    let mut diag = Diagnostics {
        lower_bound_exact: lb.rho_is_exact,
        ..Diagnostics::default()
    };
    let mut best: Option<Best> = None;
    let algc = AlgC {
        budget_factor: opts.budget_factor,
        seed: opts.seed,
    };

    let done = 'search: {
        if g.is_forest() {
            let c = vizing_color_simple(g).expect("forests are simple");
            if offer(&mut best, &mut diag, lbk, Some(c), String::new(), Strategy::Forest, delta as usize) {
                break 'search true;
            }
        } else if g.is_simple() {
            let c = vizing_color_simple(g).expect("checked simple");
            if offer(&mut best, &mut diag, lbk, Some(c), String::new(), Strategy::VizingSimple, delta as usize) {
                break 'search true;
            }
        }
        if mu == 2 {
            let r = matching_removal_color(g);
            let why = r.as_ref().err().map(ToString::to_string).unwrap_or_default();
            if offer(&mut best, &mut diag, lbk, r.ok(), why, Strategy::MatchingRemoval, delta as usize) {
                break 'search true;
            }
        }
        if delta >= 2 && gap >= mu.max(2) {
            let (c, why) = match algc.run(g, delta as Color) {
                Ok(AlgCOutput::Colored(c)) => (Some(c), String::new()),
                Ok(AlgCOutput::Elementary(_)) => (None, "elementary tree".to_string()),
                Ok(AlgCOutput::BudgetExhausted { .. }) => (None, "budget exhausted".to_string()),
                Err(e) => (None, e.to_string()),
            };
            if offer(&mut best, &mut diag, lbk, c, why, Strategy::BoundedAlgc, delta as usize) {
                break 'search true;
            }
        }
        if gap + stats.mu_min >= mu && mu >= stats.mu_min + 2 {
            let (c, why, target) = complete_decomposition(g, &algc);
            if offer(&mut best, &mut diag, lbk, c, why, Strategy::CompleteDecomposition, target) {
                break 'search true;
            }
        }
        false
    };

    if !done {
        let k0 = lbk.max(1) as Color;
        let mut c = EdgeColoring::new(g, k0);
        let order = edge_order(g, k0);
        algc.drive(g, &mut c, &order, true, true, &mut diag.engine);
        let reached = offer(&mut best, &mut diag, lbk, Some(c), String::new(), Strategy::General, lbk);
        let above_vizing = best
            .as_ref()
            .is_some_and(|b| b.coloring.colors_used() as u64 > delta + mu);
        if !reached && above_vizing {
            let c = vizing_color_multi(g);
            offer(&mut best, &mut diag, lbk, Some(c), String::new(), Strategy::VizingMulti, (delta + mu) as usize);
        }
    }

    let best = best.expect("the general engine always colours");
    let coloring = best.coloring.compact();
    let colors_used = coloring.colors_used();
    if colors_used > lbk && g.n() % 2 == 1 && colors_used >= 2 {
        diag.second_class_conditions =
            check_second_class_conditions(g, colors_used as u64 - 1).ok();
    }
    ColoringOutcome {
        colors_used,
        target_k: best.target,
        lower_bound: lbk,
        first_class: colors_used == lbk,
        strategy: best.strategy,
        coloring,
        diagnostics: diag,
    }
}

fn offer(
    best: &mut Option<Best>,
    diag: &mut Diagnostics,
    lbk: usize,
    c: Option<EdgeColoring>,
    why: String,
    strategy: Strategy,
    target: usize,
) -> bool {
    match c {
        Some(c) => {
            let used = c.colors_used();
            diag.attempts.push(Attempt {
                strategy,
                result: Ok(used),
            });
            if best.as_ref().is_none_or(|b| used < b.coloring.colors_used()) {
                *best = Some(Best {
                    coloring: c,
                    strategy,
                    target,
                });
            }
        }
        None => diag.attempts.push(Attempt {
            strategy,
            result: Err(why),
        }),
    }
    best.as_ref().is_some_and(|b| b.coloring.colors_used() <= lbk)
}

/// `μ_min · K_n` by a 1-factorization, the rest by AlgC with `k = Δ(rest)`.
fn complete_decomposition(g: &Multigraph, algc: &AlgC) -> (Option<EdgeColoring>, String, usize) {
    let n = g.n();
    let (copies, rest) = g.decompose_complete();
    let classes = one_factorization(n).expect("complete support needs n >= 2");
    let per = classes.len() as Color;
    let k_rest = rest.max_degree() as Color;
    let target = (copies as usize) * classes.len() + k_rest as usize;
    let rest_coloring = match algc.run(&rest, k_rest) {
        Ok(AlgCOutput::Colored(c)) => c,
        Ok(AlgCOutput::Elementary(_)) => return (None, "elementary tree on remainder".into(), target),
        Ok(AlgCOutput::BudgetExhausted { .. }) => return (None, "budget exhausted on remainder".into(), target),
        Err(e) => return (None, e.to_string(), target),
    };
    let mut class_of = vec![0 as Color; n * n];
    for (i, class) in classes.iter().enumerate() {
        for &(u, v) in class {
            class_of[u * n + v] = i as Color;
        }
    }
    let rest_ids: std::collections::BTreeMap<(usize, usize), usize> = {
        let mut first = std::collections::BTreeMap::new();
        for (i, e) in rest.instances().iter().enumerate() {
            first.entry((e.u, e.v)).or_insert(i);
        }
        first
    };
    let colors: Vec<Color> = g
        .instances()
        .iter()
        .map(|e| {
            if e.copy < copies {
                e.copy as Color * per + class_of[e.u * n + e.v] + 1
            } else {
                let id = rest_ids[&(e.u, e.v)] + (e.copy - copies) as usize;
                copies as Color * per + rest_coloring.color(id)
            }
        })
        .collect();
    let k = copies as Color * per + k_rest;
    let c = EdgeColoring::from_assignment(g, k, &colors).expect("disjoint palettes");
    (Some(c), String::new(), target)
}

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

use thiserror::Error;

use super::{Color, EdgeColoring, UNCOLORED};
use crate::bounds::lower_bound;
use crate::graph::Multigraph;

pub const DEFAULT_MAX_EXACT_M: u64 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("{m} instances exceed the exact-search bound {bound}")]
    TooLarge { m: u64, bound: u64 },
}

/// Chromatic index by backtracking, for at most `max_m` instances.
pub fn exact_chromatic_index(g: &Multigraph, max_m: u64) -> Result<Color, ExactError> {
    exact_coloring(g, max_m).map(|c| c.colors_used() as Color)
}

/// An optimal colouring by backtracking. Palettes are tried upward from
/// `max{Δ, ⌈ρ⌉}`; colours enter in increasing order and parallel copies
/// take increasing colours.
pub fn exact_coloring(g: &Multigraph, max_m: u64) -> Result<EdgeColoring, ExactError> {
    if g.m() > max_m {
        return Err(ExactError::TooLarge {
            m: g.m(),
            bound: max_m,
        });
    }
    let start = (lower_bound(g).k as Color).max(1);
    let mut k = start;
    loop {
        let mut search = Search::new(g, k);
        if search.dfs(0, 0) {
            return Ok(search.c);
        }
        k += 1;
    }
}

struct Search {
    c: EdgeColoring,
    /// Uncoloured instances left at each vertex.
    left: Vec<usize>,
    same_as_prev: Vec<bool>,
}

impl Search {
    fn new(g: &Multigraph, k: Color) -> Self {
        let inst = g.instances();
        let same_as_prev = (0..inst.len())
            .map(|i| i > 0 && inst[i].copy > 0)
            .collect();
        Search {
            c: EdgeColoring::new(g, k),
            left: g.degrees().iter().map(|&d| d as usize).collect(),
            same_as_prev,
        }
    }

    fn dfs(&mut self, e: usize, used: Color) -> bool {
        if e == self.c.instance_count() {
            return true;
        }
        let (u, v) = self.c.endpoints(e);
        let lo = if self.same_as_prev[e] {
            self.c.color(e - 1) + 1
        } else {
            1
        };
        let hi = (used + 1).min(self.c.k());
        for col in lo..=hi {
            if !(self.c.is_missing(u, col) && self.c.is_missing(v, col)) {
                continue;
            }
            self.c.assign(e, col);
            self.left[u] -= 1;
            self.left[v] -= 1;
            let feasible = [u, v]
                .iter()
                .all(|&w| self.left[w] <= self.c.missing(w).len());
            if feasible && self.dfs(e + 1, used.max(col)) {
                return true;
            }
            self.left[u] += 1;
            self.left[v] += 1;
            self.c.unassign(e);
        }
        debug_assert_eq!(self.c.color(e), UNCOLORED);
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify;
    use crate::families::*;

    fn chi(g: &Multigraph) -> Color {
        let c = exact_coloring(g, DEFAULT_MAX_EXACT_M).unwrap();
        assert!(verify(g, c.colors()).unwrap().valid);
        c.colors_used() as Color
    }

    #[test]
    fn known_values() {
        assert_eq!(chi(&triangle()), 3);
        assert_eq!(chi(&complete_simple(4)), 3);
        assert_eq!(chi(&complete_simple(5)), 5);
        assert_eq!(chi(&shannon_triangle(4)), 6);
        assert_eq!(chi(&petersen()), 4);
        assert_eq!(chi(&cycle(7)), 3);
        assert_eq!(chi(&Multigraph::empty(3)), 0);
    }

    #[test]
    fn size_bound() {
        let g = complete_simple(7);
        assert_eq!(
            exact_chromatic_index(&g, DEFAULT_MAX_EXACT_M),
            Err(ExactError::TooLarge { m: 21, bound: 16 })
        );
        assert_eq!(exact_chromatic_index(&g, 21), Ok(7));
    }
}

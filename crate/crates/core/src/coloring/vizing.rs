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

use super::fan::{fan_recolor, FanResult};
use super::{Color, EdgeColoring};
use crate::graph::{DisjointSets, Multigraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VizingError {
    #[error("multigraph has multiplicity {0}; use vizing_color_multi")]
    NotSimple(u64),
}

/// Whether the vertices of maximum degree induce a forest.
pub fn cores_form_forest(g: &Multigraph) -> bool {
    let delta = g.max_degree();
    let mut dsu = DisjointSets::new(g.n());
    for (u, v, _) in g.pairs() {
        if g.degree(u) == delta && g.degree(v) == delta && !dsu.union(u, v) {
            return false;
        }
    }
    true
}

/// Colours `order`, falling back to a fan at the listed pivot when the two
/// ends share no missing colour.
fn color_in_order(c: &mut EdgeColoring, order: &[(usize, Vertex)]) -> bool {
    for &(e, pivot) in order {
        let (u, v) = c.endpoints(e);
        if let Some(col) = c.lowest_common_missing(u, v) {
            c.assign(e, col);
        } else if fan_recolor(c, e, pivot) == FanResult::Elementary {
            return false;
        }
    }
    true
}

/// Colours a simple graph with `Δ` colours when the maximum-degree vertices
/// induce a forest, and with at most `Δ + 1` colours otherwise.
pub fn vizing_color_simple(g: &Multigraph) -> Result<EdgeColoring, VizingError> {
    if g.mu_max() > 1 {
        return Err(VizingError::NotSimple(g.mu_max()));
    }
    let delta = g.max_degree() as Color;
    if cores_form_forest(g) {
        let order = core_forest_order(g);
        let mut c = EdgeColoring::new(g, delta);
        if color_in_order(&mut c, &order) {
            return Ok(c);
        }
        log::warn!("core-forest ordering got stuck; retrying with delta + 1");
    }
    let mut c = EdgeColoring::new(g, delta + 1);
    let order: Vec<(usize, Vertex)> = g
        .instances()
        .iter()
        .enumerate()
        .map(|(i, e)| (i, e.u))
        .collect();
    let done = color_in_order(&mut c, &order);
    assert!(done, "a fan always succeeds with delta + 1 colours");
    Ok(c)
}

/// Edges away from the core first, then core-to-rest edges pivoting at the
/// core end, then core edges in reverse leaf-peeling order pivoting at the
/// peeled leaf. Every fan vertex then misses a colour when a fan is needed.
fn core_forest_order(g: &Multigraph) -> Vec<(usize, Vertex)> {
    let delta = g.max_degree();
    let core = |v: Vertex| g.degree(v) == delta;
    let inst = g.instances();
    let mut outer = Vec::new();
    let mut crossing = Vec::new();
    let mut core_adj: Vec<Vec<(Vertex, usize)>> = vec![Vec::new(); g.n()];
    for (i, e) in inst.iter().enumerate() {
        match (core(e.u), core(e.v)) {
            (false, false) => outer.push((i, e.u)),
            (true, false) => crossing.push((i, e.u)),
            (false, true) => crossing.push((i, e.v)),
            (true, true) => {
                core_adj[e.u].push((e.v, i));
                core_adj[e.v].push((e.u, i));
            }
        }
    }
    let mut deg: Vec<usize> = core_adj.iter().map(Vec::len).collect();
    let mut stack: Vec<Vertex> = (0..g.n()).filter(|&v| deg[v] == 1).collect();
    let mut used = vec![false; inst.len()];
    let mut peeled = Vec::new();
    while let Some(leaf) = stack.pop() {
        if deg[leaf] != 1 {
            continue;
        }
        let &(other, e) = core_adj[leaf]
            .iter()
            .find(|&&(_, e)| !used[e])
            .expect("leaf keeps one edge");
        used[e] = true;
        deg[leaf] = 0;
        deg[other] -= 1;
        if deg[other] == 1 {
            stack.push(other);
        }
        peeled.push((e, leaf));
    }
    peeled.reverse();
    outer.extend(crossing);
    outer.extend(peeled);
    outer
}

/// Colours any multigraph with at most `Δ + μ` colours.
pub fn vizing_color_multi(g: &Multigraph) -> EdgeColoring {
    let k = (g.max_degree() + g.mu_max()) as Color;
    let mut c = EdgeColoring::new(g, k);
    let order: Vec<(usize, Vertex)> = g
        .instances()
        .iter()
        .enumerate()
        .map(|(i, e)| (i, e.u))
        .collect();
    let done = color_in_order(&mut c, &order);
    assert!(done, "a multi-fan always succeeds with delta + mu colours");
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify;
    use crate::families::*;
    use proptest::prelude::*;

    fn check(g: &Multigraph, c: &EdgeColoring) -> usize {
        assert!(verify(g, c.colors()).unwrap().valid);
        c.colors_used()
    }

    #[test]
    fn trees_use_delta() {
        for g in [path(2), path(7), star(5), star(1)] {
            let c = vizing_color_simple(&g).unwrap();
            assert_eq!(check(&g, &c), g.max_degree() as usize);
        }
        let spider = Multigraph::build(
            8,
            [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 4, 1), (1, 5, 1), (1, 6, 1), (2, 7, 1)],
        )
        .unwrap();
        let c = vizing_color_simple(&spider).unwrap();
        assert_eq!(check(&spider, &c), 4);
    }

    #[test]
    fn petersen_needs_four() {
        let g = petersen();
        let c = vizing_color_simple(&g).unwrap();
        assert_eq!(check(&g, &c), 4);
    }

    #[test]
    fn cycles() {
        assert_eq!(check(&cycle(6), &vizing_color_simple(&cycle(6)).unwrap()), 2);
        assert_eq!(check(&cycle(5), &vizing_color_simple(&cycle(5)).unwrap()), 3);
    }

    #[test]
    fn rejects_multigraphs() {
        assert_eq!(
            vizing_color_simple(&shannon_triangle(4)).unwrap_err(),
            VizingError::NotSimple(2)
        );
    }

    #[test]
    fn multi_examples() {
        let s = shannon_triangle(4);
        let c = vizing_color_multi(&s);
        assert_eq!(check(&s, &c), 6);
        let single = Multigraph::build(2, [(0, 1, 5)]).unwrap();
        assert_eq!(check(&single, &vizing_color_multi(&single)), 5);
        let p = petersen();
        assert!(check(&p, &vizing_color_multi(&p)) <= 4);
    }

    fn arb_simple() -> impl Strategy<Value = Multigraph> {
        (2usize..12).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut es = Vec::new();
                let mut i = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[i] {
                            es.push((u, v, 1));
                        }
                        i += 1;
                    }
                }
                Multigraph::build(n, es).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn simple_bounds(g in arb_simple()) {
            let c = vizing_color_simple(&g).unwrap();
            let used = check(&g, &c);
            let delta = g.max_degree() as usize;
            if cores_form_forest(&g) {
                prop_assert!(used <= delta);
            } else {
                prop_assert!(used <= delta + 1);
            }
        }

        #[test]
        fn multi_bound(es in proptest::collection::vec((0usize..7, 0usize..7, 1u64..5), 0..15)) {
            let g = Multigraph::build(7, es.into_iter().filter(|(u, v, _)| u != v)).unwrap();
            let c = vizing_color_multi(&g);
            prop_assert!(check(&g, &c) as u64 <= g.max_degree() + g.mu_max());
        }
    }
}

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

//! Multi-fan recolouring around a pivot vertex.
//!
//! The fan at pivot `x` for the uncoloured instance `xy` is grown breadth
//! first: a neighbour `z` joins when some instance `xz` carries a colour
//! missing at a vertex already in the fan, and that vertex becomes the
//! parent of `z`. Shifting colours down a parent chain frees the instance
//! at its tail. When the fan stays elementary and maximal, no shift is
//! possible and [`FanResult::Elementary`] is reported.

use super::{Color, EdgeColoring};
use crate::graph::Vertex;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum FanResult {
    Colored,
    Elementary,
}

const PIVOT: usize = usize::MAX;
const FREE: usize = usize::MAX - 1;

struct Node {
    vertex: Vertex,
    edge: usize,
    parent: usize,
}

/// Tries to colour the uncoloured instance `e0` by recolouring instances at
/// `pivot` (one of its endpoints), using at most one Kempe switch.
pub(crate) fn fan_recolor(c: &mut EdgeColoring, e0: usize, pivot: Vertex) -> FanResult {
    debug_assert_eq!(c.color(e0), 0);
    let x = pivot;
    let y = c.other_end(e0, x);
    let k = c.k() as usize;
    let mut owner = vec![FREE; k + 1];
    for &col in c.missing(x) {
        owner[col as usize] = PIVOT;
    }
    let mut slot = vec![usize::MAX; c.n()];
    let mut nodes = vec![Node {
        vertex: y,
        edge: e0,
        parent: usize::MAX,
    }];
    slot[y] = 0;

    let mut p = 0;
    while p < nodes.len() {
        let w = nodes[p].vertex;
        if let Some(&col) = c.missing(w).iter().find(|&&col| owner[col as usize] == PIVOT) {
            rotate(c, &nodes, p, col);
            return FanResult::Colored;
        }
        if let Some(&alpha) = c
            .missing(w)
            .iter()
            .find(|&&col| owner[col as usize] != FREE)
        {
            let j = owner[alpha as usize];
            resolve_conflict(c, &nodes, j, p, alpha);
            return FanResult::Colored;
        }
        for &col in c.missing(w) {
            owner[col as usize] = p;
        }
        for i in 0..c.missing(w).len() {
            let col = c.missing(w)[i];
            if let Some(f) = c.edge_at(x, col) {
                let z = c.other_end(f, x);
                if slot[z] == usize::MAX {
                    slot[z] = nodes.len();
                    nodes.push(Node {
                        vertex: z,
                        edge: f,
                        parent: p,
                    });
                }
            }
        }
        p += 1;
    }
    FanResult::Elementary
}

/// Colour `alpha` is missing at fan vertices `j < p`, and the fan up to
/// `p - 1` is elementary. One `(alpha, beta)` switch, with `beta` missing at
/// the pivot, makes `beta` missing at one of them without touching the
/// chain that leads to it.
fn resolve_conflict(c: &mut EdgeColoring, nodes: &[Node], j: usize, p: usize, alpha: Color) {
    let x = c.other_end(nodes[0].edge, nodes[0].vertex);
    let beta = *c.missing(x).first().expect("pivot misses a colour");
    let yj = nodes[j].vertex;
    let yp = nodes[p].vertex;
    let from_pivot = c.kempe_component(x, alpha, beta);
    let touches_yj = from_pivot.iter().any(|&e| {
        let (a, b) = c.endpoints(e);
        a == yj || b == yj
    });
    let target = if touches_yj {
        c.kempe_switch_in_place(yp, alpha, beta);
        p
    } else {
        c.kempe_switch_in_place(yj, alpha, beta);
        j
    };
    rotate(c, nodes, target, beta);
}

/// Shifts colours down the parent chain ending at `tail` and gives the
/// tail's instance colour `col`.
fn rotate(c: &mut EdgeColoring, nodes: &[Node], tail: usize, col: Color) {
    let mut chain = vec![tail];
    while chain.last() != Some(&0) {
        chain.push(nodes[*chain.last().unwrap()].parent);
    }
    chain.reverse();
    let edges: Vec<usize> = chain.iter().map(|&i| nodes[i].edge).collect();
    let old: Vec<Color> = edges.iter().map(|&e| c.color(e)).collect();
    for &e in &edges[1..] {
        c.unassign(e);
    }
    for s in 0..edges.len() - 1 {
        c.assign(edges[s], old[s + 1]);
    }
    c.assign(*edges.last().unwrap(), col);
}

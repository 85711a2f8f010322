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

//! Named multigraph families used in examples and tests.

use crate::graph::Multigraph;

pub fn triangle() -> Multigraph {
    Multigraph::build(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).expect("valid")
}

pub fn complete_simple(n: usize) -> Multigraph {
    Multigraph::complete(n, 1)
}

pub fn path(n: usize) -> Multigraph {
    Multigraph::build(n, (1..n).map(|v| (v - 1, v, 1))).expect("valid")
}

pub fn cycle(n: usize) -> Multigraph {
    assert!(n >= 3);
    Multigraph::build(n, (0..n).map(|v| (v, (v + 1) % n, 1))).expect("valid")
}

/// `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> Multigraph {
    Multigraph::build(leaves + 1, (1..=leaves).map(|v| (0, v, 1))).expect("valid")
}

/// Outer 5-cycle 0..4, inner pentagram 5..9, spokes `i -- i+5`.
pub fn petersen() -> Multigraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5, 1));
        edges.push((5 + i, 5 + (i + 2) % 5, 1));
        edges.push((i, i + 5, 1));
    }
    Multigraph::build(10, edges).expect("valid")
}

/// Three vertices with `ceil(delta/2)` or `floor(delta/2)` parallel edges on
/// each pair. The maximum degree is `delta` and the chromatic index is
/// `floor(3 delta / 2)`.
pub fn shannon_triangle(delta: u64) -> Multigraph {
    let hi = delta.div_ceil(2);
    let lo = delta / 2;
    Multigraph::build(3, [(0, 1, hi), (1, 2, lo), (0, 2, lo)]).expect("valid")
}

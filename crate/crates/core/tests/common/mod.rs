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

//! Instance generators shared by the integration tests.

#![allow(dead_code)]

use multicolor_core::coloring::Color;
use multicolor_core::sampling::{pair_count, sample_mnm, sample_poisson, TrialRng};
use multicolor_core::{Multigraph, Vertex};

/// Every multigraph on `n` vertices with total multiplicity at most
/// `max_total`, in lexicographic order of the multiplicity vector.
pub fn all_multigraphs(n: usize, max_total: u64) -> Vec<Multigraph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    let mut mult = vec![0u64; pairs.len()];
    fn rec(
        i: usize,
        left: u64,
        n: usize,
        pairs: &[(Vertex, Vertex)],
        mult: &mut Vec<u64>,
        out: &mut Vec<Multigraph>,
    ) {
        if i == pairs.len() {
            let edges = pairs
                .iter()
                .zip(mult.iter())
                .map(|(&(u, v), &k)| (u, v, k));
            out.push(Multigraph::build(n, edges).unwrap());
            return;
        }
        for k in 0..=left {
            mult[i] = k;
            rec(i + 1, left - k, n, pairs, mult, out);
        }
        mult[i] = 0;
    }
    rec(0, max_total, n, &pairs, &mut mult, &mut out);
    out
}

/// A random multigraph drawn from `M(n, m)` or from the Poisson model at
/// rate `m / C(n, 2)`, chosen by a coin flip.
pub fn mixed_graph(rng: &mut TrialRng, n: usize, m: u64) -> Multigraph {
    let seed = rng.next_u64();
    if rng.below(2) == 0 {
        sample_mnm(n, m, seed).unwrap()
    } else {
        sample_poisson(n, m as f64 / pair_count(n) as f64, seed).unwrap()
    }
}

/// A `(k, t)`-bounded multigraph with `t = max(2, mu)` and at most `m_max`
/// edges. `k` is the smallest admissible value plus up to `slack`.
pub fn bounded_instance(rng: &mut TrialRng, m_max: u64, slack: u64) -> (Multigraph, Color, u64) {
    loop {
        let n = 2 + rng.below(7) as usize;
        let m = 1 + rng.below(m_max);
        let g = mixed_graph(rng, n, m);
        if g.m() == 0 || g.m() > m_max {
            continue;
        }
        let s = g.degree_stats();
        let t = s.mu_max.max(2);
        let k = s.max_degree.max(s.d(2) + t) + rng.below(slack + 1);
        return (g, k as Color, t);
    }
}

/// Whether `d1 - d2 >= mu - mu_min >= 2`.
pub fn decomposition_condition(g: &Multigraph) -> bool {
    let s = g.degree_stats();
    let spread = s.mu_max - s.mu_min;
    spread >= 2 && s.gap() >= spread
}

/// An even-order multigraph with at most `m_max` edges satisfying
/// [`decomposition_condition`]: a few copies of `K_n` plus edges piled
/// onto vertex 0.
pub fn decomposition_instance(rng: &mut TrialRng, m_max: u64) -> Multigraph {
    loop {
        let n = [2usize, 4, 4, 6][rng.below(4) as usize];
        let pairs = pair_count(n);
        let copies = rng.below(m_max / pairs + 1);
        let mut g = Multigraph::complete(n, copies);
        let budget = m_max - copies * pairs;
        let extra = rng.below(budget + 1);
        for _ in 0..extra {
            let (u, v) = if rng.below(5) < 4 {
                (0, 1 + rng.below(n as u64 - 1) as usize)
            } else {
                let u = rng.below(n as u64) as usize;
                let v = (u + 1 + rng.below(n as u64 - 1) as usize) % n;
                (u, v)
            };
            g.add_edges(u, v, 1).unwrap();
        }
        if decomposition_condition(&g) {
            return g;
        }
    }
}

/// Fisher-Yates shuffle of `0..len`.
pub fn permutation(rng: &mut TrialRng, len: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..len).collect();
    for i in (1..len).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        p.swap(i, j);
    }
    p
}

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

//! Density parameter, chromatic-index lower bounds and second-class
//! conditions.
//!
//! Every colour class of a proper edge colouring is a matching, so a vertex
//! set `S` can host at most `floor(|S|/2)` edges of one colour. The density
//! `rho(S) = e(G[S]) / floor(|S|/2)` therefore bounds the number of colours
//! from below, and `max(Delta, ceil(rho))` is the classical lower bound on
//! the chromatic index. Densities are exact rationals; nothing here touches
//! floating point.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Multigraph, Vertex};

/// Largest `n` for which [`rho_exact`] scans all subsets.
pub const DEFAULT_EXHAUSTIVE_BOUND: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("density needs |S| >= 2, got {0}")]
    SubsetTooSmall(usize),
    #[error("vertex {0} is not in the graph")]
    BadVertex(Vertex),
    #[error("n = {n} exceeds the exhaustive bound {bound}; use rho_fast")]
    TooLargeForExact { n: usize, bound: usize },
    #[error("second-class conditions need an odd vertex count, got {0}")]
    EvenOrder(usize),
}

/// Exact non-negative rational `edges / half`, kept unreduced so that the
/// numerator still reads as an edge count.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Density {
    pub edges: u64,
    pub half: u64,
}

impl Density {
    pub const ZERO: Density = Density { edges: 0, half: 1 };

    pub fn new(edges: u64, half: u64) -> Self {
        assert!(half > 0, "density denominator must be positive");
        Density { edges, half }
    }

    pub fn ceil(&self) -> u64 {
        self.edges.div_ceil(self.half)
    }

    pub fn floor(&self) -> u64 {
        self.edges / self.half
    }

    pub fn to_f64(&self) -> f64 {
        self.edges as f64 / self.half as f64
    }
}

impl PartialEq for Density {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Density {}

impl PartialOrd for Density {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Density {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = self.edges as u128 * other.half as u128;
        let b = other.edges as u128 * self.half as u128;
        a.cmp(&b)
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.edges, self.half)
    }
}

/// A vertex subset certifying `rho(G) >= value`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityWitness {
    /// Sorted vertex list; empty when the graph has fewer than two vertices.
    pub subset: Vec<Vertex>,
    pub edges_inside: u64,
    pub value: Density,
}

impl DensityWitness {
    fn none() -> Self {
        DensityWitness {
            subset: Vec::new(),
            edges_inside: 0,
            value: Density::ZERO,
        }
    }

    /// Recomputes the witness value against `g`.
    pub fn recheck(&self, g: &Multigraph) -> bool {
        if self.subset.len() < 2 {
            return self.value == Density::ZERO;
        }
        match rho_of_subset(g, &self.subset) {
            Ok(v) => v.edges == self.edges_inside && v.edges == self.value.edges && v.half == self.value.half,
            Err(_) => false,
        }
    }
}

pub fn edges_inside(g: &Multigraph, subset: &[Vertex]) -> u64 {
    let mut total = 0;
    for (i, &u) in subset.iter().enumerate() {
        for &v in &subset[i + 1..] {
            total += g.multiplicity(u, v);
        }
    }
    total
}

/// `e(G[S]) / floor(|S|/2)` for a subset with at least two vertices.
pub fn rho_of_subset(g: &Multigraph, subset: &[Vertex]) -> Result<Density, BoundsError> {
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() < 2 {
        return Err(BoundsError::SubsetTooSmall(s.len()));
    }
    if let Some(&bad) = s.iter().find(|&&v| v >= g.n()) {
        return Err(BoundsError::BadVertex(bad));
    }
    Ok(Density::new(edges_inside(g, &s), (s.len() / 2) as u64))
}

/// Witness ranking: larger value first, then odd size, then smaller size,
/// then lexicographically smaller vertex list.
fn better(value: Density, subset: &[Vertex], best: &DensityWitness) -> bool {
    if best.subset.is_empty() {
        return true;
    }
    match value.cmp(&best.value) {
        Ordering::Greater => return true,
        Ordering::Less => return false,
        Ordering::Equal => {}
    }
    let odd = subset.len() % 2 == 1;
    let best_odd = best.subset.len() % 2 == 1;
    if odd != best_odd {
        return odd;
    }
    match subset.len().cmp(&best.subset.len()) {
        Ordering::Less => return true,
        Ordering::Greater => return false,
        Ordering::Equal => {}
    }
    subset < best.subset.as_slice()
}

/// Exact `rho(G)` by scanning all subsets in Gray-code order.
pub fn rho_exact(g: &Multigraph) -> Result<DensityWitness, BoundsError> {
    rho_exact_with_bound(g, DEFAULT_EXHAUSTIVE_BOUND)
}

pub fn rho_exact_with_bound(g: &Multigraph, bound: usize) -> Result<DensityWitness, BoundsError> {
    let n = g.n();
    if n > bound || n >= 63 {
        return Err(BoundsError::TooLargeForExact { n, bound });
    }
    if n < 2 {
        return Ok(DensityWitness::none());
    }
    let mut mu = vec![0u64; n * n];
    for (u, v, k) in g.pairs() {
        mu[u * n + v] = k;
        mu[v * n + u] = k;
    }
    // Gray-code walk: toggling one vertex at a time keeps e(S) and the
    // per-vertex weight into S current in O(n) per step.
    let mut weight_into = vec![0u64; n];
    let mut edges = 0u64;
    let mut mask = 0u64;
    let mut size = 0usize;
    let mut best = DensityWitness::none();
    for step in 1u64..(1u64 << n) {
        let bit = step.trailing_zeros() as usize;
        let adding = mask & (1 << bit) == 0;
        if adding {
            edges += weight_into[bit];
            mask |= 1 << bit;
            size += 1;
        } else {
            mask &= !(1 << bit);
            edges -= weight_into[bit];
            size -= 1;
        }
        let row = &mu[bit * n..(bit + 1) * n];
        for (w, &k) in weight_into.iter_mut().zip(row) {
            if adding {
                *w += k;
            } else {
                *w -= k;
            }
        }
        if size < 2 {
            continue;
        }
        let value = Density::new(edges, (size / 2) as u64);
        if value < best.value {
            continue;
        }
        let subset: Vec<Vertex> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        if better(value, &subset, &best) {
            best = DensityWitness {
                subset,
                edges_inside: edges,
                value,
            };
        }
    }
    Ok(best)
}

/// Lower bound on `rho(G)`: the better of the full vertex set and a greedy
/// peeling that repeatedly drops the vertex whose removal leaves the densest
/// remainder, keeping the best odd-size set seen.
pub fn rho_fast(g: &Multigraph) -> DensityWitness {
    let n = g.n();
    if n < 2 {
        return DensityWitness::none();
    }
    let all: Vec<Vertex> = (0..n).collect();
    let mut best = DensityWitness {
        subset: all.clone(),
        edges_inside: g.m(),
        value: Density::new(g.m(), (n / 2) as u64),
    };
    let mut alive = vec![true; n];
    let mut inner_degree: Vec<u64> = g.degrees().to_vec();
    let mut edges = g.m();
    let mut size = n;
    while size > 2 {
        // Removing v leaves e - d_S(v) edges on size - 1 vertices; the
        // denominator is shared, so the best choice minimises d_S(v).
        let victim = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (inner_degree[v], v))
            .expect("at least three vertices alive");
        alive[victim] = false;
        edges -= inner_degree[victim];
        size -= 1;
        for u in 0..n {
            if alive[u] {
                inner_degree[u] -= g.multiplicity(u, victim);
            }
        }
        if size % 2 == 1 {
            let value = Density::new(edges, (size / 2) as u64);
            let subset: Vec<Vertex> = (0..n).filter(|&v| alive[v]).collect();
            if better(value, &subset, &best) {
                best = DensityWitness {
                    subset,
                    edges_inside: edges,
                    value,
                };
            }
        }
    }
    best
}

/// Which term of `max(Delta, ceil(rho))` is active.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundWitness {
    Degree { vertex: Vertex, degree: u64 },
    Density(DensityWitness),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBound {
    pub k: u64,
    pub max_degree: u64,
    pub rho: DensityWitness,
    /// True when `rho` came from the exhaustive scan.
    pub rho_is_exact: bool,
    pub witness: BoundWitness,
}

/// `max(Delta, ceil(rho))`; ties go to the degree term.
pub fn lower_bound(g: &Multigraph) -> LowerBound {
    let (rho, rho_is_exact) = match rho_exact(g) {
        Ok(w) => (w, true),
        Err(_) => (rho_fast(g), false),
    };
    let max_degree = g.max_degree();
    let ceil_rho = rho.value.ceil();
    let witness = if max_degree >= ceil_rho {
        let vertex = (0..g.n()).find(|&v| g.degree(v) == max_degree).unwrap_or(0);
        BoundWitness::Degree {
            vertex,
            degree: max_degree,
        }
    } else {
        BoundWitness::Density(rho.clone())
    };
    LowerBound {
        k: max_degree.max(ceil_rho),
        max_degree,
        rho,
        rho_is_exact,
        witness,
    }
}

/// One of the four alternatives that must hold when an odd-order multigraph
/// is not `k`-edge-colourable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SecondClassCondition {
    /// `k <= d1 - 1`
    A,
    /// `k <= d2 + 2`
    B,
    /// `9 mu - 24 > 10 mu_min`
    C,
    /// `m > (n - 1) k / 2`
    D,
}

impl fmt::Display for SecondClassCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SecondClassCondition::A => "a",
            SecondClassCondition::B => "b",
            SecondClassCondition::C => "c",
            SecondClassCondition::D => "d",
        };
        f.write_str(s)
    }
}

/// Evaluates each condition literally. Requires odd `n`.
pub fn check_second_class_conditions(
    g: &Multigraph,
    k: u64,
) -> Result<Vec<SecondClassCondition>, BoundsError> {
    let n = g.n();
    if n.is_multiple_of(2) {
        return Err(BoundsError::EvenOrder(n));
    }
    let s = g.degree_stats();
    let (d1, d2) = (s.d(1) as i128, s.d(2) as i128);
    let k = k as i128;
    let mut out = Vec::new();
    if k < d1 {
        out.push(SecondClassCondition::A);
    }
    if k <= d2 + 2 {
        out.push(SecondClassCondition::B);
    }
    if 9 * s.mu_max as i128 - 24 > 10 * s.mu_min as i128 {
        out.push(SecondClassCondition::C);
    }
    if 2 * g.m() as i128 > (n as i128 - 1) * k {
        out.push(SecondClassCondition::D);
    }
    Ok(out)
}

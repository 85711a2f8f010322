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

use std::collections::VecDeque;

use thiserror::Error;

use super::vizing::{cores_form_forest, vizing_color_simple};
use super::{Color, EdgeColoring};
use crate::graph::{EdgeInstance, Multigraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PreconditionFailure {
    #[error("multigraph has no edges")]
    Empty,
    #[error("multiplicity {0} exceeds 2")]
    MultiplicityAboveTwo(u64),
    #[error("doubled pairs {0:?} and {1:?} are closer than distance 3")]
    DoubledTooClose((Vertex, Vertex), (Vertex, Vertex)),
    #[error("maximum-degree vertex {0} has no neighbour off the doubled pairs")]
    NoFreeNeighbour(Vertex),
    #[error("maximum-degree vertices {0} and {1} are closer than distance 3")]
    MaxDegreeTooClose(Vertex, Vertex),
    #[error("maximum-degree vertices of the remainder contain a cycle")]
    RemainderCoreCycle,
}

/// Breadth-first distances from `sources`, cut off beyond `limit`.
fn distances(g: &Multigraph, adj: &[Vec<Vertex>], sources: &[Vertex], limit: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    for &s in sources {
        dist[s] = 0;
        queue.push_back(s);
    }
    while let Some(v) = queue.pop_front() {
        if dist[v] >= limit {
            continue;
        }
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Colours with exactly `Δ` colours by setting aside a matching `F`: one
/// copy of every doubled pair, and one instance at every remaining vertex
/// of degree `Δ`. The simple remainder has maximum degree `Δ − 1` and is
/// coloured with `Δ − 1` colours; `F` takes colour `Δ`.
///
/// Preconditions are checked: multiplicities at most 2; doubled pairs
/// pairwise at distance at least 3; every other vertex of degree `Δ` has a
/// neighbour off the doubled pairs, and these vertices are pairwise at
/// distance at least 3; the vertices of degree `Δ − 1` in the remainder
/// induce a forest.
pub fn matching_removal_color(g: &Multigraph) -> Result<EdgeColoring, PreconditionFailure> {
    let delta = g.max_degree();
    if delta == 0 {
        return Err(PreconditionFailure::Empty);
    }
    if g.mu_max() > 2 {
        return Err(PreconditionFailure::MultiplicityAboveTwo(g.mu_max()));
    }
    let adj: Vec<Vec<Vertex>> = (0..g.n()).map(|v| g.neighbours(v)).collect();
    let doubled: Vec<(Vertex, Vertex)> = g
        .pairs()
        .filter(|&(_, _, k)| k == 2)
        .map(|(u, v, _)| (u, v))
        .collect();
    for (i, &a) in doubled.iter().enumerate() {
        let dist = distances(g, &adj, &[a.0, a.1], 2);
        for &b in &doubled[i + 1..] {
            if dist[b.0] <= 2 || dist[b.1] <= 2 {
                return Err(PreconditionFailure::DoubledTooClose(a, b));
            }
        }
    }
    let mut on_doubled = vec![false; g.n()];
    for &(u, v) in &doubled {
        on_doubled[u] = true;
        on_doubled[v] = true;
    }
    let tops: Vec<Vertex> = (0..g.n())
        .filter(|&v| g.degree(v) == delta && !on_doubled[v])
        .collect();
    for (i, &a) in tops.iter().enumerate() {
        let dist = distances(g, &adj, &[a], 2);
        if let Some(&b) = tops[i + 1..].iter().find(|&&b| dist[b] <= 2) {
            return Err(PreconditionFailure::MaxDegreeTooClose(a, b));
        }
    }
    let mut removed: Vec<(Vertex, Vertex)> = doubled.clone();
    for &v in &tops {
        let u = *adj[v]
            .iter()
            .find(|&&u| !on_doubled[u])
            .ok_or(PreconditionFailure::NoFreeNeighbour(v))?;
        removed.push((v.min(u), v.max(u)));
    }
    let remainder = Multigraph::build(
        g.n(),
        g.pairs().map(|(u, v, k)| {
            let drop = u64::from(removed.contains(&(u, v)));
            (u, v, k - drop)
        }),
    )
    .expect("same vertex set");
    if !cores_form_forest(&remainder) {
        return Err(PreconditionFailure::RemainderCoreCycle);
    }
    let inner = vizing_color_simple(&remainder).expect("remainder is simple");
    debug_assert!(inner.colors_used() < delta as usize);
    let mut c = EdgeColoring::new(g, delta as Color);
    let inner_inst = remainder.instances();
    for (i, inst) in inner_inst.iter().enumerate() {
        let id = g.instance_id(inst).expect("remainder instance exists in g");
        c.assign(id, inner.color(i));
    }
    for &(u, v) in &removed {
        let copy = g.multiplicity(u, v) - 1;
        let id = g
            .instance_id(&EdgeInstance { u, v, copy })
            .expect("removed copy exists");
        c.assign(id, delta as Color);
    }
    Ok(c)
}

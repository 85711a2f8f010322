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

//! Loopless multigraphs over the vertex set `0..n`.
//!
//! A [`Multigraph`] stores one multiplicity per unordered vertex pair. Every
//! parallel copy of a pair is a separate [`EdgeInstance`] so that colourings
//! can treat parallel edges individually. Instances are numbered in
//! canonical `(u, v, copy)` order; that numbering is the "instance id" used
//! throughout the colouring code.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}: multigraphs are loopless")]
    Loop(Vertex),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("one-factorization needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// One parallel copy of the pair `{u, v}`, with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeInstance {
    pub u: Vertex,
    pub v: Vertex,
    pub copy: u64,
}

impl EdgeInstance {
    pub fn other(&self, w: Vertex) -> Vertex {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }
}

impl fmt::Display for EdgeInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}#{}", self.u, self.v, self.copy)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    n: usize,
    mult: BTreeMap<(Vertex, Vertex), u64>,
    m: u64,
    degrees: Vec<u64>,
}

/// Degree and multiplicity summary of a multigraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeStats {
    /// Degrees sorted in non-increasing order.
    pub sorted_degrees: Vec<u64>,
    pub max_degree: u64,
    pub min_degree: u64,
    pub mu_max: u64,
    /// Minimum multiplicity over all unordered pairs of distinct vertices,
    /// absent pairs included.
    pub mu_min: u64,
}

impl DegreeStats {
    /// `d_i` with 1-based index, zero beyond `n`.
    pub fn d(&self, i: usize) -> u64 {
        i.checked_sub(1)
            .and_then(|j| self.sorted_degrees.get(j))
            .copied()
            .unwrap_or(0)
    }

    pub fn gap(&self) -> u64 {
        self.d(1) - self.d(2)
    }
}

fn ordered(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Multigraph {
    pub fn empty(n: usize) -> Self {
        Multigraph {
            n,
            mult: BTreeMap::new(),
            m: 0,
            degrees: vec![0; n],
        }
    }

    /// Builds a multigraph from `(u, v, multiplicity)` triples. Repeated
    /// pairs accumulate; zero multiplicities are accepted and ignored.
    pub fn build<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, u64)>,
    {
        let mut g = Multigraph::empty(n);
        for (u, v, k) in edges {
            g.add_edges(u, v, k)?;
        }
        Ok(g)
    }

    /// The complete multigraph with every pair carrying multiplicity `c`.
    pub fn complete(n: usize, c: u64) -> Self {
        let mut g = Multigraph::empty(n);
        if c > 0 {
            for u in 0..n {
                for v in u + 1..n {
                    g.add_edges(u, v, c).expect("complete graph pairs are valid");
                }
            }
        }
        g
    }

    pub fn add_edges(&mut self, u: Vertex, v: Vertex, k: u64) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::Loop(u));
        }
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if k == 0 {
            return Ok(());
        }
        *self.mult.entry(ordered(u, v)).or_insert(0) += k;
        self.m += k;
        self.degrees[u] += k;
        self.degrees[v] += k;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of edge instances.
    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> u64 {
        if u == v {
            return 0;
        }
        self.mult.get(&ordered(u, v)).copied().unwrap_or(0)
    }

    pub fn degree(&self, v: Vertex) -> u64 {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn max_degree(&self) -> u64 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn mu_max(&self) -> u64 {
        self.mult.values().copied().max().unwrap_or(0)
    }

    /// Pairs with positive multiplicity in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex, u64)> + '_ {
        self.mult.iter().map(|(&(u, v), &k)| (u, v, k))
    }

    pub fn pair_count(&self) -> usize {
        self.mult.len()
    }

    /// All edge instances in canonical `(u, v, copy)` order; the position in
    /// this vector is the instance id.
    pub fn instances(&self) -> Vec<EdgeInstance> {
        let mut out = Vec::with_capacity(self.m as usize);
        for (u, v, k) in self.pairs() {
            out.extend((0..k).map(|copy| EdgeInstance { u, v, copy }));
        }
        out
    }

    /// Instance id of `e`, if it exists in this multigraph.
    pub fn instance_id(&self, e: &EdgeInstance) -> Option<usize> {
        if e.u >= e.v || e.copy >= self.multiplicity(e.u, e.v) {
            return None;
        }
        let before: u64 = self.mult.range(..(e.u, e.v)).map(|(_, &k)| k).sum();
        Some((before + e.copy) as usize)
    }

    pub fn neighbours(&self, v: Vertex) -> Vec<Vertex> {
        (0..self.n)
            .filter(|&u| u != v && self.multiplicity(u, v) > 0)
            .collect()
    }

    pub fn is_simple(&self) -> bool {
        self.mu_max() <= 1
    }

    /// True when the multigraph has no cycle; a doubled pair counts as a
    /// cycle of length two.
    pub fn is_forest(&self) -> bool {
        if !self.is_simple() {
            return false;
        }
        let mut dsu = DisjointSets::new(self.n);
        self.pairs().all(|(u, v, _)| dsu.union(u, v))
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let mut sorted = self.degrees.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let total_pairs = self.n * self.n.saturating_sub(1) / 2;
        let mu_min = if total_pairs == 0 || self.mult.len() < total_pairs {
            0
        } else {
            self.mult.values().copied().min().unwrap_or(0)
        };
        DegreeStats {
            max_degree: sorted.first().copied().unwrap_or(0),
            min_degree: sorted.last().copied().unwrap_or(0),
            sorted_degrees: sorted,
            mu_max: self.mu_max(),
            mu_min,
        }
    }

    /// Splits off `c` copies of `K_n`, where `c` is the minimum pair
    /// multiplicity, returning `(c, remainder)`.
    pub fn decompose_complete(&self) -> (u64, Multigraph) {
        let c = self.degree_stats().mu_min;
        let mut rest = Multigraph::empty(self.n);
        for (u, v, k) in self.pairs() {
            rest.add_edges(u, v, k - c).expect("pairs of a valid multigraph");
        }
        (c, rest)
    }

    /// Edge-disjoint union on the same vertex set.
    pub fn union(&self, other: &Multigraph) -> Multigraph {
        assert_eq!(self.n, other.n, "union needs equal vertex counts");
        let mut g = self.clone();
        for (u, v, k) in other.pairs() {
            g.add_edges(u, v, k).expect("pairs of a valid multigraph");
        }
        g
    }

    /// Multigraph induced by a subset of instance ids (copies renumbered).
    pub fn from_instances(n: usize, instances: impl IntoIterator<Item = EdgeInstance>) -> Self {
        let mut g = Multigraph::empty(n);
        for e in instances {
            g.add_edges(e.u, e.v, 1).expect("instances of a valid multigraph");
        }
        g
    }

    /// Serialises to the interchange text format: a header `n pairs`, then
    /// one `u v mult` line per pair in lexicographic order.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.mult.len());
        for (u, v, k) in self.pairs() {
            s.push_str(&format!("{u} {v} {k}\n"));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let nums = parse_fields(hline, header, 2)?;
        let n = nums[0] as usize;
        let expected = nums[1] as usize;
        let mut g = Multigraph::empty(n);
        let mut prev: Option<(Vertex, Vertex)> = None;
        let mut count = 0usize;
        for (line, l) in lines {
            let f = parse_fields(line, l, 3)?;
            let (u, v, k) = (f[0] as usize, f[1] as usize, f[2]);
            let err = |msg: String| GraphError::Parse { line, msg };
            if u == v {
                return Err(err(format!("loop at vertex {u}")));
            }
            if u > v {
                return Err(err(format!("pair {u} {v} must have u < v")));
            }
            if k == 0 {
                return Err(err("multiplicity must be at least 1".into()));
            }
            if let Some(p) = prev {
                if p == (u, v) {
                    return Err(err(format!("duplicate pair {u} {v}")));
                }
                if p > (u, v) {
                    return Err(err(format!("pair {u} {v} out of lexicographic order")));
                }
            }
            g.add_edges(u, v, k).map_err(|e| err(e.to_string()))?;
            prev = Some((u, v));
            count += 1;
        }
        if count != expected {
            return Err(GraphError::Parse {
                line: hline,
                msg: format!("header declares {expected} pairs, found {count}"),
            });
        }
        Ok(g)
    }
}

fn parse_fields(line: usize, text: &str, want: usize) -> Result<Vec<u64>, GraphError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != want {
        return Err(GraphError::Parse {
            line,
            msg: format!("expected {want} fields, found {}", fields.len()),
        });
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<u64>().map_err(|e| GraphError::Parse {
                line,
                msg: format!("bad integer {f:?}: {e}"),
            })
        })
        .collect()
}

/// Circle-method 1-factorization of `K_n`.
///
/// For even `n` this yields `n - 1` perfect matchings; for odd `n` a phantom
/// vertex is added and dropped again, leaving `n` matchings of size
/// `(n - 1) / 2`.
pub fn one_factorization(n: usize) -> Result<Vec<Vec<(Vertex, Vertex)>>, GraphError> {
    if n < 2 {
        return Err(GraphError::TooFewVertices(n));
    }
    let size = if n.is_multiple_of(2) { n } else { n + 1 };
    let ring = size - 1;
    let mut classes = Vec::with_capacity(ring);
    for r in 0..ring {
        let mut class = Vec::with_capacity(size / 2);
        if r < n && ring < n {
            class.push(ordered(r, ring));
        }
        for i in 1..size / 2 {
            let a = (r + i) % ring;
            let b = (r + ring - i) % ring;
            if a < n && b < n {
                class.push(ordered(a, b));
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    Ok(classes)
}

/// Union-find with path halving.
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already connected.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Multigraph {
        Multigraph::build(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap()
    }

    #[test]
    fn build_triangle() {
        let g = triangle();
        assert_eq!(g.m(), 3);
        assert_eq!(g.degrees(), &[2, 2, 2]);
    }

    #[test]
    fn build_rejects_loop_and_range() {
        assert_eq!(
            Multigraph::build(2, [(0, 0, 1)]),
            Err(GraphError::Loop(0))
        );
        assert!(matches!(
            Multigraph::build(2, [(0, 2, 1)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn build_accumulates() {
        let g = Multigraph::build(4, [(0, 1, 2), (0, 1, 1)]).unwrap();
        assert_eq!(g.multiplicity(1, 0), 3);
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn stats_examples() {
        let s = triangle().degree_stats();
        assert_eq!(s.sorted_degrees, vec![2, 2, 2]);
        assert_eq!((s.mu_max, s.mu_min), (1, 1));

        let path = Multigraph::build(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let s = path.degree_stats();
        assert_eq!(s.sorted_degrees, vec![2, 1, 1]);
        assert_eq!(s.mu_min, 0);

        let shannon = Multigraph::build(3, [(0, 1, 2), (1, 2, 2), (0, 2, 2)]).unwrap();
        let s = shannon.degree_stats();
        assert_eq!(s.max_degree, 4);
        assert_eq!((s.mu_max, s.mu_min), (2, 2));
    }

    #[test]
    fn decompose_examples() {
        let (c, rest) = Multigraph::complete(4, 2).decompose_complete();
        assert_eq!(c, 2);
        assert_eq!(rest.m(), 0);

        let (c, rest) = triangle().decompose_complete();
        assert_eq!((c, rest.m()), (1, 0));

        let path = Multigraph::build(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let (c, rest) = path.decompose_complete();
        assert_eq!(c, 0);
        assert_eq!(rest, path);
    }

    fn check_factorization(n: usize) -> Vec<Vec<(usize, usize)>> {
        let classes = one_factorization(n).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for class in &classes {
            let mut touched = vec![false; n];
            for &(a, b) in class {
                assert!(a < b && b < n);
                assert!(!touched[a] && !touched[b], "class is not a matching");
                touched[a] = true;
                touched[b] = true;
                assert!(seen.insert((a, b)), "pair repeated across classes");
            }
        }
        assert_eq!(seen.len(), n * (n - 1) / 2);
        classes
    }

    #[test]
    fn one_factorization_examples() {
        let f4 = check_factorization(4);
        assert_eq!(f4.len(), 3);
        assert!(f4.iter().all(|c| c.len() == 2));

        let f3 = check_factorization(3);
        assert_eq!(f3.len(), 3);
        assert!(f3.iter().all(|c| c.len() == 1));

        let f6 = check_factorization(6);
        assert_eq!(f6.len(), 5);
        assert!(f6.iter().all(|c| c.len() == 3));

        for n in 2..=15 {
            let f = check_factorization(n);
            let expect = if n % 2 == 0 { n - 1 } else { n };
            assert_eq!(f.len(), expect);
        }
        assert_eq!(one_factorization(1), Err(GraphError::TooFewVertices(1)));
    }

    #[test]
    fn text_format() {
        let g = Multigraph::build(4, [(2, 3, 1), (0, 1, 3)]).unwrap();
        let text = g.to_text();
        assert_eq!(text, "4 2\n0 1 3\n2 3 1\n");
        assert_eq!(Multigraph::from_text(&text).unwrap(), g);

        assert!(Multigraph::from_text("3 1\n1 1 2\n").is_err());
        assert!(Multigraph::from_text("3 2\n0 1 2\n0 1 1\n").is_err());
        assert!(Multigraph::from_text("3 2\n0 1 2\n").is_err());
        assert!(Multigraph::from_text("3 2\n1 2 2\n0 1 1\n").is_err());
        assert!(Multigraph::from_text("3 1\n0 5 1\n").is_err());
        assert!(Multigraph::from_text("3 1\n0 1 0\n").is_err());
    }

    #[test]
    fn instance_ids_are_canonical() {
        let g = Multigraph::build(3, [(1, 2, 2), (0, 1, 1), (0, 2, 2)]).unwrap();
        let inst = g.instances();
        for (i, e) in inst.iter().enumerate() {
            assert_eq!(g.instance_id(e), Some(i));
        }
        assert_eq!(g.instance_id(&EdgeInstance { u: 0, v: 1, copy: 1 }), None);
    }

    #[test]
    fn forest_detection() {
        assert!(Multigraph::build(4, [(0, 1, 1), (1, 2, 1), (1, 3, 1)]).unwrap().is_forest());
        assert!(!triangle().is_forest());
        assert!(!Multigraph::build(2, [(0, 1, 2)]).unwrap().is_forest());
    }
}

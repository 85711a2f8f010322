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

//! Tashkinov trees, elementarity, and switch-based augmentation.
//!
//! A Tashkinov tree starts from an uncoloured instance `e0 = w0 w1` and adds
//! one vertex at a time through an instance whose colour is missing at some
//! vertex already in the tree. Growth here always takes the boundary
//! instance with the smallest colour, then the smallest instance id.
//!
//! Augmentation is a budgeted search. Each round first tries to colour
//! `e0` directly and then through a multi-fan at either end. Failing that,
//! the maximal tree is regrown and, if it is not elementary, one Kempe
//! switch is made on a colour missing twice inside the tree, choosing the
//! chain end that does not already reach the other vertex.

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::fan::{fan_recolor, FanResult};
use super::{Color, EdgeColoring, UNCOLORED};
use crate::graph::Vertex;

/// Vertices `w0, w1, ...` and instance ids `e0, e1, ...`; instance `e_i`
/// joins `w_{i+1}` to an earlier vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TashkinovTree {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<usize>,
}

/// A colour missing at two distinct vertices of a set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementaryViolation {
    pub color: Color,
    pub first: Vertex,
    pub second: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AugmentError {
    #[error("root instance {0} is already coloured")]
    RootColoured(usize),
    #[error("vertex {vertex} has degree {degree} above k = {k}")]
    DegreeAboveK { vertex: Vertex, degree: usize, k: Color },
    #[error("root ends {x} and {y} have degree sum {sum} above 2k - 2 = {limit}")]
    EndpointSum {
        x: Vertex,
        y: Vertex,
        sum: usize,
        limit: usize,
    },
    #[error("vertex {vertex} off the root has degree {degree} above k - 1")]
    InnerDegree { vertex: Vertex, degree: usize },
    #[error("colouring leaves instance {0} uncoloured besides the root")]
    ExtraUncoloured(usize),
    #[error("tree is not a Tashkinov tree: {0}")]
    BadTree(String),
    #[error("witness does not show a colour missing twice in the tree")]
    BadWitness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AugmentOutcome {
    /// The root instance is coloured.
    Colored { coloring: EdgeColoring, switches: u64 },
    /// Switching reached a colouring whose maximal tree is elementary.
    Elementary {
        coloring: EdgeColoring,
        tree: TashkinovTree,
        switches: u64,
    },
    /// The switch budget ran out.
    Exhausted { coloring: EdgeColoring, switches: u64 },
}

impl TashkinovTree {
    pub fn root(&self) -> usize {
        self.edges[0]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Colours missing at some tree vertex.
    pub fn missing_colors(&self, c: &EdgeColoring) -> BTreeSet<Color> {
        self.vertices
            .iter()
            .flat_map(|&v| c.missing(v).iter().copied())
            .collect()
    }

    /// Checks the defining conditions against `c`.
    pub fn check(&self, c: &EdgeColoring) -> Result<(), String> {
        if self.vertices.len() < 2 || self.edges.len() + 1 != self.vertices.len() {
            return Err("need q + 1 vertices and q edges, q >= 1".into());
        }
        if c.color(self.edges[0]) != UNCOLORED {
            return Err("root instance is coloured".into());
        }
        let mut pos = vec![usize::MAX; c.n()];
        for (i, &v) in self.vertices.iter().enumerate() {
            if v >= c.n() || pos[v] != usize::MAX {
                return Err(format!("vertex {v} repeated or out of range"));
            }
            pos[v] = i;
        }
        for (i, &e) in self.edges.iter().enumerate() {
            let next = self.vertices[i + 1];
            let (a, b) = c.endpoints(e);
            let earlier = if a == next { b } else if b == next { a } else {
                return Err(format!("edge {e} does not reach vertex {next}"));
            };
            if pos[earlier] > i {
                return Err(format!("edge {e} joins {next} to a later vertex"));
            }
            if i > 0 {
                let col = c.color(e);
                if !self.vertices[..=i].iter().any(|&w| c.is_missing(w, col)) {
                    return Err(format!("edge {e} colour {col} not missing before it"));
                }
            }
        }
        Ok(())
    }

    /// True when no instance leaving the tree has a colour missing inside it.
    pub fn is_maximal(&self, c: &EdgeColoring) -> bool {
        let mut inside = vec![false; c.n()];
        for &v in &self.vertices {
            inside[v] = true;
        }
        self.missing_colors(c).into_iter().all(|col| {
            self.vertices.iter().all(|&v| match c.edge_at(v, col) {
                Some(e) => inside[c.other_end(e, v)],
                None => true,
            })
        })
    }
}

/// Grows the maximal Tashkinov tree from the uncoloured instance `e0`.
pub fn grow_tashkinov(c: &EdgeColoring, e0: usize) -> Result<TashkinovTree, AugmentError> {
    if c.color(e0) != UNCOLORED {
        return Err(AugmentError::RootColoured(e0));
    }
    let (x, y) = c.endpoints(e0);
    let mut g = Growth::new(c);
    g.add(x);
    g.add(y);
    let mut edges = vec![e0];
    while let Some((_, e)) = g.cand.pop_first() {
        let (a, b) = c.endpoints(e);
        let w = if g.inside[a] { b } else { a };
        edges.push(e);
        g.add(w);
    }
    Ok(TashkinovTree {
        vertices: g.order,
        edges,
    })
}

struct Growth<'a> {
    c: &'a EdgeColoring,
    inside: Vec<bool>,
    in_m: Vec<bool>,
    m: Vec<Color>,
    order: Vec<Vertex>,
    cand: BTreeSet<(Color, usize)>,
}

impl<'a> Growth<'a> {
    fn new(c: &'a EdgeColoring) -> Self {
        Growth {
            c,
            inside: vec![false; c.n()],
            in_m: vec![false; c.k() as usize + 1],
            m: Vec::new(),
            order: Vec::new(),
            cand: BTreeSet::new(),
        }
    }

    fn add(&mut self, w: Vertex) {
        let c = self.c;
        for &col in &self.m {
            if let Some(e) = c.edge_at(w, col) {
                if self.inside[c.other_end(e, w)] {
                    self.cand.remove(&(col, e));
                }
            }
        }
        self.inside[w] = true;
        self.order.push(w);
        let fresh: Vec<Color> = c
            .missing(w)
            .iter()
            .copied()
            .filter(|&col| !self.in_m[col as usize])
            .collect();
        for &col in &self.m {
            if let Some(e) = c.edge_at(w, col) {
                if !self.inside[c.other_end(e, w)] {
                    self.cand.insert((col, e));
                }
            }
        }
        for &col in &fresh {
            self.in_m[col as usize] = true;
            self.m.push(col);
            for &t in &self.order {
                if let Some(e) = c.edge_at(t, col) {
                    if !self.inside[c.other_end(e, t)] {
                        self.cand.insert((col, e));
                    }
                }
            }
        }
    }
}

/// Checks that no colour is missing at two distinct vertices of `set`; the
/// witness is the least `(colour, first, second)` triple with
/// `first < second`.
pub fn is_elementary(c: &EdgeColoring, set: &[Vertex]) -> Option<ElementaryViolation> {
    let mut lowest: Vec<(Vertex, Vertex)> = vec![(usize::MAX, usize::MAX); c.k() as usize + 1];
    let mut verts: Vec<Vertex> = set.to_vec();
    verts.sort_unstable();
    verts.dedup();
    for &v in &verts {
        for &col in c.missing(v) {
            let slot = &mut lowest[col as usize];
            if slot.0 == usize::MAX {
                slot.0 = v;
            } else if slot.1 == usize::MAX {
                slot.1 = v;
            }
        }
    }
    lowest
        .iter()
        .enumerate()
        .find(|(_, s)| s.1 != usize::MAX)
        .map(|(col, s)| ElementaryViolation {
            color: col as Color,
            first: s.0,
            second: s.1,
        })
}

/// Degrees of the subgraph made of coloured instances plus the root.
fn check_legal(c: &EdgeColoring, e0: usize) -> Result<(), AugmentError> {
    let (x, y) = c.endpoints(e0);
    let k = c.k() as usize;
    for (e, &col) in c.colors().iter().enumerate() {
        if col == UNCOLORED && e != e0 {
            return Err(AugmentError::ExtraUncoloured(e));
        }
    }
    for v in 0..c.n() {
        let d = c.coloured_degree(v) + usize::from(v == x || v == y);
        if d > k {
            return Err(AugmentError::DegreeAboveK {
                vertex: v,
                degree: d,
                k: c.k(),
            });
        }
        if v != x && v != y && d + 1 > k {
            return Err(AugmentError::InnerDegree { vertex: v, degree: d });
        }
    }
    let sum = c.coloured_degree(x) + c.coloured_degree(y) + 2;
    if sum + 2 > 2 * k {
        return Err(AugmentError::EndpointSum {
            x,
            y,
            sum,
            limit: (2 * k).saturating_sub(2),
        });
    }
    Ok(())
}

/// Colours the root of a non-elementary Tashkinov tree by Kempe switches.
///
/// `c` must colour every instance except the root, and together with the
/// root it must satisfy `Δ ≤ k`, `d(x) + d(y) ≤ 2k − 2` for the root ends
/// and `d(v) ≤ k − 1` elsewhere.
pub fn augment_tashkinov(
    c: &EdgeColoring,
    tree: &TashkinovTree,
    witness: &ElementaryViolation,
    budget: u64,
    seed: u64,
) -> Result<AugmentOutcome, AugmentError> {
    tree.check(c).map_err(AugmentError::BadTree)?;
    let e0 = tree.root();
    check_legal(c, e0)?;
    let valid = witness.first != witness.second
        && tree.vertices.contains(&witness.first)
        && tree.vertices.contains(&witness.second)
        && c.is_missing(witness.first, witness.color)
        && c.is_missing(witness.second, witness.color);
    if !valid {
        return Err(AugmentError::BadWitness);
    }
    let mut work = c.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut switches = 0;
    let step = augment_root(&mut work, e0, budget, false, &mut rng, &mut switches);
    Ok(match step {
        Step::Colored => AugmentOutcome::Colored {
            coloring: work,
            switches,
        },
        Step::Elementary(tree) => AugmentOutcome::Elementary {
            coloring: work,
            tree,
            switches,
        },
        Step::Exhausted => AugmentOutcome::Exhausted {
            coloring: work,
            switches,
        },
    })
}

pub(crate) enum Step {
    Colored,
    Elementary(TashkinovTree),
    Exhausted,
}

/// The search loop behind [`augment_tashkinov`]. With `perturb`, an
/// elementary tree does not end the search; a random switch inside the
/// tree is made instead.
pub(crate) fn augment_root(
    c: &mut EdgeColoring,
    e0: usize,
    budget: u64,
    perturb: bool,
    rng: &mut ChaCha8Rng,
    switches: &mut u64,
) -> Step {
    let (x, y) = c.endpoints(e0);
    let (hi, lo) = if c.coloured_degree(x) >= c.coloured_degree(y) {
        (x, y)
    } else {
        (y, x)
    };
    loop {
        if let Some(col) = c.lowest_common_missing(x, y) {
            c.assign(e0, col);
            return Step::Colored;
        }
        for pivot in [hi, lo] {
            if fan_recolor(c, e0, pivot) == FanResult::Colored {
                return Step::Colored;
            }
        }
        let tree = grow_tashkinov(c, e0).expect("root is uncoloured");
        let doubles = doubly_missing(c, &tree);
        if doubles.is_empty() && !perturb {
            return Step::Elementary(tree);
        }
        if *switches >= budget {
            return Step::Exhausted;
        }
        *switches += 1;
        if doubles.is_empty() {
            random_switch(c, &tree, rng);
        } else {
            guided_switch(c, &tree, &doubles, rng);
        }
    }
}

/// Colours missing at two or more tree vertices, with those vertices.
fn doubly_missing(c: &EdgeColoring, tree: &TashkinovTree) -> Vec<(Color, Vec<Vertex>)> {
    let mut at: Vec<Vec<Vertex>> = vec![Vec::new(); c.k() as usize + 1];
    for &v in &tree.vertices {
        for &col in c.missing(v) {
            at[col as usize].push(v);
        }
    }
    at.into_iter()
        .enumerate()
        .filter(|(_, vs)| vs.len() >= 2)
        .map(|(col, vs)| (col as Color, vs))
        .collect()
}

fn guided_switch(
    c: &mut EdgeColoring,
    tree: &TashkinovTree,
    doubles: &[(Color, Vec<Vertex>)],
    rng: &mut ChaCha8Rng,
) {
    let (alpha, holders) = doubles.choose(rng).expect("non-empty");
    let mut pick = holders.clone();
    pick.sort_unstable_by_key(|_| rng.random::<u32>());
    let (u, v) = (pick[0], pick[1]);
    let (x, y) = c.endpoints(tree.root());
    let root_missing: Vec<Color> = c
        .missing(x)
        .iter()
        .chain(c.missing(y))
        .copied()
        .filter(|&b| b != *alpha)
        .collect();
    let tree_missing: Vec<Color> = tree
        .missing_colors(c)
        .into_iter()
        .filter(|&b| b != *alpha)
        .collect();
    let pool = if !root_missing.is_empty() && rng.random_bool(0.5) {
        &root_missing
    } else {
        &tree_missing
    };
    let Some(&beta) = pool.choose(rng) else {
        return;
    };
    for (s, t) in [(u, v), (v, u)] {
        let comp = c.kempe_component(s, *alpha, beta);
        let reaches = comp.iter().any(|&e| {
            let (a, b) = c.endpoints(e);
            a == t || b == t
        });
        if !reaches {
            c.kempe_switch_in_place(s, *alpha, beta);
            return;
        }
    }
    c.kempe_switch_in_place(u, *alpha, beta);
}

fn random_switch(c: &mut EdgeColoring, tree: &TashkinovTree, rng: &mut ChaCha8Rng) {
    let k = c.k();
    if k < 2 {
        return;
    }
    let v = *tree.vertices.choose(rng).expect("tree has vertices");
    let a = match c.missing(v).choose(rng) {
        Some(&a) => a,
        None => rng.random_range(1..=k),
    };
    let mut b = rng.random_range(1..k);
    if b >= a {
        b += 1;
    }
    c.kempe_switch_in_place(v, a, b);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify;
    use crate::families::*;
    use crate::graph::Multigraph;

    #[test]
    fn isolated_root_gives_two_vertex_tree() {
        let g = Multigraph::build(4, [(0, 1, 1), (2, 3, 1)]).unwrap();
        let c = EdgeColoring::from_assignment(&g, 1, &[0, 1]).unwrap();
        let t = grow_tashkinov(&c, 0).unwrap();
        assert_eq!(t.vertices, vec![0, 1]);
        assert_eq!(t.edges, vec![0]);
        assert!(t.is_maximal(&c));
    }

    #[test]
    fn triangle_tree_absorbs_third_vertex() {
        let t = triangle();
        // (0,1)=1, (0,2)=2, root (1,2)
        let c = EdgeColoring::from_assignment(&t, 2, &[1, 2, 0]).unwrap();
        let tree = grow_tashkinov(&c, 2).unwrap();
        assert_eq!(tree.vertices, vec![1, 2, 0]);
        assert_eq!(tree.edges, vec![2, 0]);
        tree.check(&c).unwrap();
        assert!(tree.is_maximal(&c));
        assert_eq!(is_elementary(&c, &tree.vertices), None);
    }

    #[test]
    fn rejects_coloured_root() {
        let c = EdgeColoring::from_assignment(&triangle(), 3, &[1, 2, 3]).unwrap();
        assert_eq!(grow_tashkinov(&c, 0), Err(AugmentError::RootColoured(0)));
    }

    #[test]
    fn elementarity_examples() {
        let g = Multigraph::build(4, [(0, 1, 1)]).unwrap();
        let c = EdgeColoring::from_assignment(&g, 2, &[1]).unwrap();
        assert_eq!(is_elementary(&c, &[0]), None);
        assert_eq!(
            is_elementary(&c, &[3, 2]),
            Some(ElementaryViolation {
                color: 1,
                first: 2,
                second: 3
            })
        );
        let p = path(3);
        let c = EdgeColoring::from_assignment(&p, 2, &[1, 0]).unwrap();
        // root (1,2): 1 misses {2}, 2 misses {1, 2}
        assert!(is_elementary(&c, &[1, 2]).is_some());
        let c = EdgeColoring::from_assignment(&p, 1, &[1, 0]).unwrap();
        assert_eq!(is_elementary(&c, &[1, 2]), None);
    }

    #[test]
    fn augment_direct_and_c3() {
        let t = triangle();
        let c = EdgeColoring::from_assignment(&t, 3, &[1, 2, 0]).unwrap();
        let tree = grow_tashkinov(&c, 2).unwrap();
        let w = is_elementary(&c, &tree.vertices).unwrap();
        let out = augment_tashkinov(&c, &tree, &w, 100, 0).unwrap();
        match out {
            AugmentOutcome::Colored { coloring, switches } => {
                assert_eq!(switches, 0);
                assert!(verify(&t, coloring.colors()).unwrap().valid);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn augment_rejects_illegal_tuple() {
        let s = star(3);
        let c = EdgeColoring::from_assignment(&s, 3, &[1, 2, 0]).unwrap();
        let tree = grow_tashkinov(&c, 2).unwrap();
        let w = is_elementary(&c, &tree.vertices).unwrap();
        // centre degree 3 plus leaf degree 1 is 4 = 2k - 2: legal
        assert!(augment_tashkinov(&c, &tree, &w, 10, 0).is_ok());
        let c2 = EdgeColoring::from_assignment(&s, 2, &[1, 2, 0]).unwrap();
        let tree2 = grow_tashkinov(&c2, 2).unwrap();
        let fake = ElementaryViolation { color: 1, first: 0, second: 3 };
        assert!(matches!(
            augment_tashkinov(&c2, &tree2, &fake, 10, 0),
            Err(AugmentError::DegreeAboveK { vertex: 0, .. })
        ));
    }
}

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

//! Edge colourings of multigraphs and the algorithms that produce them.
//!
//! Colours are the integers `1..=k`; `0` marks an uncoloured instance. An
//! [`EdgeColoring`] is proper by construction: every mutation keeps at most
//! one instance of each colour at every vertex, and the per-vertex occupancy
//! table answers "which edge has colour `c` at `v`" and "is `c` missing at
//! `v`" in constant time.

mod algc;
mod document;
mod exact;
mod fan;
mod matching_removal;
mod optimal;
mod tashkinov;
mod vizing;

pub use algc::{alg_c, AlgC, AlgCError, AlgCOutput, ElementaryCertificate};
pub use document::{ColoringDocument, DocumentError};
pub use exact::{exact_chromatic_index, exact_coloring, ExactError, DEFAULT_MAX_EXACT_M};
pub use matching_removal::{matching_removal_color, PreconditionFailure};
pub use optimal::{color_optimal, color_optimal_with, ColorOptions, ColoringOutcome, Diagnostics, Strategy};
pub use tashkinov::{
    augment_tashkinov, grow_tashkinov, is_elementary, AugmentError, AugmentOutcome,
    ElementaryViolation, TashkinovTree,
};
pub use vizing::{cores_form_forest, vizing_color_multi, vizing_color_simple, VizingError};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeInstance, Multigraph, Vertex};

pub type Color = u32;

/// Marker for "no colour" in assignment vectors.
pub const UNCOLORED: Color = 0;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("palette size must be positive")]
    EmptyPalette,
    #[error("assignment has {got} entries but the multigraph has {want} instances")]
    LengthMismatch { got: usize, want: usize },
    #[error("instance {0} does not exist")]
    NoSuchInstance(usize),
    #[error("colour {color} outside palette 1..={k}")]
    ColorOutOfRange { color: Color, k: Color },
    #[error("colour {color} already present at vertex {vertex}")]
    Conflict { vertex: Vertex, color: Color },
    #[error("order is not a permutation of the instances")]
    BadOrder,
}

/// A proper, possibly partial, edge colouring with palette `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    n: usize,
    k: Color,
    ends: Vec<(u32, u32)>,
    color: Vec<Color>,
    /// `at[v * stride + c]`: instance with colour `c` at `v`, or `NONE`.
    at: Vec<u32>,
    /// Colours missing at each vertex, unordered.
    missing: Vec<Vec<Color>>,
    /// Position of colour `c` in `missing[v]`, or `NONE` when present.
    missing_pos: Vec<u32>,
    coloured: usize,
}

impl EdgeColoring {
    /// Empty colouring of `g` with palette `1..=k`.
    pub fn new(g: &Multigraph, k: Color) -> Self {
        let ends = g
            .instances()
            .iter()
            .map(|e| (e.u as u32, e.v as u32))
            .collect();
        Self::with_ends(g.n(), ends, k)
    }

    fn with_ends(n: usize, ends: Vec<(u32, u32)>, k: Color) -> Self {
        let stride = k as usize + 1;
        let mut missing_pos = vec![NONE; n * stride];
        let mut missing = Vec::with_capacity(n);
        for v in 0..n {
            missing.push((1..=k).collect::<Vec<_>>());
            for c in 1..=k {
                missing_pos[v * stride + c as usize] = c - 1;
            }
        }
        EdgeColoring {
            n,
            k,
            color: vec![UNCOLORED; ends.len()],
            ends,
            at: vec![NONE; n * stride],
            missing,
            missing_pos,
            coloured: 0,
        }
    }

    /// Builds a colouring from a per-instance assignment, rejecting
    /// improper or out-of-range assignments.
    pub fn from_assignment(
        g: &Multigraph,
        k: Color,
        colors: &[Color],
    ) -> Result<Self, ColoringError> {
        let mut c = EdgeColoring::new(g, k);
        if colors.len() != c.ends.len() {
            return Err(ColoringError::LengthMismatch {
                got: colors.len(),
                want: c.ends.len(),
            });
        }
        for (e, &col) in colors.iter().enumerate() {
            if col != UNCOLORED {
                c.try_assign(e, col)?;
            }
        }
        Ok(c)
    }

    #[inline]
    fn stride(&self) -> usize {
        self.k as usize + 1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> Color {
        self.k
    }

    pub fn instance_count(&self) -> usize {
        self.ends.len()
    }

    pub fn coloured_count(&self) -> usize {
        self.coloured
    }

    pub fn is_total(&self) -> bool {
        self.coloured == self.ends.len()
    }

    pub fn colors(&self) -> &[Color] {
        &self.color
    }

    #[inline]
    pub fn color(&self, e: usize) -> Color {
        self.color[e]
    }

    #[inline]
    pub fn endpoints(&self, e: usize) -> (Vertex, Vertex) {
        let (u, v) = self.ends[e];
        (u as Vertex, v as Vertex)
    }

    #[inline]
    pub fn other_end(&self, e: usize, w: Vertex) -> Vertex {
        let (u, v) = self.endpoints(e);
        if u == w {
            v
        } else {
            u
        }
    }

    /// Instance carrying colour `c` at `v`.
    #[inline]
    pub fn edge_at(&self, v: Vertex, c: Color) -> Option<usize> {
        let id = self.at[v * self.stride() + c as usize];
        (id != NONE).then_some(id as usize)
    }

    #[inline]
    pub fn is_missing(&self, v: Vertex, c: Color) -> bool {
        self.missing_pos[v * self.stride() + c as usize] != NONE
    }

    /// Colours missing at `v`, in no particular order.
    pub fn missing(&self, v: Vertex) -> &[Color] {
        &self.missing[v]
    }

    pub fn lowest_missing(&self, v: Vertex) -> Option<Color> {
        self.missing[v].iter().copied().min()
    }

    /// Smallest colour missing at both `u` and `v`.
    pub fn lowest_common_missing(&self, u: Vertex, v: Vertex) -> Option<Color> {
        let (small, big) = if self.missing[u].len() <= self.missing[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.missing[small]
            .iter()
            .copied()
            .filter(|&c| self.is_missing(big, c))
            .min()
    }

    /// Number of coloured instances at `v`.
    pub fn coloured_degree(&self, v: Vertex) -> usize {
        self.k as usize - self.missing[v].len()
    }

    fn take_missing(&mut self, v: Vertex, c: Color) {
        let s = self.stride();
        let idx = v * s + c as usize;
        let pos = self.missing_pos[idx] as usize;
        let list = &mut self.missing[v];
        let last = *list.last().expect("colour was missing");
        list.swap_remove(pos);
        if last != c {
            self.missing_pos[v * s + last as usize] = pos as u32;
        }
        self.missing_pos[idx] = NONE;
    }

    fn give_missing(&mut self, v: Vertex, c: Color) {
        let idx = v * self.stride() + c as usize;
        self.missing_pos[idx] = self.missing[v].len() as u32;
        self.missing[v].push(c);
    }

    pub fn try_assign(&mut self, e: usize, c: Color) -> Result<(), ColoringError> {
        if e >= self.ends.len() {
            return Err(ColoringError::NoSuchInstance(e));
        }
        if c == UNCOLORED || c > self.k {
            return Err(ColoringError::ColorOutOfRange { color: c, k: self.k });
        }
        let (u, v) = self.endpoints(e);
        if self.color[e] != UNCOLORED {
            self.unassign(e);
        }
        for w in [u, v] {
            if !self.is_missing(w, c) {
                return Err(ColoringError::Conflict { vertex: w, color: c });
            }
        }
        self.assign(e, c);
        Ok(())
    }

    /// Colours an uncoloured instance; `c` must be missing at both ends.
    #[inline]
    pub(crate) fn assign(&mut self, e: usize, c: Color) {
        debug_assert_eq!(self.color[e], UNCOLORED);
        let (u, v) = self.endpoints(e);
        debug_assert!(self.is_missing(u, c) && self.is_missing(v, c));
        let s = self.stride();
        for w in [u, v] {
            self.take_missing(w, c);
            self.at[w * s + c as usize] = e as u32;
        }
        self.color[e] = c;
        self.coloured += 1;
    }

    pub fn unassign(&mut self, e: usize) {
        let c = self.color[e];
        if c == UNCOLORED {
            return;
        }
        let (u, v) = self.endpoints(e);
        let s = self.stride();
        for w in [u, v] {
            self.at[w * s + c as usize] = NONE;
            self.give_missing(w, c);
        }
        self.color[e] = UNCOLORED;
        self.coloured -= 1;
    }

    /// Grows the palette to `1..=k`; existing assignments are kept.
    pub fn extend_palette(&mut self, k: Color) {
        if k <= self.k {
            return;
        }
        let mut grown = EdgeColoring::with_ends(self.n, std::mem::take(&mut self.ends), k);
        for (e, &c) in self.color.iter().enumerate() {
            if c != UNCOLORED {
                grown.assign(e, c);
            }
        }
        *self = grown;
    }

    /// Distinct colours actually used.
    pub fn colors_used(&self) -> usize {
        let mut seen = vec![false; self.k as usize + 1];
        for &c in &self.color {
            seen[c as usize] = true;
        }
        seen[1..].iter().filter(|&&s| s).count()
    }

    /// Renumbers used colours onto `1..=colors_used`, preserving order, and
    /// shrinks the palette to match.
    pub fn compact(&self) -> EdgeColoring {
        let mut map = vec![UNCOLORED; self.k as usize + 1];
        for &c in &self.color {
            if c != UNCOLORED {
                map[c as usize] = 1;
            }
        }
        let mut next = 0;
        for slot in map.iter_mut().skip(1) {
            if *slot != UNCOLORED {
                next += 1;
                *slot = next;
            }
        }
        let mut out = EdgeColoring::with_ends(self.n, self.ends.clone(), next.max(1));
        for (e, &c) in self.color.iter().enumerate() {
            if c != UNCOLORED {
                out.assign(e, map[c as usize]);
            }
        }
        out
    }

    /// Edges of the maximal `(a, b)`-alternating path or cycle through `v`.
    pub fn kempe_component(&self, v: Vertex, a: Color, b: Color) -> Vec<usize> {
        let mut edges = Vec::new();
        if a == b {
            return edges;
        }
        for first in [a, b] {
            let mut cur = v;
            let mut col = first;
            while let Some(e) = self.edge_at(cur, col) {
                edges.push(e);
                cur = self.other_end(e, cur);
                col = if col == a { b } else { a };
                if cur == v {
                    return edges;
                }
            }
        }
        edges
    }

    /// Exchanges `a` and `b` on the component through `v`; returns how many
    /// instances changed colour.
    pub fn kempe_switch_in_place(&mut self, v: Vertex, a: Color, b: Color) -> usize {
        if a == b {
            return 0;
        }
        let edges = self.kempe_component(v, a, b);
        let old: Vec<Color> = edges.iter().map(|&e| self.color[e]).collect();
        for &e in &edges {
            self.unassign(e);
        }
        for (&e, &c) in edges.iter().zip(&old) {
            self.assign(e, if c == a { b } else { a });
        }
        edges.len()
    }

    /// Functional form of [`EdgeColoring::kempe_switch_in_place`].
    pub fn kempe_switch(&self, v: Vertex, a: Color, b: Color) -> EdgeColoring {
        let mut out = self.clone();
        out.kempe_switch_in_place(v, a, b);
        out
    }

    /// Per-instance assignment as `(instance, colour)` pairs.
    pub fn assignment<'a>(
        &'a self,
        g: &'a Multigraph,
    ) -> impl Iterator<Item = (EdgeInstance, Color)> + 'a {
        g.instances().into_iter().zip(self.color.iter().copied())
    }
}

/// A vertex seeing one colour on several instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub vertex: Vertex,
    pub color: Color,
    pub instances: Vec<EdgeInstance>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub valid: bool,
    pub violations: Vec<Violation>,
    pub uncoloured: Vec<EdgeInstance>,
}

/// Checks a raw per-instance assignment against `g`. Works on arbitrary
/// (possibly improper) input, unlike [`EdgeColoring`] which is proper by
/// construction.
pub fn verify(g: &Multigraph, colors: &[Color]) -> Result<Verification, ColoringError> {
    let inst = g.instances();
    if colors.len() != inst.len() {
        return Err(ColoringError::LengthMismatch {
            got: colors.len(),
            want: inst.len(),
        });
    }
    let mut seen: std::collections::BTreeMap<(Vertex, Color), Vec<EdgeInstance>> =
        Default::default();
    let mut uncoloured = Vec::new();
    for (e, &c) in inst.iter().zip(colors) {
        if c == UNCOLORED {
            uncoloured.push(*e);
            continue;
        }
        for w in [e.u, e.v] {
            seen.entry((w, c)).or_default().push(*e);
        }
    }
    let violations: Vec<Violation> = seen
        .into_iter()
        .filter(|(_, es)| es.len() > 1)
        .map(|((vertex, color), instances)| Violation {
            vertex,
            color,
            instances,
        })
        .collect();
    Ok(Verification {
        valid: violations.is_empty() && uncoloured.is_empty(),
        violations,
        uncoloured,
    })
}

/// Colours instances in `order`, giving each the lowest colour missing at
/// both ends; stops at the first instance with no such colour and returns
/// its id.
pub fn greedy_color(
    g: &Multigraph,
    k: Color,
    order: &[usize],
) -> Result<(EdgeColoring, Option<usize>), ColoringError> {
    if k == 0 {
        return Err(ColoringError::EmptyPalette);
    }
    let mut c = EdgeColoring::new(g, k);
    let mut seen = vec![false; c.instance_count()];
    if order.len() != seen.len() {
        return Err(ColoringError::BadOrder);
    }
    for &e in order {
        if e >= seen.len() || std::mem::replace(&mut seen[e], true) {
            return Err(ColoringError::BadOrder);
        }
    }
    for &e in order {
        let (u, v) = c.endpoints(e);
        match c.lowest_common_missing(u, v) {
            Some(col) => c.assign(e, col),
            None => return Ok((c, Some(e))),
        }
    }
    Ok((c, None))
}

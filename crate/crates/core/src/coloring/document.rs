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

//! Text form of a colouring.
//!
//! ```text
//! coloring n=3 m=3 k=3 colors_used=3 strategy=vizing-simple first_class=true
//! 0 1 0 1
//! 0 2 0 2
//! 1 2 0 3
//! ```
//!
//! The header line is followed by one `u v copy color` record per instance
//! in `(u, v, copy)` order. Colour `0` marks an uncoloured instance. Blank
//! lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{Color, EdgeColoring, UNCOLORED};
use crate::graph::{EdgeInstance, Multigraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("record {0} names an instance absent from the multigraph")]
    UnknownInstance(EdgeInstance),
    #[error("document describes n = {doc} but the multigraph has n = {graph}")]
    VertexCount { doc: usize, graph: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringDocument {
    pub n: usize,
    pub m: u64,
    pub k: Color,
    pub colors_used: usize,
    pub strategy: String,
    pub first_class: Option<bool>,
    pub records: Vec<(EdgeInstance, Color)>,
}

impl ColoringDocument {
    pub fn from_coloring(
        g: &Multigraph,
        c: &EdgeColoring,
        strategy: &str,
        first_class: Option<bool>,
    ) -> Self {
        ColoringDocument {
            n: g.n(),
            m: g.m(),
            k: c.k(),
            colors_used: c.colors_used(),
            strategy: strategy.to_string(),
            first_class,
            records: c.assignment(g).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "coloring n={} m={} k={} colors_used={} strategy={}",
            self.n, self.m, self.k, self.colors_used, self.strategy
        );
        if let Some(fc) = self.first_class {
            s.push_str(&format!(" first_class={fc}"));
        }
        s.push('\n');
        for (e, col) in &self.records {
            s.push_str(&format!("{} {} {} {}\n", e.u, e.v, e.copy, col));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, DocumentError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(DocumentError::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let perr = |line: usize, msg: String| DocumentError::Parse { line, msg };
        let mut tokens = header.split_whitespace();
        if tokens.next() != Some("coloring") {
            return Err(perr(hline, "header must start with 'coloring'".into()));
        }
        let mut fields = BTreeMap::new();
        for t in tokens {
            let (key, value) = t
                .split_once('=')
                .ok_or_else(|| perr(hline, format!("expected key=value, got '{t}'")))?;
            fields.insert(key, value);
        }
        let num = |key: &str| -> Result<u64, DocumentError> {
            fields
                .get(key)
                .ok_or_else(|| perr(hline, format!("missing field '{key}'")))?
                .parse()
                .map_err(|_| perr(hline, format!("field '{key}' is not an integer")))
        };
        let first_class = match fields.get("first_class") {
            None => None,
            Some(v) => Some(
                v.parse()
                    .map_err(|_| perr(hline, "first_class must be true or false".into()))?,
            ),
        };
        let mut doc = ColoringDocument {
            n: num("n")? as usize,
            m: num("m")?,
            k: num("k")? as Color,
            colors_used: num("colors_used")? as usize,
            strategy: fields.get("strategy").unwrap_or(&"unknown").to_string(),
            first_class,
            records: Vec::new(),
        };
        for (line, l) in lines {
            let parts: Vec<&str> = l.split_whitespace().collect();
            if parts.len() != 4 {
                return Err(perr(line, "expected 'u v copy color'".into()));
            }
            let mut vals = [0u64; 4];
            for (slot, p) in vals.iter_mut().zip(&parts) {
                *slot = p
                    .parse()
                    .map_err(|_| perr(line, format!("'{p}' is not a non-negative integer")))?;
            }
            let e = EdgeInstance {
                u: vals[0] as usize,
                v: vals[1] as usize,
                copy: vals[2],
            };
            if e.u >= e.v {
                return Err(perr(line, "records need u < v".into()));
            }
            if doc.records.last().is_some_and(|(prev, _)| *prev >= e) {
                return Err(perr(line, "records must be sorted and distinct".into()));
            }
            doc.records.push((e, vals[3] as Color));
        }
        if doc.records.len() as u64 != doc.m {
            return Err(perr(hline, format!("header m={} but {} records", doc.m, doc.records.len())));
        }
        Ok(doc)
    }

    /// Per-instance colours for `g`; instances without a record are
    /// uncoloured.
    pub fn assignment_for(&self, g: &Multigraph) -> Result<Vec<Color>, DocumentError> {
        if self.n != g.n() {
            return Err(DocumentError::VertexCount {
                doc: self.n,
                graph: g.n(),
            });
        }
        let mut colors = vec![UNCOLORED; g.m() as usize];
        for (e, col) in &self.records {
            let id = g.instance_id(e).ok_or(DocumentError::UnknownInstance(*e))?;
            colors[id] = *col;
        }
        Ok(colors)
    }
}

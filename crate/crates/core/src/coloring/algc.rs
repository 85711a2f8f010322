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

//! Greedy colouring with Tashkinov-tree augmentation.
//!
//! Instances are coloured greedily in a fixed order: ascending by the
//! larger endpoint degree, except that instances at the one vertex of degree
//! at least `k - 1` (if any) come last; ties go to the smaller instance id.
//! At the first instance `e0` with no common missing colour, the later
//! instances are set aside and a maximal Tashkinov tree is grown from `e0`.
//! A non-elementary tree leads to augmentation, after which greedy
//! colouring resumes. An elementary tree ends the run with a certificate.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::tashkinov::{augment_root, is_elementary, Step, TashkinovTree};
use super::{Color, EdgeColoring, UNCOLORED};
use crate::graph::{Multigraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgCError {
    #[error("k = {0} is below 2")]
    KTooSmall(Color),
    #[error("multigraph is not ({k},2)-bounded; offending vertices {vertices:?}")]
    NotBounded { k: Color, vertices: Vec<Vertex> },
}

/// Output (2): a partial colouring and an elementary maximal tree.
///
/// `coloring` is indexed by the instances of the input multigraph. The
/// subgraph consists of the coloured instances plus `root`; instances left
/// uncoloured other than `root` were set aside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryCertificate {
    pub subgraph: Multigraph,
    pub root: usize,
    pub coloring: EdgeColoring,
    pub tree: TashkinovTree,
}

impl ElementaryCertificate {
    pub fn tree_has_odd_order(&self) -> bool {
        self.tree.len() % 2 == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgCOutput {
    Colored(EdgeColoring),
    Elementary(ElementaryCertificate),
    /// Augmentation ran out of switches at `root`.
    BudgetExhausted {
        coloring: EdgeColoring,
        root: usize,
        switches: u64,
    },
}

/// Run statistics.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EngineStats {
    pub stuck_edges: u64,
    pub switches: u64,
    pub exhausted: u64,
    pub elementary: u64,
    pub escalations: u64,
}

/// Configuration for AlgC. The switch budget per stuck instance is
/// `budget_factor * k * m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgC {
    pub budget_factor: u64,
    pub seed: u64,
}

impl Default for AlgC {
    fn default() -> Self {
        AlgC {
            budget_factor: 4,
            seed: 0,
        }
    }
}

/// [`AlgC::run`] with default settings.
pub fn alg_c(g: &Multigraph, k: Color) -> Result<AlgCOutput, AlgCError> {
    AlgC::default().run(g, k)
}

impl AlgC {
    pub fn run(&self, g: &Multigraph, k: Color) -> Result<AlgCOutput, AlgCError> {
        if k < 2 {
            return Err(AlgCError::KTooSmall(k));
        }
        let over: Vec<Vertex> = (0..g.n()).filter(|&v| g.degree(v) > k as u64).collect();
        let high: Vec<Vertex> = (0..g.n())
            .filter(|&v| g.degree(v) + 2 > k as u64)
            .collect();
        if !over.is_empty() || high.len() > 1 {
            let vertices = if over.is_empty() { high } else { over };
            return Err(AlgCError::NotBounded { k, vertices });
        }
        let mut c = EdgeColoring::new(g, k);
        let mut stats = EngineStats::default();
        let order = edge_order(g, k);
        let end = self.drive(g, &mut c, &order, false, false, &mut stats);
        Ok(match end {
            End::Done => AlgCOutput::Colored(c),
            End::Elementary(root, tree) => {
                assert!(
                    is_elementary(&c, &tree.vertices).is_none(),
                    "output tree must be elementary"
                );
                if tree.len() % 2 == 0 {
                    log::info!("elementary tree with even order {}", tree.len());
                }
                let inst = g.instances();
                let subgraph = Multigraph::from_instances(
                    g.n(),
                    inst.iter()
                        .enumerate()
                        .filter(|&(e, _)| e == root || c.color(e) != UNCOLORED)
                        .map(|(_, i)| *i),
                );
                AlgCOutput::Elementary(ElementaryCertificate {
                    subgraph,
                    root,
                    coloring: c,
                    tree,
                })
            }
            End::Exhausted(root, switches) => AlgCOutput::BudgetExhausted {
                coloring: c,
                root,
                switches,
            },
        })
    }

    /// Colours `order` into `c`. With `escalate`, an elementary tree or an
    /// exhausted budget adds one colour to the palette and gives it to the
    /// stuck instance instead of ending the run.
    pub(crate) fn drive(
        &self,
        g: &Multigraph,
        c: &mut EdgeColoring,
        order: &[usize],
        perturb: bool,
        escalate: bool,
        stats: &mut EngineStats,
    ) -> End {
        for &e in order {
            if c.color(e) != UNCOLORED {
                continue;
            }
            let (u, v) = c.endpoints(e);
            if let Some(col) = c.lowest_common_missing(u, v) {
                c.assign(e, col);
                continue;
            }
            stats.stuck_edges += 1;
            let budget = self
                .budget_factor
                .saturating_mul(c.k() as u64)
                .saturating_mul(g.m());
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ (e as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let mut switches = 0;
            let step = augment_root(c, e, budget, perturb, &mut rng, &mut switches);
            stats.switches += switches;
            let end = match step {
                Step::Colored => continue,
                Step::Elementary(tree) => {
                    stats.elementary += 1;
                    End::Elementary(e, tree)
                }
                Step::Exhausted => {
                    stats.exhausted += 1;
                    End::Exhausted(e, switches)
                }
            };
            if !escalate {
                return end;
            }
            stats.escalations += 1;
            let k = c.k() + 1;
            c.extend_palette(k);
            c.assign(e, k);
        }
        End::Done
    }
}

pub(crate) enum End {
    Done,
    Elementary(usize, TashkinovTree),
    Exhausted(usize, u64),
}

/// Ascending by larger endpoint degree, instances at the unique vertex of
/// degree at least `k - 1` last, then by id.
pub(crate) fn edge_order(g: &Multigraph, k: Color) -> Vec<usize> {
    let high: Vec<Vertex> = (0..g.n())
        .filter(|&v| g.degree(v) + 1 >= k as u64)
        .collect();
    let w = (high.len() == 1).then(|| high[0]);
    let inst = g.instances();
    let mut order: Vec<usize> = (0..inst.len()).collect();
    order.sort_by_key(|&e| {
        let i = inst[e];
        let at_w = w.is_some_and(|w| i.u == w || i.v == w);
        (at_w, g.degree(i.u).max(g.degree(i.v)), e)
    });
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify;
    use crate::families::*;

    fn colored(out: AlgCOutput) -> EdgeColoring {
        match out {
            AlgCOutput::Colored(c) => c,
            other => panic!("expected a colouring, got {other:?}"),
        }
    }

    #[test]
    fn forests_take_delta() {
        let spider = Multigraph::build(9, [(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1), (1, 5, 1), (2, 6, 1), (3, 7, 1), (4, 8, 1)]).unwrap();
        for g in [star(4), star(3), spider] {
            let k = g.max_degree() as Color;
            let c = colored(alg_c(&g, k).unwrap());
            assert!(verify(&g, c.colors()).unwrap().valid);
            assert!(c.colors_used() <= k as usize);
        }
    }

    #[test]
    fn shannon_with_three_mu() {
        assert!(alg_c(&triangle(), 3).is_err());
        for mu in 2..=5 {
            let g = Multigraph::build(3, [(0, 1, mu), (1, 2, mu), (0, 2, mu)]).unwrap();
            let k = 3 * mu as Color;
            let c = colored(alg_c(&g, k).unwrap());
            assert!(verify(&g, c.colors()).unwrap().valid);
            assert_eq!(c.colors_used(), k as usize);
        }
    }

    #[test]
    fn petersen_with_three_never_lies() {
        let g = petersen();
        match alg_c(&g, 3) {
            Err(AlgCError::NotBounded { vertices, .. }) => assert_eq!(vertices.len(), 10),
            other => panic!("unexpected {other:?}"),
        }
        // with k = 4 every vertex has degree k - 1, so the input is not bounded either
        assert!(alg_c(&g, 4).is_err());
        let c = colored(alg_c(&g, 5).unwrap());
        assert!(verify(&g, c.colors()).unwrap().valid);
    }

    #[test]
    fn triangle_with_two_is_rejected_or_elementary() {
        assert!(matches!(alg_c(&triangle(), 2), Err(AlgCError::NotBounded { .. })));
        // a digon plus a pendant edge: (4,2)-bounded with vertex 1 high
        let g = Multigraph::build(3, [(0, 1, 2), (1, 2, 1)]).unwrap();
        assert!(alg_c(&g, 3).is_err());
        let c = colored(alg_c(&g, 4).unwrap());
        assert!(verify(&g, c.colors()).unwrap().valid);
    }

    #[test]
    fn elementary_output_on_overfull_triangle() {
        // degrees 6, 4, 4 with 7 edges on three vertices: (6,2)-bounded, rho = 7
        let g = Multigraph::build(3, [(0, 1, 3), (0, 2, 3), (1, 2, 1)]).unwrap();
        match alg_c(&g, 6).unwrap() {
            AlgCOutput::Elementary(cert) => {
                assert!(is_elementary(&cert.coloring, &cert.tree.vertices).is_none());
                cert.tree.check(&cert.coloring).unwrap();
                assert!(cert.tree.is_maximal(&cert.coloring));
                let (a, b) = cert.coloring.endpoints(cert.root);
                assert!(a == 0 || b == 0);
                assert!(cert.tree_has_odd_order());
                assert_eq!(cert.subgraph.m(), cert.coloring.coloured_count() as u64 + 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        let c = colored(alg_c(&g, 7).unwrap());
        assert!(verify(&g, c.colors()).unwrap().valid);
    }

    #[test]
    fn order_puts_high_vertex_last() {
        let g = Multigraph::build(4, [(0, 1, 3), (1, 2, 1), (2, 3, 1)]).unwrap();
        let order = edge_order(&g, 5);
        let inst = g.instances();
        let tail: Vec<_> = order[order.len() - 3..].iter().map(|&e| inst[e]).collect();
        assert!(tail.iter().all(|i| i.u == 1 || i.v == 1));
        assert_eq!(inst[order[0]].u, 2);
    }
}

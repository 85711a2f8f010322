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

//! Edge colouring of multigraphs towards the bound `max{Δ, ⌈ρ⌉}`, with
//! random multigraph samplers and a Monte Carlo experiment harness.

pub mod bounds;
pub mod coloring;
pub mod families;
pub mod graph;
pub mod harness;
pub mod sampling;

pub use bounds::{lower_bound, rho_exact, rho_fast, rho_of_subset, Density, DensityWitness, LowerBound};
pub use coloring::{color_optimal, verify, ColoringOutcome, EdgeColoring};
pub use graph::{DegreeStats, EdgeInstance, Multigraph, Vertex};

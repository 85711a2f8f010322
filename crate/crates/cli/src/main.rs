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

//! `multicolor`: sample, colour, verify and experiment with multigraphs.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use multicolor_core::bounds::{rho_exact, rho_fast, BoundWitness, DEFAULT_EXHAUSTIVE_BOUND};
use multicolor_core::coloring::{
    color_optimal_with, exact_coloring, verify, ColorOptions, ColoringDocument, DEFAULT_MAX_EXACT_M,
};
use multicolor_core::harness::{aggregate, emit_records, emit_summaries, run_trials, ExperimentConfig, Format};
use multicolor_core::sampling::{predict, sample, Model, SampleConfig};
use multicolor_core::{lower_bound, Multigraph};

#[derive(Parser)]
#[command(name = "multicolor", version, about = "Edge colouring of multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a random multigraph and print it.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "iid-pairs")]
        model: Model,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Colour a multigraph file; prints the colouring document.
    Color {
        graph: PathBuf,
        /// Seed for the randomised Kempe walk.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Exact chromatic index by exhaustive search.
    Exact {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_EXACT_M)]
        max_exact_m: u64,
    },
    /// Check a colouring document against a multigraph.
    Verify { graph: PathBuf, coloring: PathBuf },
    /// Density report with a witness subset.
    Rho { graph: PathBuf },
    /// Theory-side predictions for M(n, m).
    Predict {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
    },
    /// Run an experiment from a TOML config.
    Experiment {
        config: PathBuf,
        /// Overrides the config's output format.
        #[arg(long)]
        format: Option<Format>,
        /// Overrides the config's trials per cell.
        #[arg(long)]
        trials: Option<u64>,
        /// Overrides the config's base seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides the config's model.
        #[arg(long)]
        model: Option<Model>,
        /// Emit per-cell summaries instead of records.
        #[arg(long)]
        summary: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Invalid(String),
    Rejected,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected) => ExitCode::from(1),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Multigraph, Failure> {
    Multigraph::from_text(&read(path)?).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn write_out(out: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, bytes)?,
        None => io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Sample { n, m, seed, model, out } => {
            let g = sample(&SampleConfig { n, m, seed, model })?;
            write_out(out.as_deref(), g.to_text().as_bytes())
        }
        Command::Color { graph, seed, out } => {
            let g = read_graph(&graph)?;
            let opts = ColorOptions {
                seed,
                ..ColorOptions::default()
            };
            let outcome = color_optimal_with(&g, &opts);
            let doc = ColoringDocument::from_coloring(
                &g,
                &outcome.coloring,
                outcome.strategy.tag(),
                Some(outcome.first_class),
            );
            let mut text = doc.to_text();
            text.push_str(&format!(
                "# lower_bound={} lower_bound_exact={} target_k={}\n",
                outcome.lower_bound, outcome.diagnostics.lower_bound_exact, outcome.target_k
            ));
            for a in &outcome.diagnostics.attempts {
                let result = match &a.result {
                    Ok(k) => format!("{k}"),
                    Err(e) => format!("failed ({e})"),
                };
                text.push_str(&format!("# attempt {} -> {}\n", a.strategy, result));
            }
            if let Some(conds) = &outcome.diagnostics.second_class_conditions {
                text.push_str(&format!("# second_class_conditions={conds:?}\n"));
            }
            write_out(out.as_deref(), text.as_bytes())
        }
        Command::Exact { graph, max_exact_m } => {
            let g = read_graph(&graph)?;
            let c = exact_coloring(&g, max_exact_m)?;
            let doc = ColoringDocument::from_coloring(&g, &c, "exact", None);
            let text = format!("# chromatic_index={}\n{}", c.colors_used(), doc.to_text());
            write_out(None, text.as_bytes())
        }
        Command::Verify { graph, coloring } => {
            let g = read_graph(&graph)?;
            let doc = ColoringDocument::from_text(&read(&coloring)?)
                .map_err(|e| Failure::Invalid(format!("{}: {e}", coloring.display())))?;
            let colors = doc.assignment_for(&g)?;
            let report = verify(&g, &colors)?;
            if report.valid {
                println!("ok colors_used={}", doc.colors_used);
                Ok(())
            } else {
                for v in &report.violations {
                    let list: Vec<String> = v
                        .instances
                        .iter()
                        .map(|e| format!("{}-{}#{}", e.u, e.v, e.copy))
                        .collect();
                    println!("violation vertex={} color={} edges={}", v.vertex, v.color, list.join(","));
                }
                for e in &report.uncoloured {
                    println!("uncoloured {}-{}#{}", e.u, e.v, e.copy);
                }
                Err(Failure::Rejected)
            }
        }
        Command::Rho { graph } => {
            let g = read_graph(&graph)?;
            let (w, exact) = match rho_exact(&g) {
                Ok(w) => (w, true),
                Err(_) => (rho_fast(&g), false),
            };
            let lb = lower_bound(&g);
            let subset: Vec<String> = w.subset.iter().map(|v| v.to_string()).collect();
            let bound_from = match lb.witness {
                BoundWitness::Degree { vertex, .. } => format!("degree@{vertex}"),
                BoundWitness::Density(_) => "density".to_string(),
            };
            println!("rho={}", w.value);
            println!("rho_ceil={}", w.value.ceil());
            println!("exact={exact}");
            if !exact {
                println!("# exhaustive scan limited to n <= {DEFAULT_EXHAUSTIVE_BOUND}; value is a lower bound");
            }
            println!("subset={}", subset.join(","));
            println!("edges_inside={}", w.edges_inside);
            println!("max_degree={}", g.max_degree());
            println!("lower_bound={}", lb.k);
            println!("bound_from={bound_from}");
            Ok(())
        }
        Command::Predict { n, m, epsilon } => {
            let p = predict(n, m, epsilon)?;
            write_out(None, p.to_text().as_bytes())
        }
        Command::Experiment {
            config,
            format,
            trials,
            seed,
            model,
            summary,
            out,
        } => {
            let mut cfg = ExperimentConfig::from_toml(&read(&config)?)?;
            if let Some(f) = format {
                cfg.format = f;
            }
            if let Some(t) = trials {
                cfg.trials = t;
            }
            if let Some(s) = seed {
                cfg.base_seed = s;
            }
            if let Some(md) = model {
                cfg.model = md;
            }
            let records = run_trials(&cfg)?;
            let mut buf = Vec::new();
            if summary {
                emit_summaries(&aggregate(&records)?, cfg.format, &mut buf)?;
            } else {
                emit_records(&records, cfg.format, &mut buf)?;
            }
            write_out(out.as_deref(), &buf)
        }
    }
}

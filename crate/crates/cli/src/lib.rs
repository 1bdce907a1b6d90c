//! Command-line front end for `evocolor`: runs described by flat `key=value`
//! manifests, with colorings, convergence CSVs and reports written to an
//! output directory.

pub mod commands;
pub mod error;
pub mod manifest;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use error::{CliError, Result};
pub use manifest::{Algorithm, RunManifest};

#[derive(Debug, Parser)]
#[command(name = "evocolor", version, about = "Evolutionary graph coloring over acyclic orientations and coloring programs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Config file of key=value lines; flags given here override it.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Output directory.
    #[arg(long, short)]
    pub out: PathBuf,

    /// Extra key=value override (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
}

#[derive(Debug, Args)]
pub struct EvolutionArgs {
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub generations: Option<usize>,
    #[arg(long)]
    pub population_size: Option<usize>,
    /// Number of runs, seeded seed, seed+1, ...
    #[arg(long)]
    pub runs: Option<usize>,
    /// Evaluate fitness on all cores.
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BaselineKind {
    Dsatur,
    Greedy,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search acyclic orientations of one graph for a coloring with few colors.
    ColorAo {
        /// DIMACS file or generator spec such as gnp:125:0.5:7.
        #[arg(long)]
        graph: Option<String>,
        #[command(flatten)]
        evolution: EvolutionArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Evolve a coloring program for a class of random graphs.
    EvolveProgram {
        #[arg(long)]
        class_n: Option<usize>,
        #[arg(long)]
        p_lo: Option<f64>,
        #[arg(long)]
        p_hi: Option<f64>,
        #[arg(long)]
        training_size: Option<usize>,
        #[command(flatten)]
        evolution: EvolutionArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Color a graph with DSatur or with greedy in a given order.
    Baseline {
        #[arg(long, value_enum, default_value = "dsatur")]
        algorithm: BaselineKind,
        #[arg(long)]
        graph: Option<String>,
        /// Greedy order: identity, reverse, random:SEED or a file.
        #[arg(long)]
        order: Option<String>,
        /// DSatur ties: deterministic or random:SEED.
        #[arg(long)]
        ties: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Exact chromatic number, chromatic polynomial and orientation counts for a small graph.
    Oracle {
        #[arg(long)]
        graph: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Re-run a manifest written by an earlier run.
    Replay {
        manifest: PathBuf,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Write a generated graph in DIMACS format.
    Gen {
        /// Generator spec (gnp:N:P:SEED, geometric:N:R:SEED, ...) or a DIMACS file.
        spec: String,
        /// Write the complement instead.
        #[arg(long)]
        complement: bool,
        /// Output file; stdout when absent.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

type Pairs = Vec<(String, String)>;

fn push<T: ToString>(pairs: &mut Pairs, key: &str, value: Option<T>) {
    if let Some(v) = value {
        pairs.push((key.to_string(), v.to_string()));
    }
}

fn evolution_pairs(e: &EvolutionArgs, pairs: &mut Pairs) {
    push(pairs, "seed", e.seed);
    push(pairs, "generations", e.generations);
    push(pairs, "population_size", e.population_size);
    push(pairs, "runs", e.runs);
    if e.parallel {
        push(pairs, "parallel", Some(true));
    }
}

fn resolve(algorithm: Algorithm, run: &RunArgs, flags: Pairs) -> Result<RunManifest> {
    let mut layers = Vec::new();
    if let Some(path) = &run.config {
        layers.push(manifest::parse_pairs(&commands::read_file(path)?)?);
    }
    layers.push(flags);
    let mut sets = Vec::new();
    for s in &run.set {
        sets.extend(manifest::parse_pairs(s)?);
    }
    layers.push(sets);
    RunManifest::resolve(Some(algorithm), &layers)
}

/// Executes a parsed command line and returns what to print.
pub fn execute(cli: Cli) -> Result<Vec<String>> {
    match cli.command {
        Command::ColorAo { graph, evolution, run } => {
            let mut flags = Pairs::new();
            push(&mut flags, "graph", graph);
            evolution_pairs(&evolution, &mut flags);
            let m = resolve(Algorithm::EvolveAo, &run, flags)?;
            Ok(commands::run(&m, &run.out)?.lines)
        }
        Command::EvolveProgram { class_n, p_lo, p_hi, training_size, evolution, run } => {
            let mut flags = Pairs::new();
            push(&mut flags, "class_n", class_n);
            push(&mut flags, "p_lo", p_lo);
            push(&mut flags, "p_hi", p_hi);
            push(&mut flags, "training_size", training_size);
            evolution_pairs(&evolution, &mut flags);
            let m = resolve(Algorithm::EvolveP, &run, flags)?;
            Ok(commands::run(&m, &run.out)?.lines)
        }
        Command::Baseline { algorithm, graph, order, ties, run } => {
            let algorithm = match algorithm {
                BaselineKind::Dsatur => Algorithm::Dsatur,
                BaselineKind::Greedy => Algorithm::Greedy,
            };
            let mut flags = Pairs::new();
            push(&mut flags, "graph", graph);
            push(&mut flags, "order", order);
            push(&mut flags, "ties", ties);
            let m = resolve(algorithm, &run, flags)?;
            Ok(commands::run(&m, &run.out)?.lines)
        }
        Command::Oracle { graph, run } => {
            let mut flags = Pairs::new();
            push(&mut flags, "graph", graph);
            let m = resolve(Algorithm::Oracle, &run, flags)?;
            Ok(commands::run(&m, &run.out)?.lines)
        }
        Command::Replay { manifest: path, out } => {
            let pairs = manifest::parse_pairs(&commands::read_file(&path)?)?;
            let m = RunManifest::resolve(None, &[pairs])?;
            Ok(commands::run(&m, &out)?.lines)
        }
        Command::Gen { spec, complement, out } => {
            let text = commands::generate(&spec, complement)?;
            match out {
                Some(path) => {
                    commands::write_file(&path, &text)?;
                    Ok(vec![format!("wrote {}", path.display())])
                }
                None => Ok(vec![text.trim_end().to_string()]),
            }
        }
    }
}

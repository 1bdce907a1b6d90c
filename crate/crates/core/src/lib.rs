//! Evolutionary graph coloring.
//!
//! Two evolutionary formulations of the node-coloring problem live here:
//!
//! * [`orientation`]: individuals are acyclic orientations of a fixed graph,
//!   stored as canonical linear extensions. Fitness is `n` minus the number
//!   of nodes on the longest directed path, and the coloring is recovered by
//!   repeatedly peeling off sinks.
//! * [`program`]: individuals are permutations that index into a graph's
//!   degree-sorted node sequence. Running a program greedily colors any graph
//!   with `n` nodes, so one program can be trained on a whole class of graphs.
//!
//! Both share the generational engine in [`evolution`]. [`coloring`] holds
//! the greedy and DSatur baselines, and [`oracle`] provides exact answers on
//! small graphs (chromatic number, chromatic polynomial, enumeration of all
//! acyclic orientations).
//!
//! Nodes are `0..n` internally. Every text format (DIMACS graphs, coloring
//! dumps, program lines) uses `1..=n`.

pub mod coloring;
pub mod error;
pub mod evolution;
pub mod graph;
pub mod oracle;
pub mod orientation;
pub mod perm;
pub mod program;
pub mod rng;

pub use coloring::{dsatur, greedy_color, verify_coloring, Coloring, ColoringReport, TieMode};
pub use error::{Error, Result};
pub use evolution::{
    evolve, EvolutionConfig, EvolutionResult, GenerationStats, Problem, SelectionMode,
};
pub use graph::{complement, density, gen_geometric, gen_gnp, parse_dimacs, Graph};
pub use orientation::{AoProblem, MutationPlan, Orientation};
pub use program::{Program, ProgramProblem, ReferenceSequence, TrainingSet};

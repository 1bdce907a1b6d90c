use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("density is undefined for graphs with fewer than 2 nodes (n = {0})")]
    UndefinedDensity(usize),

    #[error("coloring covers {got} nodes but the graph has {expected}")]
    IncompleteColoring { expected: usize, got: usize },

    #[error("coloring is not proper: nodes {0} and {1} share a color")]
    ImproperColoring(usize, usize),

    #[error("not a permutation of 1..={0}")]
    NotPermutation(usize),

    #[error("crossover point {z} outside 1..{n}")]
    CutOutOfRange { z: usize, n: usize },

    #[error("individuals belong to different graphs")]
    GraphMismatch,

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("training set is empty")]
    EmptyTrainingSet,

    #[error("density band [{lo}, {hi}] is infeasible for n = {n}")]
    InfeasibleBand { n: usize, lo: f64, hi: f64 },

    #[error("graph has {n} nodes, above the oracle cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("invalid configuration: {0}")]
    Config(String),
}

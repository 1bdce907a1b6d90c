//! Coloring programs: permutations that index into a graph's degree-sorted node sequence.
//!
//! A program `k_1, ..., k_n` applied to a graph visits `node(k_1), ...,
//! node(k_n)`, where `node(k)` is the `k`-th node once nodes are sorted by
//! nonincreasing degree (ties by ascending id), and colors each visited node
//! with the smallest color absent from its neighbors. Because the indirection
//! goes through the degree order, the same program applies to every graph on
//! `n` nodes, so it can be trained on a sample from a class of graphs.

use std::fmt;

use rand::seq::{index, SliceRandom};
use rand::Rng as _;

use crate::coloring::{self, Coloring};
use crate::error::{Error, Result};
use crate::evolution::Problem;
use crate::graph::{density, gen_gnp, Graph};
use crate::perm;
use crate::rng::{self, Rng};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Program {
    indices: Vec<usize>,
}

impl Program {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        perm::check_permutation(&indices, indices.len())?;
        Ok(Program { indices })
    }

    pub fn identity(n: usize) -> Self {
        Program { indices: (0..n).collect() }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Subsequence-completion crossover. Requires `1 <= z < n`.
    pub fn crossover(&self, other: &Program, z: usize) -> Result<(Program, Program)> {
        let (a, b) = perm::completion_crossover(&self.indices, &other.indices, z)?;
        Ok((Program { indices: a }, Program { indices: b }))
    }

    /// Exchanges the entries at positions `z` and `w` (0-based).
    pub fn swap(&self, z: usize, w: usize) -> Program {
        let mut indices = self.indices.clone();
        indices.swap(z, w);
        Program { indices }
    }

    pub fn invert(&self) -> Program {
        let mut indices = self.indices.clone();
        indices.reverse();
        Program { indices }
    }

    pub fn parse_line(text: &str) -> Result<Self> {
        perm::parse_line(text).map(|indices| Program { indices })
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&perm::format_line(&self.indices))
    }
}

/// Nodes by nonincreasing degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceSequence {
    order: Vec<usize>,
}

impl ReferenceSequence {
    /// Equal degrees are ordered by ascending id.
    pub fn new(g: &Graph) -> Self {
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
        ReferenceSequence { order }
    }

    /// Equal degrees are ordered at random.
    pub fn with_random_ties(g: &Graph, seed: u64) -> Self {
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.shuffle(&mut rng::from_seed(seed));
        order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
        ReferenceSequence { order }
    }

    #[inline]
    pub fn node(&self, k: usize) -> usize {
        self.order[k]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }
}

pub fn run_program(g: &Graph, program: &Program) -> Result<Coloring> {
    run_with_reference(g, &ReferenceSequence::new(g), program)
}

pub fn run_with_reference(g: &Graph, reference: &ReferenceSequence, program: &Program) -> Result<Coloring> {
    if program.len() != g.n() {
        return Err(Error::SizeMismatch { expected: g.n(), got: program.len() });
    }
    let order: Vec<usize> = program.indices.iter().map(|&k| reference.node(k)).collect();
    Ok(coloring::greedy_unchecked(g, &order))
}

/// How a training set came to be.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    Sampled { n: usize, p_lo: f64, p_hi: f64, size: usize, seed: u64, member_seeds: Vec<u64> },
    Files(Vec<String>),
}

impl Provenance {
    /// `key=value` lines suitable for a manifest.
    pub fn to_manifest(&self) -> String {
        match self {
            Provenance::Sampled { n, p_lo, p_hi, size, seed, member_seeds } => {
                let seeds: Vec<String> = member_seeds.iter().map(u64::to_string).collect();
                format!(
                    "source=sampled\nn={n}\np_lo={p_lo}\np_hi={p_hi}\nsize={size}\nseed={seed}\nmember_seeds={}\n",
                    seeds.join(",")
                )
            }
            Provenance::Files(files) => format!("source=files\nfiles={}\n", files.join(",")),
        }
    }
}

/// Graphs sharing a node count, each paired with its reference sequence.
#[derive(Debug, Clone)]
pub struct TrainingSet {
    graphs: Vec<Graph>,
    references: Vec<ReferenceSequence>,
    provenance: Provenance,
}

impl TrainingSet {
    pub fn new(graphs: Vec<Graph>, provenance: Provenance) -> Result<Self> {
        let Some(first) = graphs.first() else {
            return Err(Error::EmptyTrainingSet);
        };
        let n = first.n();
        if let Some(g) = graphs.iter().find(|g| g.n() != n) {
            return Err(Error::SizeMismatch { expected: n, got: g.n() });
        }
        let references = graphs.iter().map(ReferenceSequence::new).collect();
        Ok(TrainingSet { graphs, references, provenance })
    }

    pub fn n(&self) -> usize {
        self.graphs[0].n()
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Colors used by `program` on each member, in list order.
    pub fn colors(&self, program: &Program) -> Result<Vec<usize>> {
        if program.len() != self.n() {
            return Err(Error::SizeMismatch { expected: self.n(), got: program.len() });
        }
        let mut scratch = Vec::new();
        Ok(self
            .graphs
            .iter()
            .zip(&self.references)
            .map(|(g, d)| coloring::greedy_count(g, program.indices.iter().map(|&k| d.node(k)), &mut scratch))
            .collect())
    }
}

/// `n` minus the average number of colors `program` uses over the training set.
pub fn fitness(program: &Program, training: &TrainingSet) -> Result<f64> {
    let total: usize = training.colors(program)?.into_iter().sum();
    Ok(training.n() as f64 - total as f64 / training.len() as f64)
}

const MAX_DRAWS_PER_MEMBER: usize = 1000;

/// Draws `size` graphs with `n` nodes and density in `[p_lo, p_hi]`.
///
/// Each member draws a target density uniformly from the band, then a
/// `G(n, p)` graph at that density; graphs whose realized density leaves the
/// band are redrawn.
pub fn sample_training_set(n: usize, p_lo: f64, p_hi: f64, size: usize, seed: u64) -> Result<TrainingSet> {
    if !(0.0..=1.0).contains(&p_lo) || !(0.0..=1.0).contains(&p_hi) || p_lo > p_hi {
        return Err(Error::Config(format!("density band [{p_lo}, {p_hi}] is not within [0, 1]")));
    }
    if size == 0 {
        return Err(Error::EmptyTrainingSet);
    }
    if n < 2 {
        return Err(Error::InfeasibleBand { n, lo: p_lo, hi: p_hi });
    }
    let mut rng = rng::from_seed(seed);
    let mut graphs = Vec::with_capacity(size);
    let mut member_seeds = Vec::with_capacity(size);
    for _ in 0..size {
        let mut found = None;
        for _ in 0..MAX_DRAWS_PER_MEMBER {
            let p = if p_lo == p_hi { p_lo } else { rng.gen_range(p_lo..=p_hi) };
            let s = rng::derive_seed(&mut rng);
            let g = gen_gnp(n, p, s);
            let d = density(&g)?;
            if (p_lo..=p_hi).contains(&d) {
                found = Some((g, s));
                break;
            }
        }
        let (g, s) = found.ok_or(Error::InfeasibleBand { n, lo: p_lo, hi: p_hi })?;
        graphs.push(g);
        member_seeds.push(s);
    }
    TrainingSet::new(graphs, Provenance::Sampled { n, p_lo, p_hi, size, seed, member_seeds })
}

/// Evolution of programs against a training set.
pub struct ProgramProblem {
    pub training: TrainingSet,
}

impl ProgramProblem {
    pub fn new(training: TrainingSet) -> Self {
        ProgramProblem { training }
    }
}

impl Problem for ProgramProblem {
    type Individual = Program;

    fn genome_len(&self) -> usize {
        self.training.n()
    }

    fn from_permutation(&self, perm: Vec<usize>) -> Program {
        Program { indices: perm }
    }

    fn genome<'a>(&self, ind: &'a Program) -> &'a [usize] {
        ind.indices()
    }

    fn fitness(&self, ind: &Program) -> f64 {
        fitness(ind, &self.training).expect("programs match the class size")
    }

    fn crossover(&self, a: &Program, b: &Program, z: usize) -> (Program, Program) {
        a.crossover(b, z).expect("cut drawn in range")
    }

    /// Swaps two distinct positions; a no-op when `n < 2`.
    fn mutate(&self, ind: &Program, rng: &mut Rng) -> Program {
        if ind.len() < 2 {
            return ind.clone();
        }
        let pair = index::sample(rng, ind.len(), 2);
        ind.swap(pair.index(0), pair.index(1))
    }

    fn invert(&self, ind: &Program) -> Program {
        ind.invert()
    }
}

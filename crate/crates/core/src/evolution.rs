//! Elitist generational engine shared by both formulations.
//!
//! Each generation keeps the `floor(f * s)` fittest individuals, then fills
//! the population by fitness-proportional selection of parent pairs, optional
//! crossover, and per-child mutation and inversion. Every random decision is
//! drawn from one sequential stream in a fixed order, so a run depends only on
//! its seed; fitness evaluation may run in parallel without affecting results.

use std::fmt::Write as _;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng as _;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm;
use crate::rng::{self, Rng};

/// The problem-specific half of an evolutionary run.
pub trait Problem: Sync {
    type Individual: Clone + Send + Sync;

    /// Length `n` of the permutation genome.
    fn genome_len(&self) -> usize;

    /// Interprets a permutation of `0..n` as an individual.
    fn from_permutation(&self, perm: Vec<usize>) -> Self::Individual;

    fn genome<'a>(&self, ind: &'a Self::Individual) -> &'a [usize];

    /// Higher is better.
    fn fitness(&self, ind: &Self::Individual) -> f64;

    /// Colors implied by a fitness value.
    fn colors(&self, fitness: f64) -> f64 {
        self.genome_len() as f64 - fitness
    }

    fn crossover(
        &self,
        a: &Self::Individual,
        b: &Self::Individual,
        z: usize,
    ) -> (Self::Individual, Self::Individual);

    fn mutate(&self, ind: &Self::Individual, rng: &mut Rng) -> Self::Individual;

    fn invert(&self, ind: &Self::Individual) -> Self::Individual {
        ind.clone()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionMode {
    /// Weight `2k` for the individual with the `k`-th smallest fitness.
    RankLinear,
    /// Weight `e^fitness`.
    Exponential,
}

impl SelectionMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SelectionMode::RankLinear => "rank_linear",
            SelectionMode::Exponential => "exponential",
        }
    }
}

impl std::str::FromStr for SelectionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rank_linear" => Ok(SelectionMode::RankLinear),
            "exponential" => Ok(SelectionMode::Exponential),
            other => Err(Error::Config(format!("unknown selection mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionConfig {
    pub generations: usize,
    pub population_size: usize,
    pub elite_fraction: f64,
    pub crossover_prob: f64,
    pub mutation_prob: f64,
    pub inversion_prob: f64,
    pub selection: SelectionMode,
    pub seed: u64,
    /// Evaluate fitness on the rayon pool. Results do not depend on this.
    pub parallel: bool,
}

impl EvolutionConfig {
    /// Orientation search with `p_c = 0.60`, `p_m = 0.02`, `f = 0.70`, `g = 5000`, `s = 100`.
    pub fn orientation_defaults() -> Self {
        EvolutionConfig {
            generations: 5000,
            population_size: 100,
            elite_fraction: 0.70,
            crossover_prob: 0.60,
            mutation_prob: 0.02,
            inversion_prob: 0.0,
            selection: SelectionMode::RankLinear,
            seed: 0,
            parallel: false,
        }
    }

    /// Program search. Only the selection law is fixed; the rates are this crate's picks.
    pub fn program_defaults() -> Self {
        EvolutionConfig {
            generations: 200,
            population_size: 50,
            elite_fraction: 0.70,
            crossover_prob: 0.60,
            mutation_prob: 0.50,
            inversion_prob: 0.02,
            selection: SelectionMode::RankLinear,
            seed: 0,
            parallel: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.generations < 1 {
            return bad("generations must be at least 1".into());
        }
        if self.population_size < 2 {
            return bad("population size must be at least 2".into());
        }
        if !(0.0..1.0).contains(&self.elite_fraction) {
            return bad(format!("elite fraction {} outside [0, 1)", self.elite_fraction));
        }
        for (name, p) in [
            ("crossover", self.crossover_prob),
            ("mutation", self.mutation_prob),
            ("inversion", self.inversion_prob),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} probability {p} outside [0, 1]"));
            }
        }
        Ok(())
    }

    /// `floor(f * s)`.
    pub fn elite_count(&self) -> usize {
        // 0.7 * 100 must give 70, not 69
        let exact = self.elite_fraction * self.population_size as f64;
        (exact + 1e-9).floor() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenerationStats {
    /// 1-based; generation 1 is the random initial population.
    pub generation: usize,
    pub best_fitness: f64,
    pub best_colors: f64,
    pub mean_fitness: f64,
    pub best_so_far: f64,
}

impl GenerationStats {
    pub const CSV_HEADER: &'static str = "generation,best_fitness,best_colors,mean_fitness,best_so_far";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.generation, self.best_fitness, self.best_colors, self.mean_fitness, self.best_so_far
        )
    }
}

/// Header plus one row per generation.
pub fn stats_csv(stats: &[GenerationStats]) -> String {
    let mut out = String::from(GenerationStats::CSV_HEADER);
    out.push('\n');
    for s in stats {
        writeln!(out, "{}", s.csv_row()).unwrap();
    }
    out
}

pub fn random_population(n: usize, s: usize, rng: &mut Rng) -> Vec<Vec<usize>> {
    (0..s).map(|_| perm::random_permutation(n, rng)).collect()
}

/// Selection probabilities, in population order.
///
/// Rank ties are broken by position: the earlier individual gets the lower rank.
pub fn selection_weights(fitnesses: &[f64], mode: SelectionMode) -> Vec<f64> {
    let raw: Vec<f64> = match mode {
        SelectionMode::RankLinear => {
            let mut idx: Vec<usize> = (0..fitnesses.len()).collect();
            idx.sort_by(|&a, &b| fitnesses[a].total_cmp(&fitnesses[b]));
            let mut w = vec![0.0; fitnesses.len()];
            for (rank, &i) in idx.iter().enumerate() {
                w[i] = 2.0 * (rank + 1) as f64;
            }
            w
        }
        SelectionMode::Exponential => {
            // shifting by the maximum leaves the normalized weights unchanged
            let top = fitnesses.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            fitnesses.iter().map(|&f| (f - top).exp()).collect()
        }
    };
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}

#[derive(Debug, Clone)]
pub struct Population<I> {
    pub members: Vec<I>,
    pub fitness: Vec<f64>,
}

impl<I: Clone + Send + Sync> Population<I> {
    pub fn evaluate<P>(problem: &P, members: Vec<I>, parallel: bool) -> Self
    where
        P: Problem<Individual = I>,
    {
        let fitness = if parallel {
            members.par_iter().map(|m| problem.fitness(m)).collect()
        } else {
            members.iter().map(|m| problem.fitness(m)).collect()
        };
        Population { members, fitness }
    }

    /// Index of the fittest member; the earliest wins ties.
    pub fn best(&self) -> usize {
        let mut best = 0;
        for (i, &f) in self.fitness.iter().enumerate() {
            if f > self.fitness[best] {
                best = i;
            }
        }
        best
    }

    pub fn mean_fitness(&self) -> f64 {
        self.fitness.iter().sum::<f64>() / self.fitness.len() as f64
    }
}

/// Builds the next population (not yet evaluated) from an evaluated one.
pub fn next_generation<P: Problem>(
    problem: &P,
    pop: &Population<P::Individual>,
    cfg: &EvolutionConfig,
    rng: &mut Rng,
) -> Vec<P::Individual> {
    let s = cfg.population_size;
    let n = problem.genome_len();
    let mut next = Vec::with_capacity(s);

    let mut ranked: Vec<usize> = (0..pop.members.len()).collect();
    ranked.sort_by(|&a, &b| pop.fitness[b].total_cmp(&pop.fitness[a]));
    next.extend(ranked.iter().take(cfg.elite_count()).map(|&i| pop.members[i].clone()));

    let weights = selection_weights(&pop.fitness, cfg.selection);
    let picker = WeightedIndex::new(&weights).expect("weights are positive and finite");

    while next.len() < s {
        let a = &pop.members[picker.sample(rng)];
        let b = &pop.members[picker.sample(rng)];
        let (mut c1, mut c2) = if n >= 2 && rng.gen::<f64>() < cfg.crossover_prob {
            let z = rng.gen_range(1..n);
            problem.crossover(a, b, z)
        } else {
            (a.clone(), b.clone())
        };
        for child in [&mut c1, &mut c2] {
            if rng.gen::<f64>() < cfg.mutation_prob {
                *child = problem.mutate(child, rng);
            }
        }
        for child in [&mut c1, &mut c2] {
            if rng.gen::<f64>() < cfg.inversion_prob {
                *child = problem.invert(child);
            }
        }
        next.push(c1);
        if next.len() < s {
            next.push(c2);
        }
    }
    next
}

#[derive(Debug, Clone)]
pub struct EvolutionResult<I> {
    pub best: I,
    pub best_fitness: f64,
    /// Generation (1-based) in which `best` first appeared.
    pub best_generation: usize,
    pub stats: Vec<GenerationStats>,
}

pub fn evolve<P: Problem>(problem: &P, cfg: &EvolutionConfig) -> Result<EvolutionResult<P::Individual>> {
    evolve_with(problem, cfg, |_, _| {})
}

/// Like [`evolve`], calling `observe` on every evaluated population.
pub fn evolve_with<P, F>(
    problem: &P,
    cfg: &EvolutionConfig,
    mut observe: F,
) -> Result<EvolutionResult<P::Individual>>
where
    P: Problem,
    F: FnMut(usize, &Population<P::Individual>),
{
    cfg.validate()?;
    let mut rng = rng::from_seed(cfg.seed);
    let n = problem.genome_len();
    let initial = random_population(n, cfg.population_size, &mut rng)
        .into_iter()
        .map(|p| problem.from_permutation(p))
        .collect();
    let mut pop = Population::evaluate(problem, initial, cfg.parallel);

    let mut stats = Vec::with_capacity(cfg.generations);
    let mut best: Option<(P::Individual, f64, usize)> = None;
    for generation in 1..=cfg.generations {
        if generation > 1 {
            let members = next_generation(problem, &pop, cfg, &mut rng);
            pop = Population::evaluate(problem, members, cfg.parallel);
        }
        observe(generation, &pop);
        let i = pop.best();
        let f = pop.fitness[i];
        if best.as_ref().is_none_or(|b| f > b.1) {
            best = Some((pop.members[i].clone(), f, generation));
        }
        stats.push(GenerationStats {
            generation,
            best_fitness: f,
            best_colors: problem.colors(f),
            mean_fitness: pop.mean_fitness(),
            best_so_far: best.as_ref().unwrap().1,
        });
    }
    let (best, best_fitness, best_generation) = best.unwrap();
    Ok(EvolutionResult { best, best_fitness, best_generation, stats })
}

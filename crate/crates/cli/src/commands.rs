use std::fs;
use std::path::{Path, PathBuf};

use evocolor::coloring::require_proper;
use evocolor::evolution::stats_csv;
use evocolor::oracle;
use evocolor::program::{run_program, sample_training_set, Program, Provenance, TrainingSet};
use evocolor::{
    complement, dsatur, evolve, gen_geometric, gen_gnp, greedy_color, perm, rng, AoProblem, Coloring,
    EvolutionConfig, Graph, ProgramProblem, TieMode,
};

use crate::error::{CliError, Result};
use crate::manifest::{Algorithm, RunManifest};

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    }
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn load_dimacs(path: &Path) -> Result<Graph> {
    let text = read_file(path)?;
    let parsed = evocolor::graph::parse_dimacs_verbose(&text)
        .map_err(|source| CliError::Input { path: path.to_path_buf(), source })?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(parsed.graph)
}

fn spec_error(spec: &str, why: &str) -> CliError {
    CliError::Config(format!("graph `{spec}`: {why}"))
}

fn field<T: std::str::FromStr>(spec: &str, parts: &[&str], i: usize) -> Result<T> {
    parts
        .get(i)
        .ok_or_else(|| spec_error(spec, "too few fields"))?
        .parse()
        .map_err(|_| spec_error(spec, &format!("cannot parse field {}", i + 1)))
}

/// Loads a graph from a generator spec or a DIMACS file path.
///
/// Specs: `gnp:N:P:SEED`, `geometric:N:RADIUS:SEED`, `complete:N`, `cycle:N`,
/// `path:N`, `star:LEAVES`, `crown:K`, `petersen`. Anything else is a path.
pub fn load_graph(spec: &str) -> Result<Graph> {
    let parts: Vec<&str> = spec.split(':').collect();
    let arity = |k: usize| {
        if parts.len() == k {
            Ok(())
        } else {
            Err(spec_error(spec, &format!("expected {} fields", k - 1)))
        }
    };
    match parts[0] {
        "gnp" => {
            arity(4)?;
            let p: f64 = field(spec, &parts, 2)?;
            if !(0.0..=1.0).contains(&p) {
                return Err(spec_error(spec, "edge probability outside [0, 1]"));
            }
            Ok(gen_gnp(field(spec, &parts, 1)?, p, field(spec, &parts, 3)?))
        }
        "geometric" => {
            arity(4)?;
            let r: f64 = field(spec, &parts, 2)?;
            if r.is_nan() || r < 0.0 {
                return Err(spec_error(spec, "radius must be non-negative"));
            }
            Ok(gen_geometric(field(spec, &parts, 1)?, r, field(spec, &parts, 3)?))
        }
        "complete" => arity(2).and_then(|_| Ok(Graph::complete(field(spec, &parts, 1)?))),
        "cycle" => {
            arity(2)?;
            let n: usize = field(spec, &parts, 1)?;
            if n < 3 {
                return Err(spec_error(spec, "a cycle needs at least 3 nodes"));
            }
            Ok(Graph::cycle(n))
        }
        "path" => arity(2).and_then(|_| Ok(Graph::path(field(spec, &parts, 1)?))),
        "star" => arity(2).and_then(|_| Ok(Graph::star(field(spec, &parts, 1)?))),
        "crown" => arity(2).and_then(|_| Ok(Graph::crown(field(spec, &parts, 1)?))),
        "petersen" => arity(1).map(|_| Graph::petersen()),
        _ => load_dimacs(Path::new(spec)),
    }
}

/// What a command produced: lines for stdout. Files are already written.
#[derive(Debug, Default)]
pub struct Outcome {
    pub lines: Vec<String>,
}

impl Outcome {
    fn say(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }
}

pub fn run(manifest: &RunManifest, out: &Path) -> Result<Outcome> {
    let mut outcome = match manifest.algorithm() {
        Algorithm::EvolveAo => color_ao(manifest, out)?,
        Algorithm::EvolveP => evolve_program(manifest, out)?,
        Algorithm::Dsatur | Algorithm::Greedy => baseline(manifest, out)?,
        Algorithm::Oracle => oracle_report(manifest, out)?,
    };
    write_file(&out.join("manifest.txt"), &manifest.to_text())?;
    outcome.say(format!("wrote {}", out.display()));
    Ok(outcome)
}

/// Seeds `seed..seed+runs` paired with the directory each run writes into.
fn run_dirs(manifest: &RunManifest, out: &Path) -> Result<Vec<(u64, PathBuf)>> {
    let first = manifest.u64("seed")?;
    let runs = manifest.usize("runs")?;
    Ok((0..runs as u64)
        .map(|r| {
            let seed = first + r;
            let dir = if runs == 1 { out.to_path_buf() } else { out.join(format!("run_{seed}")) };
            (seed, dir)
        })
        .collect())
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn color_ao(manifest: &RunManifest, out: &Path) -> Result<Outcome> {
    let g = load_graph(manifest.str("graph"))?;
    let base = manifest.evolution_config()?;
    let problem = AoProblem::new(&g);
    let mut outcome = Outcome::default();
    let mut summary = String::from("seed,colors,best_generation\n");
    let mut counts = Vec::new();

    for (seed, dir) in run_dirs(manifest, out)? {
        let cfg = EvolutionConfig { seed, ..base.clone() };
        let res = evolve(&problem, &cfg)?;
        let coloring = res.best.sink_decomposition_coloring();
        let colors = require_proper(&g, &coloring)?;
        if colors != res.best.longest_path_nodes() {
            return Err(CliError::Verification(format!(
                "coloring uses {colors} colors but the orientation's longest path has {} nodes",
                res.best.longest_path_nodes()
            )));
        }
        write_file(&dir.join("coloring.txt"), &coloring.to_dimacs())?;
        write_file(&dir.join("convergence.csv"), &stats_csv(&res.stats))?;
        summary.push_str(&format!("{seed},{colors},{}\n", res.best_generation));
        outcome.say(format!("seed {seed}: {colors} colors (generation {})", res.best_generation));
        counts.push(colors);
    }
    push_mean_min(&mut summary, &mut outcome, &counts);
    write_file(&out.join("summary.csv"), &summary)?;
    Ok(outcome)
}

fn push_mean_min(summary: &mut String, outcome: &mut Outcome, counts: &[usize]) {
    let as_f: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    let min = counts.iter().min().copied().unwrap_or(0);
    summary.push_str(&format!("mean,{},\nmin,{min},\n", mean(&as_f)));
    outcome.say(format!("colors: mean {} min {min}", mean(&as_f)));
}

/// An evaluation graph with a label for the report.
struct Labeled {
    label: String,
    graph: Graph,
}

fn load_files(files: &[String]) -> Result<Vec<Labeled>> {
    files
        .iter()
        .map(|f| Ok(Labeled { label: f.clone(), graph: load_dimacs(Path::new(f))? }))
        .collect()
}

fn training_set(manifest: &RunManifest) -> Result<TrainingSet> {
    let n = manifest.usize("class_n")?;
    let files = manifest.list("training_files");
    if files.is_empty() {
        return Ok(sample_training_set(
            n,
            manifest.f64("p_lo")?,
            manifest.f64("p_hi")?,
            manifest.usize("training_size")?,
            manifest.u64("training_seed")?,
        )?);
    }
    let graphs: Vec<Graph> = load_files(&files)?.into_iter().map(|l| l.graph).collect();
    check_class_n(n, &graphs, &files)?;
    Ok(TrainingSet::new(graphs, Provenance::Files(files))?)
}

fn check_class_n(n: usize, graphs: &[Graph], labels: &[String]) -> Result<()> {
    for (g, label) in graphs.iter().zip(labels) {
        if g.n() != n {
            return Err(CliError::Config(format!("{label} has {} nodes but class_n is {n}", g.n())));
        }
    }
    Ok(())
}

fn evaluation_graphs(manifest: &RunManifest, training: &TrainingSet) -> Result<Vec<Labeled>> {
    let n = manifest.usize("class_n")?;
    let files = manifest.list("eval_files");
    if !files.is_empty() {
        let graphs = load_files(&files)?;
        let plain: Vec<Graph> = graphs.iter().map(|l| l.graph.clone()).collect();
        check_class_n(n, &plain, &files)?;
        return Ok(graphs);
    }
    let size = manifest.usize("eval_size")?;
    if size > 0 {
        let set = sample_training_set(n, manifest.f64("p_lo")?, manifest.f64("p_hi")?, size, manifest.u64("eval_seed")?)?;
        return Ok(set
            .graphs()
            .iter()
            .enumerate()
            .map(|(i, g)| Labeled { label: format!("eval_{}", i + 1), graph: g.clone() })
            .collect());
    }
    Ok(training
        .graphs()
        .iter()
        .enumerate()
        .map(|(i, g)| Labeled { label: format!("train_{}", i + 1), graph: g.clone() })
        .collect())
}

fn colors_of(g: &Graph, program: &Program) -> Result<usize> {
    let coloring = run_program(g, program)?;
    Ok(require_proper(g, &coloring)?)
}

fn evolve_program(manifest: &RunManifest, out: &Path) -> Result<Outcome> {
    let training = training_set(manifest)?;
    let eval = evaluation_graphs(manifest, &training)?;
    write_file(&out.join("training.txt"), &training.provenance().to_manifest())?;
    let n = training.n();
    let identity = Program::identity(n);
    let identity_colors: Vec<usize> = eval.iter().map(|l| colors_of(&l.graph, &identity)).collect::<Result<_>>()?;

    let base = manifest.evolution_config()?;
    let problem = ProgramProblem::new(training);
    let mut outcome = Outcome::default();
    let mut summary = String::from("seed,train_colors,eval_colors,identity_eval_colors,best_generation\n");
    let mut eval_means = Vec::new();

    for (seed, dir) in run_dirs(manifest, out)? {
        let cfg = EvolutionConfig { seed, ..base.clone() };
        let res = evolve(&problem, &cfg)?;
        let mut report = String::from("graph,colors,identity_colors\n");
        let mut got = Vec::new();
        for (l, &id) in eval.iter().zip(&identity_colors) {
            let c = colors_of(&l.graph, &res.best)?;
            report.push_str(&format!("{},{c},{id}\n", l.label));
            got.push(c as f64);
        }
        let id_f: Vec<f64> = identity_colors.iter().map(|&c| c as f64).collect();
        let (m, m_id) = (mean(&got), mean(&id_f));
        report.push_str(&format!("mean,{m},{m_id}\n"));
        let train_colors = n as f64 - res.best_fitness;

        write_file(&dir.join("program.txt"), &format!("{}\n", res.best))?;
        write_file(&dir.join("convergence.csv"), &stats_csv(&res.stats))?;
        write_file(&dir.join("evaluation.csv"), &report)?;
        summary.push_str(&format!("{seed},{train_colors},{m},{m_id},{}\n", res.best_generation));
        outcome.say(format!(
            "seed {seed}: training avg {train_colors} colors, evaluation avg {m} (identity {m_id})"
        ));
        eval_means.push(m);
    }
    let min = eval_means.iter().copied().fold(f64::INFINITY, f64::min);
    summary.push_str(&format!("mean,,{},,\nmin,,{min},,\n", mean(&eval_means)));
    write_file(&out.join("summary.csv"), &summary)?;
    Ok(outcome)
}

/// `identity`, `reverse`, `random:SEED`, or a file holding a 1-based order on one line.
fn greedy_order(spec: &str, n: usize) -> Result<Vec<usize>> {
    match spec {
        "identity" => Ok((0..n).collect()),
        "reverse" => Ok((0..n).rev().collect()),
        _ => {
            if let Some(seed) = spec.strip_prefix("random:") {
                let seed: u64 = seed
                    .parse()
                    .map_err(|_| CliError::Config(format!("order `{spec}`: bad seed")))?;
                return Ok(perm::random_permutation(n, &mut rng::from_seed(seed)));
            }
            let path = Path::new(spec);
            let order = perm::parse_line(&read_file(path)?)
                .map_err(|source| CliError::Input { path: path.to_path_buf(), source })?;
            perm::check_permutation(&order, n)
                .map_err(|source| CliError::Input { path: path.to_path_buf(), source })?;
            Ok(order)
        }
    }
}

fn tie_mode(spec: &str) -> Result<TieMode> {
    if spec == "deterministic" {
        return Ok(TieMode::Deterministic);
    }
    spec.strip_prefix("random:")
        .and_then(|s| s.parse().ok())
        .map(TieMode::Random)
        .ok_or_else(|| CliError::Config(format!("ties `{spec}`: expected deterministic or random:SEED")))
}

fn baseline(manifest: &RunManifest, out: &Path) -> Result<Outcome> {
    let g = load_graph(manifest.str("graph"))?;
    let coloring: Coloring = match manifest.algorithm() {
        Algorithm::Greedy => greedy_color(&g, &greedy_order(manifest.str("order"), g.n())?)?,
        _ => dsatur(&g, tie_mode(manifest.str("ties"))?),
    };
    let colors = require_proper(&g, &coloring)?;
    write_file(&out.join("coloring.txt"), &coloring.to_dimacs())?;
    write_file(
        &out.join("summary.txt"),
        &format!(
            "algorithm={}\nn={}\nm={}\nmax_degree={}\ncolors={colors}\n",
            manifest.algorithm(),
            g.n(),
            g.m(),
            g.max_degree()
        ),
    )?;
    let mut outcome = Outcome::default();
    outcome.say(format!("{}: {colors} colors", manifest.algorithm()));
    Ok(outcome)
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn oracle_report(manifest: &RunManifest, out: &Path) -> Result<Outcome> {
    let g = load_graph(manifest.str("graph"))?;
    let chi = oracle::chromatic_number_exact(&g)?;
    let poly = oracle::chromatic_polynomial(&g)?;
    let stanley = oracle::verify_stanley(&g)?;
    let via = oracle::chi_via_orientations(&g)?;
    let report = format!(
        "n={}\nm={}\nchromatic_number={chi}\nchromatic_polynomial={poly}\nacyclic_orientations={}\n\
         signed_polynomial_at_minus_one={}\nstanley={}\nmin_longest_path={via}\nmin_longest_path_equals_chi={}\n",
        g.n(),
        g.m(),
        stanley.orientations,
        stanley.polynomial_value,
        pass(stanley.equal),
        pass(via == chi),
    );
    write_file(&out.join("report.txt"), &report)?;
    let mut outcome = Outcome { lines: report.lines().map(String::from).collect() };
    if !stanley.equal || via != chi {
        write_file(&out.join("manifest.txt"), &manifest.to_text())?;
        return Err(CliError::Verification(format!("oracle checks failed for {}", manifest.str("graph"))));
    }
    outcome.say(format!("chromatic number {chi}"));
    Ok(outcome)
}

/// Writes `complement` of the graph at `spec`, or the graph itself.
pub fn generate(spec: &str, take_complement: bool) -> Result<String> {
    let g = load_graph(spec)?;
    Ok(if take_complement { complement(&g) } else { g }.to_dimacs())
}

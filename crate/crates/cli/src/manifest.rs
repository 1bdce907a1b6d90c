//! Flat `key=value` run manifests.
//!
//! A manifest names the algorithm, where the graph(s) come from and every
//! evolution parameter. The resolved manifest (defaults, then the config file,
//! then command-line overrides) is written next to the outputs, and feeding it
//! back in reproduces them byte for byte.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use evocolor::{EvolutionConfig, SelectionMode};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    EvolveAo,
    EvolveP,
    Dsatur,
    Greedy,
    Oracle,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::EvolveAo => "evolve_ao",
            Algorithm::EvolveP => "evolve_p",
            Algorithm::Dsatur => "dsatur",
            Algorithm::Greedy => "greedy",
            Algorithm::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "evolve_ao" => Ok(Algorithm::EvolveAo),
            "evolve_p" => Ok(Algorithm::EvolveP),
            "dsatur" => Ok(Algorithm::Dsatur),
            "greedy" => Ok(Algorithm::Greedy),
            "oracle" => Ok(Algorithm::Oracle),
            other => Err(CliError::Config(format!("unknown algorithm `{other}`"))),
        }
    }
}

fn evolution_defaults(cfg: &EvolutionConfig) -> Vec<(&'static str, String)> {
    vec![
        ("generations", cfg.generations.to_string()),
        ("population_size", cfg.population_size.to_string()),
        ("elite_fraction", cfg.elite_fraction.to_string()),
        ("crossover_prob", cfg.crossover_prob.to_string()),
        ("mutation_prob", cfg.mutation_prob.to_string()),
        ("inversion_prob", cfg.inversion_prob.to_string()),
        ("selection", cfg.selection.as_str().to_string()),
        ("seed", cfg.seed.to_string()),
        ("parallel", cfg.parallel.to_string()),
        ("runs", "1".to_string()),
    ]
}

/// Every key an algorithm accepts, with its default. An empty default means
/// "must be supplied" for `graph` and "unset" for the optional file lists.
fn defaults(algorithm: Algorithm) -> Vec<(&'static str, String)> {
    let mut keys = vec![("algorithm", algorithm.as_str().to_string())];
    match algorithm {
        Algorithm::EvolveAo => {
            keys.push(("graph", String::new()));
            keys.extend(evolution_defaults(&EvolutionConfig::orientation_defaults()));
        }
        Algorithm::EvolveP => {
            keys.extend([
                ("class_n", "60".to_string()),
                ("p_lo", "0.45".to_string()),
                ("p_hi", "0.55".to_string()),
                ("training_size", "20".to_string()),
                ("training_seed", "0".to_string()),
                ("training_files", String::new()),
                ("eval_size", "0".to_string()),
                ("eval_seed", "1".to_string()),
                ("eval_files", String::new()),
            ]);
            keys.extend(evolution_defaults(&EvolutionConfig::program_defaults()));
        }
        Algorithm::Dsatur => {
            keys.push(("graph", String::new()));
            keys.push(("ties", "deterministic".to_string()));
        }
        Algorithm::Greedy => {
            keys.push(("graph", String::new()));
            keys.push(("order", "identity".to_string()));
        }
        Algorithm::Oracle => keys.push(("graph", String::new())),
    }
    keys
}

/// Parses `key=value` lines. Blank lines and lines starting with `#` are skipped.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(CliError::Config(format!("line {}: expected key=value, got `{line}`", i + 1)));
        };
        pairs.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(pairs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunManifest {
    algorithm: Algorithm,
    values: BTreeMap<String, String>,
}

impl RunManifest {
    /// Layers `layers` in order over the defaults for the algorithm.
    ///
    /// `algorithm` fixes the algorithm (as a subcommand does); otherwise it is
    /// read from the layers. A layer naming a different algorithm is an error,
    /// as is any key the algorithm does not know.
    pub fn resolve(algorithm: Option<Algorithm>, layers: &[Vec<(String, String)>]) -> Result<Self> {
        let mut named = algorithm;
        for (k, v) in layers.iter().flatten() {
            if k == "algorithm" {
                let a: Algorithm = v.parse()?;
                match named {
                    Some(prev) if prev != a && algorithm.is_some() => {
                        return Err(CliError::Config(format!(
                            "manifest is for `{a}` but this command runs `{prev}`"
                        )))
                    }
                    _ => named = Some(a),
                }
            }
        }
        let algorithm = named.ok_or_else(|| CliError::Config("no algorithm given".into()))?;

        let mut values: BTreeMap<String, String> =
            defaults(algorithm).into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        for (k, v) in layers.iter().flatten() {
            if k == "algorithm" {
                continue;
            }
            match values.get_mut(k) {
                Some(slot) => *slot = v.clone(),
                None => return Err(CliError::Config(format!("unknown key `{k}` for {algorithm}"))),
            }
        }
        let manifest = RunManifest { algorithm, values };
        manifest.check()?;
        Ok(manifest)
    }

    /// Parses every typed key once so errors surface before any work starts.
    fn check(&self) -> Result<()> {
        if self.values.contains_key("graph") && self.str("graph").is_empty() {
            return Err(CliError::Config("`graph` is required".into()));
        }
        if self.values.contains_key("generations") {
            self.evolution_config()?.validate()?;
            if self.usize("runs")? == 0 {
                return Err(CliError::Config("runs must be at least 1".into()));
            }
        }
        if self.algorithm == Algorithm::EvolveP {
            self.usize("class_n")?;
            self.f64("p_lo")?;
            self.f64("p_hi")?;
            self.usize("training_size")?;
            self.u64("training_seed")?;
            self.usize("eval_size")?;
            self.u64("eval_seed")?;
        }
        Ok(())
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn str(&self, key: &str) -> &str {
        self.values.get(key).map(String::as_str).unwrap_or("")
    }

    fn typed<T: FromStr>(&self, key: &str) -> Result<T> {
        let raw = self.str(key);
        raw.parse()
            .map_err(|_| CliError::Config(format!("`{key}`: cannot parse `{raw}`")))
    }

    pub fn usize(&self, key: &str) -> Result<usize> {
        self.typed(key)
    }

    pub fn u64(&self, key: &str) -> Result<u64> {
        self.typed(key)
    }

    pub fn f64(&self, key: &str) -> Result<f64> {
        self.typed(key)
    }

    pub fn bool(&self, key: &str) -> Result<bool> {
        self.typed(key)
    }

    /// Comma-separated list; empty when unset.
    pub fn list(&self, key: &str) -> Vec<String> {
        self.str(key)
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(String::from)
            .collect()
    }

    /// Evolution parameters; with several runs, `seed` is the first run's seed.
    pub fn evolution_config(&self) -> Result<EvolutionConfig> {
        let selection: SelectionMode = self
            .str("selection")
            .parse()
            .map_err(|e: evocolor::Error| CliError::Config(e.to_string()))?;
        Ok(EvolutionConfig {
            generations: self.usize("generations")?,
            population_size: self.usize("population_size")?,
            elite_fraction: self.f64("elite_fraction")?,
            crossover_prob: self.f64("crossover_prob")?,
            mutation_prob: self.f64("mutation_prob")?,
            inversion_prob: self.f64("inversion_prob")?,
            selection,
            seed: self.u64("seed")?,
            parallel: self.bool("parallel")?,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("algorithm={}\n", self.algorithm);
        for (k, v) in &self.values {
            if k != "algorithm" {
                out.push_str(&format!("{k}={v}\n"));
            }
        }
        out
    }
}

//! Experiment plans and the `key = value` configuration file.
//!
//! Grammar, one setting per line:
//!
//! ```text
//! # comment
//! functions = F5, F8, F10
//! dims = 30
//! algos = de, clu_de
//! runs = 25
//! seed = 1
//! budget_multiplier = 3000
//! out = results
//! transforms = synthetic:2017
//! ```
//!
//! Keys may use `-` or `_`. Everything after `#` is ignored. Command-line
//! flags override values read from a file.

use std::path::{Path, PathBuf};

use clude_core::benchmarks::{synth_transforms, BaseFunction, TransformSet};
use clude_core::{derive_seed, Algorithm, AlgorithmConfig, Bounds};

use crate::error::{HarnessError, Result};

pub const DEFAULT_RUNS: usize = 25;
pub const DEFAULT_BUDGET_MULTIPLIER: u64 = 3000;
pub const DEFAULT_SYNTHETIC_SEED: u64 = 2017;
pub const SUPPORTED_DIMS: [usize; 4] = [10, 30, 50, 100];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransformSource {
    Synthetic { seed: u64 },
    Directory(PathBuf),
}

impl TransformSource {
    /// `synthetic`, `synthetic:<seed>`, or a directory path.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "synthetic" {
            return Ok(TransformSource::Synthetic {
                seed: DEFAULT_SYNTHETIC_SEED,
            });
        }
        if let Some(seed) = s.strip_prefix("synthetic:") {
            let seed = seed
                .trim()
                .parse()
                .map_err(|_| HarnessError::usage(format!("invalid synthetic seed `{seed}`")))?;
            return Ok(TransformSource::Synthetic { seed });
        }
        if s.is_empty() {
            return Err(HarnessError::usage("transform source is empty"));
        }
        Ok(TransformSource::Directory(PathBuf::from(s)))
    }

    pub fn load(&self, dimension: usize, functions: &[BaseFunction]) -> Result<TransformSet> {
        match self {
            TransformSource::Synthetic { seed } => Ok(synth_transforms(dimension, *seed)?),
            TransformSource::Directory(dir) => {
                Ok(TransformSet::load_dir(dir, dimension, functions)?)
            }
        }
    }
}

/// Algorithm parameters shared by every cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Parameters {
    pub population_size: usize,
    pub scaling_factor: f64,
    pub crossover_rate: f64,
    pub num_new_solutions: usize,
}

impl Default for Parameters {
    fn default() -> Self {
        Self {
            population_size: 50,
            scaling_factor: 0.5,
            crossover_rate: 0.9,
            num_new_solutions: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub functions: Vec<BaseFunction>,
    pub dims: Vec<usize>,
    pub algorithms: Vec<Algorithm>,
    pub runs: usize,
    pub seed: u64,
    pub budget_multiplier: u64,
    pub transforms: TransformSource,
    pub out: PathBuf,
    pub params: Parameters,
    /// Worker threads; 0 picks the number of available cores.
    pub workers: usize,
}

impl ExperimentPlan {
    pub fn validate(&self) -> Result<()> {
        if self.functions.is_empty() {
            return Err(HarnessError::usage("plan has no functions"));
        }
        if self.dims.is_empty() {
            return Err(HarnessError::usage("plan has no dimensions"));
        }
        if let Some(d) = self.dims.iter().find(|d| !SUPPORTED_DIMS.contains(d)) {
            return Err(HarnessError::usage(format!(
                "dimension {d} not supported (choose from {SUPPORTED_DIMS:?})"
            )));
        }
        if self.algorithms.is_empty() {
            return Err(HarnessError::usage("plan has no algorithms"));
        }
        if self.runs < 2 {
            return Err(HarnessError::usage(format!(
                "runs per cell must be at least 2, got {}",
                self.runs
            )));
        }
        if self.budget_multiplier == 0 {
            return Err(HarnessError::usage("budget multiplier must be positive"));
        }
        // surfaces parameter errors before any work starts
        self.config_for(self.dims[0], 0)?.validate()?;
        Ok(())
    }

    pub fn budget(&self, dimension: usize) -> u64 {
        self.budget_multiplier * dimension as u64
    }

    pub fn config_for(&self, dimension: usize, seed: u64) -> Result<AlgorithmConfig> {
        Ok(AlgorithmConfig {
            population_size: self.params.population_size,
            scaling_factor: self.params.scaling_factor,
            crossover_rate: self.params.crossover_rate,
            num_new_solutions: self.params.num_new_solutions,
            nfe_max: self.budget(dimension),
            dimension,
            seed,
            bounds: Bounds::uniform(dimension, -100.0, 100.0)?,
        })
    }
}

/// Seed of one run. Depends only on the root seed and the cell coordinates.
pub fn run_seed(
    root: u64,
    function: BaseFunction,
    dimension: usize,
    algorithm: Algorithm,
    run: usize,
) -> u64 {
    derive_seed(
        root,
        &[
            u64::from(function.id()),
            dimension as u64,
            algorithm.code(),
            run as u64,
        ],
    )
}

/// Plan fields as read from a config file or from flags, before defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PlanSettings {
    pub functions: Option<Vec<BaseFunction>>,
    pub dims: Option<Vec<usize>>,
    pub algorithms: Option<Vec<Algorithm>>,
    pub runs: Option<usize>,
    pub seed: Option<u64>,
    pub budget_multiplier: Option<u64>,
    pub transforms: Option<TransformSource>,
    pub out: Option<PathBuf>,
    pub population_size: Option<usize>,
    pub scaling_factor: Option<f64>,
    pub crossover_rate: Option<f64>,
    pub num_new_solutions: Option<usize>,
    pub workers: Option<usize>,
}

fn parse_number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| HarnessError::usage(format!("invalid value `{value}` for `{key}`")))
}

fn parse_list<T>(value: &str, item: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(item)
        .collect()
}

pub fn parse_functions(value: &str) -> Result<Vec<BaseFunction>> {
    if value.trim().eq_ignore_ascii_case("all") {
        return Ok(BaseFunction::ALL.to_vec());
    }
    parse_list(value, |s| {
        BaseFunction::parse(s)
            .ok_or_else(|| HarnessError::usage(format!("unknown function `{s}` (F1-F10)")))
    })
}

pub fn parse_dims(value: &str) -> Result<Vec<usize>> {
    parse_list(value, |s| parse_number("dims", s))
}

pub fn parse_algorithms(value: &str) -> Result<Vec<Algorithm>> {
    parse_list(value, |s| {
        s.parse::<Algorithm>()
            .map_err(|e| HarnessError::usage(e.to_string()))
    })
}

impl PlanSettings {
    pub fn parse_config(text: &str) -> Result<Self> {
        let mut settings = PlanSettings::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                HarnessError::usage(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            settings.set(key.trim(), value.trim())?;
        }
        Ok(settings)
    }

    pub fn read_config(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::parse_config(&text).map_err(|e| match e {
            HarnessError::Usage(msg) => HarnessError::usage(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.replace('-', "_").as_str() {
            "functions" => self.functions = Some(parse_functions(value)?),
            "dims" => self.dims = Some(parse_dims(value)?),
            "algos" | "algorithms" => self.algorithms = Some(parse_algorithms(value)?),
            "runs" => self.runs = Some(parse_number(key, value)?),
            "seed" => self.seed = Some(parse_number(key, value)?),
            "budget_multiplier" => self.budget_multiplier = Some(parse_number(key, value)?),
            "transforms" => self.transforms = Some(TransformSource::parse(value)?),
            "out" => self.out = Some(PathBuf::from(value)),
            "population_size" | "pop_size" => {
                self.population_size = Some(parse_number(key, value)?)
            }
            "scaling_factor" | "f" => self.scaling_factor = Some(parse_number(key, value)?),
            "crossover_rate" | "cr" => self.crossover_rate = Some(parse_number(key, value)?),
            "num_new_solutions" | "m" => self.num_new_solutions = Some(parse_number(key, value)?),
            "workers" => self.workers = Some(parse_number(key, value)?),
            other => return Err(HarnessError::usage(format!("unknown setting `{other}`"))),
        }
        Ok(())
    }

    /// Fields set in `other` replace those in `self`.
    pub fn overridden_by(self, other: PlanSettings) -> Self {
        PlanSettings {
            functions: other.functions.or(self.functions),
            dims: other.dims.or(self.dims),
            algorithms: other.algorithms.or(self.algorithms),
            runs: other.runs.or(self.runs),
            seed: other.seed.or(self.seed),
            budget_multiplier: other.budget_multiplier.or(self.budget_multiplier),
            transforms: other.transforms.or(self.transforms),
            out: other.out.or(self.out),
            population_size: other.population_size.or(self.population_size),
            scaling_factor: other.scaling_factor.or(self.scaling_factor),
            crossover_rate: other.crossover_rate.or(self.crossover_rate),
            num_new_solutions: other.num_new_solutions.or(self.num_new_solutions),
            workers: other.workers.or(self.workers),
        }
    }

    pub fn into_plan(self) -> Result<ExperimentPlan> {
        let defaults = Parameters::default();
        let plan = ExperimentPlan {
            functions: self.functions.unwrap_or_else(|| BaseFunction::ALL.to_vec()),
            dims: self.dims.unwrap_or_else(|| vec![30]),
            algorithms: self.algorithms.unwrap_or_else(|| Algorithm::ALL.to_vec()),
            runs: self.runs.unwrap_or(DEFAULT_RUNS),
            seed: self.seed.unwrap_or(1),
            budget_multiplier: self.budget_multiplier.unwrap_or(DEFAULT_BUDGET_MULTIPLIER),
            transforms: self.transforms.unwrap_or(TransformSource::Synthetic {
                seed: DEFAULT_SYNTHETIC_SEED,
            }),
            out: self.out.unwrap_or_else(|| PathBuf::from("results")),
            params: Parameters {
                population_size: self.population_size.unwrap_or(defaults.population_size),
                scaling_factor: self.scaling_factor.unwrap_or(defaults.scaling_factor),
                crossover_rate: self.crossover_rate.unwrap_or(defaults.crossover_rate),
                num_new_solutions: self.num_new_solutions.unwrap_or(defaults.num_new_solutions),
            },
            workers: self.workers.unwrap_or(0),
        };
        plan.validate()?;
        Ok(plan)
    }
}

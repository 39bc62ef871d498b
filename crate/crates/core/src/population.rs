//! Individuals, populations, search bounds and evaluation bookkeeping.

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// A function to minimise over R^D.
///
/// Implementations must be pure: the harness evaluates the same objective
/// from several runs at once.
pub trait Objective {
    fn name(&self) -> &str;
    fn evaluate(&self, x: &[f64]) -> f64;
}

impl<T: Objective + ?Sized> Objective for &T {
    fn name(&self) -> &str {
        (**self).name()
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        (**self).evaluate(x)
    }
}

/// Adapts a closure into an [`Objective`].
pub struct FnObjective<F> {
    name: String,
    f: F,
}

impl<F: Fn(&[f64]) -> f64> FnObjective<F> {
    pub fn new(name: impl Into<String>, f: F) -> Self {
        Self {
            name: name.into(),
            f,
        }
    }
}

impl<F: Fn(&[f64]) -> f64> Objective for FnObjective<F> {
    fn name(&self) -> &str {
        &self.name
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }
}

/// Counts true objective calls for budget accounting.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalCounter {
    count: u64,
}

impl EvalCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> u64 {
        self.count
    }
}

/// A candidate solution. The objective value stays `None` until evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    position: Vec<f64>,
    value: Option<f64>,
}

impl Individual {
    pub fn new(position: Vec<f64>) -> Self {
        Self {
            position,
            value: None,
        }
    }

    /// An individual with a known objective value, e.g. for constructed test
    /// instances. The value must be finite.
    pub fn with_value(position: Vec<f64>, value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::config(format!(
                "individual value must be finite, got {value}"
            )));
        }
        Ok(Self {
            position,
            value: Some(value),
        })
    }

    pub fn position(&self) -> &[f64] {
        &self.position
    }

    pub fn into_position(self) -> Vec<f64> {
        self.position
    }

    pub fn dimension(&self) -> usize {
        self.position.len()
    }

    pub fn value(&self) -> Option<f64> {
        self.value
    }

    pub fn is_evaluated(&self) -> bool {
        self.value.is_some()
    }

    /// The objective value, or [`Error::Unevaluated`].
    pub fn fitness(&self) -> Result<f64> {
        self.value.ok_or(Error::Unevaluated)
    }
}

/// Fixed-size ordered collection of individuals.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub members: Vec<Individual>,
    pub generation: u64,
}

impl Population {
    pub fn new(members: Vec<Individual>) -> Self {
        Self {
            members,
            generation: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn values(&self) -> Result<Vec<f64>> {
        self.members.iter().map(Individual::fitness).collect()
    }

    /// Index of the lowest objective value; ties go to the lowest index.
    pub fn best_index(&self) -> Result<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (i, ind) in self.members.iter().enumerate() {
            let v = ind.fitness()?;
            if best.is_none_or(|(_, b)| v < b) {
                best = Some((i, v));
            }
        }
        best.map(|(i, _)| i)
            .ok_or_else(|| Error::config("population is empty"))
    }

    pub fn best(&self) -> Result<&Individual> {
        Ok(&self.members[self.best_index()?])
    }
}

/// Axis-aligned search box.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::config(format!(
                "bounds length mismatch: {} lower vs {} upper",
                lower.len(),
                upper.len()
            )));
        }
        for (j, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::config(format!(
                    "bounds for coordinate {j} must satisfy lower < upper, got [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval on every coordinate.
    pub fn uniform(dimension: usize, lower: f64, upper: f64) -> Result<Self> {
        Self::new(vec![lower; dimension], vec![upper; dimension])
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, position: &[f64]) -> bool {
        position.len() == self.dimension()
            && position
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(x, (lo, hi))| lo <= x && x <= hi)
    }
}

/// Every parameter of a single optimisation run.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmConfig {
    pub population_size: usize,
    pub scaling_factor: f64,
    pub crossover_rate: f64,
    pub num_new_solutions: usize,
    pub nfe_max: u64,
    pub dimension: usize,
    pub seed: u64,
    pub bounds: Bounds,
}

impl AlgorithmConfig {
    /// N_P = 50, F = 0.5, CR = 0.9, M = 10, NFE_max = 3000 * D on [-100, 100]^D.
    pub fn standard(dimension: usize, seed: u64) -> Result<Self> {
        Ok(Self {
            population_size: 50,
            scaling_factor: 0.5,
            crossover_rate: 0.9,
            num_new_solutions: 10,
            nfe_max: 3000 * dimension as u64,
            dimension,
            seed,
            bounds: Bounds::uniform(dimension, -100.0, 100.0)?,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.dimension == 0 {
            return Err(Error::config("dimension must be positive"));
        }
        if self.bounds.dimension() != self.dimension {
            return Err(Error::config(format!(
                "bounds have {} coordinates but dimension is {}",
                self.bounds.dimension(),
                self.dimension
            )));
        }
        if self.population_size < 4 {
            return Err(Error::config(format!(
                "population size must be at least 4, got {}",
                self.population_size
            )));
        }
        if self.num_new_solutions == 0 || self.num_new_solutions > self.population_size {
            return Err(Error::config(format!(
                "number of new solutions must lie in [1, {}], got {}",
                self.population_size, self.num_new_solutions
            )));
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return Err(Error::config(format!(
                "crossover rate must lie in [0, 1], got {}",
                self.crossover_rate
            )));
        }
        if !self.scaling_factor.is_finite() {
            return Err(Error::config("scaling factor must be finite"));
        }
        if self.nfe_max == 0 {
            return Err(Error::config("evaluation budget must be positive"));
        }
        Ok(())
    }
}

/// Draws `N_P` unevaluated individuals uniformly from the search box.
pub fn initialize_population(config: &AlgorithmConfig, rng: &mut RngStream) -> Result<Population> {
    config.validate()?;
    let lower = config.bounds.lower();
    let upper = config.bounds.upper();
    let members = (0..config.population_size)
        .map(|_| {
            let position = lower
                .iter()
                .zip(upper)
                .map(|(&lo, &hi)| rng.uniform_in(lo, hi))
                .collect();
            Individual::new(position)
        })
        .collect();
    Ok(Population::new(members))
}

/// Clamps every coordinate into the box.
pub fn repair(mut position: Vec<f64>, bounds: &Bounds) -> Vec<f64> {
    for (x, (&lo, &hi)) in position
        .iter_mut()
        .zip(bounds.lower().iter().zip(bounds.upper()))
    {
        *x = x.clamp(lo, hi);
    }
    position
}

/// Evaluates `ind` and charges one call to `counter`.
///
/// The call is counted even when the objective returns a non-finite value.
pub fn evaluate_and_count<O: Objective + ?Sized>(
    f: &O,
    mut ind: Individual,
    counter: &mut EvalCounter,
) -> Result<Individual> {
    let value = f.evaluate(&ind.position);
    counter.count += 1;
    if !value.is_finite() {
        return Err(Error::Evaluation {
            function: f.name().to_string(),
            position: ind.position,
            value,
        });
    }
    ind.value = Some(value);
    Ok(ind)
}

/// Evaluates every unevaluated member in index order.
pub fn evaluate_population<O: Objective + ?Sized>(
    f: &O,
    pop: &mut Population,
    counter: &mut EvalCounter,
) -> Result<()> {
    for slot in pop.members.iter_mut() {
        if !slot.is_evaluated() {
            let ind = std::mem::replace(slot, Individual::new(Vec::new()));
            *slot = evaluate_and_count(f, ind, counter)?;
        }
    }
    Ok(())
}

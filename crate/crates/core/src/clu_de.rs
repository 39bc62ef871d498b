//! Clustering-based mutation and the population update that merges its
//! offspring back into the population, wired into the full Clu-DE loop.
//!
//! Each generation runs a regular DE sweep, clusters the population with
//! k-means (k drawn from `[2, sqrt(N_P)]`), takes the best member of the
//! cluster with the lowest mean objective value as the base vector, and
//! creates `M` offspring `winner + F * (x_i1 - x_i2)`. `M` random incumbents
//! then compete with those offspring, and the best `M` of the union occupy
//! the incumbents' slots.
//!
//! Every true evaluation is charged to the budget, so one generation costs
//! `N_P + M` evaluations.

use crate::clustering::{cluster_best, kmeans, pick_k, winner_cluster, DEFAULT_MAX_ITERS};
use crate::de::{de_generation, differential};
use crate::error::{Error, Result};
use crate::population::{
    evaluate_and_count, evaluate_population, initialize_population, repair, AlgorithmConfig,
    EvalCounter, Individual, Objective, Population,
};
use crate::rng::RngStream;
use crate::trace::{RunResult, RunTrace};

/// Offspring of the clustering-based mutation, all evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct CluOffspringSet {
    pub members: Vec<Individual>,
}

/// Population slots whose incumbents compete with the offspring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplacementSet {
    pub indices: Vec<usize>,
}

/// Creates `M` offspring around `winner`, each from a fresh pair of distinct
/// random members. No crossover is applied.
pub fn clustering_mutation<O: Objective + ?Sized>(
    winner: &Individual,
    pop: &Population,
    config: &AlgorithmConfig,
    rng: &mut RngStream,
    f: &O,
    counter: &mut EvalCounter,
) -> Result<CluOffspringSet> {
    let m = config.num_new_solutions;
    if m == 0 {
        return Err(Error::config("clustering mutation needs M >= 1"));
    }
    if pop.len() < 3 {
        return Err(Error::config(format!(
            "clustering mutation needs at least 3 individuals, got {}",
            pop.len()
        )));
    }
    let mut members = Vec::with_capacity(m);
    for _ in 0..m {
        let pair = rng.distinct_indices(pop.len(), 2, &[]);
        let position = differential(
            winner.position(),
            pop.members[pair[0]].position(),
            pop.members[pair[1]].position(),
            config.scaling_factor,
        );
        let position = repair(position, &config.bounds);
        members.push(evaluate_and_count(f, Individual::new(position), counter)?);
    }
    Ok(CluOffspringSet { members })
}

/// Draws `M` distinct slots as the replacement set, then applies
/// [`apply_replacement`].
pub fn gpba_update(
    pop: &mut Population,
    offspring: CluOffspringSet,
    rng: &mut RngStream,
) -> Result<ReplacementSet> {
    let m = offspring.members.len();
    if m > pop.len() {
        return Err(Error::config(format!(
            "{m} offspring exceed population size {}",
            pop.len()
        )));
    }
    let replacement = ReplacementSet {
        indices: rng.distinct_indices(pop.len(), m, &[]),
    };
    apply_replacement(pop, offspring, &replacement)?;
    Ok(replacement)
}

/// Keeps the best `M` of offspring plus the incumbents at `replacement`.
///
/// Ranking is by objective value, offspring before incumbents at equal
/// value, then by lower index. Surviving incumbents keep their own slots;
/// surviving offspring fill the vacated slots in ascending slot order.
/// Members outside the replacement set are never touched.
pub fn apply_replacement(
    pop: &mut Population,
    offspring: CluOffspringSet,
    replacement: &ReplacementSet,
) -> Result<()> {
    let m = offspring.members.len();
    if replacement.indices.len() != m {
        return Err(Error::config(format!(
            "replacement set has {} slots for {m} offspring",
            replacement.indices.len()
        )));
    }
    let mut slots = replacement.indices.clone();
    slots.sort_unstable();
    if slots.windows(2).any(|w| w[0] == w[1]) || slots.last().is_some_and(|&s| s >= pop.len()) {
        return Err(Error::config(
            "replacement slots must be distinct and in range",
        ));
    }

    // (value, is_incumbent, index)
    let mut ranked: Vec<(f64, bool, usize)> = Vec::with_capacity(2 * m);
    for (j, child) in offspring.members.iter().enumerate() {
        ranked.push((child.fitness()?, false, j));
    }
    for &slot in &slots {
        ranked.push((pop.members[slot].fitness()?, true, slot));
    }
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    ranked.truncate(m);

    let kept: Vec<usize> = ranked.iter().filter(|r| r.1).map(|r| r.2).collect();
    let vacated = slots.iter().filter(|s| !kept.contains(s));
    let mut children: Vec<Option<Individual>> = offspring.members.into_iter().map(Some).collect();
    let winners = ranked.iter().filter(|r| !r.1).map(|r| r.2);
    for (&slot, child) in vacated.zip(winners) {
        pop.members[slot] = children[child].take().expect("each offspring ranked once");
    }
    Ok(())
}

/// Runs Clu-DE until the evaluation budget is reached.
///
/// The budget is checked before each generation; the last one may overshoot
/// `nfe_max` by up to `N_P + M - 1` evaluations.
pub fn run_clu_de<O: Objective + ?Sized>(f: &O, config: &AlgorithmConfig) -> Result<RunResult> {
    let mut rng = RngStream::new(config.seed);
    let mut counter = EvalCounter::new();
    let mut pop = initialize_population(config, &mut rng)?;
    evaluate_population(f, &mut pop, &mut counter)?;

    let mut trace = RunTrace::new();
    trace.record(counter.count(), pop.best()?.fitness()?);
    while counter.count() < config.nfe_max {
        de_generation(&mut pop, f, config, &mut rng, &mut counter)?;
        clustering_step(&mut pop, f, config, &mut rng, &mut counter)?;
        pop.generation += 1;
        trace.record(counter.count(), pop.best()?.fitness()?);
    }

    Ok(RunResult {
        best: pop.best()?.clone(),
        trace,
        evaluations: counter.count(),
    })
}

/// Cluster, pick the winner, generate `M` offspring and merge them.
pub fn clustering_step<O: Objective + ?Sized>(
    pop: &mut Population,
    f: &O,
    config: &AlgorithmConfig,
    rng: &mut RngStream,
    counter: &mut EvalCounter,
) -> Result<ReplacementSet> {
    let k = pick_k(pop.len(), rng)?;
    let points: Vec<&[f64]> = pop.members.iter().map(Individual::position).collect();
    let clusters = kmeans(&points, k, rng, DEFAULT_MAX_ITERS)?;
    let cluster = winner_cluster(&clusters, &pop.values()?)?;
    let winner = cluster_best(&clusters, pop, cluster)?.1.clone();
    let offspring = clustering_mutation(&winner, pop, config, rng, f, counter)?;
    gpba_update(pop, offspring, rng)
}

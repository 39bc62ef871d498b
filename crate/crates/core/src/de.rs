//! DE/rand/1/bin: mutation, binomial crossover, greedy selection and the
//! steady-state generation sweep.

use crate::error::{Error, Result};
use crate::population::{
    evaluate_and_count, evaluate_population, initialize_population, repair, AlgorithmConfig,
    EvalCounter, Individual, Objective, Population,
};
use crate::rng::RngStream;
use crate::trace::{RunResult, RunTrace};

#[derive(Debug, Clone, PartialEq)]
pub struct MutantVector(pub Vec<f64>);

#[derive(Debug, Clone, PartialEq)]
pub struct TrialVector(pub Vec<f64>);

/// Three mutually distinct parent indices, all different from `target`.
pub fn draw_rand1_parents(
    population_size: usize,
    target: usize,
    rng: &mut RngStream,
) -> Result<[usize; 3]> {
    if population_size < 4 {
        return Err(Error::config(format!(
            "rand/1 mutation needs at least 4 individuals, got {population_size}"
        )));
    }
    if target >= population_size {
        return Err(Error::config(format!(
            "target index {target} out of range for population of {population_size}"
        )));
    }
    let picked = rng.distinct_indices(population_size, 3, &[target]);
    Ok([picked[0], picked[1], picked[2]])
}

/// `base + scale * (plus - minus)`, component-wise.
pub fn differential(base: &[f64], plus: &[f64], minus: &[f64], scale: f64) -> Vec<f64> {
    base.iter()
        .zip(plus.iter().zip(minus))
        .map(|(b, (p, m))| b + scale * (p - m))
        .collect()
}

/// `x_r1 + F * (x_r2 - x_r3)` with random distinct parents that exclude the target.
pub fn mutate_rand1(
    pop: &Population,
    target: usize,
    scaling_factor: f64,
    rng: &mut RngStream,
) -> Result<MutantVector> {
    let [r1, r2, r3] = draw_rand1_parents(pop.len(), target, rng)?;
    Ok(MutantVector(differential(
        pop.members[r1].position(),
        pop.members[r2].position(),
        pop.members[r3].position(),
        scaling_factor,
    )))
}

/// Binomial crossover. Draws `j_rand` first, then one uniform per coordinate;
/// coordinate `j` comes from the mutant iff `u_j <= CR` or `j == j_rand`.
pub fn binomial_crossover(
    parent: &[f64],
    mutant: &MutantVector,
    crossover_rate: f64,
    rng: &mut RngStream,
) -> TrialVector {
    assert_eq!(
        parent.len(),
        mutant.0.len(),
        "parent and mutant lengths differ"
    );
    let j_rand = rng.index(parent.len());
    TrialVector(
        parent
            .iter()
            .zip(&mutant.0)
            .enumerate()
            .map(|(j, (&x, &v))| {
                let u = rng.uniform();
                if u <= crossover_rate || j == j_rand {
                    v
                } else {
                    x
                }
            })
            .collect(),
    )
}

/// Keeps the trial only if it is strictly better; ties keep the parent.
pub fn select(parent: Individual, trial: Individual) -> Result<Individual> {
    if trial.fitness()? < parent.fitness()? {
        Ok(trial)
    } else {
        Ok(parent)
    }
}

/// One DE sweep over every target in index order.
///
/// Survivors are written back immediately, so later targets may draw
/// already-replaced members as parents. Consumes exactly `N_P` evaluations.
/// The population's generation counter is left to the caller.
pub fn de_generation<O: Objective + ?Sized>(
    pop: &mut Population,
    f: &O,
    config: &AlgorithmConfig,
    rng: &mut RngStream,
    counter: &mut EvalCounter,
) -> Result<()> {
    for i in 0..pop.len() {
        let mutant = mutate_rand1(pop, i, config.scaling_factor, rng)?;
        let mutant = MutantVector(repair(mutant.0, &config.bounds));
        let trial = binomial_crossover(
            pop.members[i].position(),
            &mutant,
            config.crossover_rate,
            rng,
        );
        let trial = evaluate_and_count(f, Individual::new(trial.0), counter)?;
        let parent = std::mem::replace(&mut pop.members[i], Individual::new(Vec::new()));
        pop.members[i] = select(parent, trial)?;
    }
    Ok(())
}

/// Runs standard DE until the evaluation budget is reached.
///
/// The budget is checked before each generation, so the final generation may
/// overshoot `nfe_max` by up to `N_P - 1` evaluations.
pub fn run_de<O: Objective + ?Sized>(f: &O, config: &AlgorithmConfig) -> Result<RunResult> {
    let mut rng = RngStream::new(config.seed);
    let mut counter = EvalCounter::new();
    let mut pop = initialize_population(config, &mut rng)?;
    evaluate_population(f, &mut pop, &mut counter)?;

    let mut trace = RunTrace::new();
    trace.record(counter.count(), pop.best()?.fitness()?);
    while counter.count() < config.nfe_max {
        de_generation(&mut pop, f, config, &mut rng, &mut counter)?;
        pop.generation += 1;
        trace.record(counter.count(), pop.best()?.fitness()?);
    }

    Ok(RunResult {
        best: pop.best()?.clone(),
        trace,
        evaluations: counter.count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::population::{Bounds, FnObjective};

    fn evaluated(points: &[(f64, f64)]) -> Population {
        Population::new(
            points
                .iter()
                .map(|&(x, y)| Individual::with_value(vec![x, y], x * x + y * y).unwrap())
                .collect(),
        )
    }

    #[test]
    fn differential_arithmetic() {
        assert_eq!(
            differential(&[0.0, 0.0], &[2.0, 2.0], &[0.0, 0.0], 0.5),
            vec![1.0, 1.0]
        );
        assert_eq!(
            differential(&[1.0, 2.0], &[3.0, 4.0], &[1.0, 0.0], 0.5),
            vec![2.0, 4.0]
        );
    }

    #[test]
    fn zero_scale_returns_base_parent() {
        let pop = evaluated(&[
            (1.0, 1.0),
            (2.0, 3.0),
            (-4.0, 5.0),
            (7.0, -8.0),
            (0.5, 0.25),
        ]);
        let mut rng = RngStream::new(4);
        for target in 0..pop.len() {
            let mut probe = rng.clone();
            let [r1, _, _] = draw_rand1_parents(pop.len(), target, &mut probe).unwrap();
            let mutant = mutate_rand1(&pop, target, 0.0, &mut rng).unwrap();
            assert_eq!(mutant.0, pop.members[r1].position());
        }
    }

    #[test]
    fn rand1_needs_four_members() {
        let pop = evaluated(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]);
        let err = mutate_rand1(&pop, 0, 0.5, &mut RngStream::new(0)).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn crossover_extremes() {
        let parent = vec![0.0; 8];
        let mutant = MutantVector(vec![1.0; 8]);
        let mut rng = RngStream::new(21);
        assert_eq!(
            binomial_crossover(&parent, &mutant, 1.0, &mut rng).0,
            mutant.0
        );
        for _ in 0..100 {
            let trial = binomial_crossover(&parent, &mutant, 0.0, &mut rng);
            assert_eq!(trial.0.iter().filter(|&&v| v == 1.0).count(), 1);
        }
    }

    #[test]
    fn crossover_jrand_is_drawn_first() {
        let parent = vec![0.0; 5];
        let mutant = MutantVector(vec![1.0; 5]);
        let mut rng = RngStream::new(8);
        let mut probe = rng.clone();
        let j_rand = probe.index(5);
        let trial = binomial_crossover(&parent, &mutant, 0.0, &mut rng);
        assert_eq!(trial.0[j_rand], 1.0);
    }

    #[test]
    fn selection_is_strict() {
        let ind = |v| Individual::with_value(vec![v], v).unwrap();
        assert_eq!(select(ind(2.0), ind(1.0)).unwrap().value(), Some(1.0));
        let kept = select(
            Individual::with_value(vec![0.0], 2.0).unwrap(),
            Individual::with_value(vec![9.0], 2.0).unwrap(),
        )
        .unwrap();
        assert_eq!(kept.position(), &[0.0]);
        assert_eq!(select(ind(2.0), ind(3.0)).unwrap().value(), Some(2.0));
        assert!(matches!(
            select(ind(1.0), Individual::new(vec![0.0])),
            Err(Error::Unevaluated)
        ));
    }

    #[test]
    fn generation_consumes_one_evaluation_per_member() {
        let f = FnObjective::new("sphere", |x: &[f64]| x.iter().map(|v| v * v).sum());
        let mut config = AlgorithmConfig::standard(6, 0).unwrap();
        config.population_size = 12;
        let mut rng = RngStream::new(0);
        let mut counter = EvalCounter::new();
        let mut pop = initialize_population(&config, &mut rng).unwrap();
        evaluate_population(&f, &mut pop, &mut counter).unwrap();
        let before = pop.values().unwrap();
        de_generation(&mut pop, &f, &config, &mut rng, &mut counter).unwrap();
        assert_eq!(counter.count(), 24);
        for (new, old) in pop.values().unwrap().iter().zip(&before) {
            assert!(new <= old);
        }
    }

    #[test]
    fn offspring_are_repaired() {
        let f = FnObjective::new("sphere", |x: &[f64]| x.iter().map(|v| v * v).sum());
        let mut config = AlgorithmConfig::standard(3, 0).unwrap();
        config.population_size = 8;
        config.num_new_solutions = 2;
        config.scaling_factor = 5.0;
        config.bounds = Bounds::uniform(3, -1.0, 1.0).unwrap();
        let mut rng = RngStream::new(3);
        let mut counter = EvalCounter::new();
        let mut pop = initialize_population(&config, &mut rng).unwrap();
        evaluate_population(&f, &mut pop, &mut counter).unwrap();
        for _ in 0..20 {
            de_generation(&mut pop, &f, &config, &mut rng, &mut counter).unwrap();
            assert!(pop
                .members
                .iter()
                .all(|m| config.bounds.contains(m.position())));
        }
    }

    #[test]
    fn budget_of_one_population_returns_initial_best() {
        let f = FnObjective::new("sphere", |x: &[f64]| x.iter().map(|v| v * v).sum());
        let mut config = AlgorithmConfig::standard(4, 5).unwrap();
        config.nfe_max = config.population_size as u64;
        let result = run_de(&f, &config).unwrap();

        let mut rng = RngStream::new(5);
        let mut counter = EvalCounter::new();
        let mut pop = initialize_population(&config, &mut rng).unwrap();
        evaluate_population(&f, &mut pop, &mut counter).unwrap();
        assert_eq!(result.best, *pop.best().unwrap());
        assert_eq!(result.evaluations, 50);
        assert_eq!(result.trace.len(), 1);
    }
}

use std::cell::Cell;

use clude_core::benchmarks::{BaseFunction, BenchmarkFunction, Transform};
use clude_core::clu_de::{
    apply_replacement, gpba_update, run_clu_de, CluOffspringSet, ReplacementSet,
};
use clude_core::de::run_de;
use clude_core::{AlgorithmConfig, Individual, Objective, Population, RngStream};
use proptest::prelude::*;

struct Counting<O> {
    inner: O,
    calls: Cell<u64>,
}

impl<O: Objective> Objective for Counting<O> {
    fn name(&self) -> &str {
        self.inner.name()
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        self.calls.set(self.calls.get() + 1);
        self.inner.evaluate(x)
    }
}

fn counting(base: BaseFunction, d: usize) -> Counting<BenchmarkFunction> {
    Counting {
        inner: BenchmarkFunction::standard(base, Transform::identity(d)).unwrap(),
        calls: Cell::new(0),
    }
}

fn valued(values: &[f64], offset: f64) -> Vec<Individual> {
    values
        .iter()
        .enumerate()
        .map(|(i, &v)| Individual::with_value(vec![offset + i as f64], v).unwrap())
        .collect()
}

/// Smallest possible sum over every M-subset of the union, found by
/// enumeration. The survivors must attain it.
fn brute_force_best_sum(pool: &[f64], m: usize) -> f64 {
    let n = pool.len();
    let mut best = f64::INFINITY;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == m {
            let s: f64 = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| pool[i])
                .sum();
            best = best.min(s);
        }
    }
    best
}

#[test]
fn survivors_are_the_best_m_of_the_union() {
    let mut rng = RngStream::new(4242);
    for instance in 0..1000 {
        let np = 4 + rng.index(17);
        let m = 1 + rng.index(np.min(6));
        let draw = |rng: &mut RngStream| f64::from(rng.int_inclusive(0, 12) as u32);
        let pop_values: Vec<f64> = (0..np).map(|_| draw(&mut rng)).collect();
        let child_values: Vec<f64> = (0..m).map(|_| draw(&mut rng)).collect();

        let mut pop = Population::new(valued(&pop_values, 0.0));
        let before = pop.clone();
        let offspring = CluOffspringSet {
            members: valued(&child_values, 1000.0),
        };
        let slots = gpba_update(&mut pop, offspring, &mut rng).unwrap();

        let mut sorted = slots.indices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), m, "instance {instance}");

        for i in 0..np {
            if !slots.indices.contains(&i) {
                assert_eq!(
                    pop.members[i], before.members[i],
                    "instance {instance} slot {i}"
                );
            }
        }

        let mut pool: Vec<f64> = slots.indices.iter().map(|&i| pop_values[i]).collect();
        pool.extend(&child_values);
        let survivors: Vec<f64> = slots
            .indices
            .iter()
            .map(|&i| pop.members[i].value().unwrap())
            .collect();
        let total: f64 = survivors.iter().sum();
        assert_eq!(total, brute_force_best_sum(&pool, m), "instance {instance}");

        let worst_kept = survivors.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut discarded = pool.clone();
        for s in &survivors {
            let pos = discarded.iter().position(|v| v == s).unwrap();
            discarded.remove(pos);
        }
        assert!(
            discarded.iter().all(|&d| worst_kept <= d),
            "instance {instance}"
        );
    }
}

#[test]
fn replacement_can_evict_the_global_best() {
    // The best member sits in B and M offspring beat or tie it: under the
    // union ranking it is discarded, so the update is not elitist.
    let mut pop = Population::new(valued(&[1.0, 5.0, 6.0, 7.0], 0.0));
    let offspring = CluOffspringSet {
        members: valued(&[1.0, 0.5], 100.0),
    };
    let slots = ReplacementSet {
        indices: vec![0, 3],
    };
    apply_replacement(&mut pop, offspring, &slots).unwrap();
    let positions: Vec<f64> = pop.members.iter().map(|m| m.position()[0]).collect();
    assert_eq!(positions, vec![101.0, 1.0, 2.0, 100.0]);
    assert_eq!(pop.values().unwrap(), vec![0.5, 5.0, 6.0, 1.0]);
}

#[test]
fn best_outside_the_replacement_set_always_survives() {
    let mut pop = Population::new(valued(&[0.0, 5.0, 6.0, 7.0], 0.0));
    let offspring = CluOffspringSet {
        members: valued(&[-1.0, -2.0], 100.0),
    };
    let slots = ReplacementSet {
        indices: vec![2, 3],
    };
    apply_replacement(&mut pop, offspring, &slots).unwrap();
    assert_eq!(pop.members[0].position(), &[0.0]);
    assert_eq!(pop.values().unwrap(), vec![0.0, 5.0, -2.0, -1.0]);
}

#[test]
fn evaluation_count_includes_clustering_offspring() {
    for (np, m, generations) in [(20usize, 5usize, 7u64), (50, 10, 3), (9, 9, 4), (4, 1, 10)] {
        let f = counting(BaseFunction::Rastrigin, 3);
        let mut config = AlgorithmConfig::standard(3, 5).unwrap();
        config.population_size = np;
        config.num_new_solutions = m;
        config.nfe_max = np as u64 + generations * (np + m) as u64;
        let result = run_clu_de(&f, &config).unwrap();
        assert_eq!(f.calls.get(), np as u64 + generations * (np + m) as u64);
        assert_eq!(result.evaluations, f.calls.get());
        assert_eq!(result.trace.len() as u64, generations + 1);
        let nfes: Vec<u64> = result.trace.points().iter().map(|p| p.nfe).collect();
        let expected: Vec<u64> = (0..=generations)
            .map(|g| np as u64 + g * (np + m) as u64)
            .collect();
        assert_eq!(nfes, expected);
    }
}

#[test]
fn budget_overshoot_is_below_one_generation() {
    let f = counting(BaseFunction::Levy, 4);
    let mut config = AlgorithmConfig::standard(4, 8).unwrap();
    config.nfe_max = 1001;
    let result = run_clu_de(&f, &config).unwrap();
    assert!(result.evaluations >= 1001);
    assert!(result.evaluations < 1001 + 60);
    assert_eq!(f.calls.get(), 50 + 16 * 60);

    let f = counting(BaseFunction::Levy, 4);
    config.nfe_max = 50;
    let result = run_clu_de(&f, &config).unwrap();
    assert_eq!(result.evaluations, 50);
    assert_eq!(result.trace.len(), 1);

    let f = counting(BaseFunction::Levy, 4);
    let de = run_de(&f, &config).unwrap();
    assert_eq!(de.evaluations, 50);
}

#[test]
fn run_is_reproducible_and_trace_monotone() {
    let f = BenchmarkFunction::standard(BaseFunction::Schwefel, Transform::identity(6)).unwrap();
    for seed in 0..10 {
        let mut config = AlgorithmConfig::standard(6, seed).unwrap();
        config.nfe_max = 6000;
        let a = run_clu_de(&f, &config).unwrap();
        let b = run_clu_de(&f, &config).unwrap();
        assert_eq!(a, b);
        assert!(a.trace.points().windows(2).all(|w| w[1].best <= w[0].best));
        assert!(config.bounds.contains(a.best.position()));
        assert_eq!(a.best.value(), Some(a.trace.last().unwrap().best));
    }
}

#[test]
fn different_seeds_give_different_runs() {
    let f = BenchmarkFunction::standard(BaseFunction::Rastrigin, Transform::identity(5)).unwrap();
    let mut config = AlgorithmConfig::standard(5, 1).unwrap();
    config.nfe_max = 2000;
    let a = run_clu_de(&f, &config).unwrap();
    config.seed = 2;
    let b = run_clu_de(&f, &config).unwrap();
    assert_ne!(a.best.position(), b.best.position());
}

proptest! {
    #[test]
    fn replacement_keeps_population_size_and_multiset(
        values in prop::collection::vec(-20i32..20, 4..16),
        children in prop::collection::vec(-20i32..20, 1..4),
        seed in any::<u64>(),
    ) {
        prop_assume!(children.len() <= values.len());
        let pop_values: Vec<f64> = values.into_iter().map(f64::from).collect();
        let child_values: Vec<f64> = children.into_iter().map(f64::from).collect();
        let mut pop = Population::new(valued(&pop_values, 0.0));
        let offspring = CluOffspringSet { members: valued(&child_values, 1000.0) };
        let slots = gpba_update(&mut pop, offspring, &mut RngStream::new(seed)).unwrap();
        prop_assert_eq!(pop.len(), pop_values.len());

        let mut union: Vec<f64> = pop_values.clone();
        union.extend(&child_values);
        for v in pop.values().unwrap() {
            prop_assert!(union.contains(&v));
        }
        let sum_before: f64 = slots.indices.iter().map(|&i| pop_values[i]).sum();
        let sum_after: f64 = slots.indices.iter().map(|&i| pop.members[i].value().unwrap()).sum();
        prop_assert!(sum_after <= sum_before);
    }
}

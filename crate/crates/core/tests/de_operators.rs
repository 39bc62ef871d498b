use clude_core::benchmarks::{BaseFunction, BenchmarkFunction, Transform};
use clude_core::de::{binomial_crossover, de_generation, draw_rand1_parents, run_de, MutantVector};
use clude_core::population::{evaluate_population, initialize_population, repair};
use clude_core::{AlgorithmConfig, Bounds, EvalCounter, FnObjective, Objective, RngStream};
use proptest::prelude::*;

#[test]
fn rand1_indices_always_distinct() {
    let mut rng = RngStream::new(2024);
    for draw in 0..100_000usize {
        let n = 4 + draw % 47;
        let target = draw % n;
        let [a, b, c] = draw_rand1_parents(n, target, &mut rng).unwrap();
        let mut all = [target, a, b, c];
        all.sort_unstable();
        assert!(all.windows(2).all(|w| w[0] != w[1]), "{target} {a} {b} {c}");
        assert!(a < n && b < n && c < n);
    }
}

#[test]
fn crossover_gene_count_matches_binomial() {
    // j_rand always comes from the mutant; each of the other D - 1 genes does
    // so with probability CR, so the count is 1 + Binomial(D - 1, CR).
    let d = 30;
    let cr = 0.9;
    let trials = 10_000;
    let parent = vec![0.0; d];
    let mutant = MutantVector(vec![1.0; d]);
    let mut rng = RngStream::new(99);
    let total: usize = (0..trials)
        .map(|_| {
            let trial = binomial_crossover(&parent, &mutant, cr, &mut rng);
            let count = trial.0.iter().filter(|&&v| v == 1.0).count();
            assert!(count >= 1);
            count
        })
        .sum();
    let mean = total as f64 / trials as f64;
    let expected = 1.0 + cr * (d - 1) as f64;
    let sigma_of_mean = ((d - 1) as f64 * cr * (1.0 - cr)).sqrt() / (trials as f64).sqrt();
    assert!(
        (mean - expected).abs() <= 3.0 * sigma_of_mean,
        "mean {mean} expected {expected} +- {}",
        3.0 * sigma_of_mean
    );
}

#[test]
fn zero_crossover_rate_keeps_exactly_one_mutant_gene() {
    let parent: Vec<f64> = (0..12).map(f64::from).collect();
    let mutant = MutantVector(parent.iter().map(|v| v + 100.0).collect());
    let mut rng = RngStream::new(5);
    for _ in 0..10_000 {
        let trial = binomial_crossover(&parent, &mutant, 0.0, &mut rng);
        let from_mutant = trial.0.iter().zip(&parent).filter(|(t, p)| t != p).count();
        assert_eq!(from_mutant, 1);
    }
}

proptest! {
    #[test]
    fn trial_components_come_from_parent_or_mutant(
        pairs in prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 1..40),
        cr in 0.0f64..=1.0,
        seed in any::<u64>(),
    ) {
        let parent: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let mutant = MutantVector(pairs.iter().map(|p| p.1).collect());
        let trial = binomial_crossover(&parent, &mutant, cr, &mut RngStream::new(seed));
        prop_assert_eq!(trial.0.len(), parent.len());
        let mut any_mutant = false;
        for (j, t) in trial.0.iter().enumerate() {
            prop_assert!(*t == parent[j] || *t == mutant.0[j]);
            any_mutant |= *t == mutant.0[j];
        }
        prop_assert!(any_mutant);
    }

    #[test]
    fn repair_lands_in_bounds_and_fixes_inside_points(
        xs in prop::collection::vec(-1e4f64..1e4, 1..20),
        half_width in 0.0f64..500.0,
    ) {
        let bounds = Bounds::uniform(xs.len(), -half_width, half_width).unwrap();
        let repaired = repair(xs.clone(), &bounds);
        prop_assert!(bounds.contains(&repaired));
        for (r, x) in repaired.iter().zip(&xs) {
            if x.abs() <= half_width {
                prop_assert_eq!(r, x);
            }
        }
        prop_assert_eq!(repair(repaired.clone(), &bounds), repaired);
    }
}

fn sphere() -> FnObjective<impl Fn(&[f64]) -> f64> {
    FnObjective::new("sphere", |x: &[f64]| x.iter().map(|v| v * v).sum())
}

/// Replays two DE generations on 4 individuals in 2-D with the documented
/// draw order, using only the raw stream primitives.
#[test]
fn hand_stepped_miniature_matches_run_de() {
    let seed = 314;
    let (np, d, f_scale, cr) = (4usize, 2usize, 0.5, 0.9);
    let value = |x: &[f64]| x[0] * x[0] + x[1] * x[1];

    let mut rng = RngStream::new(seed);
    let mut pop: Vec<Vec<f64>> = (0..np)
        .map(|_| (0..d).map(|_| rng.uniform_in(-100.0, 100.0)).collect())
        .collect();
    let mut vals: Vec<f64> = pop.iter().map(|x| value(x)).collect();
    let mut trace = vec![vals.iter().copied().fold(f64::INFINITY, f64::min)];

    for _gen in 0..2 {
        for i in 0..np {
            let mut pool: Vec<usize> = (0..np).filter(|&j| j != i).collect();
            for t in 0..3 {
                let j = t + rng.index(pool.len() - t);
                pool.swap(t, j);
            }
            let (r1, r2, r3) = (pool[0], pool[1], pool[2]);
            let v: Vec<f64> = (0..d)
                .map(|j| (pop[r1][j] + f_scale * (pop[r2][j] - pop[r3][j])).clamp(-100.0, 100.0))
                .collect();
            let j_rand = rng.index(d);
            let u: Vec<f64> = (0..d)
                .map(|j| {
                    let r = rng.uniform();
                    if r <= cr || j == j_rand {
                        v[j]
                    } else {
                        pop[i][j]
                    }
                })
                .collect();
            let fu = value(&u);
            if fu < vals[i] {
                pop[i] = u;
                vals[i] = fu;
            }
        }
        trace.push(vals.iter().copied().fold(f64::INFINITY, f64::min));
    }

    let mut config = AlgorithmConfig::standard(d, seed).unwrap();
    config.population_size = np;
    config.num_new_solutions = 1;
    config.nfe_max = (np * 3) as u64;
    let result = run_de(&sphere(), &config).unwrap();

    let got: Vec<f64> = result.trace.points().iter().map(|p| p.best).collect();
    assert_eq!(got, trace);
    let nfes: Vec<u64> = result.trace.points().iter().map(|p| p.nfe).collect();
    assert_eq!(nfes, vec![4, 8, 12]);
    let best = vals.iter().copied().fold(f64::INFINITY, f64::min);
    assert_eq!(result.best.value(), Some(best));
}

#[test]
fn de_improves_shifted_rastrigin_on_almost_every_seed() {
    let d = 10;
    let mut shift_rng = RngStream::new(7);
    let shift: Vec<f64> = (0..d).map(|_| shift_rng.uniform_in(-80.0, 80.0)).collect();
    let identity = Transform::identity(d);
    let transform = Transform::new(shift, identity.rotation().to_vec()).unwrap();
    let f = BenchmarkFunction::standard(BaseFunction::Rastrigin, transform).unwrap();

    let mut improved = 0;
    for seed in 0..100u64 {
        let mut config = AlgorithmConfig::standard(d, seed).unwrap();
        config.nfe_max = 50 * 101;
        let result = run_de(&f, &config).unwrap();
        let points = result.trace.points();
        assert_eq!(points.len(), 101);
        if points.last().unwrap().best < points[0].best {
            improved += 1;
        }
    }
    assert!(improved >= 99, "improved on {improved} of 100 seeds");
}

#[test]
fn sweeps_are_elitist_per_slot_and_traces_monotone() {
    let f = BenchmarkFunction::standard(BaseFunction::Schwefel, Transform::identity(5)).unwrap();
    for seed in 0..20 {
        let mut config = AlgorithmConfig::standard(5, seed).unwrap();
        config.population_size = 10;
        let mut rng = RngStream::new(seed);
        let mut counter = EvalCounter::new();
        let mut pop = initialize_population(&config, &mut rng).unwrap();
        evaluate_population(&f, &mut pop, &mut counter).unwrap();
        for _ in 0..30 {
            let before = pop.values().unwrap();
            de_generation(&mut pop, &f, &config, &mut rng, &mut counter).unwrap();
            for (a, b) in pop.values().unwrap().iter().zip(&before) {
                assert!(a <= b);
            }
        }
        assert_eq!(counter.count(), 10 * 31);

        config.nfe_max = 2000;
        let trace = run_de(&f, &config).unwrap().trace;
        assert!(trace.points().windows(2).all(|w| w[1].best <= w[0].best));
    }
}

#[test]
fn run_de_is_deterministic() {
    let f = BenchmarkFunction::standard(BaseFunction::Levy, Transform::identity(4)).unwrap();
    let mut config = AlgorithmConfig::standard(4, 11).unwrap();
    config.nfe_max = 3000;
    let a = run_de(&f, &config).unwrap();
    let b = run_de(&f, &config).unwrap();
    assert_eq!(a, b);
}

#[test]
fn bounds_respected_in_narrow_box() {
    let f = sphere();
    let mut config = AlgorithmConfig::standard(3, 2).unwrap();
    config.bounds = Bounds::new(vec![5.0, -1.0, 0.0], vec![6.0, 1.0, 0.5]).unwrap();
    config.nfe_max = 1000;
    let result = run_de(&f, &config).unwrap();
    assert!(config.bounds.contains(result.best.position()));
    assert!((result.best.value().unwrap() - f.evaluate(&[5.0, 0.0, 0.0])).abs() < 1.0);
}

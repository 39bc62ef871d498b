use std::path::PathBuf;

use clude_core::benchmarks::{BaseFunction, BenchmarkFunction};
use clude_core::{Algorithm, RunTrace};
use rayon::prelude::*;

use crate::convergence::{emit_convergence, ConvergenceTable};
use crate::error::{HarnessError, Result};
use crate::output::{
    compare_finals, finals_csv, summarize_finals, summary_csv, verdicts_csv, write_file, FinalRow,
    SummaryRow, VerdictRow,
};
use crate::plan::{run_seed, ExperimentPlan};

#[derive(Debug, Clone)]
pub struct RunRecord {
    pub function: BaseFunction,
    pub dim: usize,
    pub algorithm: Algorithm,
    pub run: usize,
    pub seed: u64,
    pub final_value: f64,
    pub evaluations: u64,
    pub trace: RunTrace,
}

#[derive(Debug, Clone)]
pub struct ExperimentResults {
    /// Ordered by dim, function, algorithm (plan order), then run.
    pub records: Vec<RunRecord>,
}

impl ExperimentResults {
    pub fn finals(&self) -> Vec<FinalRow> {
        self.records
            .iter()
            .map(|r| FinalRow {
                function: r.function,
                dim: r.dim,
                algorithm: r.algorithm,
                run: r.run,
                seed: r.seed,
                value: r.final_value,
            })
            .collect()
    }

    pub fn summaries(&self) -> Result<Vec<SummaryRow>> {
        summarize_finals(&self.finals())
    }

    pub fn verdicts(&self) -> Result<Vec<VerdictRow>> {
        compare_finals(&self.finals())
    }

    pub fn convergence(
        &self,
        function: BaseFunction,
        dim: usize,
        algorithms: &[Algorithm],
    ) -> Result<ConvergenceTable> {
        let series: Vec<(Algorithm, Vec<&RunTrace>)> = algorithms
            .iter()
            .map(|&alg| {
                let traces = self
                    .records
                    .iter()
                    .filter(|r| r.function == function && r.dim == dim && r.algorithm == alg)
                    .map(|r| &r.trace)
                    .collect();
                (alg, traces)
            })
            .collect();
        emit_convergence(&series)
    }
}

/// Runs every (dim, function, algorithm, run) of the plan.
///
/// Runs execute on a pool of `plan.workers` threads. Each run's seed comes
/// from its coordinates alone, so results do not depend on scheduling.
pub fn execute(plan: &ExperimentPlan) -> Result<ExperimentResults> {
    plan.validate()?;

    let mut problems: Vec<(usize, BenchmarkFunction)> = Vec::new();
    for &dim in &plan.dims {
        let set = plan.transforms.load(dim, &plan.functions)?;
        for &f in &plan.functions {
            problems.push((dim, set.function(f)?));
        }
    }

    let mut tasks = Vec::new();
    for (p, (dim, f)) in problems.iter().enumerate() {
        for &alg in &plan.algorithms {
            for run in 0..plan.runs {
                tasks.push((p, alg, run, run_seed(plan.seed, f.base(), *dim, alg, run)));
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(plan.workers)
        .build()
        .map_err(|e| HarnessError::usage(format!("cannot start worker pool: {e}")))?;

    let records = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(p, algorithm, run, seed)| {
                let (dim, f) = &problems[p];
                let config = plan.config_for(*dim, seed)?;
                let result = algorithm.run(f, &config)?;
                Ok(RunRecord {
                    function: f.base(),
                    dim: *dim,
                    algorithm,
                    run,
                    seed,
                    final_value: result.best.fitness()?,
                    evaluations: result.evaluations,
                    trace: result.trace,
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;

    Ok(ExperimentResults { records })
}

/// Paths written by [`write_outputs`].
#[derive(Debug, Clone)]
pub struct Artifacts {
    pub summary: PathBuf,
    pub verdicts: PathBuf,
    pub finals: PathBuf,
    pub traces: Vec<PathBuf>,
}

pub fn write_outputs(plan: &ExperimentPlan, results: &ExperimentResults) -> Result<Artifacts> {
    let out = &plan.out;
    std::fs::create_dir_all(out).map_err(|e| HarnessError::io(out, e))?;

    let finals = results.finals();
    let artifacts = Artifacts {
        summary: out.join("summary.csv"),
        verdicts: out.join("verdicts.csv"),
        finals: out.join("finals.csv"),
        traces: plan
            .dims
            .iter()
            .flat_map(|&d| {
                plan.functions
                    .iter()
                    .map(move |f| out.join("traces").join(format!("{f}_D{d}.csv")))
            })
            .collect(),
    };
    write_file(
        &artifacts.summary,
        &summary_csv(&summarize_finals(&finals)?),
    )?;
    write_file(
        &artifacts.verdicts,
        &verdicts_csv(&compare_finals(&finals)?),
    )?;
    write_file(&artifacts.finals, &finals_csv(&finals))?;

    let mut paths = artifacts.traces.iter();
    for &dim in &plan.dims {
        for &f in &plan.functions {
            let table = results.convergence(f, dim, &plan.algorithms)?;
            write_file(paths.next().expect("one path per cell"), &table.to_csv())?;
        }
    }
    Ok(artifacts)
}

/// Executes the plan and writes every artifact into `plan.out`.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<(ExperimentResults, Artifacts)> {
    let results = execute(plan)?;
    let artifacts = write_outputs(plan, &results)?;
    Ok((results, artifacts))
}

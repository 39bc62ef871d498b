use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use clude_core::benchmarks::{synth_transforms, BaseFunction};
use clude_harness::output::{
    compare_finals, read_finals, render_report, summarize_finals, verdicts_csv, write_file,
};
use clude_harness::plan::{parse_algorithms, parse_dims, parse_functions, TransformSource};
use clude_harness::{run_experiment, HarnessError, PlanSettings, Result};

#[derive(Parser)]
#[command(
    name = "clude",
    version,
    about = "Compare DE and Clu-DE on shifted and rotated benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute an experiment plan and write CSV artifacts.
    Run(Box<RunArgs>),
    /// Recompute verdicts from the finals.csv of an earlier run.
    Compare {
        /// Directory containing finals.csv.
        #[arg(long)]
        input: PathBuf,
        /// Where to write verdicts.csv (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the built-in benchmark functions.
    ListFunctions,
    /// Write synthetic transforms as data files.
    GenTransforms {
        #[arg(long, default_value = "10,30,50,100")]
        dims: String,
        #[arg(long, default_value_t = clude_harness::plan::DEFAULT_SYNTHETIC_SEED)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Config file with `key = value` lines.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated ids (F1-F10) or `all`.
    #[arg(long)]
    functions: Option<String>,
    /// Comma-separated dimensions from {10, 30, 50, 100}.
    #[arg(long)]
    dims: Option<String>,
    /// Comma-separated algorithms: de, clu_de.
    #[arg(long)]
    algos: Option<String>,
    #[arg(long)]
    runs: Option<usize>,
    /// Root seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Evaluation budget is this multiple of the dimension.
    #[arg(long)]
    budget_multiplier: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// `synthetic`, `synthetic:<seed>`, or a directory of F<id>_D<dim>.txt files.
    #[arg(long)]
    transforms: Option<String>,
    #[arg(long)]
    pop_size: Option<usize>,
    #[arg(long = "scaling-factor")]
    scaling_factor: Option<f64>,
    #[arg(long = "crossover-rate")]
    crossover_rate: Option<f64>,
    /// Offspring per generation from the clustering-based mutation.
    #[arg(long = "new-solutions")]
    new_solutions: Option<usize>,
    /// Worker threads (0 = all cores).
    #[arg(long)]
    workers: Option<usize>,
}

impl RunArgs {
    fn settings(&self) -> Result<PlanSettings> {
        let file = match &self.config {
            Some(path) => PlanSettings::read_config(path)?,
            None => PlanSettings::default(),
        };
        let flags = PlanSettings {
            functions: self.functions.as_deref().map(parse_functions).transpose()?,
            dims: self.dims.as_deref().map(parse_dims).transpose()?,
            algorithms: self.algos.as_deref().map(parse_algorithms).transpose()?,
            runs: self.runs,
            seed: self.seed,
            budget_multiplier: self.budget_multiplier,
            transforms: self
                .transforms
                .as_deref()
                .map(TransformSource::parse)
                .transpose()?,
            out: self.out.clone(),
            population_size: self.pop_size,
            scaling_factor: self.scaling_factor,
            crossover_rate: self.crossover_rate,
            num_new_solutions: self.new_solutions,
            workers: self.workers,
        };
        Ok(file.overridden_by(flags))
    }
}

fn run(args: RunArgs) -> Result<()> {
    let plan = args.settings()?.into_plan()?;
    eprintln!(
        "running {} functions x {:?} dims x {} algorithms x {} runs",
        plan.functions.len(),
        plan.dims,
        plan.algorithms.len(),
        plan.runs
    );
    let (results, artifacts) = run_experiment(&plan)?;
    print!(
        "{}",
        render_report(&results.summaries()?, &results.verdicts()?)
    );
    eprintln!("wrote {}", artifacts.summary.display());
    eprintln!("wrote {}", artifacts.verdicts.display());
    eprintln!("wrote {}", artifacts.finals.display());
    eprintln!(
        "wrote {} trace files under {}",
        artifacts.traces.len(),
        plan.out.join("traces").display()
    );
    Ok(())
}

fn compare(input: PathBuf, out: Option<PathBuf>) -> Result<()> {
    let finals = read_finals(&input.join("finals.csv"))?;
    let verdicts = compare_finals(&finals)?;
    match out {
        Some(dir) => {
            let path = dir.join("verdicts.csv");
            write_file(&path, &verdicts_csv(&verdicts))?;
            print!("{}", render_report(&summarize_finals(&finals)?, &verdicts));
            eprintln!("wrote {}", path.display());
        }
        None => print!("{}", verdicts_csv(&verdicts)),
    }
    Ok(())
}

fn gen_transforms(dims: &str, seed: u64, out: PathBuf) -> Result<()> {
    for dim in parse_dims(dims)? {
        let set = synth_transforms(dim, seed)?;
        let written = set.write_dir(&out).map_err(|e| HarnessError::Io {
            path: out.clone(),
            source: e,
        })?;
        eprintln!(
            "D={dim}: wrote {} files to {}",
            written.len(),
            out.display()
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match cli.command {
        Command::Run(args) => run(*args),
        Command::Compare { input, out } => compare(input, out),
        Command::ListFunctions => {
            for f in BaseFunction::ALL {
                println!("{}\t{}\tbias {}", f.label(), f.name(), f.bias());
            }
            Ok(())
        }
        Command::GenTransforms { dims, seed, out } => gen_transforms(&dims, seed, out),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

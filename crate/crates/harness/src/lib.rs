//! Batch experiments comparing DE and Clu-DE: per-run seeds derived from
//! cell coordinates, summary and verdict tables, and convergence curves.

pub mod convergence;
pub mod error;
pub mod output;
pub mod plan;
pub mod runner;

pub use error::{HarnessError, Result};
pub use plan::{ExperimentPlan, PlanSettings, TransformSource};
pub use runner::{execute, run_experiment, write_outputs, ExperimentResults};

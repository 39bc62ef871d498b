//! Differential evolution with clustering-based mutation.
//!
//! The crate provides canonical DE/rand/1/bin ([`de`]), k-means over the
//! population ([`clustering`]), the clustering-based mutation and population
//! update ([`clu_de`]), shifted and rotated benchmark functions
//! ([`benchmarks`]) and the paired statistics used to compare runs
//! ([`stats`]).
//!
//! Every stochastic decision of a run is drawn from one [`RngStream`] seeded
//! by [`AlgorithmConfig::seed`], so a run is reproducible bit for bit.

pub mod benchmarks;
pub mod clu_de;
pub mod clustering;
pub mod de;
pub mod error;
pub mod population;
pub mod rng;
pub mod stats;
pub mod trace;

mod algorithm;

pub use algorithm::Algorithm;
pub use error::{Error, LoadError, Result};
pub use population::{
    AlgorithmConfig, Bounds, EvalCounter, FnObjective, Individual, Objective, Population,
};
pub use rng::{derive_seed, RngStream};
pub use trace::{RunResult, RunTrace, TracePoint};

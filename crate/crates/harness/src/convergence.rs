//! Mean best-so-far curves aligned on common evaluation counts.

use clude_core::{Algorithm, RunTrace};

use crate::error::{HarnessError, Result};
use crate::output::format_value;

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub algorithms: Vec<Algorithm>,
    /// `(nfe, mean best per algorithm)` in ascending `nfe`.
    pub rows: Vec<(u64, Vec<f64>)>,
}

impl ConvergenceTable {
    pub fn header(&self) -> String {
        let mut cols = vec!["nfe".to_string()];
        cols.extend(
            self.algorithms
                .iter()
                .map(|a| format!("{}_mean_best", a.id())),
        );
        cols.join(",")
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header();
        out.push('\n');
        for (nfe, values) in &self.rows {
            out.push_str(&nfe.to_string());
            for v in values {
                out.push(',');
                out.push_str(&format_value(*v));
            }
            out.push('\n');
        }
        out
    }
}

/// Averages traces per algorithm.
///
/// Checkpoints are the sample points of the algorithm with the fewest samples
/// per run (the one advancing in the largest evaluation steps). Every other
/// trace is read at those points by carrying its last value forward.
pub fn emit_convergence(series: &[(Algorithm, Vec<&RunTrace>)]) -> Result<ConvergenceTable> {
    if series.is_empty()
        || series
            .iter()
            .any(|(_, runs)| runs.is_empty() || runs.iter().any(|t| t.is_empty()))
    {
        return Err(HarnessError::usage(
            "convergence needs at least one non-empty trace per algorithm",
        ));
    }
    let (_, slowest) = series
        .iter()
        .min_by_key(|(_, runs)| runs[0].len())
        .expect("non-empty");
    let checkpoints: Vec<u64> = slowest[0].points().iter().map(|p| p.nfe).collect();

    let rows = checkpoints
        .iter()
        .map(|&nfe| {
            let means = series
                .iter()
                .map(|(_, runs)| {
                    let total: f64 = runs
                        .iter()
                        .map(|t| t.value_at(nfe).unwrap_or(t.points()[0].best))
                        .sum();
                    total / runs.len() as f64
                })
                .collect();
            (nfe, means)
        })
        .collect();

    Ok(ConvergenceTable {
        algorithms: series.iter().map(|(a, _)| *a).collect(),
        rows,
    })
}

//! CSV artifacts and the text report.
//!
//! * `summary.csv`: `function,dim,algorithm,runs,mean,stddev`
//! * `verdicts.csv`: `function,dim,verdict,W,threshold_or_p`
//! * `finals.csv`: `function,dim,algorithm,run,seed,final`
//! * `traces/F<id>_D<dim>.csv`: `nfe,<algo>_mean_best,...`
//!
//! Reals are written with 17 significant digits so they parse back to the
//! same bits.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use clude_core::benchmarks::BaseFunction;
use clude_core::stats::{summarize, wilcoxon_signed_rank, wtl_tally, ComparisonVerdict, Tally};
use clude_core::Algorithm;

use crate::error::{HarnessError, Result};

pub const SUMMARY_HEADER: &str = "function,dim,algorithm,runs,mean,stddev";
pub const VERDICT_HEADER: &str = "function,dim,verdict,W,threshold_or_p";
pub const FINALS_HEADER: &str = "function,dim,algorithm,run,seed,final";

/// Significance level of every comparison.
pub const ALPHA: f64 = 0.05;

pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct FinalRow {
    pub function: BaseFunction,
    pub dim: usize,
    pub algorithm: Algorithm,
    pub run: usize,
    pub seed: u64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub function: BaseFunction,
    pub dim: usize,
    pub algorithm: Algorithm,
    pub runs: usize,
    pub mean: f64,
    pub stddev: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerdictRow {
    pub function: BaseFunction,
    pub dim: usize,
    pub comparison: ComparisonVerdict,
}

type CellKey = (usize, BaseFunction, Algorithm);

fn group(finals: &[FinalRow]) -> BTreeMap<CellKey, Vec<&FinalRow>> {
    let mut cells: BTreeMap<CellKey, Vec<&FinalRow>> = BTreeMap::new();
    for row in finals {
        cells
            .entry((row.dim, row.function, row.algorithm))
            .or_default()
            .push(row);
    }
    for rows in cells.values_mut() {
        rows.sort_by_key(|r| r.run);
    }
    cells
}

/// One row per (dim, function, algorithm), ordered by those keys.
pub fn summarize_finals(finals: &[FinalRow]) -> Result<Vec<SummaryRow>> {
    group(finals)
        .into_iter()
        .map(|((dim, function, algorithm), rows)| {
            let values: Vec<f64> = rows.iter().map(|r| r.value).collect();
            let (mean, stddev) = summarize(&values)?;
            Ok(SummaryRow {
                function,
                dim,
                algorithm,
                runs: values.len(),
                mean,
                stddev,
            })
        })
        .collect()
}

/// Paired DE vs Clu-DE verdicts for every (dim, function) holding both.
/// Runs are paired by run index; `+` means Clu-DE is significantly lower.
pub fn compare_finals(finals: &[FinalRow]) -> Result<Vec<VerdictRow>> {
    let cells = group(finals);
    let mut out = Vec::new();
    for (&(dim, function, algorithm), de_rows) in &cells {
        if algorithm != Algorithm::De {
            continue;
        }
        let Some(clu_rows) = cells.get(&(dim, function, Algorithm::CluDe)) else {
            continue;
        };
        let de: Vec<f64> = de_rows.iter().map(|r| r.value).collect();
        let clu: Vec<f64> = clu_rows.iter().map(|r| r.value).collect();
        let result = wilcoxon_signed_rank(&de, &clu, ALPHA)?;
        out.push(VerdictRow {
            function,
            dim,
            comparison: ComparisonVerdict::from_test(function.label(), &result),
        });
    }
    Ok(out)
}

/// Wins/ties/losses of Clu-DE per dimension.
pub fn tallies(verdicts: &[VerdictRow]) -> BTreeMap<usize, Tally> {
    let mut by_dim: BTreeMap<usize, Vec<&ComparisonVerdict>> = BTreeMap::new();
    for v in verdicts {
        by_dim.entry(v.dim).or_default().push(&v.comparison);
    }
    by_dim
        .into_iter()
        .map(|(dim, vs)| (dim, wtl_tally(vs)))
        .collect()
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = format!("{SUMMARY_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.function.label(),
            r.dim,
            r.algorithm.id(),
            r.runs,
            format_value(r.mean),
            format_value(r.stddev)
        );
    }
    out
}

pub fn verdicts_csv(rows: &[VerdictRow]) -> String {
    let mut out = format!("{VERDICT_HEADER}\n");
    for r in rows {
        let threshold = r
            .comparison
            .threshold_or_p
            .map(format_value)
            .unwrap_or_else(|| "NA".to_string());
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.function.label(),
            r.dim,
            r.comparison.verdict.symbol(),
            format_value(r.comparison.statistic),
            threshold
        );
    }
    out
}

pub fn finals_csv(rows: &[FinalRow]) -> String {
    let mut out = format!("{FINALS_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.function.label(),
            r.dim,
            r.algorithm.id(),
            r.run,
            r.seed,
            format_value(r.value)
        );
    }
    out
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|e| HarnessError::io(parent, e))?;
    }
    std::fs::write(path, contents).map_err(|e| HarnessError::io(path, e))
}

fn malformed(path: &Path, reason: impl Into<String>) -> HarnessError {
    HarnessError::Malformed {
        path: path.to_path_buf(),
        reason: reason.into(),
    }
}

pub fn read_finals(path: &Path) -> Result<Vec<FinalRow>> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => HarnessError::io(path, io),
        other => malformed(path, format!("{other:?}")),
    })?;
    let headers = reader
        .headers()
        .map_err(|e| malformed(path, e.to_string()))?
        .iter()
        .collect::<Vec<_>>()
        .join(",");
    if headers != FINALS_HEADER {
        return Err(malformed(
            path,
            format!("expected header `{FINALS_HEADER}`, found `{headers}`"),
        ));
    }
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| malformed(path, e.to_string()))?;
        let line = i + 2;
        let field = |k: usize| record.get(k).unwrap_or("");
        let bad = |what: &str| {
            malformed(
                path,
                format!(
                    "line {line}: invalid {what} `{}`",
                    record.iter().collect::<Vec<_>>().join(",")
                ),
            )
        };
        rows.push(FinalRow {
            function: BaseFunction::parse(field(0)).ok_or_else(|| bad("function"))?,
            dim: field(1).parse().map_err(|_| bad("dim"))?,
            algorithm: field(2).parse().map_err(|_| bad("algorithm"))?,
            run: field(3).parse().map_err(|_| bad("run"))?,
            seed: field(4).parse().map_err(|_| bad("seed"))?,
            value: field(5).parse().map_err(|_| bad("final value"))?,
        });
    }
    Ok(rows)
}

/// Human-readable table in the layout `function | DE | Clu-DE | verdict`.
pub fn render_report(summaries: &[SummaryRow], verdicts: &[VerdictRow]) -> String {
    let mut out = String::new();
    let mut dims: Vec<usize> = summaries.iter().map(|s| s.dim).collect();
    dims.dedup();
    let tallies = tallies(verdicts);
    for dim in dims {
        let _ = writeln!(out, "D = {dim}");
        let _ = writeln!(
            out,
            "{:<8}{:<10}{:>14}{:>14}{:>8}",
            "function", "", "DE", "Clu-DE", "WSRT"
        );
        let mut functions: Vec<BaseFunction> = summaries
            .iter()
            .filter(|s| s.dim == dim)
            .map(|s| s.function)
            .collect();
        functions.dedup();
        for f in functions {
            let cell = |alg| {
                summaries
                    .iter()
                    .find(|s| s.dim == dim && s.function == f && s.algorithm == alg)
            };
            let verdict = verdicts
                .iter()
                .find(|v| v.dim == dim && v.function == f)
                .map(|v| v.comparison.verdict.symbol())
                .unwrap_or("");
            let show = |s: Option<&SummaryRow>, pick: fn(&SummaryRow) -> f64| {
                s.map(|s| format!("{:.2E}", pick(s)))
                    .unwrap_or_else(|| "-".into())
            };
            let (de, clu) = (cell(Algorithm::De), cell(Algorithm::CluDe));
            let _ = writeln!(
                out,
                "{:<8}{:<10}{:>14}{:>14}{:>8}",
                f.label(),
                "avg.",
                show(de, |s| s.mean),
                show(clu, |s| s.mean),
                verdict
            );
            let _ = writeln!(
                out,
                "{:<8}{:<10}{:>14}{:>14}",
                "",
                "std.dev.",
                show(de, |s| s.stddev),
                show(clu, |s| s.stddev)
            );
        }
        if let Some(t) = tallies.get(&dim) {
            let _ = writeln!(out, "wins/ties/losses for Clu-DE: {t}");
        }
        out.push('\n');
    }
    out
}

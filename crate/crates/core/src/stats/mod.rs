//! Run summaries, Wilcoxon comparison verdicts and win/tie/loss tallies.

mod wilcoxon;

pub use wilcoxon::{
    exact_critical_value, signed_rank_counts, wilcoxon_signed_rank, TestMethod, WilcoxonResult,
    EXACT_CRITICAL_05, EXACT_MAX_N,
};

use std::fmt;

use crate::error::{Error, Result};

/// Arithmetic mean and sample (n - 1) standard deviation.
pub fn summarize(values: &[f64]) -> Result<(f64, f64)> {
    if values.len() < 2 {
        return Err(Error::config(format!(
            "summary needs at least 2 values, got {}",
            values.len()
        )));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Ok((mean, var.sqrt()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub function: String,
    pub algorithm: String,
    pub values: Vec<f64>,
    pub mean: f64,
    pub stddev: f64,
}

impl RunSummary {
    pub fn new(
        function: impl Into<String>,
        algorithm: impl Into<String>,
        values: Vec<f64>,
    ) -> Result<Self> {
        let (mean, stddev) = summarize(&values)?;
        Ok(Self {
            function: function.into(),
            algorithm: algorithm.into(),
            values,
            mean,
            stddev,
        })
    }
}

/// Outcome for the second sample of a comparison: `Plus` means it is
/// significantly lower (better), `Minus` significantly higher.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Plus,
    Minus,
    Equal,
}

impl Verdict {
    pub fn symbol(self) -> &'static str {
        match self {
            Verdict::Plus => "+",
            Verdict::Minus => "-",
            Verdict::Equal => "=",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "+" => Some(Verdict::Plus),
            "-" => Some(Verdict::Minus),
            "=" => Some(Verdict::Equal),
            _ => None,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Verdict::Plus => Verdict::Minus,
            Verdict::Minus => Verdict::Plus,
            Verdict::Equal => Verdict::Equal,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonVerdict {
    pub function: String,
    pub verdict: Verdict,
    /// `min(W+, W-)`.
    pub statistic: f64,
    /// Exact critical value, or the two-sided p-value under the normal
    /// approximation. `None` when the sample is too small to ever reject.
    pub threshold_or_p: Option<f64>,
}

impl ComparisonVerdict {
    pub fn from_test(function: impl Into<String>, result: &WilcoxonResult) -> Self {
        Self {
            function: function.into(),
            verdict: result.verdict,
            statistic: result.statistic,
            threshold_or_p: result.threshold_or_p(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub wins: usize,
    pub ties: usize,
    pub losses: usize,
}

impl fmt::Display for Tally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}", self.wins, self.ties, self.losses)
    }
}

pub fn wtl_tally<'a>(verdicts: impl IntoIterator<Item = &'a ComparisonVerdict>) -> Tally {
    let mut t = Tally::default();
    for v in verdicts {
        match v.verdict {
            Verdict::Plus => t.wins += 1,
            Verdict::Equal => t.ties += 1,
            Verdict::Minus => t.losses += 1,
        }
    }
    t
}

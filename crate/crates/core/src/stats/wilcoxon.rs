use libm::erfc;

use super::Verdict;
use crate::error::{Error, Result};

/// Largest sample size decided with exact critical values.
pub const EXACT_MAX_N: usize = 25;

/// Two-sided 5% critical values of the signed-rank statistic for
/// n = 6..=25: reject when `min(W+, W-) <= value`. Below n = 6 no outcome
/// is significant at this level.
pub const EXACT_CRITICAL_05: [(usize, u32); 20] = [
    (6, 0),
    (7, 2),
    (8, 3),
    (9, 5),
    (10, 8),
    (11, 10),
    (12, 13),
    (13, 17),
    (14, 21),
    (15, 25),
    (16, 29),
    (17, 34),
    (18, 40),
    (19, 46),
    (20, 52),
    (21, 58),
    (22, 65),
    (23, 73),
    (24, 81),
    (25, 89),
];

/// Number of sign assignments of ranks 1..=n whose positive-rank sum is `s`,
/// for every `s` in `0..=n(n+1)/2`.
pub fn signed_rank_counts(n: usize) -> Vec<u64> {
    let max = n * (n + 1) / 2;
    let mut counts = vec![0u64; max + 1];
    counts[0] = 1;
    for rank in 1..=n {
        for s in (rank..=max).rev() {
            counts[s] += counts[s - rank];
        }
    }
    counts
}

/// Largest `t` with `P(W <= t) <= alpha / 2` under the null, from the exact
/// distribution. `None` when even `t = 0` is too likely.
pub fn exact_critical_value(n: usize, alpha: f64) -> Option<u32> {
    let counts = signed_rank_counts(n);
    let total = 2f64.powi(n as i32);
    let mut cumulative = 0u64;
    let mut critical = None;
    for (t, c) in counts.iter().enumerate() {
        cumulative += c;
        if cumulative as f64 / total <= alpha / 2.0 {
            critical = Some(t as u32);
        } else {
            break;
        }
    }
    critical
}

fn critical_value(n: usize, alpha: f64) -> Option<u32> {
    if alpha == 0.05 {
        EXACT_CRITICAL_05
            .iter()
            .find(|&&(m, _)| m == n)
            .map(|&(_, c)| c)
    } else {
        exact_critical_value(n, alpha)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestMethod {
    /// Compared against the exact critical value (`None` if no rejection is possible).
    Exact { critical: Option<u32> },
    /// Normal approximation with tie and continuity corrections.
    Normal { z: f64, p_value: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct WilcoxonResult {
    /// Non-zero differences used.
    pub n: usize,
    pub w_plus: f64,
    pub w_minus: f64,
    pub statistic: f64,
    pub method: TestMethod,
    pub significant: bool,
    pub verdict: Verdict,
}

impl WilcoxonResult {
    pub fn threshold_or_p(&self) -> Option<f64> {
        match self.method {
            TestMethod::Exact { critical } => critical.map(f64::from),
            TestMethod::Normal { p_value, .. } => Some(p_value),
        }
    }
}

/// Average ranks of `|d|`, 1-based, plus the tie-correction sum `sum(t^3 - t)`.
fn average_ranks(diffs: &[f64]) -> (Vec<f64>, f64) {
    let mut order: Vec<usize> = (0..diffs.len()).collect();
    order.sort_by(|&i, &j| diffs[i].abs().total_cmp(&diffs[j].abs()));
    let mut ranks = vec![0.0; diffs.len()];
    let mut tie_sum = 0.0;
    let mut start = 0;
    while start < order.len() {
        let key = diffs[order[start]].abs();
        let end = start
            + order[start..]
                .iter()
                .take_while(|&&i| diffs[i].abs() == key)
                .count();
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        let t = (end - start) as f64;
        tie_sum += t * t * t - t;
        start = end;
    }
    (ranks, tie_sum)
}

/// Two-sided paired Wilcoxon signed-rank test on `d_i = a_i - b_i`.
///
/// Zero differences are dropped and tied magnitudes share average ranks.
/// Up to 25 remaining pairs the statistic is compared with the exact
/// critical value; beyond that a normal approximation is used. The verdict
/// is from `b`'s point of view: `Plus` when `b` is significantly lower.
pub fn wilcoxon_signed_rank(a: &[f64], b: &[f64], alpha: f64) -> Result<WilcoxonResult> {
    if a.len() != b.len() {
        return Err(Error::config(format!(
            "paired samples differ in length: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::config(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let diffs: Vec<f64> = a
        .iter()
        .zip(b)
        .map(|(x, y)| x - y)
        .filter(|d| *d != 0.0)
        .collect();
    if diffs.iter().any(|d| d.is_nan()) {
        return Err(Error::config("samples contain NaN"));
    }
    let n = diffs.len();
    let (ranks, tie_sum) = average_ranks(&diffs);
    let (mut w_plus, mut w_minus) = (0.0, 0.0);
    for (d, r) in diffs.iter().zip(&ranks) {
        if *d > 0.0 {
            w_plus += r;
        } else {
            w_minus += r;
        }
    }
    let statistic = w_plus.min(w_minus);

    let (method, significant) = if n <= EXACT_MAX_N {
        let critical = critical_value(n, alpha);
        let significant = critical.is_some_and(|c| statistic <= f64::from(c));
        (TestMethod::Exact { critical }, significant)
    } else {
        let nf = n as f64;
        let mean = nf * (nf + 1.0) / 4.0;
        let var = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0 - tie_sum / 48.0;
        let z = ((statistic - mean).abs() - 0.5).max(0.0) / var.sqrt();
        let p_value = erfc(z / std::f64::consts::SQRT_2);
        (TestMethod::Normal { z, p_value }, p_value < alpha)
    };

    let verdict = if !significant {
        Verdict::Equal
    } else if w_plus > w_minus {
        Verdict::Plus
    } else {
        Verdict::Minus
    };
    Ok(WilcoxonResult {
        n,
        w_plus,
        w_minus,
        statistic,
        method,
        significant,
        verdict,
    })
}

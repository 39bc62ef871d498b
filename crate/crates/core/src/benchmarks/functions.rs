//! Base test functions, evaluated on the already shifted and rotated point.
//!
//! Several bases rescale their input first so that the [-100, 100] search
//! box maps onto each function's conventional domain (Rastrigin onto
//! [-5.12, 5.12], Rosenbrock onto [-2.048, 2.048], and so on). Every base
//! attains exactly 0 at the origin.

use std::f64::consts::{PI, TAU};
use std::sync::LazyLock;

pub fn bent_cigar(z: &[f64]) -> f64 {
    let tail: f64 = z[1..].iter().map(|v| v * v).sum();
    z[0] * z[0] + 1e6 * tail
}

/// `sum |z_i|^(i+1)` with 1-based `i`.
pub fn sum_diff_pow(z: &[f64]) -> f64 {
    z.iter()
        .enumerate()
        .map(|(i, v)| v.abs().powi(i as i32 + 2))
        .sum()
}

pub fn zakharov(z: &[f64]) -> f64 {
    let squares: f64 = z.iter().map(|v| v * v).sum();
    let weighted: f64 = z
        .iter()
        .enumerate()
        .map(|(i, v)| 0.5 * (i + 1) as f64 * v)
        .sum();
    squares + weighted.powi(2) + weighted.powi(4)
}

pub fn rosenbrock(z: &[f64]) -> f64 {
    let y: Vec<f64> = z.iter().map(|v| v * 0.02048 + 1.0).collect();
    y.windows(2)
        .map(|w| 100.0 * (w[0] * w[0] - w[1]).powi(2) + (w[0] - 1.0).powi(2))
        .sum()
}

fn raw_rastrigin(y: impl Iterator<Item = f64>) -> f64 {
    y.map(|v| v * v - 10.0 * (TAU * v).cos() + 10.0).sum()
}

pub fn rastrigin(z: &[f64]) -> f64 {
    raw_rastrigin(z.iter().map(|v| v * 0.0512))
}

fn schaffer_f6_pair(x: f64, y: f64) -> f64 {
    let r2 = x * x + y * y;
    let s = r2.sqrt().sin();
    0.5 + (s * s - 0.5) / (1.0 + 0.001 * r2).powi(2)
}

/// Schaffer's F6 summed over cyclically adjacent pairs.
pub fn expanded_schaffer_f6(z: &[f64]) -> f64 {
    let d = z.len();
    (0..d).map(|i| schaffer_f6_pair(z[i], z[(i + 1) % d])).sum()
}

/// Lunacek bi-Rastrigin with mu0 = 2.5, d = 1 and the dimension-dependent
/// `s`. Coordinates are not flipped by the sign of the shift vector.
pub fn lunacek_bi_rastrigin(z: &[f64]) -> f64 {
    const MU0: f64 = 2.5;
    const D: f64 = 1.0;
    let n = z.len() as f64;
    let s = 1.0 - 1.0 / (2.0 * (n + 20.0).sqrt() - 8.2);
    let mu1 = -((MU0 * MU0 - D) / s).sqrt();

    let t: Vec<f64> = z.iter().map(|v| v * 0.2).collect();
    let near: f64 = t.iter().map(|v| v * v).sum();
    let far: f64 = D * n + s * t.iter().map(|v| (v + MU0 - mu1).powi(2)).sum::<f64>();
    let ripple: f64 = t.iter().map(|v| 1.0 - (TAU * v).cos()).sum();
    near.min(far) + 10.0 * ripple
}

/// Rastrigin on a grid-snapped input: coordinates farther than 0.5 from the
/// optimum, measured in the rescaled Rastrigin domain, are rounded to the
/// nearest half-integer.
pub fn noncont_rastrigin(z: &[f64]) -> f64 {
    raw_rastrigin(z.iter().map(|v| {
        let y = v * 0.0512;
        if y.abs() > 0.5 {
            (2.0 * y + 0.5).floor() / 2.0
        } else {
            y
        }
    }))
}

/// Levy with `w_i = 1 + z_i / 4`, so the optimum sits at `z = 0`.
pub fn levy(z: &[f64]) -> f64 {
    let d = z.len();
    let w: Vec<f64> = z.iter().map(|v| 1.0 + v / 4.0).collect();
    // sin(pi * w) with w - 1 factored out, exact zero at the optimum
    let head = (PI * (z[0] / 4.0)).sin().powi(2);
    let middle: f64 = w[..d - 1]
        .iter()
        .map(|wi| (wi - 1.0).powi(2) * (1.0 + 10.0 * (PI * wi + 1.0).sin().powi(2)))
        .sum();
    let last = w[d - 1];
    let tail = (last - 1.0).powi(2) * (1.0 + (TAU * last).sin().powi(2));
    head + middle + tail
}

const SCHWEFEL_OPTIMUM: f64 = 420.968_746_227_503_6;

fn schwefel_term(y: f64, n: f64) -> f64 {
    if y > 500.0 {
        let r = 500.0 - y % 500.0;
        -r * r.sqrt().sin() + ((y - 500.0) / 100.0).powi(2) / n
    } else if y < -500.0 {
        let r = 500.0 - y.abs() % 500.0;
        r * r.sqrt().sin() + ((y + 500.0) / 100.0).powi(2) / n
    } else {
        -y * y.abs().sqrt().sin()
    }
}

// Value of -schwefel_term at the optimum, about 418.9829.
static SCHWEFEL_OFFSET: LazyLock<f64> =
    LazyLock::new(|| SCHWEFEL_OPTIMUM * SCHWEFEL_OPTIMUM.sqrt().sin());

/// Modified Schwefel with out-of-range folding and quadratic penalty.
pub fn schwefel(z: &[f64]) -> f64 {
    let n = z.len() as f64;
    let offset = *SCHWEFEL_OFFSET;
    z.iter()
        .map(|v| offset + schwefel_term(v * 10.0 + SCHWEFEL_OPTIMUM, n))
        .sum()
}

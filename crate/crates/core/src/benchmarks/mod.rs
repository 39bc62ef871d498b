//! Shifted and rotated benchmark functions F1-F10.
//!
//! A benchmark evaluates `base(R * (x - o)) + bias` where `o` is the shift
//! (the optimum), `R` an orthogonal rotation and `bias = 100 * id`.

mod functions;
mod transforms;

pub use functions::{
    bent_cigar, expanded_schaffer_f6, levy, lunacek_bi_rastrigin, noncont_rastrigin, rastrigin,
    rosenbrock, schwefel, sum_diff_pow, zakharov,
};
pub use transforms::{
    load_transform_file, orthogonality_deviation, random_rotation, synth_transforms,
    transform_file_name, write_transform_file, Provenance, Transform, TransformSet,
    ORTHOGONALITY_TOLERANCE,
};

use std::fmt;

use crate::error::{Error, Result};
use crate::population::Objective;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseFunction {
    BentCigar,
    SumDiffPow,
    Zakharov,
    Rosenbrock,
    Rastrigin,
    ExpandedSchafferF6,
    LunacekBiRastrigin,
    NonContRastrigin,
    Levy,
    Schwefel,
}

impl BaseFunction {
    pub const ALL: [BaseFunction; 10] = [
        BaseFunction::BentCigar,
        BaseFunction::SumDiffPow,
        BaseFunction::Zakharov,
        BaseFunction::Rosenbrock,
        BaseFunction::Rastrigin,
        BaseFunction::ExpandedSchafferF6,
        BaseFunction::LunacekBiRastrigin,
        BaseFunction::NonContRastrigin,
        BaseFunction::Levy,
        BaseFunction::Schwefel,
    ];

    /// Catalogue number, 1 to 10.
    pub fn id(self) -> u32 {
        Self::ALL.iter().position(|&b| b == self).expect("listed") as u32 + 1
    }

    pub fn from_id(id: u32) -> Option<Self> {
        id.checked_sub(1)
            .and_then(|i| Self::ALL.get(i as usize))
            .copied()
    }

    /// Parses `"F5"`, `"f5"` or `"5"`.
    pub fn parse(label: &str) -> Option<Self> {
        let digits = label
            .strip_prefix('F')
            .or_else(|| label.strip_prefix('f'))
            .unwrap_or(label);
        digits.parse().ok().and_then(Self::from_id)
    }

    pub fn label(self) -> String {
        format!("F{}", self.id())
    }

    pub fn name(self) -> &'static str {
        match self {
            BaseFunction::BentCigar => "Bent Cigar",
            BaseFunction::SumDiffPow => "Sum of Different Power",
            BaseFunction::Zakharov => "Zakharov",
            BaseFunction::Rosenbrock => "Rosenbrock",
            BaseFunction::Rastrigin => "Rastrigin",
            BaseFunction::ExpandedSchafferF6 => "Expanded Schaffer F6",
            BaseFunction::LunacekBiRastrigin => "Lunacek Bi-Rastrigin",
            BaseFunction::NonContRastrigin => "Non-Continuous Rastrigin",
            BaseFunction::Levy => "Levy",
            BaseFunction::Schwefel => "Schwefel",
        }
    }

    /// Standard bias, `100 * id`.
    pub fn bias(self) -> f64 {
        100.0 * self.id() as f64
    }

    /// Bases whose value is nonnegative everywhere, so the composed function
    /// never drops below its bias.
    pub fn is_nonnegative(self) -> bool {
        matches!(
            self,
            BaseFunction::BentCigar
                | BaseFunction::Zakharov
                | BaseFunction::Rastrigin
                | BaseFunction::NonContRastrigin
                | BaseFunction::Levy
        )
    }

    /// Evaluates the base on `z`. Panics if `z` has fewer than 2 coordinates.
    pub fn eval(self, z: &[f64]) -> f64 {
        assert!(z.len() >= 2, "base functions need at least 2 coordinates");
        match self {
            BaseFunction::BentCigar => bent_cigar(z),
            BaseFunction::SumDiffPow => sum_diff_pow(z),
            BaseFunction::Zakharov => zakharov(z),
            BaseFunction::Rosenbrock => rosenbrock(z),
            BaseFunction::Rastrigin => rastrigin(z),
            BaseFunction::ExpandedSchafferF6 => expanded_schaffer_f6(z),
            BaseFunction::LunacekBiRastrigin => lunacek_bi_rastrigin(z),
            BaseFunction::NonContRastrigin => noncont_rastrigin(z),
            BaseFunction::Levy => levy(z),
            BaseFunction::Schwefel => schwefel(z),
        }
    }

    pub fn try_eval(self, z: &[f64]) -> Result<f64> {
        if z.len() < 2 {
            return Err(Error::config(format!(
                "{} needs at least 2 coordinates, got {}",
                self.name(),
                z.len()
            )));
        }
        Ok(self.eval(z))
    }
}

impl fmt::Display for BaseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.id())
    }
}

/// A base function composed with a shift, a rotation and a bias.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkFunction {
    base: BaseFunction,
    transform: Transform,
    bias: f64,
    label: String,
}

impl BenchmarkFunction {
    pub fn new(base: BaseFunction, transform: Transform, bias: f64) -> Result<Self> {
        if transform.dimension() < 2 {
            return Err(Error::config(format!(
                "{} needs dimension >= 2, got {}",
                base.name(),
                transform.dimension()
            )));
        }
        let deviation = orthogonality_deviation(transform.rotation(), transform.dimension());
        if deviation > ORTHOGONALITY_TOLERANCE {
            return Err(Error::config(format!(
                "rotation for {base} is not orthogonal (deviation {deviation:e})"
            )));
        }
        Ok(Self {
            label: format!("{base} {}", base.name()),
            base,
            transform,
            bias,
        })
    }

    /// Uses the standard bias `100 * id`.
    pub fn standard(base: BaseFunction, transform: Transform) -> Result<Self> {
        Self::new(base, transform, base.bias())
    }

    pub fn base(&self) -> BaseFunction {
        self.base
    }

    pub fn transform(&self) -> &Transform {
        &self.transform
    }

    pub fn shift(&self) -> &[f64] {
        self.transform.shift()
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn dimension(&self) -> usize {
        self.transform.dimension()
    }

    pub fn try_evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dimension() {
            return Err(Error::config(format!(
                "{} expects {} coordinates, got {}",
                self.label,
                self.dimension(),
                x.len()
            )));
        }
        Ok(self.base.eval(&self.transform.apply(x)) + self.bias)
    }
}

impl Objective for BenchmarkFunction {
    fn name(&self) -> &str {
        &self.label
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        assert_eq!(
            x.len(),
            self.dimension(),
            "{} dimension mismatch",
            self.label
        );
        self.base.eval(&self.transform.apply(x)) + self.bias
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;

    #[test]
    fn ids_round_trip() {
        for base in BaseFunction::ALL {
            assert_eq!(BaseFunction::from_id(base.id()), Some(base));
            assert_eq!(BaseFunction::parse(&base.label()), Some(base));
        }
        assert_eq!(
            BaseFunction::parse("7"),
            Some(BaseFunction::LunacekBiRastrigin)
        );
        assert_eq!(BaseFunction::parse("F11"), None);
        assert_eq!(BaseFunction::parse("F0"), None);
        assert_eq!(BaseFunction::Schwefel.bias(), 1000.0);
    }

    #[test]
    fn one_dimension_rejected() {
        assert!(BaseFunction::Rosenbrock.try_eval(&[1.0]).is_err());
        assert!(
            BenchmarkFunction::standard(BaseFunction::Rastrigin, Transform::identity(1)).is_err()
        );
    }

    #[test]
    fn identity_composition_is_base() {
        let f =
            BenchmarkFunction::new(BaseFunction::Zakharov, Transform::identity(2), 0.0).unwrap();
        assert_eq!(f.evaluate(&[1.0, 1.0]), 9.3125);
    }

    #[test]
    fn optimum_attains_bias_for_every_base() {
        let set = synth_transforms(10, 3).unwrap();
        for base in BaseFunction::ALL {
            let f = set.function(base).unwrap();
            assert_eq!(f.evaluate(f.shift()), base.bias(), "{base}");
        }
    }

    #[test]
    fn inverse_transform_recovers_base_value() {
        let d = 6;
        let mut rng = RngStream::new(17);
        let rotation = random_rotation(d, &mut rng);
        let shift: Vec<f64> = (0..d).map(|_| rng.uniform_in(-80.0, 80.0)).collect();
        let transform = Transform::new(shift.clone(), rotation.clone()).unwrap();
        let f = BenchmarkFunction::new(BaseFunction::Rastrigin, transform, 500.0).unwrap();
        let z0: Vec<f64> = (0..d).map(|_| rng.uniform_in(-10.0, 10.0)).collect();
        // R^-1 = R^T for an orthogonal matrix
        let x: Vec<f64> = (0..d)
            .map(|j| shift[j] + (0..d).map(|i| rotation[i * d + j] * z0[i]).sum::<f64>())
            .collect();
        let expect = rastrigin(&z0) + 500.0;
        assert!((f.evaluate(&x) - expect).abs() < 1e-9 * expect.abs().max(1.0));
    }

    #[test]
    fn dimension_mismatch_is_config_error() {
        let f = BenchmarkFunction::standard(BaseFunction::Levy, Transform::identity(3)).unwrap();
        assert!(matches!(f.try_evaluate(&[0.0, 0.0]), Err(Error::Config(_))));
        assert_eq!(f.try_evaluate(&[0.0; 3]).unwrap(), 900.0);
    }

    #[test]
    fn rotation_does_not_move_optimum_value() {
        let a = synth_transforms(8, 1)
            .unwrap()
            .transform(BaseFunction::Schwefel)
            .unwrap()
            .clone();
        let b = synth_transforms(8, 2)
            .unwrap()
            .transform(BaseFunction::Schwefel)
            .unwrap()
            .clone();
        let rotated = Transform::new(a.shift().to_vec(), b.rotation().to_vec()).unwrap();
        let fa = BenchmarkFunction::standard(BaseFunction::Schwefel, a).unwrap();
        let fb = BenchmarkFunction::standard(BaseFunction::Schwefel, rotated).unwrap();
        assert_eq!(fa.evaluate(fa.shift()), fb.evaluate(fa.shift()));
    }
}

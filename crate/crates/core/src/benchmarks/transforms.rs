use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::{BaseFunction, BenchmarkFunction};
use crate::error::{Error, LoadError, Result};
use crate::rng::{derive_seed, RngStream};

/// Maximum allowed `|R * R^T - I|` entry.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-9;

const SHIFT_RANGE: f64 = 80.0;

/// Shift vector plus row-major orthogonal rotation for one function.
#[derive(Debug, Clone, PartialEq)]
pub struct Transform {
    shift: Vec<f64>,
    rotation: Vec<f64>,
}

impl Transform {
    pub fn new(shift: Vec<f64>, rotation: Vec<f64>) -> Result<Self> {
        let d = shift.len();
        if rotation.len() != d * d {
            return Err(Error::config(format!(
                "rotation has {} entries, expected {}",
                rotation.len(),
                d * d
            )));
        }
        Ok(Self { shift, rotation })
    }

    /// Zero shift and identity rotation.
    pub fn identity(dimension: usize) -> Self {
        let mut rotation = vec![0.0; dimension * dimension];
        for i in 0..dimension {
            rotation[i * dimension + i] = 1.0;
        }
        Self {
            shift: vec![0.0; dimension],
            rotation,
        }
    }

    pub fn dimension(&self) -> usize {
        self.shift.len()
    }

    pub fn shift(&self) -> &[f64] {
        &self.shift
    }

    pub fn rotation(&self) -> &[f64] {
        &self.rotation
    }

    /// `R * (x - shift)`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let d = self.dimension();
        let centered: Vec<f64> = x.iter().zip(&self.shift).map(|(a, o)| a - o).collect();
        self.rotation
            .chunks_exact(d)
            .map(|row| row.iter().zip(&centered).map(|(r, c)| r * c).sum())
            .collect()
    }
}

/// Largest entry of `|R * R^T - I|` for a row-major `d x d` matrix.
pub fn orthogonality_deviation(rotation: &[f64], d: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..d {
        let ri = &rotation[i * d..(i + 1) * d];
        for j in 0..d {
            let rj = &rotation[j * d..(j + 1) * d];
            let dot: f64 = ri.iter().zip(rj).map(|(a, b)| a * b).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).abs());
        }
    }
    worst
}

/// Random orthogonal matrix: Gaussian entries, rows orthonormalised by
/// modified Gram-Schmidt applied twice.
pub fn random_rotation(d: usize, rng: &mut RngStream) -> Vec<f64> {
    loop {
        let mut m: Vec<f64> = (0..d * d).map(|_| rng.standard_normal()).collect();
        if orthonormalize_rows(&mut m, d) {
            return m;
        }
    }
}

fn orthonormalize_rows(m: &mut [f64], d: usize) -> bool {
    for i in 0..d {
        for _pass in 0..2 {
            for j in 0..i {
                let (done, rest) = m.split_at_mut(i * d);
                let rj = &done[j * d..(j + 1) * d];
                let ri = &mut rest[..d];
                let dot: f64 = ri.iter().zip(rj).map(|(a, b)| a * b).sum();
                for (a, b) in ri.iter_mut().zip(rj) {
                    *a -= dot * b;
                }
            }
        }
        let row = &mut m[i * d..(i + 1) * d];
        let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return false;
        }
        for v in row.iter_mut() {
            *v /= norm;
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Synthetic { seed: u64 },
    External { dir: PathBuf },
}

/// Transforms for every built-in function at one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformSet {
    pub dimension: usize,
    pub provenance: Provenance,
    pub transforms: BTreeMap<BaseFunction, Transform>,
}

impl TransformSet {
    pub fn transform(&self, base: BaseFunction) -> Result<&Transform> {
        self.transforms.get(&base).ok_or_else(|| {
            Error::config(format!("no transform for {base} at D={}", self.dimension))
        })
    }

    pub fn function(&self, base: BaseFunction) -> Result<BenchmarkFunction> {
        BenchmarkFunction::standard(base, self.transform(base)?.clone())
    }

    /// Reads `F<id>_D<dim>.txt` for each requested base from `dir`.
    pub fn load_dir(dir: &Path, dimension: usize, bases: &[BaseFunction]) -> Result<Self> {
        let mut transforms = BTreeMap::new();
        for &base in bases {
            let path = dir.join(transform_file_name(base, dimension));
            transforms.insert(base, load_transform_file(&path, dimension)?);
        }
        Ok(Self {
            dimension,
            provenance: Provenance::External {
                dir: dir.to_path_buf(),
            },
            transforms,
        })
    }

    /// Writes one file per function into `dir`, returning the paths written.
    pub fn write_dir(&self, dir: &Path) -> std::io::Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        self.transforms
            .iter()
            .map(|(&base, t)| {
                let path = dir.join(transform_file_name(base, self.dimension));
                write_transform_file(&path, t)?;
                Ok(path)
            })
            .collect()
    }
}

pub fn transform_file_name(base: BaseFunction, dimension: usize) -> String {
    format!("F{}_D{}.txt", base.id(), dimension)
}

/// Seeded shifts in [-80, 80)^D and random rotations for F1-F10.
///
/// Each function draws from its own stream keyed by `(seed, id, D)`.
pub fn synth_transforms(dimension: usize, seed: u64) -> Result<TransformSet> {
    if dimension < 2 {
        return Err(Error::config(format!(
            "benchmark dimension must be at least 2, got {dimension}"
        )));
    }
    let transforms = BaseFunction::ALL
        .iter()
        .map(|&base| {
            let mut rng =
                RngStream::new(derive_seed(seed, &[u64::from(base.id()), dimension as u64]));
            let shift = (0..dimension)
                .map(|_| rng.uniform_in(-SHIFT_RANGE, SHIFT_RANGE))
                .collect();
            let rotation = random_rotation(dimension, &mut rng);
            (base, Transform { shift, rotation })
        })
        .collect();
    Ok(TransformSet {
        dimension,
        provenance: Provenance::Synthetic { seed },
        transforms,
    })
}

/// Parses whitespace-separated reals: `D` shift values, then the `D x D`
/// rotation in row-major order.
pub fn load_transform_file(path: &Path, dimension: usize) -> Result<Transform, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let values = text
        .split_whitespace()
        .enumerate()
        .map(|(index, token)| match token.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(LoadError::Parse {
                path: path.to_path_buf(),
                index,
                token: token.to_string(),
            }),
        })
        .collect::<Result<Vec<f64>, _>>()?;

    let expected = dimension + dimension * dimension;
    if values.len() != expected {
        return Err(LoadError::DimensionMismatch {
            path: path.to_path_buf(),
            dimension,
            expected,
            found: values.len(),
        });
    }
    let rotation = values[dimension..].to_vec();
    let deviation = orthogonality_deviation(&rotation, dimension);
    if deviation > ORTHOGONALITY_TOLERANCE {
        return Err(LoadError::NotOrthogonal {
            path: path.to_path_buf(),
            deviation,
        });
    }
    Ok(Transform {
        shift: values[..dimension].to_vec(),
        rotation,
    })
}

/// Writes a transform in the format read by [`load_transform_file`], with
/// 17 significant digits so values read back bit-exact.
pub fn write_transform_file(path: &Path, t: &Transform) -> std::io::Result<()> {
    let mut out = String::new();
    let line = |out: &mut String, row: &[f64]| {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    };
    line(&mut out, &t.shift);
    for row in t.rotation.chunks_exact(t.dimension()) {
        line(&mut out, row);
    }
    std::fs::write(path, out)
}

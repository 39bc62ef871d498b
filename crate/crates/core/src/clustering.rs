//! Lloyd's k-means over population positions and winner-cluster selection.

use crate::error::{Error, Result};
use crate::population::{Individual, Population};
use crate::rng::RngStream;

pub const DEFAULT_MAX_ITERS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    pub k: usize,
    /// Cluster index of each input point.
    pub assignments: Vec<usize>,
    pub centers: Vec<Vec<f64>>,
    /// Indices of the input points used as initial centers.
    pub seeds: Vec<usize>,
    /// Within-cluster sum of squares after each iteration.
    pub sse_history: Vec<f64>,
    /// Whether the assignments stabilised before the iteration cap.
    pub converged: bool,
}

impl Clustering {
    pub fn iterations(&self) -> usize {
        self.sse_history.len()
    }

    pub fn sse(&self) -> f64 {
        self.sse_history.last().copied().unwrap_or(0.0)
    }

    /// Point indices assigned to `cluster`, ascending.
    pub fn members(&self, cluster: usize) -> Vec<usize> {
        self.assignments
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == cluster)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &c in &self.assignments {
            sizes[c] += 1;
        }
        sizes
    }
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Uniform cluster count in `[2, floor(sqrt(N_P))]`.
pub fn pick_k(population_size: usize, rng: &mut RngStream) -> Result<usize> {
    if population_size < 4 {
        return Err(Error::config(format!(
            "cluster count needs a population of at least 4, got {population_size}"
        )));
    }
    Ok(rng.int_inclusive(2, population_size.isqrt()))
}

/// k-means seeded from `k` distinct input points chosen uniformly at random.
pub fn kmeans<P: AsRef<[f64]>>(
    points: &[P],
    k: usize,
    rng: &mut RngStream,
    max_iters: usize,
) -> Result<Clustering> {
    check_points(points)?;
    if k == 0 || k > points.len() {
        return Err(Error::config(format!(
            "cluster count {k} must lie in [1, {}]",
            points.len()
        )));
    }
    let seeds = rng.distinct_indices(points.len(), k, &[]);
    kmeans_from_seeds(points, &seeds, max_iters)
}

fn check_points<P: AsRef<[f64]>>(points: &[P]) -> Result<usize> {
    let dim = points
        .first()
        .map(|p| p.as_ref().len())
        .ok_or_else(|| Error::config("cannot cluster an empty point set"))?;
    if points.iter().any(|p| p.as_ref().len() != dim) {
        return Err(Error::config("points have inconsistent dimensions"));
    }
    Ok(dim)
}

/// Lloyd iterations from the given seed points.
///
/// Each iteration assigns every point to its nearest center (ties to the
/// lowest cluster index), refills any empty cluster, then moves centers to
/// member means. Stops once an assignment pass changes nothing, or after
/// `max_iters` iterations.
///
/// An empty cluster is reseeded at the point farthest from its own center,
/// taken only from clusters that keep at least one other member, so `k`
/// clusters stay non-empty.
pub fn kmeans_from_seeds<P: AsRef<[f64]>>(
    points: &[P],
    seeds: &[usize],
    max_iters: usize,
) -> Result<Clustering> {
    let dim = check_points(points)?;
    let k = seeds.len();
    if k == 0 || k > points.len() {
        return Err(Error::config(format!(
            "cluster count {k} must lie in [1, {}]",
            points.len()
        )));
    }
    if let Some(&bad) = seeds.iter().find(|&&s| s >= points.len()) {
        return Err(Error::config(format!("seed index {bad} out of range")));
    }
    let n = points.len();
    let mut centers: Vec<Vec<f64>> = seeds.iter().map(|&s| points[s].as_ref().to_vec()).collect();
    let mut assignments: Vec<usize> = vec![usize::MAX; n];
    let mut sse_history = Vec::new();
    let mut converged = false;

    for _ in 0..max_iters.max(1) {
        let mut next = Vec::with_capacity(n);
        let mut dist = Vec::with_capacity(n);
        for p in points {
            let (c, d) = nearest(p.as_ref(), &centers);
            next.push(c);
            dist.push(d);
        }
        refill_empty(points, &mut centers, &mut next, &mut dist);

        let changed = next != assignments;
        assignments = next;
        centers = member_means(points, &assignments, &centers, dim);
        sse_history.push(
            points
                .iter()
                .zip(&assignments)
                .map(|(p, &c)| squared_distance(p.as_ref(), &centers[c]))
                .sum(),
        );
        if !changed {
            converged = true;
            break;
        }
    }

    Ok(Clustering {
        k,
        assignments,
        centers,
        seeds: seeds.to_vec(),
        sse_history,
        converged,
    })
}

fn nearest(p: &[f64], centers: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (j, c) in centers.iter().enumerate() {
        let d = squared_distance(p, c);
        if d < best.1 {
            best = (j, d);
        }
    }
    best
}

fn refill_empty<P: AsRef<[f64]>>(
    points: &[P],
    centers: &mut [Vec<f64>],
    assignments: &mut [usize],
    dist: &mut [f64],
) {
    let k = centers.len();
    let mut sizes = vec![0usize; k];
    for &c in assignments.iter() {
        sizes[c] += 1;
    }
    for j in 0..k {
        if sizes[j] > 0 {
            continue;
        }
        // k <= n guarantees some cluster has two or more members here
        let donor = (0..points.len())
            .filter(|&i| sizes[assignments[i]] > 1)
            .fold(None::<usize>, |acc, i| match acc {
                Some(a) if dist[a] >= dist[i] => Some(a),
                _ => Some(i),
            })
            .expect("a cluster with spare members exists when k <= n");
        sizes[assignments[donor]] -= 1;
        sizes[j] = 1;
        assignments[donor] = j;
        dist[donor] = 0.0;
        centers[j] = points[donor].as_ref().to_vec();
    }
}

fn member_means<P: AsRef<[f64]>>(
    points: &[P],
    assignments: &[usize],
    previous: &[Vec<f64>],
    dim: usize,
) -> Vec<Vec<f64>> {
    let k = previous.len();
    let mut sums = vec![vec![0.0; dim]; k];
    let mut counts = vec![0usize; k];
    for (p, &c) in points.iter().zip(assignments) {
        counts[c] += 1;
        for (s, x) in sums[c].iter_mut().zip(p.as_ref()) {
            *s += x;
        }
    }
    sums.into_iter()
        .zip(counts)
        .zip(previous)
        .map(|((sum, count), prev)| {
            if count == 0 {
                prev.clone()
            } else {
                sum.into_iter().map(|s| s / count as f64).collect()
            }
        })
        .collect()
}

/// Cluster with the lowest mean objective value; ties go to the lowest index.
pub fn winner_cluster(clu: &Clustering, values: &[f64]) -> Result<usize> {
    if values.len() != clu.assignments.len() {
        return Err(Error::config(format!(
            "{} values for {} clustered points",
            values.len(),
            clu.assignments.len()
        )));
    }
    let mut sums = vec![0.0; clu.k];
    let mut counts = vec![0usize; clu.k];
    for (&c, &v) in clu.assignments.iter().zip(values) {
        sums[c] += v;
        counts[c] += 1;
    }
    let mut winner: Option<(usize, f64)> = None;
    for (j, (sum, count)) in sums.into_iter().zip(counts).enumerate() {
        if count == 0 {
            return Err(Error::EmptyCluster(j));
        }
        let mean = sum / count as f64;
        if winner.is_none_or(|(_, best)| mean < best) {
            winner = Some((j, mean));
        }
    }
    Ok(winner.expect("k >= 1").0)
}

/// Best member of `cluster`; ties go to the lowest population index.
/// Returns the population index together with the individual.
pub fn cluster_best<'a>(
    clu: &Clustering,
    pop: &'a Population,
    cluster: usize,
) -> Result<(usize, &'a Individual)> {
    let mut best: Option<(usize, f64)> = None;
    for i in clu.members(cluster) {
        let v = pop.members[i].fitness()?;
        if best.is_none_or(|(_, b)| v < b) {
            best = Some((i, v));
        }
    }
    let (i, _) = best.ok_or(Error::EmptyCluster(cluster))?;
    Ok((i, &pop.members[i]))
}

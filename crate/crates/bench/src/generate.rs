//! Seeded synthetic instances.

use std::str::FromStr;

use anyhow::{bail, Context, Result};
use kmlp::{Instance, MetricSpace, Millis, Request};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};

use crate::decimal::seconds_to_ms;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    /// `side x side` cells on an integer grid; travel time is the L2 distance
    /// times `cell_ms`, rounded to the millisecond and closed under shortest
    /// paths.
    EuclideanGrid { side: usize, cell_ms: Millis },
    /// `points` locations with every distance drawn from `[base_ms, 2 base_ms]`.
    UniformMetric { points: usize, base_ms: Millis },
}

impl Geometry {
    pub fn parse(name: &str, size: usize, scale_ms: Millis) -> Result<Self> {
        match name {
            "euclidean-grid" => Ok(Geometry::EuclideanGrid { side: size, cell_ms: scale_ms }),
            "uniform-metric" => Ok(Geometry::UniformMetric { points: size, base_ms: scale_ms }),
            _ => bail!("unknown geometry `{name}` (expected euclidean-grid or uniform-metric)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReleaseModel {
    Zero,
    /// Arrivals of a Poisson process with `rate` requests per second.
    Poisson { rate: f64 },
    /// Uniform integer milliseconds in `[start_ms, end_ms]`.
    Window { start_ms: Millis, end_ms: Millis },
}

impl FromStr for ReleaseModel {
    type Err = anyhow::Error;

    /// `zero`, `poisson:RATE` or `window:START:END` (seconds).
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["zero"] => Ok(ReleaseModel::Zero),
            ["poisson", rate] => {
                let rate: f64 = rate.parse().with_context(|| format!("bad rate `{rate}`"))?;
                if !(rate.is_finite() && rate > 0.0) {
                    bail!("poisson rate must be positive");
                }
                Ok(ReleaseModel::Poisson { rate })
            }
            ["window", a, b] => {
                let (start_ms, end_ms) = (seconds_to_ms(a)?, seconds_to_ms(b)?);
                if start_ms < 0 || end_ms < start_ms {
                    bail!("window must satisfy 0 <= start <= end");
                }
                Ok(ReleaseModel::Window { start_ms, end_ms })
            }
            _ => bail!("unknown release model `{s}` (expected zero, poisson:RATE or window:START:END)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenParams {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub geometry: Geometry,
    pub releases: ReleaseModel,
}

fn euclidean_grid(side: usize, cell_ms: Millis) -> MetricSpace {
    let cells: Vec<(i64, i64)> = (0..side * side).map(|c| ((c % side) as i64, (c / side) as i64)).collect();
    let names = cells.iter().map(|(x, y)| format!("g{x}-{y}")).collect();
    let matrix = cells
        .iter()
        .map(|&(ax, ay)| {
            cells
                .iter()
                .map(|&(bx, by)| {
                    let d = (((ax - bx).pow(2) + (ay - by).pow(2)) as f64).sqrt();
                    (d * cell_ms as f64).round() as Millis
                })
                .collect()
        })
        .collect();
    MetricSpace::new(names, matrix).expect("grid matrix is well formed").metric_closure()
}

fn uniform_metric(points: usize, base_ms: Millis, rng: &mut ChaCha8Rng) -> MetricSpace {
    let mut matrix = vec![vec![0; points]; points];
    for u in 0..points {
        for v in u + 1..points {
            let d = rng.random_range(base_ms..=2 * base_ms);
            matrix[u][v] = d;
            matrix[v][u] = d;
        }
    }
    MetricSpace::new((0..points).map(|u| format!("p{u}")).collect(), matrix).expect("well formed")
}

/// Deterministic instance for `params`.
pub fn generate(params: &GenParams) -> Result<Instance> {
    if params.k == 0 {
        bail!("k must be at least 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let metric = match params.geometry {
        Geometry::EuclideanGrid { side, cell_ms } => {
            if side == 0 || cell_ms <= 0 {
                bail!("grid side and cell time must be positive");
            }
            euclidean_grid(side, cell_ms)
        }
        Geometry::UniformMetric { points, base_ms } => {
            if points == 0 || base_ms <= 0 {
                bail!("point count and base distance must be positive");
            }
            uniform_metric(points, base_ms, &mut rng)
        }
    };
    let size = metric.len();
    if params.n > 0 && size < 2 {
        bail!("requests need at least two locations");
    }
    let depot = rng.random_range(0..size);
    let mut trips = Vec::with_capacity(params.n);
    for _ in 0..params.n {
        let s = rng.random_range(0..size);
        let mut d = rng.random_range(0..size - 1);
        if d >= s {
            d += 1;
        }
        trips.push((s, d));
    }
    let releases: Vec<Millis> = match params.releases {
        ReleaseModel::Zero => vec![0; params.n],
        ReleaseModel::Poisson { rate } => {
            let exp = Exp::new(rate).context("poisson rate")?;
            let mut t = 0.0;
            (0..params.n)
                .map(|_| {
                    t += exp.sample(&mut rng);
                    (t * 1000.0).round() as Millis
                })
                .collect()
        }
        ReleaseModel::Window { start_ms, end_ms } => {
            (0..params.n).map(|_| rng.random_range(start_ms..=end_ms)).collect()
        }
    };
    let width = params.n.to_string().len();
    let requests = trips
        .iter()
        .zip(&releases)
        .enumerate()
        .map(|(i, (&(s, d), &t))| Request::new(format!("t{i:0width$}"), s, d, t))
        .collect();
    Ok(Instance::new(metric, requests, vec![depot; params.k])?)
}

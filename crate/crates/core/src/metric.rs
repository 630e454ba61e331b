//! Distance matrices over named locations.
//!
//! All travel times are fixed-point integer milliseconds, so latency sums are
//! exact and ties compare exactly.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Travel time or timestamp in integer milliseconds.
pub type Millis = i64;

/// Slack allowed on the triangle inequality for ingested data.
pub const TRIANGLE_TOLERANCE_MS: Millis = 1;

/// One way a matrix fails to be a metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NonZeroDiagonal { u: usize, value: Millis },
    Negative { u: usize, v: usize, value: Millis },
    Asymmetric { u: usize, v: usize },
    /// `dist[u][w] > dist[u][via] + dist[via][w] + tol`.
    Triangle { u: usize, w: usize, via: usize, excess: Millis },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NonZeroDiagonal { u, value } => write!(f, "dist[{u}][{u}] = {value} != 0"),
            Violation::Negative { u, v, value } => write!(f, "dist[{u}][{v}] = {value} < 0"),
            Violation::Asymmetric { u, v } => write!(f, "dist[{u}][{v}] != dist[{v}][{u}]"),
            Violation::Triangle { u, w, via, excess } => {
                write!(f, "dist[{u}][{w}] exceeds the path via {via} by {excess}")
            }
        }
    }
}

/// Report every zero-diagonal, sign, symmetry and triangle violation of
/// `matrix` with the witnessing indices. Triangle checks are reported once
/// per unordered pair `u < w`.
pub fn validate_metric(matrix: &[Vec<Millis>], tol: Millis) -> Result<Vec<Violation>> {
    let n = matrix.len();
    check_square(matrix)?;
    let mut out = Vec::new();
    for u in 0..n {
        if matrix[u][u] != 0 {
            out.push(Violation::NonZeroDiagonal { u, value: matrix[u][u] });
        }
        for v in 0..n {
            if matrix[u][v] < 0 {
                out.push(Violation::Negative { u, v, value: matrix[u][v] });
            }
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if matrix[u][v] != matrix[v][u] {
                out.push(Violation::Asymmetric { u, v });
            }
        }
    }
    for u in 0..n {
        for w in u + 1..n {
            let direct = matrix[u][w];
            for via in 0..n {
                if via == u || via == w {
                    continue;
                }
                let excess = direct - (matrix[u][via] + matrix[via][w] + tol);
                if excess > 0 {
                    out.push(Violation::Triangle { u, w, via, excess });
                }
            }
        }
    }
    Ok(out)
}

fn check_square(matrix: &[Vec<Millis>]) -> Result<()> {
    let n = matrix.len();
    for (row, r) in matrix.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NonSquare { row, len: r.len(), expected: n });
        }
    }
    Ok(())
}

/// Symmetric travel-time matrix over opaque location ids.
///
/// Construction only checks shape, signs and id uniqueness; use
/// [`MetricSpace::violations`] for the metric axioms. [`crate::Instance`]
/// refuses matrices that break them by more than the tolerance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricSpace {
    locations: Vec<String>,
    index: HashMap<String, usize>,
    dist: Vec<Millis>,
}

impl MetricSpace {
    pub fn new(locations: Vec<String>, matrix: Vec<Vec<Millis>>) -> Result<Self> {
        check_square(&matrix)?;
        let n = matrix.len();
        if locations.len() != n {
            return Err(Error::NonSquare { row: locations.len(), len: locations.len(), expected: n });
        }
        let mut index = HashMap::with_capacity(n);
        for (i, loc) in locations.iter().enumerate() {
            if index.insert(loc.clone(), i).is_some() {
                return Err(Error::DuplicateLocation(loc.clone()));
            }
        }
        let mut dist = Vec::with_capacity(n * n);
        for (u, row) in matrix.into_iter().enumerate() {
            for (v, d) in row.into_iter().enumerate() {
                if d < 0 {
                    return Err(Error::NegativeDistance { u, v, value: d });
                }
                dist.push(d);
            }
        }
        Ok(Self { locations, index, dist })
    }

    /// Metric with locations named `"0"`, `"1"`, ...
    pub fn from_matrix(matrix: Vec<Vec<Millis>>) -> Result<Self> {
        let names = (0..matrix.len()).map(|i| i.to_string()).collect();
        Self::new(names, matrix)
    }

    pub fn len(&self) -> usize {
        self.locations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.locations.is_empty()
    }

    pub fn locations(&self) -> &[String] {
        &self.locations
    }

    pub fn name(&self, u: usize) -> &str {
        &self.locations[u]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Resolve a location id, failing with [`Error::UnknownLocation`].
    pub fn resolve(&self, id: &str) -> Result<usize> {
        self.index_of(id).ok_or_else(|| Error::UnknownLocation(id.to_string()))
    }

    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> Millis {
        self.dist[u * self.locations.len() + v]
    }

    pub fn contains(&self, u: usize) -> bool {
        u < self.locations.len()
    }

    pub fn to_matrix(&self) -> Vec<Vec<Millis>> {
        let n = self.len();
        (0..n).map(|u| self.dist[u * n..(u + 1) * n].to_vec()).collect()
    }

    pub fn violations(&self, tol: Millis) -> Vec<Violation> {
        validate_metric(&self.to_matrix(), tol).expect("square by construction")
    }

    /// All-pairs shortest paths (Floyd-Warshall) over the symmetrised matrix.
    /// The result satisfies the triangle inequality exactly.
    pub fn metric_closure(&self) -> MetricSpace {
        let n = self.len();
        let mut d = self.dist.clone();
        for u in 0..n {
            d[u * n + u] = 0;
            for v in u + 1..n {
                let m = d[u * n + v].min(d[v * n + u]);
                d[u * n + v] = m;
                d[v * n + u] = m;
            }
        }
        for via in 0..n {
            for u in 0..n {
                let du = d[u * n + via];
                for w in 0..n {
                    let cand = du + d[via * n + w];
                    if cand < d[u * n + w] {
                        d[u * n + w] = cand;
                    }
                }
            }
        }
        MetricSpace { locations: self.locations.clone(), index: self.index.clone(), dist: d }
    }
}

//! Concatenation graphs and lower envelopes.
//!
//! Nodes are candidate partial solutions `(coverage, weight)`. For coverages
//! `a < b` there is an arc of length `(n - (a + b) / 2) * w_b`; the shortest
//! path from the start node `(1, 0)` to a node of coverage `n` selects which
//! partial solutions to stitch together. Lengths are kept in half units so the
//! `/ 2` stays exact.

use crate::error::{Error, Result};

/// A candidate `(coverage, weight)` point. Weights are integers in whatever
/// unit the caller chose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConcatPoint {
    pub coverage: usize,
    pub weight: i64,
}

impl ConcatPoint {
    pub fn new(coverage: usize, weight: i64) -> Self {
        Self { coverage, weight }
    }
}

/// DAG over points sorted by `(coverage, weight, input index)`.
#[derive(Debug, Clone)]
pub struct ConcatGraph {
    n: usize,
    nodes: Vec<ConcatPoint>,
    /// Input index of each sorted node.
    origin: Vec<usize>,
    start: usize,
}

/// Path through a [`ConcatGraph`], as sorted node indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcatPath {
    pub nodes: Vec<usize>,
    /// Twice the path length.
    pub length_half: i128,
}

impl ConcatPath {
    pub fn length(&self) -> f64 {
        self.length_half as f64 / 2.0
    }
}

impl ConcatGraph {
    /// Build the graph. Needs a `(1, 0)` start point and coverages in `1..=n`.
    pub fn new(points: &[ConcatPoint], n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidConcatGraph("n must be positive".into()));
        }
        for p in points {
            if p.coverage == 0 || p.coverage > n {
                return Err(Error::InvalidConcatGraph(format!(
                    "coverage {} outside 1..={n}",
                    p.coverage
                )));
            }
            if p.weight < 0 {
                return Err(Error::InvalidConcatGraph(format!("negative weight {}", p.weight)));
            }
        }
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by_key(|&i| (points[i].coverage, points[i].weight, i));
        let nodes: Vec<ConcatPoint> = order.iter().map(|&i| points[i]).collect();
        let start = nodes
            .iter()
            .position(|p| p.coverage == 1 && p.weight == 0)
            .ok_or_else(|| Error::InvalidConcatGraph("missing start point (1, 0)".into()))?;
        Ok(Self { n, nodes, origin: order, start })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[ConcatPoint] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// Index into the original point list of sorted node `i`.
    pub fn origin(&self, i: usize) -> usize {
        self.origin[i]
    }

    /// Twice the length of arc `a -> b`, or `None` when there is no arc.
    pub fn arc_length_half(&self, a: usize, b: usize) -> Option<i128> {
        let (pa, pb) = (self.nodes[a], self.nodes[b]);
        (pa.coverage < pb.coverage).then(|| {
            (2 * self.n as i128 - pa.coverage as i128 - pb.coverage as i128) * pb.weight as i128
        })
    }

    /// Twice the length of a node sequence, `None` if some step is not an arc.
    pub fn path_length_half(&self, path: &[usize]) -> Option<i128> {
        path.windows(2).map(|w| self.arc_length_half(w[0], w[1])).sum()
    }

    /// Exact shortest path from the start to any node of coverage `n`.
    ///
    /// Ties go to fewer hops, then to the lexicographically smallest node
    /// sequence. Solved backwards so the lexicographic rule is local: every
    /// candidate from `u` starts with `u`, so comparing the successor index
    /// decides.
    pub fn shortest_path(&self) -> Result<ConcatPath> {
        let m = self.nodes.len();
        // (length_half, hops, next)
        let mut best: Vec<Option<(i128, usize, Option<usize>)>> = vec![None; m];
        for u in (0..m).rev() {
            if self.nodes[u].coverage == self.n {
                best[u] = Some((0, 0, None));
                continue;
            }
            let mut cur: Option<(i128, usize, Option<usize>)> = None;
            for v in u + 1..m {
                let Some(arc) = self.arc_length_half(u, v) else { continue };
                let Some((len, hops, _)) = best[v] else { continue };
                let cand = (arc + len, hops + 1, Some(v));
                let better = match cur {
                    None => true,
                    Some((cl, ch, _)) => (cand.0, cand.1) < (cl, ch),
                };
                if better {
                    cur = Some(cand);
                }
            }
            best[u] = cur;
        }
        let (length_half, _, _) = best[self.start]
            .ok_or_else(|| Error::InvalidConcatGraph(format!("no node of coverage {} reachable", self.n)))?;
        let mut nodes = vec![self.start];
        let mut u = self.start;
        while let Some((_, _, Some(v))) = best[u] {
            nodes.push(v);
            u = v;
        }
        Ok(ConcatPath { nodes, length_half })
    }
}

/// Corner points of the lower convex hull of a point set, by increasing
/// coverage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerEnvelope {
    corners: Vec<ConcatPoint>,
}

fn cross(o: ConcatPoint, a: ConcatPoint, b: ConcatPoint) -> i128 {
    let (ox, oy) = (o.coverage as i128, o.weight as i128);
    (a.coverage as i128 - ox) * (b.weight as i128 - oy)
        - (a.weight as i128 - oy) * (b.coverage as i128 - ox)
}

impl LowerEnvelope {
    /// Monotone-chain lower hull. Duplicate coverages keep the minimum weight;
    /// collinear interior points are not corners.
    pub fn new(points: &[ConcatPoint]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidConcatGraph("lower envelope of an empty set".into()));
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup_by_key(|p| p.coverage);
        let mut hull: Vec<ConcatPoint> = Vec::with_capacity(pts.len());
        for p in pts {
            while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        Ok(Self { corners: hull })
    }

    pub fn corners(&self) -> &[ConcatPoint] {
        &self.corners
    }

    pub fn is_corner(&self, p: ConcatPoint) -> bool {
        self.corners.binary_search(&p).is_ok()
    }

    /// `f(x)` as an exact fraction `(numerator, denominator)`, `None` outside
    /// the hull's coverage range.
    pub fn value_at(&self, x: usize) -> Option<(i128, i128)> {
        let c = &self.corners;
        if x < c[0].coverage || x > c[c.len() - 1].coverage {
            return None;
        }
        let i = c.partition_point(|p| p.coverage < x);
        if c[i].coverage == x {
            return Some((c[i].weight as i128, 1));
        }
        let (a, b) = (c[i - 1], c[i]);
        let dx = (b.coverage - a.coverage) as i128;
        let num = a.weight as i128 * dx + (b.weight as i128 - a.weight as i128) * (x - a.coverage) as i128;
        Some((num, dx))
    }

    /// Twice the integral of the piecewise-linear envelope over its range.
    pub fn integral_half(&self) -> i128 {
        self.corners
            .windows(2)
            .map(|w| (w[1].coverage - w[0].coverage) as i128 * (w[0].weight as i128 + w[1].weight as i128))
            .sum()
    }
}

/// Root of `mu ln mu = mu + 1` by Newton iteration (about 3.59112).
pub fn mu_star() -> f64 {
    let mut mu: f64 = 3.5;
    for _ in 0..100 {
        let g = mu * mu.ln() - mu - 1.0;
        let step = g / mu.ln();
        mu -= step;
        if step.abs() < 1e-12 {
            break;
        }
    }
    mu
}

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::metric::{MetricSpace, Millis, TRIANGLE_TOLERANCE_MS};

/// A point-to-point ride: drive to `source`, then straight to `destination`.
/// The source may not be visited before `release`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Request {
    pub id: String,
    pub source: usize,
    pub destination: usize,
    pub release: Millis,
}

impl Request {
    pub fn new(id: impl Into<String>, source: usize, destination: usize, release: Millis) -> Self {
        Self { id: id.into(), source, destination, release }
    }
}

/// A metric, a list of requests and one depot per vehicle.
///
/// Invariants checked on construction:
/// * at least one depot, all locations in range, unique request ids;
/// * releases are non-negative;
/// * the matrix is a metric up to [`TRIANGLE_TOLERANCE_MS`];
/// * `dist(r, s_j) + dist(s_j, d_j) >= 1` for every depot `r` and request `j`.
///
/// Release times are considered active when any release is positive. With all
/// releases zero both latency recurrences coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    metric: MetricSpace,
    requests: Vec<Request>,
    depots: Vec<usize>,
    releases_active: bool,
}

impl Instance {
    pub fn new(metric: MetricSpace, requests: Vec<Request>, depots: Vec<usize>) -> Result<Self> {
        let violations = metric.violations(TRIANGLE_TOLERANCE_MS);
        if !violations.is_empty() {
            return Err(Error::NotMetric(violations));
        }
        Self::build(metric, requests, depots)
    }

    fn build(metric: MetricSpace, requests: Vec<Request>, depots: Vec<usize>) -> Result<Self> {
        if depots.is_empty() {
            return Err(Error::InvalidInstance("at least one vehicle is required".into()));
        }
        for &r in &depots {
            if !metric.contains(r) {
                return Err(Error::LocationOutOfRange(r));
            }
        }
        let mut seen = HashSet::with_capacity(requests.len());
        for req in &requests {
            if !seen.insert(req.id.as_str()) {
                return Err(Error::DuplicateRequest(req.id.clone()));
            }
            for loc in [req.source, req.destination] {
                if !metric.contains(loc) {
                    return Err(Error::LocationOutOfRange(loc));
                }
            }
            if req.release < 0 {
                return Err(Error::InvalidInstance(format!(
                    "request `{}` has negative release {}",
                    req.id, req.release
                )));
            }
            let own = metric.dist(req.source, req.destination);
            for &r in &depots {
                if metric.dist(r, req.source) + own < 1 {
                    return Err(Error::InvalidInstance(format!(
                        "request `{}` has zero cost from depot `{}`",
                        req.id,
                        metric.name(r)
                    )));
                }
            }
        }
        let releases_active = requests.iter().any(|r| r.release > 0);
        Ok(Self { metric, requests, depots, releases_active })
    }

    /// Same requests and metric with a different fleet.
    pub fn with_depots(&self, depots: Vec<usize>) -> Result<Self> {
        Self::build(self.metric.clone(), self.requests.clone(), depots)
    }

    /// Same instance with `k` vehicles at the first depot.
    pub fn with_fleet_size(&self, k: usize) -> Result<Self> {
        self.with_depots(vec![self.depots[0]; k])
    }

    /// Same metric and depots, with only the requests at `indices` (in that order).
    pub fn restricted(&self, indices: &[usize]) -> Self {
        let requests: Vec<Request> = indices.iter().map(|&j| self.requests[j].clone()).collect();
        let releases_active = requests.iter().any(|r| r.release > 0);
        Self { metric: self.metric.clone(), requests, depots: self.depots.clone(), releases_active }
    }

    pub fn metric(&self) -> &MetricSpace {
        &self.metric
    }

    pub fn requests(&self) -> &[Request] {
        &self.requests
    }

    pub fn request(&self, j: usize) -> &Request {
        &self.requests[j]
    }

    pub fn request_index(&self, id: &str) -> Option<usize> {
        self.requests.iter().position(|r| r.id == id)
    }

    pub fn depots(&self) -> &[usize] {
        &self.depots
    }

    pub fn depot(&self, vehicle: usize) -> usize {
        self.depots[vehicle]
    }

    /// Number of vehicles.
    pub fn k(&self) -> usize {
        self.depots.len()
    }

    /// Number of requests.
    pub fn n(&self) -> usize {
        self.requests.len()
    }

    pub fn is_single_depot(&self) -> bool {
        self.depots.windows(2).all(|w| w[0] == w[1])
    }

    pub fn releases_active(&self) -> bool {
        self.releases_active
    }

    /// Release time used by the latency recurrence: zero when inactive.
    #[inline]
    pub fn release(&self, j: usize) -> Millis {
        if self.releases_active {
            self.requests[j].release
        } else {
            0
        }
    }

    /// `dist(s_j, d_j)`.
    #[inline]
    pub fn own_length(&self, j: usize) -> Millis {
        let r = &self.requests[j];
        self.metric.dist(r.source, r.destination)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(n: usize) -> MetricSpace {
        let m = (0..n).map(|u| (0..n).map(|v| (u as i64 - v as i64).abs()).collect()).collect();
        MetricSpace::from_matrix(m).unwrap()
    }

    #[test]
    fn single_depot_predicate_matches_pairwise_equality() {
        let m = line(3);
        let reqs = vec![Request::new("a", 1, 2, 0)];
        let i = Instance::new(m.clone(), reqs.clone(), vec![0, 0, 0]).unwrap();
        assert!(i.is_single_depot());
        let j = Instance::new(m, reqs, vec![0, 1]).unwrap();
        assert!(!j.is_single_depot());
        assert_eq!(j.k(), 2);
    }

    #[test]
    fn rejects_bad_inputs() {
        let m = line(3);
        assert!(Instance::new(m.clone(), vec![], vec![]).is_err());
        assert!(matches!(
            Instance::new(m.clone(), vec![Request::new("a", 5, 1, 0)], vec![0]),
            Err(Error::LocationOutOfRange(5))
        ));
        assert!(matches!(
            Instance::new(
                m.clone(),
                vec![Request::new("a", 1, 2, 0), Request::new("a", 2, 1, 0)],
                vec![0]
            ),
            Err(Error::DuplicateRequest(_))
        ));
        assert!(Instance::new(m.clone(), vec![Request::new("a", 1, 2, -3)], vec![0]).is_err());
        // Point request sitting on the depot violates the normalisation.
        assert!(Instance::new(m, vec![Request::new("a", 0, 0, 0)], vec![0]).is_err());
    }

    #[test]
    fn rejects_non_metric() {
        let m = MetricSpace::from_matrix(vec![vec![0, 1, 5], vec![1, 0, 1], vec![5, 1, 0]]).unwrap();
        assert!(matches!(Instance::new(m, vec![], vec![0]), Err(Error::NotMetric(_))));
    }

    #[test]
    fn releases_flag_follows_data() {
        let m = line(3);
        let i = Instance::new(m.clone(), vec![Request::new("a", 1, 2, 0)], vec![0]).unwrap();
        assert!(!i.releases_active());
        let j = Instance::new(m, vec![Request::new("a", 1, 2, 7)], vec![0]).unwrap();
        assert!(j.releases_active());
        assert_eq!(j.release(0), 7);
    }
}

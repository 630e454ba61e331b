//! Latency evaluation of routes and plans.
//!
//! A route from depot `r` serving requests `1..q` in order visits
//! `r s_1 d_1 s_2 d_2 ... s_q d_q`. The latency of request `i` is the arrival
//! time at `d_i`:
//!
//! ```text
//! Lat(i)  = Lat(i-1) + c(d_{i-1}, s_i) + c(s_i, d_i)                (d_0 = r)
//! Lat+(i) = max(Lat+(i-1) + c(d_{i-1}, s_i), T_i) + c(s_i, d_i)
//! ```
//!
//! Waiting only ever happens at a source, before its release.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::instance::{Instance, Request};
use crate::metric::{MetricSpace, Millis};

/// Per-request latencies of one route plus its driving/waiting split.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RouteLatency {
    pub latencies: Vec<Millis>,
    /// Waiting time spent at each source.
    pub waits: Vec<Millis>,
    pub driving: Millis,
    pub waiting: Millis,
}

impl RouteLatency {
    pub fn total(&self) -> Millis {
        self.latencies.iter().sum()
    }

    /// Arrival time at the last destination; zero for an empty route.
    pub fn finish(&self) -> Millis {
        self.latencies.last().copied().unwrap_or(0)
    }
}

/// Core recurrence over `(source, destination, release)` triples.
pub(crate) fn walk<I>(metric: &MetricSpace, depot: usize, stops: I) -> RouteLatency
where
    I: IntoIterator<Item = (usize, usize, Millis)>,
{
    let mut out = RouteLatency::default();
    let mut pos = depot;
    let mut clock: Millis = 0;
    for (s, d, release) in stops {
        let approach = metric.dist(pos, s);
        let arrive = clock + approach;
        let wait = (release - arrive).max(0);
        let trip = metric.dist(s, d);
        clock = arrive + wait + trip;
        out.driving += approach + trip;
        out.waiting += wait;
        out.waits.push(wait);
        out.latencies.push(clock);
        pos = d;
    }
    out
}

fn check_route(metric: &MetricSpace, depot: usize, route: &[&Request]) -> Result<()> {
    if !metric.contains(depot) {
        return Err(Error::LocationOutOfRange(depot));
    }
    let mut seen = HashSet::with_capacity(route.len());
    for r in route {
        if !seen.insert(r.id.as_str()) {
            return Err(Error::DuplicateRequest(r.id.clone()));
        }
        for loc in [r.source, r.destination] {
            if !metric.contains(loc) {
                return Err(Error::LocationOutOfRange(loc));
            }
        }
    }
    Ok(())
}

/// Latencies ignoring release times.
pub fn eval_latency(metric: &MetricSpace, depot: usize, route: &[&Request]) -> Result<RouteLatency> {
    check_route(metric, depot, route)?;
    Ok(walk(metric, depot, route.iter().map(|r| (r.source, r.destination, 0))))
}

/// Latencies honouring each request's release time.
pub fn eval_latency_with_releases(
    metric: &MetricSpace,
    depot: usize,
    route: &[&Request],
) -> Result<RouteLatency> {
    check_route(metric, depot, route)?;
    Ok(walk(metric, depot, route.iter().map(|r| (r.source, r.destination, r.release))))
}

/// Unchecked evaluation of request indices on `instance`, release-aware
/// exactly when the instance has active release times.
pub fn route_latency(instance: &Instance, depot: usize, route: &[usize]) -> RouteLatency {
    let reqs = instance.requests();
    walk(
        instance.metric(),
        depot,
        route.iter().map(|&j| (reqs[j].source, reqs[j].destination, instance.release(j))),
    )
}

/// One ordered request list (indices into the instance) per vehicle.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RoutePlan {
    routes: Vec<Vec<usize>>,
}

impl RoutePlan {
    pub fn new(routes: Vec<Vec<usize>>) -> Self {
        Self { routes }
    }

    /// `k` empty routes.
    pub fn empty(k: usize) -> Self {
        Self { routes: vec![Vec::new(); k] }
    }

    pub fn routes(&self) -> &[Vec<usize>] {
        &self.routes
    }

    pub fn into_routes(self) -> Vec<Vec<usize>> {
        self.routes
    }

    pub fn served(&self) -> usize {
        self.routes.iter().map(Vec::len).sum()
    }

    /// Resolve request ids per route.
    pub fn from_ids(instance: &Instance, routes: &[Vec<String>]) -> Result<Self> {
        let index: std::collections::HashMap<&str, usize> =
            instance.requests().iter().enumerate().map(|(j, r)| (r.id.as_str(), j)).collect();
        let routes = routes
            .iter()
            .map(|ids| {
                ids.iter()
                    .map(|id| {
                        index
                            .get(id.as_str())
                            .copied()
                            .ok_or_else(|| Error::InvalidPlan(format!("unknown request `{id}`")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { routes })
    }

    pub fn to_ids(&self, instance: &Instance) -> Vec<Vec<String>> {
        self.routes
            .iter()
            .map(|r| r.iter().map(|&j| instance.request(j).id.clone()).collect())
            .collect()
    }

    /// Exactly `k` routes that partition the request set.
    pub fn validate(&self, instance: &Instance) -> Result<()> {
        if self.routes.len() != instance.k() {
            return Err(Error::InvalidPlan(format!(
                "{} routes for {} vehicles",
                self.routes.len(),
                instance.k()
            )));
        }
        let mut seen = vec![false; instance.n()];
        for route in &self.routes {
            for &j in route {
                if j >= instance.n() {
                    return Err(Error::InvalidPlan(format!("request index {j} out of range")));
                }
                if std::mem::replace(&mut seen[j], true) {
                    return Err(Error::InvalidPlan(format!(
                        "request `{}` served twice",
                        instance.request(j).id
                    )));
                }
            }
        }
        if let Some(j) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPlan(format!("request `{}` not served", instance.request(j).id)));
        }
        Ok(())
    }

    /// Validate, then aggregate per-route latencies and the benchmark metrics.
    pub fn evaluate(&self, instance: &Instance) -> Result<LatencyReport> {
        self.validate(instance)?;
        let mut per_request = vec![0; instance.n()];
        let mut routes = Vec::with_capacity(self.routes.len());
        for (v, route) in self.routes.iter().enumerate() {
            let lat = route_latency(instance, instance.depot(v), route);
            for (&j, &l) in route.iter().zip(&lat.latencies) {
                per_request[j] = l;
            }
            routes.push(RouteSummary {
                served: route.len(),
                latency: lat.total(),
                driving: lat.driving,
                waiting: lat.waiting,
                finish: lat.finish(),
            });
        }
        let total = per_request.iter().sum();
        let total_length = routes.iter().map(|r| r.driving).sum();
        let idle_time = routes.iter().map(|r| r.waiting).sum();
        let lengths: Vec<Millis> = routes.iter().map(|r| r.driving).collect();
        Ok(LatencyReport {
            per_request,
            total,
            total_length,
            idle_time,
            fairness_cv: coefficient_of_variation(&lengths),
            routes,
        })
    }
}

/// Per-vehicle totals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RouteSummary {
    pub served: usize,
    pub latency: Millis,
    pub driving: Millis,
    pub waiting: Millis,
    pub finish: Millis,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatencyReport {
    /// Latency per request index.
    pub per_request: Vec<Millis>,
    pub total: Millis,
    /// Sum of driving times.
    pub total_length: Millis,
    /// Sum of waiting times.
    pub idle_time: Millis,
    /// Coefficient of variation of per-vehicle driving times; 0 when all are 0.
    pub fairness_cv: f64,
    pub routes: Vec<RouteSummary>,
}

/// Population standard deviation over mean. Defined as 0 for an all-zero or
/// empty sample.
pub fn coefficient_of_variation(xs: &[Millis]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    let n = xs.len() as f64;
    let sum: i128 = xs.iter().map(|&x| x as i128).sum();
    if sum == 0 {
        return 0.0;
    }
    let mean = sum as f64 / n;
    let var = xs.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / n;
    var.sqrt() / mean
}

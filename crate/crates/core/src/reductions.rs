//! Reductions from point-to-point requests to point requests.
//!
//! * [`DirectedRequestMetric`]: single depot, lossless. Each request becomes a
//!   node; the arc `v_i -> v_j` costs `c(d_i, s_j) + c(s_j, d_j)`, the root
//!   acting as request 0 with `s_0 = d_0 = r`.
//! * [`BacktrackingMetric`]: any depots, loses at most a factor 3. Nodes are
//!   the depots (as zero-length dummy requests) and the requests, with the
//!   symmetric cost `c(s_i, s_j) + c(s_i, d_i) + c(s_j, d_j)`. A path in this
//!   metric is a backtracking path `r s_1 d_1 s_1 s_2 d_2 s_2 ...` in the
//!   original one.

use crate::error::{Error, Result};
use crate::instance::{Instance, Request};
use crate::latency::{RouteLatency, RoutePlan};
use crate::metric::{MetricSpace, Millis};

/// Root node of a [`DirectedRequestMetric`].
pub const ROOT: usize = 0;

/// Asymmetric request-to-request metric for a single-depot instance.
/// Node 0 is the root, node `j + 1` is request `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedRequestMetric {
    nodes: usize,
    arcs: Vec<Millis>,
}

impl DirectedRequestMetric {
    pub fn from_instance(instance: &Instance) -> Result<Self> {
        if !instance.is_single_depot() {
            return Err(Error::UnsupportedReduction(
                "the directed request metric needs a single depot".into(),
            ));
        }
        let m = instance.metric();
        let root = instance.depot(0);
        // (source, destination) per node, root first.
        let ends: Vec<(usize, usize)> = std::iter::once((root, root))
            .chain(instance.requests().iter().map(|r| (r.source, r.destination)))
            .collect();
        let nodes = ends.len();
        let mut arcs = vec![0; nodes * nodes];
        for (u, &(_, du)) in ends.iter().enumerate() {
            for (v, &(sv, dv)) in ends.iter().enumerate() {
                if u != v {
                    arcs[u * nodes + v] = m.dist(du, sv) + m.dist(sv, dv);
                }
            }
        }
        Ok(Self { nodes, arcs })
    }

    /// Root plus one node per request.
    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn request_count(&self) -> usize {
        self.nodes - 1
    }

    pub fn node_of(request: usize) -> usize {
        request + 1
    }

    pub fn request_of(node: usize) -> usize {
        debug_assert!(node != ROOT);
        node - 1
    }

    /// Arc cost `c'(u, v)`. The diagonal is unused and reads as zero.
    #[inline]
    pub fn cost(&self, u: usize, v: usize) -> Millis {
        self.arcs[u * self.nodes + v]
    }

    /// Latencies of visiting the requests in `order` along the directed path
    /// from the root: prefix sums of arc costs.
    pub fn path_latency(&self, order: &[usize]) -> Vec<Millis> {
        let mut prev = ROOT;
        let mut clock = 0;
        order
            .iter()
            .map(|&j| {
                let v = Self::node_of(j);
                clock += self.cost(prev, v);
                prev = v;
                clock
            })
            .collect()
    }
}

/// Symmetric point metric over depots and requests. Nodes `0..k` are the
/// vehicles' depots (vehicle `i` owns node `i`), node `k + j` is request `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BacktrackingMetric {
    vehicles: usize,
    nodes: usize,
    dist: Vec<Millis>,
}

impl BacktrackingMetric {
    pub fn from_instance(instance: &Instance) -> Self {
        let m = instance.metric();
        let ends: Vec<(usize, Millis)> = instance
            .depots()
            .iter()
            .map(|&r| (r, 0))
            .chain((0..instance.n()).map(|j| (instance.request(j).source, instance.own_length(j))))
            .collect();
        let nodes = ends.len();
        let mut dist = vec![0; nodes * nodes];
        for (u, &(su, ou)) in ends.iter().enumerate() {
            for (v, &(sv, ov)) in ends.iter().enumerate() {
                if u != v {
                    dist[u * nodes + v] = m.dist(su, sv) + ou + ov;
                }
            }
        }
        Self { vehicles: instance.k(), nodes, dist }
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn vehicles(&self) -> usize {
        self.vehicles
    }

    pub fn request_node(&self, request: usize) -> usize {
        self.vehicles + request
    }

    #[inline]
    pub fn cost(&self, u: usize, v: usize) -> Millis {
        self.dist[u * self.nodes + v]
    }

    pub fn to_matrix(&self) -> Vec<Vec<Millis>> {
        (0..self.nodes).map(|u| self.dist[u * self.nodes..(u + 1) * self.nodes].to_vec()).collect()
    }

    /// Point-request instance over this metric: request `j` sits at node
    /// `k + j` with its original id and release, vehicle `i` starts at node `i`.
    pub fn to_point_instance(&self, original: &Instance) -> Result<Instance> {
        let k = self.vehicles;
        let mut names: Vec<String> = (0..k).map(|i| format!("depot#{i}")).collect();
        names.extend(original.requests().iter().map(|r| format!("request#{}", r.id)));
        let metric = MetricSpace::new(names, self.to_matrix())?;
        let requests = original
            .requests()
            .iter()
            .enumerate()
            .map(|(j, r)| Request::new(r.id.clone(), k + j, k + j, r.release))
            .collect();
        Instance::new(metric, requests, (0..k).collect())
    }

    /// Map routes over backtracking nodes back to request orderings. A route
    /// may start with its own vehicle's depot node; depot nodes anywhere else
    /// are rejected. Orderings are carried over verbatim, which shortcuts the
    /// backtracking legs.
    pub fn lift_point_solution(&self, routes: &[Vec<usize>]) -> Result<RoutePlan> {
        if routes.len() != self.vehicles {
            return Err(Error::InvalidPlan(format!(
                "{} routes for {} vehicles",
                routes.len(),
                self.vehicles
            )));
        }
        let mut out = Vec::with_capacity(routes.len());
        for (vehicle, route) in routes.iter().enumerate() {
            let mut lifted = Vec::with_capacity(route.len());
            for (pos, &node) in route.iter().enumerate() {
                if node >= self.nodes {
                    return Err(Error::InvalidPlan(format!("node {node} out of range")));
                }
                if node < self.vehicles {
                    if pos == 0 && node == vehicle {
                        continue;
                    }
                    return Err(Error::InvalidPlan(format!(
                        "depot node {node} at position {pos} of route {vehicle}"
                    )));
                }
                lifted.push(node - self.vehicles);
            }
            out.push(lifted);
        }
        Ok(RoutePlan::new(out))
    }
}

/// Latencies along the backtracking path of `route`: after serving a request
/// the vehicle returns from `d_i` to `s_i` before heading to the next source.
/// With `with_releases` the vehicle waits at each source until its release.
pub fn eval_backtracking_latency(
    metric: &MetricSpace,
    depot: usize,
    route: &[&Request],
    with_releases: bool,
) -> Result<RouteLatency> {
    // Same validation as the plain recurrence.
    crate::latency::eval_latency(metric, depot, route)?;
    let mut out = RouteLatency::default();
    let mut prev_source = depot;
    let mut prev_own = 0;
    let mut clock = 0;
    for r in route {
        let approach = prev_own + metric.dist(prev_source, r.source);
        let arrive = clock + approach;
        let wait = if with_releases { (r.release - arrive).max(0) } else { 0 };
        let own = metric.dist(r.source, r.destination);
        clock = arrive + wait + own;
        out.driving += approach + own;
        out.waiting += wait;
        out.waits.push(wait);
        out.latencies.push(clock);
        prev_source = r.source;
        prev_own = own;
    }
    Ok(out)
}

/// Solve a (possibly multi-depot) instance through the backtracking metric:
/// reduce, run `solver` on the point instance, lift the routes back.
pub fn solve_via_backtracking<F>(instance: &Instance, solver: F) -> Result<RoutePlan>
where
    F: FnOnce(&Instance) -> Result<RoutePlan>,
{
    let bm = BacktrackingMetric::from_instance(instance);
    let point = bm.to_point_instance(instance)?;
    let plan = solver(&point)?;
    let nodes: Vec<Vec<usize>> =
        plan.routes().iter().map(|r| r.iter().map(|&j| bm.request_node(j)).collect()).collect();
    bm.lift_point_solution(&nodes)
}

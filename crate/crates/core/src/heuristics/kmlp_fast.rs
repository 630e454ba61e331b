//! kMLP-Fast: layered greedy solutions stitched by min-cost flow.
//!
//! 1. Sort requests by release time (ties: id).
//! 2. Layer `i = 1..=ceil(log2 n)` is the greedy k-path solution over the first
//!    `min(2^i, n)` requests.
//! 3. Every nonempty layer path is a node. `P_i -> P_j` for a lower layer `i`
//!    costs
//!    `sum_{t in P_j} (Lat(P_i + P_j, t) - Lat(P_j, t)) + (n - 2^j)+ * len(P_j)`
//!    where `len` is the finish time of `P_j` on its own. A start node `s`
//!    reaches every path and every last-layer path reaches the sink `t` for
//!    free.
//! 4. Route `k` units of flow from `s` to `t`, with each path node usable once,
//!    and concatenate the paths along each unit.

use crate::error::{Error, Result};
use crate::flow::{decompose_paths, min_cost_flow, FlowNetwork};
use crate::heuristics::greedy::greedy_paths;
use crate::instance::Instance;
use crate::latency::{route_latency, RoutePlan};
use crate::metric::Millis;
use crate::par::Execution;

/// Cost of an arc out of the start node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StartCost {
    /// The arc formula with `P_i` the empty path at the depot: the latency
    /// part vanishes and only the length term remains.
    #[default]
    EmptyPrefix,
    /// Latency of the path's own requests plus the length term.
    PathLatency,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct KmlpFastConfig {
    pub start_cost: StartCost,
    pub execution: Execution,
}

/// One layer of step 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerSolution {
    /// 1-based layer index `i`.
    pub layer: u32,
    /// `min(2^i, n)`.
    pub prefix: usize,
    /// Nonempty greedy paths, in vehicle order.
    pub paths: Vec<Vec<usize>>,
}

/// Request indices sorted by `(release, id)`.
pub fn release_order(instance: &Instance) -> Vec<usize> {
    let mut order: Vec<usize> = (0..instance.n()).collect();
    order.sort_by(|&a, &b| {
        (instance.request(a).release, &instance.request(a).id).cmp(&(instance.request(b).release, &instance.request(b).id))
    });
    order
}

/// `max(1, ceil(log2 n))`.
pub fn layer_count(n: usize) -> u32 {
    if n <= 2 {
        1
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

/// Greedy layers over growing release-time prefixes.
pub fn build_layers(instance: &Instance, exec: Execution) -> Vec<LayerSolution> {
    let n = instance.n();
    if n == 0 {
        return Vec::new();
    }
    let order = release_order(instance);
    let layers: Vec<u32> = (1..=layer_count(n)).collect();
    exec.map(&layers, |&layer| {
        let prefix = n.min(1usize.checked_shl(layer).unwrap_or(usize::MAX));
        let paths = greedy_paths(instance, &order[..prefix]).into_iter().filter(|p| !p.is_empty()).collect();
        LayerSolution { layer, prefix, paths }
    })
}

/// `prefix` followed by the requests of `path` not already in `prefix`.
pub fn concat_dedup(prefix: &[usize], path: &[usize]) -> Vec<usize> {
    let mut out = prefix.to_vec();
    for &j in path {
        if !out.contains(&j) {
            out.push(j);
        }
    }
    out
}

/// Per-request latency increase `Lat(prefix + path, t) - Lat(path, t)` for
/// every `t` of `path`, on the plain concatenation (no duplicate removal).
pub fn append_increments(instance: &Instance, prefix: &[usize], path: &[usize]) -> Vec<Millis> {
    let depot = instance.depot(0);
    let alone = route_latency(instance, depot, path).latencies;
    let joined: Vec<usize> = prefix.iter().chain(path).copied().collect();
    let lat = route_latency(instance, depot, &joined).latencies;
    lat[prefix.len()..].iter().zip(&alone).map(|(a, b)| a - b).collect()
}

/// Arc cost `P_i -> P_j`. Requests of `P_j` already in `P_i` add nothing;
/// the others add their latency increase, floored at 0.
pub fn edge_cost(instance: &Instance, prefix: &[usize], path: &[usize], layer: u32) -> Millis {
    let depot = instance.depot(0);
    let alone = route_latency(instance, depot, path);
    let joined = concat_dedup(prefix, path);
    let lat = route_latency(instance, depot, &joined).latencies;
    let mut cost: Millis = 0;
    for (pos, &t) in path.iter().enumerate() {
        if let Some(at) = joined[prefix.len()..].iter().position(|&x| x == t) {
            cost += (lat[prefix.len() + at] - alone.latencies[pos]).max(0);
        }
    }
    cost + length_term(instance.n(), layer, alone.finish())
}

/// `(n - 2^layer)+ * len`.
fn length_term(n: usize, layer: u32, len: Millis) -> Millis {
    let covered = 1usize.checked_shl(layer).unwrap_or(usize::MAX);
    n.saturating_sub(covered) as Millis * len
}

fn start_cost(instance: &Instance, path: &[usize], layer: u32, mode: StartCost) -> Millis {
    let alone = route_latency(instance, instance.depot(0), path);
    let latency = match mode {
        StartCost::PathLatency => alone.total(),
        StartCost::EmptyPrefix => 0,
    };
    latency + length_term(instance.n(), layer, alone.finish())
}

/// kMLP-Fast with the default configuration.
pub fn kmlp_fast(instance: &Instance) -> Result<RoutePlan> {
    kmlp_fast_with(instance, KmlpFastConfig::default())
}

/// kMLP-Fast on a single-depot instance (all vehicles start at depot 0).
pub fn kmlp_fast_with(instance: &Instance, config: KmlpFastConfig) -> Result<RoutePlan> {
    let k = instance.k();
    if !instance.is_single_depot() {
        return Err(Error::UnsupportedReduction("kMLP-Fast needs a single depot".into()));
    }
    if instance.n() == 0 {
        return Ok(RoutePlan::empty(k));
    }
    let layers = build_layers(instance, config.execution);
    let last = layers.last().expect("n > 0").layer;
    let nodes: Vec<(u32, &Vec<usize>)> =
        layers.iter().flat_map(|l| l.paths.iter().map(move |p| (l.layer, p))).collect();
    let m = nodes.len();

    // s = 0, path u has in-node 1 + 2u and out-node 2 + 2u, t = 2m + 1.
    let (s, t) = (0, 2 * m + 1);
    let mut net = FlowNetwork::new(2 * m + 2, s, t)?;
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|a| (0..m).map(move |b| (a, b)))
        .filter(|&(a, b)| nodes[a].0 < nodes[b].0)
        .collect();
    let starts = config.execution.map_range(m, |u| start_cost(instance, nodes[u].1, nodes[u].0, config.start_cost));
    let costs = config.execution.map(&pairs, |&(a, b)| edge_cost(instance, nodes[a].1, nodes[b].1, nodes[b].0));
    for (u, &c) in starts.iter().enumerate() {
        net.add_arc(s, 1 + 2 * u, 1, c)?;
    }
    for u in 0..m {
        net.add_arc(1 + 2 * u, 2 + 2 * u, 1, 0)?;
    }
    for (&(a, b), &c) in pairs.iter().zip(&costs) {
        net.add_arc(2 + 2 * a, 1 + 2 * b, 1, c)?;
    }
    let mut finals = 0;
    for (u, &(layer, _)) in nodes.iter().enumerate() {
        if layer == last {
            net.add_arc(2 + 2 * u, t, 1, 0)?;
            finals += 1;
        }
    }
    // Vehicles beyond the last layer's paths stay idle.
    if finals < k {
        net.add_arc(s, t, (k - finals) as u64, 0)?;
    }

    let sol = min_cost_flow(&net, k as u64)?;
    let mut routes: Vec<Vec<usize>> = Vec::with_capacity(k);
    for fp in decompose_paths(&net, &sol.flow)? {
        let mut route = Vec::new();
        for &v in &fp.nodes {
            if v != s && v != t && v % 2 == 1 {
                route = concat_dedup(&route, nodes[(v - 1) / 2].1);
            }
        }
        routes.push(route);
    }
    routes.resize(k, Vec::new());
    Ok(RoutePlan::new(resolve_duplicates(instance, routes)))
}

/// Keep each request only on the route that completes it earliest (ties:
/// lowest vehicle index), shortcutting the other occurrences.
pub fn resolve_duplicates(instance: &Instance, routes: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let mut best: Vec<Option<(Millis, usize)>> = vec![None; instance.n()];
    for (v, route) in routes.iter().enumerate() {
        let lat = route_latency(instance, instance.depot(v), route);
        for (&j, &l) in route.iter().zip(&lat.latencies) {
            if best[j].is_none_or(|b| (l, v) < b) {
                best[j] = Some((l, v));
            }
        }
    }
    routes
        .into_iter()
        .enumerate()
        .map(|(v, route)| route.into_iter().filter(|&j| best[j].map(|b| b.1) == Some(v)).collect())
        .collect()
}

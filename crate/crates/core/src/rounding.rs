//! Tree-based rounding for single-depot instances.
//!
//! Candidate out-arborescences over the [`DirectedRequestMetric`] are turned
//! into routes: pick trees along a shortest concatenation-graph path, double
//! each tree into a closed walk, cut the walk into `k` equal pieces, turn each
//! piece into a depot tour over its first-visited requests (forward with
//! probability 3/4, reversed otherwise) and append tour `i` to vehicle `i`,
//! skipping requests that were already served.
//!
//! Trees come from [`heuristic_tree_provider`]: for coverage targets
//! `1, 2, 4, ..., n` it takes the requests nearest to the root under `c'` and
//! spans them with a minimum arborescence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arborescence::min_arborescence;
use crate::concat::{ConcatGraph, ConcatPoint};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::latency::{route_latency, RoutePlan};
use crate::metric::Millis;
use crate::par::Execution;
use crate::reductions::{DirectedRequestMetric, ROOT};

/// Out-arborescence rooted at the root of a [`DirectedRequestMetric`], with a
/// time label `t` bounding the root distance of the requests it may serve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RequestTree {
    parent: Vec<Option<usize>>,
    members: Vec<usize>,
    cost: Millis,
    time_label: Millis,
}

impl RequestTree {
    /// Build from `(parent, child)` arcs. Every arc must hang off the root or
    /// an earlier member, nodes may have one parent, and the root none.
    pub fn new(metric: &DirectedRequestMetric, arcs: &[(usize, usize)], time_label: Millis) -> Result<Self> {
        let mut parent = vec![None; metric.node_count()];
        for &(u, v) in arcs {
            if u >= metric.node_count() || v >= metric.node_count() {
                return Err(Error::InvalidTree(format!("arc ({u}, {v}) out of range")));
            }
            if v == ROOT || u == v {
                return Err(Error::InvalidTree(format!("arc ({u}, {v}) is not allowed")));
            }
            if parent[v].replace(u).is_some() {
                return Err(Error::InvalidTree(format!("node {v} has two parents")));
            }
        }
        Self::from_parents(metric, parent, time_label)
    }

    /// Build from a parent array (`None` for the root and non-members).
    pub fn from_parents(
        metric: &DirectedRequestMetric,
        parent: Vec<Option<usize>>,
        time_label: Millis,
    ) -> Result<Self> {
        if parent.len() != metric.node_count() || parent[ROOT].is_some() {
            return Err(Error::InvalidTree("malformed parent array".into()));
        }
        let members: Vec<usize> = (0..parent.len()).filter(|&v| parent[v].is_some()).collect();
        // Every member must reach the root without revisiting a node.
        for &v in &members {
            let mut u = v;
            for _ in 0..=parent.len() {
                match parent[u] {
                    Some(p) if p == ROOT => break,
                    Some(p) if parent[p].is_some() => u = p,
                    _ => return Err(Error::InvalidTree(format!("node {v} is not connected to the root"))),
                }
            }
            if parent[u] != Some(ROOT) {
                return Err(Error::InvalidTree(format!("cycle through node {v}")));
            }
        }
        let cost = members.iter().map(|&v| metric.cost(parent[v].unwrap(), v)).sum();
        Ok(Self { parent, members, cost, time_label })
    }

    /// Non-root nodes, ascending.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// `c'(Q)`.
    pub fn cost(&self) -> Millis {
        self.cost
    }

    pub fn time_label(&self) -> Millis {
        self.time_label
    }

    /// Children of `u` in ascending order.
    pub fn children(&self, u: usize) -> Vec<usize> {
        self.members.iter().copied().filter(|&v| self.parent[v] == Some(u)).collect()
    }
}

/// Whether directed node `v` may be served by a tour built for time label `t`:
/// `c'(r, v) <= t` and, with active release times, `T_v <= t`.
pub fn available_by(metric: &DirectedRequestMetric, instance: &Instance, v: usize, t: Millis) -> bool {
    metric.cost(ROOT, v) <= t && instance.release(DirectedRequestMetric::request_of(v)) <= t
}

/// One plus the number of tree members available by the tree's time label;
/// the root counts as covered.
pub fn tree_coverage(tree: &RequestTree, metric: &DirectedRequestMetric, instance: &Instance) -> usize {
    1 + tree.members().iter().filter(|&&v| available_by(metric, instance, v, tree.time_label())).count()
}

/// One traversal of a tree arc during the doubling walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleStep {
    pub from: usize,
    pub to: usize,
    pub cost: Millis,
    /// True when walking the arc away from the root (the first visit of `to`).
    pub forward: bool,
}

/// Closed walk from the root using every tree arc once in each direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerCycle {
    pub steps: Vec<CycleStep>,
}

impl EulerCycle {
    pub fn length(&self) -> Millis {
        self.steps.iter().map(|s| s.cost).sum()
    }

    /// Node sequence starting and ending at the root.
    pub fn nodes(&self) -> Vec<usize> {
        std::iter::once(ROOT).chain(self.steps.iter().map(|s| s.to)).collect()
    }
}

/// DFS from the root visiting children in ascending node order. Returning
/// along an arc costs the same as descending it, so the walk has length
/// exactly `2 c'(Q)`.
pub fn double_tree(tree: &RequestTree, metric: &DirectedRequestMetric) -> EulerCycle {
    let mut steps = Vec::with_capacity(2 * tree.members().len());
    let mut stack: Vec<(usize, std::vec::IntoIter<usize>)> = vec![(ROOT, tree.children(ROOT).into_iter())];
    while let Some((u, iter)) = stack.last_mut() {
        let u = *u;
        match iter.next() {
            Some(v) => {
                steps.push(CycleStep { from: u, to: v, cost: metric.cost(u, v), forward: true });
                stack.push((v, tree.children(v).into_iter()));
            }
            None => {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    steps.push(CycleStep { from: u, to: p, cost: metric.cost(p, u), forward: false });
                }
            }
        }
    }
    EulerCycle { steps }
}

/// Contiguous piece of a split cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub index: usize,
    /// Nodes whose first visit falls in this piece, in walk order.
    pub first_visits: Vec<usize>,
    /// Length of the piece times `k` (exact).
    pub scaled_length: i128,
}

/// Cut `cycle` into `k` pieces of length `L / k` each, where `L` is the cycle
/// length. Piece `i` covers `(iL/k, (i+1)L/k]`; a break inside an arc hands
/// the remainder of the arc to the next piece. A first visit at position `p`
/// belongs to the piece whose interval contains `p`.
pub fn split_cycle(cycle: &EulerCycle, k: usize) -> Result<Vec<Segment>> {
    if k == 0 {
        return Err(Error::InvalidParameter("cannot split into zero segments".into()));
    }
    let k128 = k as i128;
    let total = cycle.length() as i128;
    let mut segments: Vec<Segment> =
        (0..k).map(|index| Segment { index, first_visits: Vec::new(), scaled_length: 0 }).collect();
    let mut pos: i128 = 0;
    for step in &cycle.steps {
        let (a, b) = (pos * k128, (pos + step.cost as i128) * k128);
        if total > 0 {
            for (i, seg) in segments.iter_mut().enumerate() {
                let (lo, hi) = (i as i128 * total, (i as i128 + 1) * total);
                seg.scaled_length += (b.min(hi) - a.max(lo)).max(0);
            }
        }
        pos += step.cost as i128;
        if step.forward {
            let i = if total == 0 || pos == 0 { 0 } else { ((pos * k128 - 1) / total) as usize };
            segments[i.min(k - 1)].first_visits.push(step.to);
        }
    }
    Ok(segments)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Reverse,
}

/// Depot tour `r s_1 d_1 ... s_q d_q r` in the original metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tour {
    /// Request indices in travel order.
    pub requests: Vec<usize>,
    pub direction: Direction,
    /// `c(r, s_1)`.
    pub to_first: Millis,
    /// `c(s_1, d_1)`.
    pub first_trip: Millis,
    /// Length of `d_1 s_2 d_2 ... s_q d_q`.
    pub inner: Millis,
    /// `c(d_q, r)`.
    pub home: Millis,
}

impl Tour {
    /// Depot leg into the tour, `c(r, s_1) + c(s_1, d_1)`.
    pub fn lead_in(&self) -> Millis {
        self.to_first + self.first_trip
    }

    /// The tour without its two root edges: `s_1 d_1 ... s_q d_q`.
    pub fn body(&self) -> Millis {
        self.first_trip + self.inner
    }

    pub fn length(&self) -> Millis {
        self.to_first + self.first_trip + self.inner + self.home
    }
}

/// Tour over the first-visit requests of `segment` that are available by the
/// tree's time label, in first-visit order or reversed.
pub fn segment_to_tour(
    segment: &Segment,
    tree: &RequestTree,
    metric: &DirectedRequestMetric,
    instance: &Instance,
    direction: Direction,
) -> Tour {
    let mut requests: Vec<usize> = segment
        .first_visits
        .iter()
        .copied()
        .filter(|&v| available_by(metric, instance, v, tree.time_label()))
        .map(DirectedRequestMetric::request_of)
        .collect();
    if direction == Direction::Reverse {
        requests.reverse();
    }
    tour_through(instance, requests, direction)
}

fn tour_through(instance: &Instance, requests: Vec<usize>, direction: Direction) -> Tour {
    let m = instance.metric();
    let depot = instance.depot(0);
    let (Some(&first), Some(&last)) = (requests.first(), requests.last()) else {
        return Tour { requests, direction, to_first: 0, first_trip: 0, inner: 0, home: 0 };
    };
    let mut inner = 0;
    for w in requests.windows(2) {
        let (a, b) = (instance.request(w[0]), instance.request(w[1]));
        inner += m.dist(a.destination, b.source) + instance.own_length(w[1]);
    }
    Tour {
        to_first: m.dist(depot, instance.request(first).source),
        first_trip: instance.own_length(first),
        inner,
        home: m.dist(instance.request(last).destination, depot),
        requests,
        direction,
    }
}

/// How tour directions are chosen during rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectionMode {
    /// Forward with probability 3/4, from a seeded ChaCha8 stream.
    Randomized { seed: u64 },
    /// Per tour, the direction giving the smaller latency sum of the requests
    /// it newly serves (ties: forward).
    Derandomized,
    AlwaysForward,
}

/// Outcome of [`round_to_plan`].
#[derive(Debug, Clone)]
pub struct Rounding {
    pub plan: RoutePlan,
    /// Indices into the input tree list, in concatenation order.
    pub selected: Vec<usize>,
    /// Twice the concatenation-graph path length, in `1/k` ms when `k > 1`.
    pub path_length_half: i128,
}

/// Concatenation-graph point for a tree. With `k > 1` the weight
/// `3 c'(Q) / k + 2t` is scaled by `k` to stay integral; with `k = 1` it is
/// `2 c'(Q)`.
pub fn concat_point(
    tree: &RequestTree,
    metric: &DirectedRequestMetric,
    instance: &Instance,
) -> ConcatPoint {
    let k = instance.k() as i64;
    let weight = if k == 1 { 2 * tree.cost() } else { 3 * tree.cost() + 2 * k * tree.time_label() };
    ConcatPoint::new(tree_coverage(tree, metric, instance), weight)
}

/// Round candidate trees into a plan for a single-depot instance.
///
/// The concatenation graph has `n + 1` coverage levels (the root counts as
/// covered), starts from `(1, 0)` and needs a tree that covers every request.
pub fn round_to_plan(trees: &[RequestTree], instance: &Instance, mode: DirectionMode) -> Result<Rounding> {
    let metric = DirectedRequestMetric::from_instance(instance)?;
    let k = instance.k();
    let n = instance.n();
    if n == 0 {
        return Ok(Rounding { plan: RoutePlan::empty(k), selected: Vec::new(), path_length_half: 0 });
    }
    let mut points = vec![ConcatPoint::new(1, 0)];
    points.extend(trees.iter().map(|t| concat_point(t, &metric, instance)));
    let graph = ConcatGraph::new(&points, n + 1)?;
    let path = graph.shortest_path().map_err(|_| Error::CoverageGap(n))?;

    let mut rng = match mode {
        DirectionMode::Randomized { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut routes: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut served = vec![false; n];
    let mut selected = Vec::new();
    for &node in &path.nodes[1..] {
        let ti = graph.origin(node) - 1;
        selected.push(ti);
        let tree = &trees[ti];
        let cycle = double_tree(tree, &metric);
        for seg in split_cycle(&cycle, k)? {
            let forward = segment_to_tour(&seg, tree, &metric, instance, Direction::Forward);
            let tour = match mode {
                DirectionMode::AlwaysForward => forward,
                DirectionMode::Randomized { .. } => {
                    if rng.as_mut().expect("seeded").random_bool(0.75) {
                        forward
                    } else {
                        segment_to_tour(&seg, tree, &metric, instance, Direction::Reverse)
                    }
                }
                DirectionMode::Derandomized => {
                    let reverse = segment_to_tour(&seg, tree, &metric, instance, Direction::Reverse);
                    let route = &routes[seg.index];
                    let cost = |t: &Tour| appended_latency(instance, route, &served, &t.requests);
                    if cost(&reverse) < cost(&forward) {
                        reverse
                    } else {
                        forward
                    }
                }
            };
            for j in tour.requests {
                if !std::mem::replace(&mut served[j], true) {
                    routes[seg.index].push(j);
                }
            }
        }
    }
    if let Some(j) = served.iter().position(|s| !s) {
        return Err(Error::InvalidPlan(format!("rounding left request `{}` unserved", instance.request(j).id)));
    }
    Ok(Rounding { plan: RoutePlan::new(routes), selected, path_length_half: path.length_half })
}

/// Latency sum of the requests of `tour` that are not yet served, when
/// appended (with shortcutting) to `route`.
fn appended_latency(instance: &Instance, route: &[usize], served: &[bool], tour: &[usize]) -> Millis {
    let mut ext = route.to_vec();
    let base = ext.len();
    ext.extend(tour.iter().copied().filter(|&j| !served[j]));
    let lat = route_latency(instance, instance.depot(0), &ext);
    lat.latencies[base..].iter().sum()
}

/// Coverage targets `1, 2, 4, ...` below `n`, then `n`.
pub fn coverage_targets(n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut l = 1;
    while l < n {
        out.push(l);
        l *= 2;
    }
    if n > 0 {
        out.push(n);
    }
    out
}

/// Candidate trees for [`round_to_plan`]. For each coverage target `l`, the
/// `l` requests with the smallest key (`c'(r, v)`, or `max(c'(r, v), T_v)`
/// with active releases; ties by index) are spanned by a minimum
/// arborescence; the time label is the largest key among them.
pub fn heuristic_tree_provider(
    metric: &DirectedRequestMetric,
    instance: &Instance,
    exec: Execution,
) -> Vec<RequestTree> {
    let n = metric.request_count();
    let key = |j: usize| metric.cost(ROOT, DirectedRequestMetric::node_of(j)).max(instance.release(j));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&j| (key(j), j));
    let targets = coverage_targets(n);
    exec.map(&targets, |&l| {
        let chosen: Vec<usize> = std::iter::once(ROOT)
            .chain(order[..l].iter().map(|&j| DirectedRequestMetric::node_of(j)))
            .collect();
        let (local_parent, _) = min_arborescence(chosen.len(), 0, |a, b| metric.cost(chosen[a], chosen[b]));
        let mut parent = vec![None; metric.node_count()];
        for (a, p) in local_parent.iter().enumerate() {
            if let Some(p) = p {
                parent[chosen[a]] = Some(chosen[*p]);
            }
        }
        let t = order[..l].iter().map(|&j| key(j)).max().unwrap_or(0);
        RequestTree::from_parents(metric, parent, t).expect("arborescence is a valid tree")
    })
}

/// Full pipeline on a single-depot instance: heuristic trees, then rounding.
pub fn solve_rounding(instance: &Instance, mode: DirectionMode, exec: Execution) -> Result<RoutePlan> {
    let metric = DirectedRequestMetric::from_instance(instance)?;
    let trees = heuristic_tree_provider(&metric, instance, exec);
    Ok(round_to_plan(&trees, instance, mode)?.plan)
}

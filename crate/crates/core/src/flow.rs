//! Integral min-cost flow by successive shortest paths.
//!
//! Arc costs must be nonnegative, so Dijkstra with node potentials finds every
//! augmenting path. All arithmetic is integral.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::metric::Millis;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowArc {
    pub from: usize,
    pub to: usize,
    pub capacity: u64,
    pub cost: Millis,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    nodes: usize,
    source: usize,
    sink: usize,
    arcs: Vec<FlowArc>,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Result<Self> {
        if source >= nodes || sink >= nodes || source == sink {
            return Err(Error::InvalidNetwork(format!(
                "source {source} and sink {sink} must be distinct nodes below {nodes}"
            )));
        }
        Ok(Self { nodes, source, sink, arcs: Vec::new() })
    }

    /// Add an arc and return its id.
    pub fn add_arc(&mut self, from: usize, to: usize, capacity: u64, cost: Millis) -> Result<usize> {
        if from >= self.nodes || to >= self.nodes {
            return Err(Error::InvalidNetwork(format!("arc ({from}, {to}) out of range")));
        }
        if cost < 0 {
            return Err(Error::InvalidNetwork(format!("arc ({from}, {to}) has negative cost {cost}")));
        }
        self.arcs.push(FlowArc { from, to, capacity, cost });
        Ok(self.arcs.len() - 1)
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arcs(&self) -> &[FlowArc] {
        &self.arcs
    }

    /// Total cost of a flow vector.
    pub fn cost_of(&self, flow: &[u64]) -> i128 {
        self.arcs.iter().zip(flow).map(|(a, &f)| a.cost as i128 * f as i128).sum()
    }

    /// Check capacities and conservation; returns the flow value.
    pub fn check_flow(&self, flow: &[u64]) -> Result<u64> {
        if flow.len() != self.arcs.len() {
            return Err(Error::InvalidFlow(format!("{} values for {} arcs", flow.len(), self.arcs.len())));
        }
        let mut balance = vec![0i128; self.nodes];
        for (i, (a, &f)) in self.arcs.iter().zip(flow).enumerate() {
            if f > a.capacity {
                return Err(Error::InvalidFlow(format!("arc {i} carries {f} over capacity {}", a.capacity)));
            }
            balance[a.from] -= f as i128;
            balance[a.to] += f as i128;
        }
        for (v, &b) in balance.iter().enumerate() {
            if v != self.source && v != self.sink && b != 0 {
                return Err(Error::InvalidFlow(format!("node {v} is unbalanced by {b}")));
            }
        }
        if balance[self.sink] < 0 {
            return Err(Error::InvalidFlow("negative flow value".into()));
        }
        Ok(balance[self.sink] as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowSolution {
    /// Flow on each arc, by arc id.
    pub flow: Vec<u64>,
    pub cost: i128,
}

struct Residual {
    to: usize,
    cap: u64,
    cost: i128,
    /// Index of the reverse edge in `adj[to]`.
    rev: usize,
    /// Original arc id for forward edges.
    arc: Option<usize>,
}

/// Minimum-cost flow of exactly `target` units from source to sink.
/// Fails with [`Error::InfeasibleFlow`] when the maximum flow is smaller.
pub fn min_cost_flow(net: &FlowNetwork, target: u64) -> Result<FlowSolution> {
    let n = net.nodes;
    let mut adj: Vec<Vec<Residual>> = (0..n).map(|_| Vec::new()).collect();
    for (id, a) in net.arcs.iter().enumerate() {
        if a.from == a.to {
            continue;
        }
        let (ri, rj) = (adj[a.to].len(), adj[a.from].len());
        adj[a.from].push(Residual { to: a.to, cap: a.capacity, cost: a.cost as i128, rev: ri, arc: Some(id) });
        adj[a.to].push(Residual { to: a.from, cap: 0, cost: -(a.cost as i128), rev: rj, arc: None });
    }

    let mut potential = vec![0i128; n];
    let mut sent = 0u64;
    let mut cost = 0i128;
    while sent < target {
        // Dijkstra on reduced costs; ties settle the smaller node first.
        let mut dist: Vec<Option<i128>> = vec![None; n];
        let mut pred: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut heap = BinaryHeap::new();
        dist[net.source] = Some(0);
        heap.push(Reverse((0i128, net.source)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if dist[u] != Some(d) {
                continue;
            }
            for (ei, e) in adj[u].iter().enumerate() {
                if e.cap == 0 {
                    continue;
                }
                let nd = d + e.cost + potential[u] - potential[e.to];
                if dist[e.to].is_none_or(|old| nd < old) {
                    dist[e.to] = Some(nd);
                    pred[e.to] = Some((u, ei));
                    heap.push(Reverse((nd, e.to)));
                }
            }
        }
        let Some(_) = dist[net.sink] else {
            return Err(Error::InfeasibleFlow { target, max_flow: sent });
        };
        for v in 0..n {
            if let Some(d) = dist[v] {
                potential[v] += d;
            }
        }
        let mut push = target - sent;
        let mut v = net.sink;
        while let Some((u, ei)) = pred[v] {
            push = push.min(adj[u][ei].cap);
            v = u;
        }
        let mut v = net.sink;
        while let Some((u, ei)) = pred[v] {
            let rev = adj[u][ei].rev;
            adj[u][ei].cap -= push;
            cost += adj[u][ei].cost * push as i128;
            adj[v][rev].cap += push;
            v = u;
        }
        sent += push;
    }

    let mut flow = vec![0u64; net.arcs.len()];
    for edges in &adj {
        for e in edges {
            if let Some(id) = e.arc {
                flow[id] = net.arcs[id].capacity - e.cap;
            }
        }
    }
    debug_assert_eq!(net.cost_of(&flow), cost);
    Ok(FlowSolution { flow, cost })
}

/// One unit of flow from source to sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowPath {
    pub nodes: Vec<usize>,
    pub arcs: Vec<usize>,
}

/// Split an integral flow into unit source-sink paths. At every node the walk
/// follows the arc with remaining flow whose head has the smallest index
/// (then the smallest arc id). Flow left on a cycle is an error.
pub fn decompose_paths(net: &FlowNetwork, flow: &[u64]) -> Result<Vec<FlowPath>> {
    let value = net.check_flow(flow)?;
    let mut left = flow.to_vec();
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); net.nodes];
    for (id, a) in net.arcs.iter().enumerate() {
        out_arcs[a.from].push(id);
    }
    for list in &mut out_arcs {
        list.sort_by_key(|&id| (net.arcs[id].to, id));
    }

    let mut paths = Vec::with_capacity(value as usize);
    for _ in 0..value {
        let mut nodes = vec![net.source];
        let mut arcs = Vec::new();
        let mut on_path = vec![false; net.nodes];
        on_path[net.source] = true;
        let mut u = net.source;
        while u != net.sink {
            let Some(&id) = out_arcs[u].iter().find(|&&id| left[id] > 0) else {
                return Err(Error::InvalidFlow(format!("flow stops at node {u}")));
            };
            left[id] -= 1;
            u = net.arcs[id].to;
            if std::mem::replace(&mut on_path[u], true) {
                return Err(Error::InvalidFlow(format!("flow cycles through node {u}")));
            }
            nodes.push(u);
            arcs.push(id);
        }
        paths.push(FlowPath { nodes, arcs });
    }
    if let Some(id) = left.iter().position(|&f| f > 0) {
        return Err(Error::InvalidFlow(format!("arc {id} carries flow on a cycle")));
    }
    Ok(paths)
}

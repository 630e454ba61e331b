//! Brute-force reference solvers for small instances.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::latency::RoutePlan;
use crate::metric::Millis;
use crate::par::Execution;

pub const MAX_SINGLE_VEHICLE: usize = 9;
pub const MAX_MULTI_REQUESTS: usize = 8;
pub const MAX_MULTI_VEHICLES: usize = 3;
pub const MAX_ARBORESCENCE_NODES: usize = 9;

/// Depth-first search over orderings in lexicographic order. Only strict
/// improvements replace the incumbent, so ties keep the smallest ordering.
struct Search<'a> {
    instance: &'a Instance,
    depot: usize,
    best: Option<(Millis, Vec<usize>)>,
    order: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, left: &mut Vec<usize>, pos: usize, clock: Millis, sum: Millis) {
        if let Some((best, _)) = &self.best {
            // Every remaining request finishes after `clock`.
            if sum + left.len() as Millis * clock >= *best && !left.is_empty() {
                return;
            }
        }
        if left.is_empty() {
            if self.best.as_ref().is_none_or(|(b, _)| sum < *b) {
                self.best = Some((sum, self.order.clone()));
            }
            return;
        }
        let m = self.instance.metric();
        for i in 0..left.len() {
            let j = left.remove(i);
            let r = self.instance.request(j);
            let done = (clock + m.dist(pos, r.source)).max(self.instance.release(j)) + self.instance.own_length(j);
            self.order.push(j);
            self.run(left, r.destination, done, sum + done);
            self.order.pop();
            left.insert(i, j);
        }
    }
}

/// Optimal total latency and ordering of `items` (sorted ascending) for one
/// vehicle starting at `depot`.
fn best_order(instance: &Instance, depot: usize, items: &[usize]) -> (Millis, Vec<usize>) {
    let mut left = items.to_vec();
    left.sort_unstable();
    let mut s = Search { instance, depot, best: None, order: Vec::with_capacity(left.len()) };
    s.run(&mut left, s.depot, 0, 0);
    s.best.expect("at least the empty ordering")
}

/// Exact single-vehicle optimum by permutation search (`n <= 9`, `k = 1`).
/// Ties go to the lexicographically smallest ordering of request indices.
pub fn exact_single_vehicle(instance: &Instance, exec: Execution) -> Result<(Millis, Vec<usize>)> {
    if instance.k() != 1 {
        return Err(Error::InvalidParameter(format!("single-vehicle oracle needs k = 1, got {}", instance.k())));
    }
    let n = instance.n();
    if n > MAX_SINGLE_VEHICLE {
        return Err(Error::TooLarge { what: "requests", value: n, limit: MAX_SINGLE_VEHICLE });
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let depot = instance.depot(0);
    let m = instance.metric();
    // One branch per first request, merged in index order.
    let branches = exec.map_range(n, |first| {
        let r = instance.request(first);
        let done = m.dist(depot, r.source).max(instance.release(first)) + instance.own_length(first);
        let mut left: Vec<usize> = (0..n).filter(|&j| j != first).collect();
        let mut s = Search { instance, depot, best: None, order: vec![first] };
        s.run(&mut left, r.destination, done, done);
        s.best.expect("nonempty search")
    });
    let mut best: Option<(Millis, Vec<usize>)> = None;
    for b in branches {
        if best.as_ref().is_none_or(|(c, _)| b.0 < *c) {
            best = Some(b);
        }
    }
    Ok(best.expect("n > 0"))
}

/// Exact multi-vehicle optimum (`n <= 8`, `k <= 3`): the best ordering of
/// every request subset from every depot, then every assignment of requests
/// to vehicles. Ties go to the lexicographically smallest assignment vector.
pub fn exact_multi_vehicle(instance: &Instance, exec: Execution) -> Result<(Millis, RoutePlan)> {
    let (n, k) = (instance.n(), instance.k());
    if n > MAX_MULTI_REQUESTS {
        return Err(Error::TooLarge { what: "requests", value: n, limit: MAX_MULTI_REQUESTS });
    }
    if k > MAX_MULTI_VEHICLES {
        return Err(Error::TooLarge { what: "vehicles", value: k, limit: MAX_MULTI_VEHICLES });
    }
    let mut depots: Vec<usize> = instance.depots().to_vec();
    depots.sort_unstable();
    depots.dedup();
    let subsets = 1usize << n;
    let tables: Vec<Vec<(Millis, Vec<usize>)>> = depots
        .iter()
        .map(|&d| {
            exec.map_range(subsets, |mask| {
                let items: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).collect();
                best_order(instance, d, &items)
            })
        })
        .collect();
    let table_of: Vec<usize> = (0..k).map(|v| depots.binary_search(&instance.depot(v)).unwrap()).collect();

    let mut best: Option<(Millis, Vec<usize>)> = None;
    let mut assign = vec![0usize; n];
    let total = k.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        for j in (0..n).rev() {
            assign[j] = c % k;
            c /= k;
        }
        let mut masks = vec![0usize; k];
        for (j, &v) in assign.iter().enumerate() {
            masks[v] |= 1 << j;
        }
        let cost: Millis = (0..k).map(|v| tables[table_of[v]][masks[v]].0).sum();
        if best.as_ref().is_none_or(|(b, _)| cost < *b) {
            best = Some((cost, masks));
        }
    }
    let (cost, masks) = best.expect("at least one assignment");
    let routes = (0..k).map(|v| tables[table_of[v]][masks[v]].1.clone()).collect();
    Ok((cost, RoutePlan::new(routes)))
}

/// Minimum-cost out-arborescence by enumerating parent choices (`n <= 9`).
/// Ties go to the first parent vector in lexicographic order.
pub fn exact_min_arborescence<F>(n: usize, root: usize, cost: F) -> Result<(Vec<Option<usize>>, Millis)>
where
    F: Fn(usize, usize) -> Millis,
{
    if n > MAX_ARBORESCENCE_NODES {
        return Err(Error::TooLarge { what: "nodes", value: n, limit: MAX_ARBORESCENCE_NODES });
    }
    if root >= n {
        return Err(Error::InvalidParameter(format!("root {root} out of range")));
    }
    let others: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut best: Option<(Vec<Option<usize>>, Millis)> = None;
    fn reaches_root(parent: &[Option<usize>], root: usize, v: usize) -> bool {
        let mut u = v;
        for _ in 0..parent.len() {
            if u == root {
                return true;
            }
            match parent[u] {
                Some(p) => u = p,
                None => return false,
            }
        }
        u == root
    }
    fn go<F: Fn(usize, usize) -> Millis>(
        i: usize,
        others: &[usize],
        root: usize,
        parent: &mut Vec<Option<usize>>,
        acc: Millis,
        cost: &F,
        best: &mut Option<(Vec<Option<usize>>, Millis)>,
    ) {
        if i == others.len() {
            if others.iter().all(|&v| reaches_root(parent, root, v))
                && best.as_ref().is_none_or(|(_, b)| acc < *b)
            {
                *best = Some((parent.clone(), acc));
            }
            return;
        }
        let v = others[i];
        for u in 0..parent.len() {
            if u != v {
                parent[v] = Some(u);
                go(i + 1, others, root, parent, acc + cost(u, v), cost, best);
            }
        }
        parent[v] = None;
    }
    go(0, &others, root, &mut parent, 0, &cost, &mut best);
    Ok(best.expect("the star is always an arborescence"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Request;
    use crate::metric::MetricSpace;

    fn line_inst(coords: &[i64], reqs: &[(usize, usize, Millis)], k: usize) -> Instance {
        let m = coords.iter().map(|a| coords.iter().map(|b| (a - b).abs()).collect()).collect();
        let requests =
            reqs.iter().enumerate().map(|(i, &(s, d, t))| Request::new(format!("r{i}"), s, d, t)).collect();
        Instance::new(MetricSpace::from_matrix(m).unwrap(), requests, vec![0; k]).unwrap()
    }

    #[test]
    fn one_request() {
        let inst = line_inst(&[0, 2, 5], &[(1, 2, 0)], 1);
        assert_eq!(exact_single_vehicle(&inst, Execution::Sequential).unwrap(), (5, vec![0]));
    }

    #[test]
    fn symmetric_tie_goes_lexicographic() {
        let inst = line_inst(&[0, -3, 3], &[(2, 2, 0), (1, 1, 0)], 1);
        let (cost, order) = exact_single_vehicle(&inst, Execution::Sequential).unwrap();
        assert_eq!(cost, 3 + 9);
        assert_eq!(order, vec![0, 1]);
    }

    #[test]
    fn line_optimum() {
        let inst = line_inst(&[0, 1, 2, 3], &[(3, 3, 0), (1, 1, 0), (2, 2, 0)], 1);
        assert_eq!(exact_single_vehicle(&inst, Execution::Parallel).unwrap(), (6, vec![1, 2, 0]));
    }

    #[test]
    fn size_limits() {
        let coords: Vec<i64> = (0..11).collect();
        let reqs: Vec<(usize, usize, Millis)> = (1..11).map(|i| (i, i, 0)).collect();
        let inst = line_inst(&coords, &reqs, 1);
        assert!(matches!(exact_single_vehicle(&inst, Execution::Sequential), Err(Error::TooLarge { .. })));
        assert!(matches!(exact_multi_vehicle(&inst, Execution::Sequential), Err(Error::TooLarge { .. })));
        assert!(exact_single_vehicle(&inst.with_fleet_size(2).unwrap(), Execution::Sequential).is_err());
        assert!(exact_min_arborescence(10, 0, |_, _| 1).is_err());
    }

    #[test]
    fn singletons_when_fleet_is_large() {
        // Star around the depot: no request lies on the way to another.
        let arms = [0, 1, 2, 4];
        let m = (0..4).map(|a| (0..4).map(|b| if a == b { 0 } else { arms[a] + arms[b] }).collect()).collect();
        let reqs = (1..4).map(|i| Request::new(format!("r{i}"), i, i, 0)).collect();
        let inst = Instance::new(MetricSpace::from_matrix(m).unwrap(), reqs, vec![0; 3]).unwrap();
        let (cost, plan) = exact_multi_vehicle(&inst, Execution::Sequential).unwrap();
        assert_eq!(cost, 1 + 2 + 4);
        assert!(plan.routes().iter().all(|r| r.len() == 1));
    }

    #[test]
    fn multi_agrees_with_single_for_one_vehicle() {
        let inst = line_inst(&[0, 1, -2, 4, 7], &[(1, 3, 0), (2, 4, 5), (3, 1, 0), (4, 2, 1)], 1);
        let (a, order) = exact_single_vehicle(&inst, Execution::Parallel).unwrap();
        let (b, plan) = exact_multi_vehicle(&inst, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(plan.routes(), &[order]);
        assert_eq!(plan.evaluate(&inst).unwrap().total, a);
    }

    #[test]
    fn arborescence_examples() {
        assert_eq!(exact_min_arborescence(2, 0, |_, _| 4).unwrap(), (vec![None, Some(0)], 4));
        // One cheap in-arc per node, all from the root.
        let (p, c) = exact_min_arborescence(4, 0, |u, _| if u == 0 { 1 } else { 9 }).unwrap();
        assert_eq!(p, vec![None, Some(0), Some(0), Some(0)]);
        assert_eq!(c, 3);
    }
}

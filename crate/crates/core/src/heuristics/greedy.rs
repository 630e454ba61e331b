//! Finish-time greedy dispatch.

use crate::instance::Instance;
use crate::latency::RoutePlan;
use crate::metric::Millis;

/// Greedy dispatch over all requests. See [`greedy_paths`].
pub fn greedy_dispatch(instance: &Instance) -> RoutePlan {
    let all: Vec<usize> = (0..instance.n()).collect();
    RoutePlan::new(greedy_paths(instance, &all))
}

/// Event-driven greedy over the request indices in `pool`.
///
/// Vehicles start idle at their depots at time 0. The vehicle with the
/// earliest idle time (ties: lowest index) takes the unassigned request with
/// the smallest finish time `max(idle + c(pos, s), T) + c(s, d)` (ties: lowest
/// request index). Returns one route per vehicle.
pub fn greedy_paths(instance: &Instance, pool: &[usize]) -> Vec<Vec<usize>> {
    let m = instance.metric();
    let k = instance.k();
    let mut routes: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut idle: Vec<Millis> = vec![0; k];
    let mut pos: Vec<usize> = (0..k).map(|v| instance.depot(v)).collect();
    let mut open: Vec<usize> = pool.to_vec();
    open.sort_unstable();
    open.dedup();
    while !open.is_empty() {
        let v = (0..k).min_by_key(|&v| (idle[v], v)).expect("k >= 1");
        let (slot, finish) = open
            .iter()
            .enumerate()
            .map(|(slot, &j)| {
                let r = instance.request(j);
                let start = (idle[v] + m.dist(pos[v], r.source)).max(instance.release(j));
                (slot, start + instance.own_length(j))
            })
            .min_by_key(|&(slot, f)| (f, open[slot]))
            .expect("open is not empty");
        let j = open.remove(slot);
        routes[v].push(j);
        idle[v] = finish;
        pos[v] = instance.request(j).destination;
    }
    routes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Request;
    use crate::metric::MetricSpace;

    fn line(coords: &[i64]) -> MetricSpace {
        MetricSpace::from_matrix(coords.iter().map(|a| coords.iter().map(|b| (a - b).abs()).collect()).collect())
            .unwrap()
    }

    #[test]
    fn nearest_first_on_a_line() {
        // Point requests at distance 1, 2, 3 on the same side of the depot.
        let reqs = vec![Request::new("c", 3, 3, 0), Request::new("a", 1, 1, 0), Request::new("b", 2, 2, 0)];
        let inst = Instance::new(line(&[0, 1, 2, 3]), reqs, vec![0]).unwrap();
        let plan = greedy_dispatch(&inst);
        assert_eq!(plan.routes(), &[vec![1, 2, 0]]);
        let rep = plan.evaluate(&inst).unwrap();
        assert_eq!(rep.per_request, vec![3, 1, 2]);
        assert_eq!(rep.total, 6);
    }

    #[test]
    fn nearest_first_cumulative_positions() {
        // Points at 1, 3, 6 on one ray.
        let reqs = vec![Request::new("a", 1, 1, 0), Request::new("b", 2, 2, 0), Request::new("c", 3, 3, 0)];
        let inst = Instance::new(line(&[0, 1, 3, 6]), reqs, vec![0]).unwrap();
        let rep = greedy_dispatch(&inst).evaluate(&inst).unwrap();
        assert_eq!(rep.per_request, vec![1, 3, 6]);
    }

    #[test]
    fn huge_equal_releases_pick_shortest_trip() {
        let reqs = vec![
            Request::new("a", 1, 3, 1_000_000),
            Request::new("b", 2, 3, 1_000_000),
            Request::new("c", 3, 0, 1_000_000),
        ];
        let inst = Instance::new(line(&[0, 1, 5, 6]), reqs, vec![0]).unwrap();
        // own lengths 5, 1, 6 -> b first
        assert_eq!(greedy_dispatch(&inst).routes()[0][0], 1);
    }

    #[test]
    fn vehicles_share_work() {
        let reqs = vec![Request::new("a", 1, 1, 0), Request::new("b", 2, 2, 0)];
        let inst = Instance::new(line(&[0, 1, 2]), reqs, vec![0, 0]).unwrap();
        let plan = greedy_dispatch(&inst);
        assert_eq!(plan.routes(), &[vec![0], vec![1]]);
    }

    #[test]
    fn multi_depot_start_positions() {
        let reqs = vec![Request::new("a", 1, 1, 0), Request::new("b", 3, 3, 0)];
        let inst = Instance::new(line(&[0, 1, 2, 8, 9]), reqs, vec![0, 4]).unwrap();
        let plan = greedy_dispatch(&inst);
        assert_eq!(plan.routes(), &[vec![0], vec![1]]);
        assert_eq!(plan.evaluate(&inst).unwrap().total, 2);
    }

    #[test]
    fn empty_pool() {
        let inst = Instance::new(line(&[0, 1]), vec![], vec![0, 0]).unwrap();
        assert_eq!(greedy_dispatch(&inst).routes(), &[Vec::<usize>::new(), Vec::new()]);
    }
}

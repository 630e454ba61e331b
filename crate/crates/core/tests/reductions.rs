mod common;

use common::{permutations, random_instance, rng, without_releases};
use kmlp::heuristics::greedy_dispatch;
use kmlp::latency::{eval_latency, eval_latency_with_releases, route_latency};
use kmlp::reductions::{eval_backtracking_latency, solve_via_backtracking, BacktrackingMetric, DirectedRequestMetric};
use kmlp::{Instance, MetricSpace, Request};
use proptest::prelude::*;

#[test]
fn directed_reduction_is_lossless_for_every_ordering() {
    let mut r = rng(11);
    for n in 1..=5 {
        for _ in 0..5 {
            let inst = random_instance(&mut r, n, 1, 0);
            let d = DirectedRequestMetric::from_instance(&inst).unwrap();
            for order in permutations(n) {
                let plain = route_latency(&inst, 0, &order).latencies;
                let by_arcs: Vec<i64> = order
                    .iter()
                    .scan((0usize, 0i64), |(prev, clock), &j| {
                        let v = DirectedRequestMetric::node_of(j);
                        *clock += d.cost(*prev, v);
                        *prev = v;
                        Some(*clock)
                    })
                    .collect();
                assert_eq!(d.path_latency(&order), plain);
                assert_eq!(by_arcs, plain);
            }
        }
    }
}

proptest! {
    #[test]
    fn sandwich_bounds(seed in any::<u64>(), n in 1usize..8, release in 0i64..200) {
        let mut r = rng(seed);
        let inst = random_instance(&mut r, n, 1, release);
        let reqs: Vec<&Request> = inst.requests().iter().collect();
        let m = inst.metric();
        let plain = eval_latency(m, 0, &reqs).unwrap().total();
        let back = eval_backtracking_latency(m, 0, &reqs, false).unwrap().total();
        prop_assert!(plain <= back && back <= 3 * plain);
        let plain_r = eval_latency_with_releases(m, 0, &reqs).unwrap().total();
        let back_r = eval_backtracking_latency(m, 0, &reqs, true).unwrap().total();
        prop_assert!(plain_r <= back_r && back_r <= 3 * plain_r);
    }

    // Without releases a point route is exactly the backtracking path. With
    // releases the point instance waits after the trip instead of before it,
    // which can only be earlier.
    #[test]
    fn point_instance_latency_vs_backtracking(seed in any::<u64>(), n in 1usize..7) {
        let mut r = rng(seed);
        let inst = random_instance(&mut r, n, 1, 200);
        let order: Vec<usize> = (0..n).rev().collect();
        let reqs: Vec<&Request> = order.iter().map(|&j| inst.request(j)).collect();
        let flat = without_releases(&inst);
        let point = BacktrackingMetric::from_instance(&flat).to_point_instance(&flat).unwrap();
        let back = eval_backtracking_latency(inst.metric(), 0, &reqs, false).unwrap();
        prop_assert_eq!(route_latency(&point, 0, &order).latencies, back.latencies);
        let point = BacktrackingMetric::from_instance(&inst).to_point_instance(&inst).unwrap();
        let back = eval_backtracking_latency(inst.metric(), 0, &reqs, true).unwrap();
        for (p, b) in route_latency(&point, 0, &order).latencies.iter().zip(&back.latencies) {
            prop_assert!(p <= b);
        }
    }

    #[test]
    fn backtracking_metric_is_exact_metric(seed in any::<u64>(), n in 0usize..7, k in 1usize..4) {
        let mut r = rng(seed);
        let inst = random_instance(&mut r, n, 1, 0);
        let depots: Vec<usize> = (0..k).map(|i| (i * 3) % (2 * n + 1)).collect();
        // Depots on arbitrary cells can make a request free, which is invalid.
        let inst = inst.with_depots(depots);
        prop_assume!(inst.is_ok());
        let inst = inst.unwrap();
        let bm = BacktrackingMetric::from_instance(&inst);
        prop_assert!(kmlp::MetricSpace::from_matrix(bm.to_matrix()).unwrap().violations(0).is_empty());
    }
}

fn line_family(n: usize) -> (MetricSpace, Vec<Request>) {
    let coords: Vec<i64> = (0..=n as i64).collect();
    let m = coords.iter().map(|a| coords.iter().map(|b| (a - b).abs()).collect()).collect();
    let reqs = (0..n).map(|i| Request::new(format!("r{i}"), i, i + 1, 0)).collect();
    (MetricSpace::from_matrix(m).unwrap(), reqs)
}

#[test]
fn tightness_family_small() {
    for n in 1..=40usize {
        let (m, reqs) = line_family(n);
        let refs: Vec<&Request> = reqs.iter().collect();
        let plain = eval_latency(&m, 0, &refs).unwrap();
        let back = eval_backtracking_latency(&m, 0, &refs, false).unwrap();
        for i in 0..n {
            assert_eq!(plain.latencies[i], i as i64 + 1);
            assert_eq!(back.latencies[i], 3 * i as i64 + 1);
        }
        let n = n as i64;
        assert_eq!(2 * plain.total(), n * n + n);
        assert_eq!(2 * back.total(), 3 * n * n - n);
    }
}

#[test]
fn multi_depot_pipeline_with_greedy() {
    let mut r = rng(5);
    for _ in 0..20 {
        let base = random_instance(&mut r, 6, 1, 30);
        let inst = base.with_depots(vec![0, 3, 5]).unwrap();
        let plan = solve_via_backtracking(&inst, |p| Ok(greedy_dispatch(p))).unwrap();
        plan.validate(&inst).unwrap();
        // Shortcutting the backtracking legs never hurts.
        let mut back = 0;
        for (v, route) in plan.routes().iter().enumerate() {
            let reqs: Vec<&Request> = route.iter().map(|&j| inst.request(j)).collect();
            back += eval_backtracking_latency(inst.metric(), inst.depot(v), &reqs, true).unwrap().total();
        }
        assert!(plan.evaluate(&inst).unwrap().total <= back);
    }
}

#[test]
fn multi_depot_directed_reduction_rejected() {
    let mut r = rng(6);
    let inst: Instance = random_instance(&mut r, 3, 1, 0).with_depots(vec![0, 1]).unwrap();
    assert!(DirectedRequestMetric::from_instance(&inst).is_err());
}


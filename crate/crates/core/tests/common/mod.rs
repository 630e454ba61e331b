#![allow(dead_code)]

use kmlp::{Instance, MetricSpace, Millis, Request};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Manhattan distances between random grid points (an exact metric).
pub fn random_metric(rng: &mut ChaCha8Rng, points: usize, span: i64) -> MetricSpace {
    let pts: Vec<(i64, i64)> = (0..points).map(|_| (rng.random_range(0..span), rng.random_range(0..span))).collect();
    let m = pts
        .iter()
        .map(|a| pts.iter().map(|b| (a.0 - b.0).abs() + (a.1 - b.1).abs()).collect())
        .collect();
    MetricSpace::from_matrix(m).unwrap()
}

/// Random instance over `2n + 1` points; location 0 is the depot. With
/// `releases`, releases are drawn from `0..=max_release`.
pub fn random_instance(rng: &mut ChaCha8Rng, n: usize, k: usize, max_release: Millis) -> Instance {
    loop {
        let metric = random_metric(rng, 2 * n + 1, 40);
        let reqs: Vec<Request> = (0..n)
            .map(|j| {
                let t = if max_release > 0 { rng.random_range(0..=max_release) } else { 0 };
                Request::new(format!("q{j}"), 1 + 2 * j, 2 + 2 * j, t)
            })
            .collect();
        if let Ok(inst) = Instance::new(metric, reqs, vec![0; k]) {
            return inst;
        }
    }
}

/// Same requests with every release set to 0.
pub fn without_releases(inst: &Instance) -> Instance {
    let reqs = inst.requests().iter().map(|r| Request::new(r.id.clone(), r.source, r.destination, 0)).collect();
    Instance::new(inst.metric().clone(), reqs, inst.depots().to_vec()).unwrap()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

mod common;

use common::rng;
use kmlp::concat::{mu_star, ConcatGraph, ConcatPoint, LowerEnvelope};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Weight sequence `w_1 = 0, w_2..w_n` plus a few extra points at repeated
/// coverages, so per-coverage minima matter.
fn random_points(r: &mut ChaCha8Rng, n: usize, monotone: bool) -> Vec<ConcatPoint> {
    let mut pts = vec![ConcatPoint::new(1, 0)];
    let mut w = 0i64;
    for c in 2..=n {
        w = if monotone { w + r.random_range(0..500) } else { r.random_range(0..5000) };
        pts.push(ConcatPoint::new(c, w));
    }
    for _ in 0..r.random_range(0..=n) {
        let c = r.random_range(1..=n);
        pts.push(ConcatPoint::new(c, r.random_range(0..6000)));
    }
    pts
}

fn per_coverage_min(pts: &[ConcatPoint], n: usize) -> Vec<Option<i64>> {
    let mut best = vec![None; n + 1];
    for p in pts {
        let b: &mut Option<i64> = &mut best[p.coverage];
        *b = Some(b.map_or(p.weight, |w: i64| w.min(p.weight)));
    }
    best
}

/// Every start-to-end path, by DFS over increasing coverage.
fn brute_force_shortest(g: &ConcatGraph) -> i128 {
    fn go(g: &ConcatGraph, u: usize, acc: i128, best: &mut Option<i128>) {
        if g.nodes()[u].coverage == g.n() {
            *best = Some(best.map_or(acc, |b| b.min(acc)));
        }
        for v in 0..g.len() {
            if let Some(a) = g.arc_length_half(u, v) {
                go(g, v, acc + a, best);
            }
        }
    }
    let mut best = None;
    go(g, g.start(), 0, &mut best);
    best.unwrap()
}

#[test]
fn dp_matches_enumeration_small() {
    let mut r = rng(1);
    for _ in 0..400 {
        let n = r.random_range(1..=8);
        let mono = r.random_bool(0.5);
        let mut pts = random_points(&mut r, n, mono);
        pts.truncate(12);
        let g = ConcatGraph::new(&pts, n).unwrap();
        let p = g.shortest_path().unwrap();
        assert_eq!(p.length_half, brute_force_shortest(&g), "{pts:?}");
        assert_eq!(g.path_length_half(&p.nodes), Some(p.length_half));
        assert_eq!(p.nodes[0], g.start());
        assert_eq!(g.nodes()[*p.nodes.last().unwrap()].coverage, n);
    }
}

#[test]
fn sum_and_envelope_bounds() {
    let mu = mu_star();
    let mut r = rng(2);
    for i in 0..1000 {
        let n = r.random_range(1..=50);
        let pts = random_points(&mut r, n, i % 2 == 0);
        let g = ConcatGraph::new(&pts, n).unwrap();
        let len_half = g.shortest_path().unwrap().length_half;
        let sum: i64 = per_coverage_min(&pts, n).iter().flatten().sum();
        // length <= mu/2 * sum  <=>  2 * length <= mu * sum
        assert!(len_half as f64 <= mu * sum as f64, "{pts:?}");
        let env = LowerEnvelope::new(&pts).unwrap();
        // integral_half is 2 * integral.
        assert!(len_half as f64 <= mu * env.integral_half() as f64 / 2.0, "{pts:?}");
    }
}

#[test]
fn shortest_path_uses_extreme_points() {
    let mut r = rng(3);
    for _ in 0..500 {
        let n = r.random_range(1..=30);
        let mono = r.random_bool(0.5);
        let pts = random_points(&mut r, n, mono);
        let g = ConcatGraph::new(&pts, n).unwrap();
        let p = g.shortest_path().unwrap();
        let env = LowerEnvelope::new(&pts).unwrap();
        if p.nodes.iter().all(|&u| env.is_corner(g.nodes()[u])) {
            continue;
        }
        // Tie: a path through corners only must be just as short.
        let corners = ConcatGraph::new(env.corners(), n).unwrap();
        assert_eq!(corners.shortest_path().unwrap().length_half, p.length_half, "{pts:?}");
    }
}

/// `p` is a lower-envelope corner when it is the first minimum at its
/// coverage and lies strictly below every chord over it.
fn brute_force_corners(pts: &[ConcatPoint]) -> Vec<ConcatPoint> {
    let mut out: Vec<ConcatPoint> = Vec::new();
    for p in pts {
        if pts.iter().any(|q| q.coverage == p.coverage && q.weight < p.weight) || out.contains(p) {
            continue;
        }
        let covered = pts.iter().any(|a| {
            pts.iter().any(|b| {
                a.coverage < p.coverage && p.coverage < b.coverage && {
                    let dx = (b.coverage - a.coverage) as i128;
                    let chord = a.weight as i128 * dx + (b.weight - a.weight) as i128 * (p.coverage - a.coverage) as i128;
                    p.weight as i128 * dx >= chord
                }
            })
        });
        if !covered {
            out.push(*p);
        }
    }
    out.sort();
    out
}

#[test]
fn envelope_matches_brute_force_hull() {
    let mut r = rng(4);
    for _ in 0..300 {
        let m = r.random_range(1..=200);
        let span = r.random_range(1..=60);
        let pts: Vec<ConcatPoint> =
            (0..m).map(|_| ConcatPoint::new(r.random_range(1..=span), r.random_range(0..100))).collect();
        let env = LowerEnvelope::new(&pts).unwrap();
        assert_eq!(env.corners(), &brute_force_corners(&pts)[..]);
        for p in &pts {
            let (num, den) = env.value_at(p.coverage).unwrap();
            assert!(num <= p.weight as i128 * den);
        }
        for w in env.corners().windows(3) {
            let left = (w[1].weight - w[0].weight) as i128 * (w[2].coverage - w[1].coverage) as i128;
            let right = (w[2].weight - w[1].weight) as i128 * (w[1].coverage - w[0].coverage) as i128;
            assert!(left < right, "not strictly convex: {w:?}");
        }
    }
}

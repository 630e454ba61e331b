use kmlp::Execution;
use kmlp_bench::compare::compare;
use kmlp_bench::generate::{generate, GenParams, Geometry, ReleaseModel};
use kmlp_bench::run::Algorithm;

// An extra idle vehicle can grab a request another vehicle would have served
// sooner, so total latency is not monotone in the fleet size. Frozen case.
#[test]
fn extra_vehicle_can_hurt_greedy() {
    let inst = generate(&GenParams {
        n: 10,
        k: 1,
        seed: 20,
        geometry: Geometry::EuclideanGrid { side: 8, cell_ms: 60_000 },
        releases: ReleaseModel::Zero,
    })
    .unwrap();
    let rows = compare(&[("s20".into(), inst)], &[Algorithm::Greedy, Algorithm::KmlpFast], &[7, 8], 0, Execution::Parallel, false)
        .unwrap();
    let lat: Vec<i64> = rows.iter().map(|r| r.report.total_latency_ms).collect();
    assert_eq!(lat, vec![5_102_973, 5_199_633, 5_102_973, 5_199_633]);
}

#[test]
fn sweep_rows_follow_instance_algo_k_order() {
    let inst = |seed| {
        generate(&GenParams {
            n: 25,
            k: 1,
            seed,
            geometry: Geometry::EuclideanGrid { side: 6, cell_ms: 30_000 },
            releases: ReleaseModel::Poisson { rate: 0.05 },
        })
        .unwrap()
    };
    let insts = vec![("a".to_string(), inst(1)), ("b".to_string(), inst(2))];
    let algos = [Algorithm::KmlpFast, Algorithm::Greedy];
    let rows = compare(&insts, &algos, &[3, 1, 2], 9, Execution::Parallel, false).unwrap();
    let keys: Vec<(String, String, usize)> =
        rows.iter().map(|r| (r.instance.clone(), r.report.algorithm.clone(), r.report.k)).collect();
    let mut want = Vec::new();
    for i in ["a", "b"] {
        for a in ["kmlp-fast", "greedy"] {
            for k in [3, 1, 2] {
                want.push((i.to_string(), a.to_string(), k));
            }
        }
    }
    assert_eq!(keys, want);
}

//! Metric-versus-fleet-size sweeps.

use anyhow::Result;
use kmlp::{Execution, Instance};
use serde::{Deserialize, Serialize};

use crate::run::{run, Algorithm, RunReport};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CompareRow {
    pub instance: String,
    #[serde(flatten)]
    pub report: RunReport,
}

pub const COMPARE_CSV_HEADER: &str = "instance,algorithm,seed,k,n,totalLatencyMs,totalLatencySeconds,totalLengthSeconds,totalIdleSeconds,fairnessCV,wallClockMs";

impl CompareRow {
    pub fn csv_row(&self) -> String {
        format!("{},{}", self.instance, self.report.csv_row())
    }
}

/// One row per `(instance, algorithm, k)`, in that nesting order. Each
/// instance is re-fleeted with `k` vehicles at its first depot. Cells run in
/// parallel under `exec`; the output order does not depend on it.
pub fn compare(
    instances: &[(String, Instance)],
    algos: &[Algorithm],
    ks: &[usize],
    seed: u64,
    exec: Execution,
    timing: bool,
) -> Result<Vec<CompareRow>> {
    let cells: Vec<(usize, Algorithm, usize)> = (0..instances.len())
        .flat_map(|i| algos.iter().flat_map(move |&a| ks.iter().map(move |&k| (i, a, k))))
        .collect();
    // Cells already run in parallel, so each solve stays sequential.
    let inner = Execution::Sequential;
    exec.map(&cells, |&(i, algo, k)| {
        let (name, inst) = &instances[i];
        let inst = inst.with_fleet_size(k)?;
        let out = run(&inst, algo, seed, inner, timing)?;
        Ok(CompareRow { instance: name.clone(), report: out.report })
    })
    .into_iter()
    .collect()
}

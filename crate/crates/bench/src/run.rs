//! Running one algorithm on one instance and reporting its metrics.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, ensure, Result};
use kmlp::heuristics::{greedy_dispatch, kmlp_fast_with, KmlpFastConfig};
use kmlp::latency::eval_latency_with_releases;
use kmlp::oracle::{exact_multi_vehicle, exact_single_vehicle};
use kmlp::rounding::{solve_rounding, DirectionMode};
use kmlp::{Execution, Instance, Millis, RoutePlan};
use serde::{Deserialize, Serialize};

use crate::format::PlanFile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    Greedy,
    KmlpFast,
    Rounding,
    Exact,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Greedy, Algorithm::KmlpFast, Algorithm::Rounding, Algorithm::Exact];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::KmlpFast => "kmlp-fast",
            Algorithm::Rounding => "rounding",
            Algorithm::Exact => "exact",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| anyhow::anyhow!("unknown algorithm `{s}` (expected greedy, kmlp-fast, rounding or exact)"))
    }
}

/// Solve `instance` with `algo`. kMLP-Fast and rounding need a single depot.
pub fn solve(instance: &Instance, algo: Algorithm, seed: u64, exec: Execution) -> kmlp::Result<RoutePlan> {
    match algo {
        Algorithm::Greedy => Ok(greedy_dispatch(instance)),
        Algorithm::KmlpFast => kmlp_fast_with(instance, KmlpFastConfig { execution: exec, ..Default::default() }),
        Algorithm::Rounding => solve_rounding(instance, DirectionMode::Randomized { seed }, exec),
        Algorithm::Exact => {
            if instance.k() == 1 {
                let (_, order) = exact_single_vehicle(instance, exec)?;
                Ok(RoutePlan::new(vec![order]))
            } else {
                Ok(exact_multi_vehicle(instance, exec)?.1)
            }
        }
    }
}

/// Metrics of one run. Times are reported in seconds; the exact integer
/// total latency is kept alongside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub algorithm: String,
    pub seed: u64,
    pub k: usize,
    pub n: usize,
    pub total_latency_ms: Millis,
    pub total_latency_seconds: f64,
    pub total_length_seconds: f64,
    pub total_idle_seconds: f64,
    #[serde(rename = "fairnessCV")]
    pub fairness_cv: f64,
    pub wall_clock_ms: u64,
}

pub const REPORT_CSV_HEADER: &str =
    "algorithm,seed,k,n,totalLatencyMs,totalLatencySeconds,totalLengthSeconds,totalIdleSeconds,fairnessCV,wallClockMs";

impl RunReport {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.algorithm,
            self.seed,
            self.k,
            self.n,
            self.total_latency_ms,
            self.total_latency_seconds,
            self.total_length_seconds,
            self.total_idle_seconds,
            self.fairness_cv,
            self.wall_clock_ms
        )
    }
}

fn seconds(ms: Millis) -> f64 {
    ms as f64 / 1000.0
}

/// Report for `plan`, computed by the plan evaluator.
pub fn report_for(instance: &Instance, algo: Algorithm, seed: u64, plan: &RoutePlan, wall_clock_ms: u64) -> Result<RunReport> {
    let rep = plan.evaluate(instance)?;
    Ok(RunReport {
        algorithm: algo.name().to_string(),
        seed,
        k: instance.k(),
        n: instance.n(),
        total_latency_ms: rep.total,
        total_latency_seconds: seconds(rep.total),
        total_length_seconds: seconds(rep.total_length),
        total_idle_seconds: seconds(rep.idle_time),
        fairness_cv: rep.fairness_cv,
        wall_clock_ms,
    })
}

/// Recompute a report from the emitted plan file: ids are resolved again, each
/// route is walked request by request, and the totals are compared with the
/// report bit for bit.
pub fn audit(instance: &Instance, plan_file: &PlanFile, report: &RunReport) -> Result<()> {
    let plan = plan_file.to_plan(instance)?;
    let mut total: Millis = 0;
    let mut driving: Millis = 0;
    let mut waiting: Millis = 0;
    let mut lengths = Vec::with_capacity(plan.routes().len());
    for (v, route) in plan.routes().iter().enumerate() {
        let reqs: Vec<&kmlp::Request> = route.iter().map(|&j| instance.request(j)).collect();
        let lat = eval_latency_with_releases(instance.metric(), instance.depot(v), &reqs)?;
        total += lat.total();
        driving += lat.driving;
        waiting += lat.waiting;
        lengths.push(lat.driving);
    }
    let expected = RunReport {
        total_latency_ms: total,
        total_latency_seconds: seconds(total),
        total_length_seconds: seconds(driving),
        total_idle_seconds: seconds(waiting),
        fairness_cv: kmlp::latency::coefficient_of_variation(&lengths),
        ..report.clone()
    };
    ensure!(plan.served() == instance.n(), "plan serves {} of {} requests", plan.served(), instance.n());
    if &expected != report {
        bail!("report does not match recomputation: {report:?} vs {expected:?}");
    }
    Ok(())
}

/// Result of [`run`]: the plan file and its audited report.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub plan: PlanFile,
    pub report: RunReport,
}

/// Solve, report and self-audit. `timing` controls whether the wall clock is
/// recorded; without it the report depends only on its inputs.
pub fn run(instance: &Instance, algo: Algorithm, seed: u64, exec: Execution, timing: bool) -> Result<RunOutput> {
    let started = Instant::now();
    let plan = solve(instance, algo, seed, exec)?;
    let elapsed = if timing { started.elapsed().as_millis() as u64 } else { 0 };
    let report = report_for(instance, algo, seed, &plan, elapsed)?;
    let plan_file = PlanFile::new(algo.name(), &plan, instance);
    audit(instance, &plan_file, &report)?;
    Ok(RunOutput { plan: plan_file, report })
}

//! JSON instance and plan files.

use std::path::Path;

use anyhow::{bail, Context, Result};
use kmlp::{Instance, MetricSpace, Millis, Request, RoutePlan};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RequestRecord {
    pub id: String,
    pub src: String,
    pub dst: String,
    pub release_ms: Millis,
}

/// On-disk instance. `depots` holds either one location for the whole fleet
/// or one location per vehicle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub locations: Vec<String>,
    pub dist_ms: Vec<Vec<Millis>>,
    pub depots: Vec<String>,
    pub k: usize,
    pub requests: Vec<RequestRecord>,
}

impl InstanceFile {
    pub fn from_instance(instance: &Instance) -> Self {
        let m = instance.metric();
        let name = |v: usize| m.name(v).to_string();
        let depots = if instance.is_single_depot() {
            vec![name(instance.depot(0))]
        } else {
            instance.depots().iter().map(|&v| name(v)).collect()
        };
        Self {
            locations: m.locations().to_vec(),
            dist_ms: m.to_matrix(),
            depots,
            k: instance.k(),
            requests: instance
                .requests()
                .iter()
                .map(|r| RequestRecord {
                    id: r.id.clone(),
                    src: name(r.source),
                    dst: name(r.destination),
                    release_ms: r.release,
                })
                .collect(),
        }
    }

    /// Metric space without the triangle check, for `validate` reporting.
    pub fn metric(&self) -> Result<MetricSpace> {
        Ok(MetricSpace::new(self.locations.clone(), self.dist_ms.clone())?)
    }

    pub fn to_instance(&self) -> Result<Instance> {
        let metric = self.metric()?;
        let loc = |name: &str| {
            metric.index_of(name).with_context(|| format!("unknown location `{name}`"))
        };
        let depots: Vec<usize> = match self.depots.len() {
            1 => vec![loc(&self.depots[0])?; self.k],
            n if n == self.k => self.depots.iter().map(|d| loc(d)).collect::<Result<_>>()?,
            n => bail!("{n} depots listed for k = {}", self.k),
        };
        let requests = self
            .requests
            .iter()
            .map(|r| Ok(Request::new(r.id.clone(), loc(&r.src)?, loc(&r.dst)?, r.release_ms)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Instance::new(metric, requests, depots)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("instance serializes");
        s.push('\n');
        s
    }
}

/// Plan as request ids per vehicle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanFile {
    pub algorithm: String,
    pub routes: Vec<Vec<String>>,
}

impl PlanFile {
    pub fn new(algorithm: &str, plan: &RoutePlan, instance: &Instance) -> Self {
        Self { algorithm: algorithm.to_string(), routes: plan.to_ids(instance) }
    }

    pub fn to_plan(&self, instance: &Instance) -> Result<RoutePlan> {
        Ok(RoutePlan::from_ids(instance, &self.routes)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

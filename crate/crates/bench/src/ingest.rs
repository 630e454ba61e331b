//! Taxi trip CSV ingestion and export.
//!
//! Trips: header `id,release_s,src,dst`, release in epoch seconds.
//! Distances: the first row and column hold cell ids, entries are travel
//! seconds. Decimal seconds become integer milliseconds (half to even).

use std::collections::BTreeSet;
use std::io::{Read, Write};

use anyhow::{bail, Context, Result};
use kmlp::{Instance, MetricSpace, Millis, Request};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::decimal::{ms_to_seconds, seconds_to_ms};

/// One row of the trips file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripRecord {
    pub id: String,
    pub release_s: String,
    pub src: String,
    pub dst: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DepotChoice {
    Cell(String),
    /// Uniform over cells, from the given seed.
    Random(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IngestOptions {
    /// Window `[start, end)` in epoch milliseconds.
    pub window_start_ms: Millis,
    pub window_end_ms: Millis,
    pub k: usize,
    pub depot: DepotChoice,
    /// Replace the matrix by its shortest-path closure before validation.
    pub repair_metric: bool,
}

/// Parse a distances CSV into a metric space (no triangle check).
pub fn read_distances<R: Read>(reader: R) -> Result<MetricSpace> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(reader);
    let mut rows = rdr.records();
    let header = rows.next().context("distances file is empty")?.context("distances header")?;
    let cells: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let mut matrix = Vec::with_capacity(cells.len());
    for (i, row) in rows.enumerate() {
        let line = i + 2;
        let row = row.with_context(|| format!("distances line {line}"))?;
        if row.len() != cells.len() + 1 {
            bail!("distances line {line}: expected {} fields, found {}", cells.len() + 1, row.len());
        }
        let name = &row[0];
        if cells.get(matrix.len()).map(String::as_str) != Some(name) {
            bail!("distances line {line}: row `{name}` out of order with the header");
        }
        let values = row
            .iter()
            .skip(1)
            .map(|v| seconds_to_ms(v).with_context(|| format!("distances line {line}")))
            .collect::<Result<Vec<_>>>()?;
        matrix.push(values);
    }
    if matrix.len() != cells.len() {
        bail!("distances: {} rows for {} cells", matrix.len(), cells.len());
    }
    Ok(MetricSpace::new(cells, matrix)?)
}

pub fn read_trips<R: Read>(reader: R) -> Result<Vec<TripRecord>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers().context("trips header")?.clone();
    if headers.iter().collect::<Vec<_>>() != ["id", "release_s", "src", "dst"] {
        bail!("trips header must be `id,release_s,src,dst`");
    }
    rdr.deserialize()
        .enumerate()
        .map(|(i, rec)| rec.with_context(|| format!("trips line {}: malformed row", i + 2)))
        .collect()
}

/// Build an instance from parsed trips and distances.
pub fn build_instance(trips: &[TripRecord], metric: MetricSpace, opts: &IngestOptions) -> Result<Instance> {
    if opts.k == 0 {
        bail!("k must be at least 1");
    }
    let metric = if opts.repair_metric { metric.metric_closure() } else { metric };
    let mut requests = Vec::new();
    let mut unknown = BTreeSet::new();
    for (i, t) in trips.iter().enumerate() {
        let line = i + 2;
        let release = seconds_to_ms(&t.release_s).with_context(|| format!("trips line {line}"))?;
        if release < opts.window_start_ms || release >= opts.window_end_ms {
            continue;
        }
        let (s, d) = (metric.index_of(&t.src), metric.index_of(&t.dst));
        for (cell, idx) in [(&t.src, s), (&t.dst, d)] {
            if idx.is_none() {
                unknown.insert(format!("`{cell}` (line {line})"));
            }
        }
        if let (Some(s), Some(d)) = (s, d) {
            requests.push(Request::new(t.id.clone(), s, d, release - opts.window_start_ms));
        }
    }
    if !unknown.is_empty() {
        bail!("unknown cells: {}", unknown.into_iter().collect::<Vec<_>>().join(", "));
    }
    let depot = match &opts.depot {
        DepotChoice::Cell(c) => metric.index_of(c).with_context(|| format!("unknown depot cell `{c}`"))?,
        DepotChoice::Random(seed) => {
            if metric.is_empty() {
                bail!("no cells to pick a depot from");
            }
            ChaCha8Rng::seed_from_u64(*seed).random_range(0..metric.len())
        }
    };
    Ok(Instance::new(metric, requests, vec![depot; opts.k])?)
}

pub fn ingest<R1: Read, R2: Read>(trips: R1, distances: R2, opts: &IngestOptions) -> Result<Instance> {
    let metric = read_distances(distances)?;
    let trips = read_trips(trips)?;
    build_instance(&trips, metric, opts)
}

/// Write the requests back as a trips CSV, releases shifted by
/// `window_start_ms`, with three decimals.
pub fn export_trips<W: Write>(instance: &Instance, window_start_ms: Millis, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let m = instance.metric();
    for r in instance.requests() {
        w.serialize(TripRecord {
            id: r.id.clone(),
            release_s: ms_to_seconds(r.release + window_start_ms),
            src: m.name(r.source).to_string(),
            dst: m.name(r.destination).to_string(),
        })?;
    }
    if instance.n() == 0 {
        w.write_record(["id", "release_s", "src", "dst"])?;
    }
    w.flush()?;
    Ok(())
}

/// Write the metric as a distances CSV with three decimals.
pub fn export_distances<W: Write>(instance: &Instance, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let m = instance.metric();
    let mut header = vec!["cell".to_string()];
    header.extend(m.locations().iter().cloned());
    w.write_record(&header)?;
    for u in 0..m.len() {
        let mut row = vec![m.name(u).to_string()];
        row.extend((0..m.len()).map(|v| ms_to_seconds(m.dist(u, v))));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

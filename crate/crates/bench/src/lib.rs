//! Benchmark harness for the `kmlp` solvers: synthetic instance generation,
//! taxi CSV ingestion, single runs with self-audited reports, and fleet-size
//! sweeps.

pub mod compare;
pub mod decimal;
pub mod format;
pub mod generate;
pub mod ingest;
pub mod run;

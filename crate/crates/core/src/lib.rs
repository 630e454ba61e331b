//! Multi-vehicle minimum-latency routing with point-to-point requests and
//! release times.
//!
//! Distances are integer milliseconds and every latency computation is exact.
//! The crate provides route evaluation, the directed and backtracking metric
//! reductions, concatenation graphs, tree-based rounding, a min-cost flow
//! solver, the greedy and kMLP-Fast heuristics and brute-force oracles.
//!
//! With the default `parallel` feature, work that fans out (oracle search,
//! layer construction, arc costs, candidate trees) can run on rayon; pass
//! [`Execution::Sequential`] or build without the feature to stay on one
//! thread. Results do not depend on the execution mode.

pub mod arborescence;
pub mod concat;
pub mod error;
pub mod flow;
pub mod heuristics;
pub mod instance;
pub mod latency;
pub mod metric;
pub mod oracle;
pub mod par;
pub mod reductions;
pub mod rounding;

pub use error::{Error, Result};
pub use instance::{Instance, Request};
pub use latency::{LatencyReport, RouteLatency, RoutePlan};
pub use metric::{MetricSpace, Millis, TRIANGLE_TOLERANCE_MS};
pub use par::Execution;

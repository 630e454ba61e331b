//! Greedy dispatch and kMLP-Fast.

pub mod greedy;
pub mod kmlp_fast;

pub use greedy::{greedy_dispatch, greedy_paths};
pub use kmlp_fast::{kmlp_fast, kmlp_fast_with, KmlpFastConfig, LayerSolution, StartCost};

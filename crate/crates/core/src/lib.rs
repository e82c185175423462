//! Greedy maximization of string-submodular functions over finite-rank string
//! matroids, with per-instance certificates on the greedy performance ratio.
//!
//! The pipeline is `run_greedy` → `bound_report`; `oracle` supplies exhaustive
//! ground truth for small instances and `instances` builds weighted-coverage,
//! tabulated and lattice sensor-coverage problems.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod greedy;
pub mod instances;
pub mod matroid;
pub mod oracle;
pub mod report;
pub mod sweep;
pub mod seq;
pub mod submodularity;
pub mod valuation;

pub use bounds::{bound_report, BoundReport};
pub use error::{Error, Result};
pub use greedy::{run_greedy, GreedyTrace};
pub use matroid::{Independence, MatroidSpec, SetMatroid};
pub use oracle::{brute_force_opt, verify_instance, OracleResult, Verdict};
pub use seq::{Action, ActionSeq};
pub use valuation::{string_extension, SetFunction, StringFunction, Valuation};

/// Absolute tolerance used for every comparison against zero and every
/// inequality check on computed values.
pub const EPS: f64 = 1e-9;

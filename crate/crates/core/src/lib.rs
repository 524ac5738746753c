//! Repetition detection in random sequences, with exact cost instrumentation.
//!
//! Six detectors decide whether a sequence over `1..=n` has pairwise distinct
//! elements and count the work they do. Their expected costs under the
//! uniform model (every one of the `n^n` sequences equally likely) are
//! obtained three ways:
//!
//! - [`oracle`]: exhaustive enumeration, exact rational results;
//! - [`montecarlo`]: seeded sampling for large `n`, plus a least-squares fit
//!   of the TREE cost curve;
//! - [`analytics`]: closed-form expressions built on the Ramanujan
//!   Q-function.
//!
//! [`reports`] holds the published reference tables and regenerates them
//! from the three engines.

pub mod analytics;
pub mod detectors;
pub mod error;
pub mod montecarlo;
pub mod oracle;
pub mod reports;
pub mod rng;

pub use detectors::{
    run, run_backward, run_bucket, run_forward, run_garbage, run_linear, run_tree, AlgorithmId,
    BucketTrace, Detector, GarbagePolicy, RunMetrics, Sequence,
};
pub use error::{Error, Result};
pub use montecarlo::{FitResult, SampleSummary};
pub use oracle::{Enumerator, ExactSummary};
pub use reports::{GoldenTable, TableDiff, TableId};

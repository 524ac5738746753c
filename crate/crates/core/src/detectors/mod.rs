//! Instrumented repetition detectors.
//!
//! Each of the six algorithms decides whether a sequence over `1..=n` is
//! repetition-free and reports exactly how many comparisons and assignments
//! it performed. The comparison count is always the number of executions of
//! one designated test in the algorithm's loop:
//!
//! | algorithm | counted test |
//! |-----------|--------------|
//! | LINEAR    | `v[s[i]] > 0` |
//! | BACKWARD  | `s[i] = s[j]`, `j` descending from `i - 1` |
//! | FORWARD   | `s[i] = s[j]`, `j` ascending from `i + 1` |
//! | TREE      | one per tree node visited while searching `s[i]` |
//! | GARBAGE   | the compound stale-cell test, once per element |
//! | BUCKET    | `s[i] = Q[r, j]` during the row scan |
//!
//! Assignment counts: LINEAR counts the `n` zeroing writes plus increments,
//! TREE counts nodes created, GARBAGE counts writes into its working vector,
//! BUCKET counts the `m` counter initialisations plus two writes per stored
//! element, BACKWARD and FORWARD perform none.

mod algorithms;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) use algorithms::ceil_sqrt;
pub use algorithms::Scratch;

/// One input realization: `n` values, each in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Sequence {
    values: Vec<u32>,
}

impl Sequence {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::InvalidSequence("sequence must not be empty".into()));
        }
        if n > u32::MAX as usize {
            return Err(Error::InvalidSequence(format!("length {n} is too large")));
        }
        if let Some((pos, &v)) = values
            .iter()
            .enumerate()
            .find(|(_, &v)| v == 0 || v as usize > n)
        {
            return Err(Error::InvalidSequence(format!(
                "element {} is {v}, outside 1..={n}",
                pos + 1
            )));
        }
        Ok(Self { values })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }
}

impl TryFrom<Vec<u32>> for Sequence {
    type Error = Error;

    fn try_from(values: Vec<u32>) -> Result<Self> {
        Self::new(values)
    }
}

impl FromStr for Sequence {
    type Err = Error;

    /// Parses a comma-separated literal such as `2,1,3`.
    fn from_str(s: &str) -> Result<Self> {
        let mut values = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            let v: i64 = part
                .parse()
                .map_err(|_| Error::InvalidSequence(format!("`{part}` is not an integer")))?;
            let v = u32::try_from(v)
                .map_err(|_| Error::InvalidSequence(format!("{v} is out of range")))?;
            values.push(v);
        }
        Self::new(values)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum AlgorithmId {
    Linear,
    Backward,
    Forward,
    Tree,
    Garbage,
    Bucket,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 6] = [
        AlgorithmId::Linear,
        AlgorithmId::Backward,
        AlgorithmId::Forward,
        AlgorithmId::Tree,
        AlgorithmId::Garbage,
        AlgorithmId::Bucket,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmId::Linear => "LINEAR",
            AlgorithmId::Backward => "BACKWARD",
            AlgorithmId::Forward => "FORWARD",
            AlgorithmId::Tree => "TREE",
            AlgorithmId::Garbage => "GARBAGE",
            AlgorithmId::Bucket => "BUCKET",
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AlgorithmId::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Unknown {
                kind: "algorithm",
                name: s.to_string(),
            })
    }
}

/// Outcome and cost counters of one detector run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RunMetrics {
    pub good: bool,
    pub comparisons: u64,
    pub assignments: u64,
    /// 1-based position of the element whose processing exposed the
    /// repetition. `None` iff the sequence is good.
    pub first_repeat_position: Option<usize>,
}

/// How GARBAGE's working vector is filled before the run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GarbagePolicy {
    #[default]
    Zeroed,
    Constant(i64),
    /// Each cell independently uniform on `[-n, 2n]`, drawn from the pinned
    /// generator seeded with this value.
    SeededRandom(u64),
}

impl fmt::Display for GarbagePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GarbagePolicy::Zeroed => f.write_str("zeroed"),
            GarbagePolicy::Constant(c) => write!(f, "const:{c}"),
            GarbagePolicy::SeededRandom(s) => write!(f, "seeded:{s}"),
        }
    }
}

impl FromStr for GarbagePolicy {
    type Err = Error;

    /// Accepts `zeroed`, `const:<c>` and `seeded:<seed>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Unknown {
            kind: "garbage policy",
            name: s.to_string(),
        };
        let s = s.trim();
        if s.eq_ignore_ascii_case("zeroed") {
            return Ok(GarbagePolicy::Zeroed);
        }
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        match kind.to_ascii_lowercase().as_str() {
            "const" | "constant" => arg.parse().map(GarbagePolicy::Constant).map_err(|_| bad()),
            "seeded" | "random" => arg
                .parse()
                .map(GarbagePolicy::SeededRandom)
                .map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

/// BUCKET's row state when it stopped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BucketTrace {
    /// Number of rows, `ceil(sqrt(n))`.
    pub m: usize,
    /// Elements stored in each row at termination.
    pub occupancy: Vec<u32>,
    /// Comparisons spent on the element that exposed the repetition; zero
    /// for good sequences.
    pub last_row_comparisons: u64,
}

const WHOLE: &str = "a complete input always decides";

pub fn run_linear(s: &Sequence) -> RunMetrics {
    Scratch::default().linear(s.n(), s.values()).expect(WHOLE)
}

pub fn run_backward(s: &Sequence) -> RunMetrics {
    algorithms::backward(s.n(), s.values()).expect(WHOLE)
}

pub fn run_forward(s: &Sequence) -> RunMetrics {
    algorithms::forward(s.n(), s.values()).expect(WHOLE)
}

pub fn run_tree(s: &Sequence) -> RunMetrics {
    Scratch::default().tree(s.n(), s.values()).expect(WHOLE)
}

pub fn run_garbage(s: &Sequence, policy: GarbagePolicy) -> RunMetrics {
    Scratch::default()
        .garbage(s.n(), s.values(), policy)
        .expect(WHOLE)
}

pub fn run_bucket(s: &Sequence) -> (RunMetrics, BucketTrace) {
    let mut scratch = Scratch::default();
    let metrics = scratch.bucket(s.n(), s.values()).expect(WHOLE);
    (metrics, scratch.bucket_trace())
}

/// Uniform dispatch. A policy is accepted only for GARBAGE, which defaults
/// to [`GarbagePolicy::Zeroed`].
pub fn run(
    algorithm: AlgorithmId,
    s: &Sequence,
    policy: Option<GarbagePolicy>,
) -> Result<RunMetrics> {
    Ok(Detector::new(algorithm, policy)?.run(s))
}

/// A detector bound to one algorithm that reuses its working storage across
/// runs. Used by the enumeration and sampling engines.
#[derive(Debug)]
pub struct Detector {
    algorithm: AlgorithmId,
    policy: GarbagePolicy,
    scratch: Scratch,
}

impl Detector {
    pub fn new(algorithm: AlgorithmId, policy: Option<GarbagePolicy>) -> Result<Self> {
        if policy.is_some() && algorithm != AlgorithmId::Garbage {
            return Err(Error::PolicyNotApplicable(algorithm));
        }
        Ok(Self {
            algorithm,
            policy: policy.unwrap_or_default(),
            scratch: Scratch::default(),
        })
    }

    pub fn algorithm(&self) -> AlgorithmId {
        self.algorithm
    }

    pub fn run(&mut self, s: &Sequence) -> RunMetrics {
        self.run_values(s.values())
    }

    /// Runs on raw values already known to lie in `1..=len`.
    pub(crate) fn run_values(&mut self, values: &[u32]) -> RunMetrics {
        self.run_prefix(values.len(), values).expect(WHOLE)
    }

    /// Runs on the first `prefix.len()` values of an input of length `n`.
    /// Returns `None` when the prefix ends before the outcome is decided;
    /// otherwise the result equals a run on the whole input.
    pub(crate) fn run_prefix(&mut self, n: usize, prefix: &[u32]) -> Option<RunMetrics> {
        debug_assert!(!prefix.is_empty() && prefix.len() <= n);
        match self.algorithm {
            AlgorithmId::Linear => self.scratch.linear(n, prefix),
            AlgorithmId::Backward => algorithms::backward(n, prefix),
            AlgorithmId::Forward => algorithms::forward(n, prefix),
            AlgorithmId::Tree => self.scratch.tree(n, prefix),
            AlgorithmId::Garbage => self.scratch.garbage(n, prefix, self.policy),
            AlgorithmId::Bucket => self.scratch.bucket(n, prefix),
        }
    }

    /// Row occupancy and first-repeat comparisons of the most recent BUCKET run.
    pub(crate) fn last_bucket_trace(&self) -> (&[u32], u64) {
        self.scratch.bucket_state()
    }
}

//! Exhaustive enumeration over all `n^n` inputs.
//!
//! Sequences are visited in base-`n` odometer order (rightmost digit
//! fastest), so sequence number `k` is `k` written in base `n` with every
//! digit shifted up by one. Work is split into contiguous index ranges, one
//! private accumulator per range, and reduced by integer addition: the result
//! does not depend on how many workers ran.
//!
//! Accumulators are `u64`. The largest sum reachable under the hard cap is
//! the comparison sum of BACKWARD or FORWARD at `n = 9`, bounded by
//! `9^9 * 36 < 1.4e10`, far below `2^63`.

use std::ops::{AddAssign, Range};
use std::thread;

use num_bigint::BigUint;
use serde::Serialize;

use crate::detectors::{AlgorithmId, Detector, GarbagePolicy};
use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 8;
pub const HARD_MAX_N: usize = 9;

/// Environment variable that overrides [`DEFAULT_CAP`].
pub const CAP_ENV_VAR: &str = "REPFREE_ENUM_CAP";

/// Exact aggregate over every input of length `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactSummary {
    pub n: usize,
    pub algorithm: AlgorithmId,
    pub policy: Option<GarbagePolicy>,
    pub total_inputs: u64,
    pub good_count: u64,
    pub comparison_sum: u64,
    pub assignment_sum: u64,
}

impl ExactSummary {
    pub fn expected_comparisons(&self) -> f64 {
        self.comparison_sum as f64 / self.total_inputs as f64
    }

    pub fn expected_assignments(&self) -> f64 {
        self.assignment_sum as f64 / self.total_inputs as f64
    }

    /// `comparison_sum / total_inputs` in lowest terms.
    pub fn expected_comparisons_ratio(&self) -> (u64, u64) {
        reduce(self.comparison_sum, self.total_inputs)
    }

    pub fn expected_assignments_ratio(&self) -> (u64, u64) {
        reduce(self.assignment_sum, self.total_inputs)
    }

    /// Exact decimal rendering, rounded half away from zero.
    pub fn expected_comparisons_decimal(&self, places: usize) -> String {
        ratio_to_decimal(self.comparison_sum, self.total_inputs, places)
    }

    pub fn expected_assignments_decimal(&self, places: usize) -> String {
        ratio_to_decimal(self.assignment_sum, self.total_inputs, places)
    }
}

/// Partial sums over one index range.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Accumulator {
    pub inputs: u64,
    pub good: u64,
    pub comparisons: u64,
    pub assignments: u64,
}

impl AddAssign for Accumulator {
    fn add_assign(&mut self, rhs: Self) {
        self.inputs += rhs.inputs;
        self.good += rhs.good;
        self.comparisons += rhs.comparisons;
        self.assignments += rhs.assignments;
    }
}

/// Bucket occupancy and first-repeat cost summed over every input.
///
/// Good inputs contribute their final occupancy and zero first-repeat
/// comparisons.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BucketStats {
    pub n: usize,
    pub m: usize,
    pub total_inputs: u64,
    pub occupancy_sums: Vec<u64>,
    pub first_repeat_comparison_sum: u64,
}

impl BucketStats {
    pub fn mean_occupancy(&self) -> Vec<f64> {
        self.occupancy_sums
            .iter()
            .map(|&s| s as f64 / self.total_inputs as f64)
            .collect()
    }

    pub fn mean_first_repeat_comparisons(&self) -> f64 {
        self.first_repeat_comparison_sum as f64 / self.total_inputs as f64
    }

    fn merge(&mut self, other: &BucketStats) {
        self.total_inputs += other.total_inputs;
        self.first_repeat_comparison_sum += other.first_repeat_comparison_sum;
        for (a, b) in self.occupancy_sums.iter_mut().zip(&other.occupancy_sums) {
            *a += b;
        }
    }
}

/// Enumeration settings: size cap and worker count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Enumerator {
    cap: usize,
    workers: usize,
}

impl Default for Enumerator {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            workers: 1,
        }
    }
}

impl Enumerator {
    /// Default settings with the cap taken from [`CAP_ENV_VAR`] when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(CAP_ENV_VAR) {
            Ok(raw) => {
                let cap = raw.trim().parse::<usize>().map_err(|_| {
                    Error::InvalidParameter(format!(
                        "{CAP_ENV_VAR}=`{raw}` is not a positive integer"
                    ))
                })?;
                Self::default().with_cap(cap)
            }
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Result<Self> {
        if cap == 0 || cap > HARD_MAX_N {
            return Err(Error::InvalidParameter(format!(
                "enumeration cap must be in 1..={HARD_MAX_N}, got {cap}"
            )));
        }
        self.cap = cap;
        Ok(self)
    }

    pub fn with_workers(mut self, workers: usize) -> Result<Self> {
        if workers == 0 {
            return Err(Error::InvalidParameter("workers must be at least 1".into()));
        }
        self.workers = workers;
        Ok(self)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    fn check_n(&self, n: usize) -> Result<u64> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        if n > self.cap {
            return Err(Error::CapExceeded { n, cap: self.cap });
        }
        Ok((n as u64).pow(n as u32))
    }

    pub fn enumerate(
        &self,
        n: usize,
        algorithm: AlgorithmId,
        policy: Option<GarbagePolicy>,
    ) -> Result<ExactSummary> {
        let total = self.check_n(n)?;
        // Fail early on a bad algorithm/policy pair.
        Detector::new(algorithm, policy)?;
        let parts = split(total, self.workers);
        let partials: Vec<Accumulator> = thread::scope(|scope| {
            let handles: Vec<_> = parts
                .into_iter()
                .map(|range| scope.spawn(move || accumulate_range(n, algorithm, policy, range)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("enumeration worker panicked"))
                .collect::<Result<_>>()
        })?;
        let mut acc = Accumulator::default();
        for p in partials {
            acc += p;
        }
        debug_assert_eq!(acc.inputs, total);
        Ok(ExactSummary {
            n,
            algorithm,
            policy,
            total_inputs: acc.inputs,
            good_count: acc.good,
            comparison_sum: acc.comparisons,
            assignment_sum: acc.assignments,
        })
    }

    pub fn bucket_stats(&self, n: usize) -> Result<BucketStats> {
        let total = self.check_n(n)?;
        let parts = split(total, self.workers);
        let partials: Vec<BucketStats> = thread::scope(|scope| {
            let handles: Vec<_> = parts
                .into_iter()
                .map(|range| scope.spawn(move || bucket_stats_range(n, range)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("enumeration worker panicked"))
                .collect()
        });
        let mut iter = partials.into_iter();
        let mut stats = iter.next().expect("at least one part");
        for p in iter {
            stats.merge(&p);
        }
        Ok(stats)
    }
}

pub fn enumerate(
    n: usize,
    algorithm: AlgorithmId,
    policy: Option<GarbagePolicy>,
) -> Result<ExactSummary> {
    Enumerator::default().enumerate(n, algorithm, policy)
}

pub fn enumerate_bucket_stats(n: usize) -> Result<BucketStats> {
    Enumerator::default().bucket_stats(n)
}

/// `n!`, the number of repetition-free sequences of length `n`.
pub fn good_count(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

/// Splits `0..total` into `parts` contiguous ranges (some possibly empty).
pub fn split(total: u64, parts: usize) -> Vec<Range<u64>> {
    let parts = parts.max(1) as u64;
    (0..parts)
        .map(|k| {
            let lo = (u128::from(total) * u128::from(k) / u128::from(parts)) as u64;
            let hi = (u128::from(total) * u128::from(k + 1) / u128::from(parts)) as u64;
            lo..hi
        })
        .collect()
}

/// Base-`n` odometer positioned at a given sequence number.
struct Odometer {
    n: u32,
    values: Vec<u32>,
}

impl Odometer {
    fn at(n: usize, mut index: u64) -> Self {
        let mut values = vec![1u32; n];
        for slot in values.iter_mut().rev() {
            *slot = (index % n as u64) as u32 + 1;
            index /= n as u64;
        }
        Self {
            n: n as u32,
            values,
        }
    }

    fn advance(&mut self) {
        for slot in self.values.iter_mut().rev() {
            if *slot < self.n {
                *slot += 1;
                return;
            }
            *slot = 1;
        }
    }
}

/// Runs `algorithm` on sequence numbers `range` of length `n`.
pub fn accumulate_range(
    n: usize,
    algorithm: AlgorithmId,
    policy: Option<GarbagePolicy>,
    range: Range<u64>,
) -> Result<Accumulator> {
    let mut detector = Detector::new(algorithm, policy)?;
    let mut acc = Accumulator::default();
    if range.is_empty() {
        return Ok(acc);
    }
    let mut odo = Odometer::at(n, range.start);
    for _ in range {
        let m = detector.run_values(&odo.values);
        acc.inputs += 1;
        acc.good += u64::from(m.good);
        acc.comparisons += m.comparisons;
        acc.assignments += m.assignments;
        odo.advance();
    }
    Ok(acc)
}

fn bucket_stats_range(n: usize, range: Range<u64>) -> BucketStats {
    let m = crate::detectors::ceil_sqrt(n);
    let mut stats = BucketStats {
        n,
        m,
        total_inputs: 0,
        occupancy_sums: vec![0; m],
        first_repeat_comparison_sum: 0,
    };
    if range.is_empty() {
        return stats;
    }
    let mut detector = Detector::new(AlgorithmId::Bucket, None).expect("bucket takes no policy");
    let mut odo = Odometer::at(n, range.start);
    for _ in range {
        detector.run_values(&odo.values);
        let (occupancy, last) = detector.last_bucket_trace();
        for (sum, &o) in stats.occupancy_sums.iter_mut().zip(occupancy) {
            *sum += u64::from(o);
        }
        stats.first_repeat_comparison_sum += last;
        stats.total_inputs += 1;
        odo.advance();
    }
    stats
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn reduce(num: u64, den: u64) -> (u64, u64) {
    let g = gcd(num, den).max(1);
    (num / g, den / g)
}

/// Exact decimal expansion of `num / den` to `places` digits, rounded half
/// away from zero.
pub fn ratio_to_decimal(num: u64, den: u64, places: usize) -> String {
    assert!(den > 0, "zero denominator");
    let scale = 10u128.pow(places as u32);
    let scaled = u128::from(num) * scale;
    let den = u128::from(den);
    let mut q = scaled / den;
    if (scaled % den) * 2 >= den {
        q += 1;
    }
    let int = q / scale;
    if places == 0 {
        return int.to_string();
    }
    let frac = q % scale;
    format!("{int}.{frac:0places$}")
}

//! Seeded random-input simulation.
//!
//! Input number `k` of a run is drawn from its own stream,
//! [`input_stream`]`(seed, k)`. Workers take fixed chunks of [`CHUNK_SIZE`]
//! inputs and all sums are exact integers, so a summary depends only on
//! `(n, algorithm, policy, sample_count, seed)` and the generator version,
//! never on the worker count.
//!
//! Inputs are generated lazily: a detector first sees a prefix of about
//! `4 sqrt(n)` values, which holds the first repetition with overwhelming
//! probability, and the prefix doubles until the outcome is decided. Every
//! reported count equals that of a run on the whole input, which
//! [`draw_input`] materializes. FORWARD always needs the whole input.

mod fit;

use std::thread;

use serde::Serialize;

use crate::detectors::{ceil_sqrt, AlgorithmId, Detector, GarbagePolicy};
use crate::error::{Error, Result};
use crate::rng::{PinnedRng, GENERATOR_VERSION, SEED_MIX};

pub use fit::{fit_sqrtnlogn, sqrt_n_log2_n, FitResult};

pub const CHUNK_SIZE: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleSummary {
    pub n: usize,
    pub algorithm: AlgorithmId,
    pub policy: Option<GarbagePolicy>,
    pub sample_count: u64,
    pub seed: u64,
    pub mean_comparisons: f64,
    pub mean_assignments: f64,
    /// Unbiased (`count - 1`) variance of the per-run comparison count.
    pub comparison_variance: f64,
    pub std_error: f64,
    pub good_count: u64,
    pub comparison_sum: u128,
    pub assignment_sum: u128,
    pub generator_version: String,
    pub workers: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Sums {
    runs: u64,
    good: u64,
    comparisons: u128,
    comparisons_sq: u128,
    assignments: u128,
}

impl Sums {
    fn merge(&mut self, other: Sums) {
        self.runs += other.runs;
        self.good += other.good;
        self.comparisons += other.comparisons;
        self.comparisons_sq += other.comparisons_sq;
        self.assignments += other.assignments;
    }
}

/// Fills `buf` with `n` independent draws, each uniform on `1..=n`.
pub fn fill_uniform(rng: &mut PinnedRng, n: usize, buf: &mut Vec<u32>) {
    buf.clear();
    buf.extend((0..n).map(|_| rng.one_to(n as u32)));
}

/// The stream that generates input number `index` of a run seeded with `seed`.
pub fn input_stream(seed: u64, index: u64) -> PinnedRng {
    PinnedRng::substream(seed, index)
}

/// Input number `index` of a run seeded with `seed`, in full.
pub fn draw_input(seed: u64, index: u64, n: usize, buf: &mut Vec<u32>) {
    fill_uniform(&mut input_stream(seed, index), n, buf);
}

fn first_prefix(n: usize, algorithm: AlgorithmId) -> usize {
    if algorithm == AlgorithmId::Forward {
        n
    } else {
        (4 * ceil_sqrt(n) + 16).min(n)
    }
}

/// Per-`n` seed used by [`sweep`]: `base_seed XOR (SEED_MIX * n)`.
pub fn sweep_seed(base_seed: u64, n: usize) -> u64 {
    base_seed ^ SEED_MIX.wrapping_mul(n as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampler {
    workers: usize,
}

impl Default for Sampler {
    fn default() -> Self {
        Self { workers: 1 }
    }
}

impl Sampler {
    pub fn with_workers(workers: usize) -> Result<Self> {
        if workers == 0 {
            return Err(Error::InvalidParameter("workers must be at least 1".into()));
        }
        Ok(Self { workers })
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn sample(
        &self,
        n: usize,
        algorithm: AlgorithmId,
        sample_count: u64,
        seed: u64,
        policy: Option<GarbagePolicy>,
    ) -> Result<SampleSummary> {
        if n == 0 || n > u32::MAX as usize {
            return Err(Error::InvalidParameter(format!(
                "n must be in 1..=2^32-1, got {n}"
            )));
        }
        if sample_count == 0 {
            return Err(Error::InvalidParameter(
                "sample count must be at least 1".into(),
            ));
        }
        Detector::new(algorithm, policy)?;

        let chunks = sample_count.div_ceil(CHUNK_SIZE);
        let workers = self.workers.min(chunks as usize).max(1);
        let run_worker = |first: u64| -> Sums {
            let mut detector = Detector::new(algorithm, policy).expect("validated above");
            let mut buf = Vec::with_capacity(n);
            let mut sums = Sums::default();
            let mut chunk = first;
            while chunk < chunks {
                let lo = chunk * CHUNK_SIZE;
                let hi = (lo + CHUNK_SIZE).min(sample_count);
                for index in lo..hi {
                    let mut rng = input_stream(seed, index);
                    buf.clear();
                    let mut want = first_prefix(n, algorithm);
                    let m = loop {
                        buf.extend((buf.len()..want).map(|_| rng.one_to(n as u32)));
                        if let Some(m) = detector.run_prefix(n, &buf) {
                            break m;
                        }
                        want = (2 * want).min(n);
                    };
                    let c = u128::from(m.comparisons);
                    sums.runs += 1;
                    sums.good += u64::from(m.good);
                    sums.comparisons += c;
                    sums.comparisons_sq += c * c;
                    sums.assignments += u128::from(m.assignments);
                }
                chunk += workers as u64;
            }
            sums
        };

        let mut total = Sums::default();
        if workers == 1 {
            total = run_worker(0);
        } else {
            let parts: Vec<Sums> = thread::scope(|scope| {
                let handles: Vec<_> = (0..workers as u64)
                    .map(|w| {
                        let run_worker = &run_worker;
                        scope.spawn(move || run_worker(w))
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("sampling worker panicked"))
                    .collect()
            });
            for p in parts {
                total.merge(p);
            }
        }
        debug_assert_eq!(total.runs, sample_count);

        let count = sample_count as f64;
        let variance = if sample_count > 1 {
            // Exact numerator: N * sum(x^2) - (sum x)^2.
            let numer = u128::from(sample_count) * total.comparisons_sq
                - total.comparisons * total.comparisons;
            numer as f64 / (count * (count - 1.0))
        } else {
            0.0
        };
        Ok(SampleSummary {
            n,
            algorithm,
            policy,
            sample_count,
            seed,
            mean_comparisons: total.comparisons as f64 / count,
            mean_assignments: total.assignments as f64 / count,
            comparison_variance: variance,
            std_error: (variance / count).sqrt(),
            good_count: total.good,
            comparison_sum: total.comparisons,
            assignment_sum: total.assignments,
            generator_version: GENERATOR_VERSION.to_string(),
            workers: self.workers,
        })
    }

    pub fn sweep(
        &self,
        n_values: &[usize],
        algorithm: AlgorithmId,
        sample_count: u64,
        base_seed: u64,
        policy: Option<GarbagePolicy>,
    ) -> Result<Vec<SampleSummary>> {
        if n_values.is_empty() {
            return Err(Error::InvalidParameter("sweep needs at least one n".into()));
        }
        n_values
            .iter()
            .map(|&n| self.sample(n, algorithm, sample_count, sweep_seed(base_seed, n), policy))
            .collect()
    }
}

pub fn sample(
    n: usize,
    algorithm: AlgorithmId,
    sample_count: u64,
    seed: u64,
    policy: Option<GarbagePolicy>,
) -> Result<SampleSummary> {
    Sampler::default().sample(n, algorithm, sample_count, seed, policy)
}

pub fn sweep(
    n_values: &[usize],
    algorithm: AlgorithmId,
    sample_count: u64,
    base_seed: u64,
) -> Result<Vec<SampleSummary>> {
    Sampler::default().sweep(n_values, algorithm, sample_count, base_seed, None)
}

//! Closed-form expected costs and their correction terms.
//!
//! Everything here is built on the Ramanujan Q-function
//! `Q(n) = sum_{k=1..n} n! / ((n-k)! n^k)`, evaluated through the
//! falling-factorial products `p_k = prod_{i<k} (1 - i/n)` so that no
//! factorial or power is ever formed. The sums stop once `p_k < 1e-18`,
//! which keeps `n` up to `10^6` cheap in `f64`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Terms below this are dropped from the Q-function sums.
pub const SUM_CUTOFF: f64 = 1e-18;

/// Published least-squares constants for the TREE comparison count.
pub const TREE_FIT_SLOPE: f64 = 1.245754;
pub const TREE_FIT_INTERCEPT: f64 = -0.273588;

/// Calls `f(k, p_k)` for `k = 1, 2, ...` until `k = n` or `p_k` drops below
/// [`SUM_CUTOFF`].
fn for_each_falling(n: u64, mut f: impl FnMut(f64, f64)) {
    let nf = n as f64;
    let mut p = 1.0;
    for k in 1..=n {
        if p < SUM_CUTOFF {
            break;
        }
        f(k as f64, p);
        p *= 1.0 - k as f64 / nf;
    }
}

/// `n! / n^n` as the product of `i / n`.
pub fn factorial_ratio(n: u64) -> f64 {
    let nf = n as f64;
    let mut p = 1.0;
    for i in 1..=n {
        p *= i as f64 / nf;
        if p == 0.0 {
            break;
        }
    }
    p
}

/// Ramanujan's `Q(n)`: the expected number of distinct values drawn before
/// the first repetition.
pub fn ramanujan_q(n: u64) -> f64 {
    let mut sum = 0.0;
    for_each_falling(n, |_, p| sum += p);
    sum
}

/// `kappa(n) = 1/3 - sqrt(pi n / 2) + Q(n)`.
pub fn kappa(n: u64) -> f64 {
    1.0 / 3.0 - (PI * n as f64 / 2.0).sqrt() + ramanujan_q(n)
}

pub fn delta(n: u64) -> f64 {
    kappa(n) - factorial_ratio(n)
}

/// Expected LINEAR comparisons, `sqrt(pi n / 2) + 2/3 + kappa(n) - n!/n^n`.
pub fn c_linear(n: u64) -> f64 {
    (PI * n as f64 / 2.0).sqrt() + 2.0 / 3.0 + kappa(n) - factorial_ratio(n)
}

/// Expected LINEAR comparisons from the direct sum
/// `1 - n!/n^n + sum_k n! k^2 / ((n-k)! n^(k+1))`.
pub fn c_linear_sum_form(n: u64) -> f64 {
    let nf = n as f64;
    let mut sum = 0.0;
    for_each_falling(n, |k, p| sum += p * k * k / nf);
    1.0 - factorial_ratio(n) + sum
}

/// Expected LINEAR running time, `n + sqrt(2 pi n) + 7/3 + 2 delta(n)`.
pub fn t_linear(n: u64) -> f64 {
    let nf = n as f64;
    nf + (2.0 * PI * nf).sqrt() + 7.0 / 3.0 + 2.0 * delta(n)
}

pub fn alpha(n: u64) -> f64 {
    kappa(n) / 2.0 + factorial_ratio(n) * (n as f64 + 1.0) / 2.0
}

/// Expected BACKWARD comparisons, `n - sqrt(pi n / 8) + 2/3 - alpha(n)`.
pub fn c_backward(n: u64) -> f64 {
    let nf = n as f64;
    nf - (PI * nf / 8.0).sqrt() + 2.0 / 3.0 - alpha(n)
}

/// Expected BACKWARD running time: [`c_backward`] plus `2/3`.
pub fn t_backward(n: u64) -> f64 {
    let nf = n as f64;
    nf - (PI * nf / 8.0).sqrt() + 4.0 / 3.0 - alpha(n)
}

pub fn mu(n: u64) -> f64 {
    let root = (n as f64).sqrt();
    1.0 / (3.0 * root) - kappa(n) / root
}

/// Expected occupancy of one bucket at the first repetition.
pub fn e_bucket_occupancy(n: u64) -> f64 {
    (PI / 2.0).sqrt() - mu(n)
}

pub fn eta(n: u64) -> f64 {
    (1.0 / 3.0 + (PI / 8.0).sqrt() - kappa(n) / 2.0) / ((n as f64).sqrt() + 2.0)
}

/// Expected comparisons spent on the element that repeats.
pub fn e_first_repeat_comparisons(n: u64) -> f64 {
    1.0 + (PI / 8.0).sqrt() - eta(n)
}

pub fn rho(n: u64) -> f64 {
    (5.0 / 6.0 - (9.0 * PI / 8.0).sqrt() - 1.5 * kappa(n)) / ((n as f64).sqrt() + 1.0)
}

/// Expected BUCKET comparisons within one bucket.
pub fn c_bucket_per_bucket(n: u64) -> f64 {
    (n as f64).sqrt() + 1.0 / 3.0 - (PI / 8.0).sqrt() + rho(n)
}

pub fn phi(n: u64) -> f64 {
    let k = kappa(n);
    let tail = (3.0 * (PI / 8.0).sqrt() - 1.0 / 3.0 - 1.5 * k) / ((n as f64).sqrt() + 1.0);
    3.0 * k - rho(n) - 3.0 * eta(n) - factorial_ratio(n) - tail
}

/// Expected BUCKET running time,
/// `(3 + 3 sqrt(pi/2)) sqrt(n) + sqrt(25 pi / 8) + phi(n)`.
pub fn t_bucket(n: u64) -> f64 {
    (3.0 + 3.0 * (PI / 2.0).sqrt()) * (n as f64).sqrt() + (25.0 * PI / 8.0).sqrt() + phi(n)
}

/// The published fit `1.245754 sqrt(n) log2(n) - 0.273588` for TREE.
pub fn tree_fit_estimate(n: u64) -> f64 {
    let nf = n as f64;
    TREE_FIT_SLOPE * nf.sqrt() * nf.log2() + TREE_FIT_INTERCEPT
}

/// Names of the evaluators reachable through [`evaluate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    Kappa,
    Delta,
    Alpha,
    Mu,
    Eta,
    Rho,
    Phi,
    FactorialRatio,
    CLinear,
    TLinear,
    CBackward,
    TBackward,
    EBucketOccupancy,
    EFirstRepeatComparisons,
    CBucketPerBucket,
    TBucket,
    TreeFitEstimate,
}

impl Formula {
    pub const ALL: [Formula; 17] = [
        Formula::Kappa,
        Formula::Delta,
        Formula::Alpha,
        Formula::Mu,
        Formula::Eta,
        Formula::Rho,
        Formula::Phi,
        Formula::FactorialRatio,
        Formula::CLinear,
        Formula::TLinear,
        Formula::CBackward,
        Formula::TBackward,
        Formula::EBucketOccupancy,
        Formula::EFirstRepeatComparisons,
        Formula::CBucketPerBucket,
        Formula::TBucket,
        Formula::TreeFitEstimate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Formula::Kappa => "kappa",
            Formula::Delta => "delta",
            Formula::Alpha => "alpha",
            Formula::Mu => "mu",
            Formula::Eta => "eta",
            Formula::Rho => "rho",
            Formula::Phi => "phi",
            Formula::FactorialRatio => "factorial_ratio",
            Formula::CLinear => "c_linear",
            Formula::TLinear => "t_linear",
            Formula::CBackward => "c_backward",
            Formula::TBackward => "t_backward",
            Formula::EBucketOccupancy => "e_bucket_occupancy",
            Formula::EFirstRepeatComparisons => "e_first_repeat_comparisons",
            Formula::CBucketPerBucket => "c_bucket_per_bucket",
            Formula::TBucket => "t_bucket",
            Formula::TreeFitEstimate => "tree_fit_estimate",
        }
    }

    pub fn eval(self, n: u64) -> f64 {
        match self {
            Formula::Kappa => kappa(n),
            Formula::Delta => delta(n),
            Formula::Alpha => alpha(n),
            Formula::Mu => mu(n),
            Formula::Eta => eta(n),
            Formula::Rho => rho(n),
            Formula::Phi => phi(n),
            Formula::FactorialRatio => factorial_ratio(n),
            Formula::CLinear => c_linear(n),
            Formula::TLinear => t_linear(n),
            Formula::CBackward => c_backward(n),
            Formula::TBackward => t_backward(n),
            Formula::EBucketOccupancy => e_bucket_occupancy(n),
            Formula::EFirstRepeatComparisons => e_first_repeat_comparisons(n),
            Formula::CBucketPerBucket => c_bucket_per_bucket(n),
            Formula::TBucket => t_bucket(n),
            Formula::TreeFitEstimate => tree_fit_estimate(n),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Formula::ALL
            .into_iter()
            .find(|f| f.name() == s.trim())
            .ok_or_else(|| Error::Unknown {
                kind: "formula",
                name: s.to_string(),
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AnalyticValue {
    pub name: Formula,
    pub n: u64,
    pub value: f64,
}

pub fn evaluate(name: Formula, n: u64) -> Result<AnalyticValue> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    Ok(AnalyticValue {
        name,
        n,
        value: name.eval(n),
    })
}

/// Rounds half away from zero to `places` decimals and returns the result in
/// units of `10^-places`.
pub fn round_to_units(x: f64, places: u32) -> i64 {
    (x * 10f64.powi(places as i32)).round() as i64
}

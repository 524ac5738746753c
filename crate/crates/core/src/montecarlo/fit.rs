use serde::Serialize;

use crate::error::{Error, Result};

/// Least-squares fit of `mean = a * sqrt(n) * log2(n) + b`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FitResult {
    pub coefficient_a: f64,
    pub intercept_b: f64,
    pub residual_rms: f64,
    pub points_used: Vec<(u64, f64)>,
}

impl FitResult {
    pub fn predict(&self, n: u64) -> f64 {
        self.coefficient_a * sqrt_n_log2_n(n) + self.intercept_b
    }
}

pub fn sqrt_n_log2_n(n: u64) -> f64 {
    let nf = n as f64;
    nf.sqrt() * nf.log2()
}

pub fn fit_sqrtnlogn(points: &[(u64, f64)]) -> Result<FitResult> {
    if points.len() < 2 {
        return Err(Error::DegenerateBasis(format!(
            "need at least two points, got {}",
            points.len()
        )));
    }
    if let Some(&(n, _)) = points.iter().find(|(n, _)| *n == 0) {
        return Err(Error::InvalidParameter(format!(
            "n = {n} has no basis value"
        )));
    }
    if let Some(&(n, y)) = points.iter().find(|(_, y)| !y.is_finite()) {
        return Err(Error::InvalidParameter(format!("mean at n = {n} is {y}")));
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| sqrt_n_log2_n(n)).collect();
    if xs.iter().all(|&x| x == xs[0]) {
        return Err(Error::DegenerateBasis(
            "all points share the same sqrt(n)*log2(n) value".into(),
        ));
    }
    let count = points.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / count;
    let y_mean = points.iter().map(|&(_, y)| y).sum::<f64>() / count;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (&x, &(_, y)) in xs.iter().zip(points) {
        sxx += (x - x_mean) * (x - x_mean);
        sxy += (x - x_mean) * (y - y_mean);
    }
    let a = sxy / sxx;
    let b = y_mean - a * x_mean;
    let sse: f64 = xs
        .iter()
        .zip(points)
        .map(|(&x, &(_, y))| (y - (a * x + b)).powi(2))
        .sum();
    Ok(FitResult {
        coefficient_a: a,
        intercept_b: b,
        residual_rms: (sse / count).sqrt(),
        points_used: points.to_vec(),
    })
}

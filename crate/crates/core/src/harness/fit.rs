//! Ordinary least squares on `(ln n, ln y)`.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Fits `y = exp(intercept) * n^slope`. Returns `None` with fewer than two
/// distinct sizes or any nonpositive value.
pub fn fit_power_law(samples: &[(f64, f64)]) -> Option<PowerFit> {
    if samples.iter().any(|&(n, y)| n <= 0.0 || y <= 0.0) {
        return None;
    }
    let pts: Vec<(f64, f64)> = samples.iter().map(|&(n, y)| (n.ln(), y.ln())).collect();
    let k = pts.len() as f64;
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if pts.len() < 2 || sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_tot: f64 = pts.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let ss_res: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Some(PowerFit { slope, intercept, r_squared })
}

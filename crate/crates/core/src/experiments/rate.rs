use super::sweep::{ErrorReport, ROUNDOFF_FLOOR};
use crate::error::{Error, Result};
use crate::sincdiff::DecayProfile;

/// Default window for rate fits.
pub const DEFAULT_WINDOW: (usize, usize) = (10, 60);

/// Least-squares slope of `ln E` against `sqrt(n)` over rows with
/// `n_lo <= n <= n_hi` and `E` above the roundoff floor.
///
/// For an error behaving like `C exp(-c sqrt(n))` the slope estimates `-c`.
pub fn fit_rate(report: &ErrorReport, l: usize, window: (usize, usize)) -> Result<f64> {
    if l > report.m {
        return Err(Error::usage(format!(
            "order {l} exceeds the report's m = {}",
            report.m
        )));
    }
    let points: Vec<(f64, f64)> = report
        .errors(l)
        .filter(|&(n, e)| n >= window.0 && n <= window.1 && e > ROUNDOFF_FLOOR)
        .map(|(n, e)| ((n as f64).sqrt(), e.ln()))
        .collect();
    least_squares_slope(&points)
}

pub fn least_squares_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints {
            found: points.len(),
        });
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

/// `-sqrt(π d μ)`, the slope predicted by the convergence theory.
pub fn theoretical_slope(profile: &DecayProfile) -> f64 {
    -profile.rate_constant()
}

//! Least-squares slope of `ln y` against `ln M`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const MIN_FIT_POINTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLogFit<T> {
    pub slope: T,
    pub intercept: T,
    /// Largest absolute residual in log space.
    pub max_residual: T,
}

/// Fits `ln y = slope ln M + intercept`. `M` must be strictly increasing and
/// every value positive.
pub fn fit_loglog_slope<T: Scalar>(series: &[(T, T)]) -> Result<LogLogFit<T>> {
    if series.len() < MIN_FIT_POINTS {
        return Err(Error::InvalidParameter {
            name: "series",
            reason: format!("need at least {MIN_FIT_POINTS} points, got {}", series.len()),
        });
    }
    if series.windows(2).any(|w| !(w[1].0 > w[0].0)) {
        return Err(Error::InvalidParameter {
            name: "series",
            reason: "M must be strictly increasing".into(),
        });
    }
    if let Some(&(m, y)) = series.iter().find(|(m, y)| !(*m > T::zero() && *y > T::zero())) {
        return Err(Error::Domain(format!("log-log fit needs positive data, got ({m}, {y})")));
    }
    let pts: Vec<(T, T)> = series.iter().map(|&(m, y)| (m.ln(), y.ln())).collect();
    let n = T::from_count(pts.len() as u64);
    let mx = pts.iter().fold(T::zero(), |a, p| a + p.0) / n;
    let my = pts.iter().fold(T::zero(), |a, p| a + p.1) / n;
    let (sxx, sxy) = pts.iter().fold((T::zero(), T::zero()), |(sxx, sxy), &(x, y)| {
        (sxx + (x - mx) * (x - mx), sxy + (x - mx) * (y - my))
    });
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_residual = pts
        .iter()
        .map(|&(x, y)| (y - slope * x - intercept).abs())
        .fold(T::zero(), T::max);
    Ok(LogLogFit {
        slope,
        intercept,
        max_residual,
    })
}

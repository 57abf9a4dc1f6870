//! Tabular datasets: probe-detuning spectra, (Ω_c, r₁) contour grids and
//! group-index curves.
//!
//! Points are evaluated in parallel but always assembled in axis order, so
//! every table is bitwise reproducible.

mod contour;
mod curves;
mod marching;
mod spectrum;

pub use contour::{contour_grid, ContourGrid, ContourQuantity, LevelSet};
pub use curves::{group_index_curves, CurveKind, CurveSeries};
pub use marching::{march, Polyline};
pub use spectrum::{spectrum_sweep, spectrum_sweep_with, SpectrumSeries};

use thiserror::Error;

use crate::response::ResponseError;
use crate::steadystate::AnalyticError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("InvalidRange: need finite min < max and at least 2 points, got [{min}, {max}] with {n}")]
    InvalidRange { min: f64, max: f64, n: usize },
    #[error("InvalidRange: {axis} axis must be non-negative, got minimum {min}")]
    NegativeAxis { axis: &'static str, min: f64 },
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error(transparent)]
    Response(ResponseError),
}

impl From<ResponseError> for SweepError {
    fn from(e: ResponseError) -> Self {
        match e {
            ResponseError::Analytic(a) => SweepError::Analytic(a),
            other => SweepError::Response(other),
        }
    }
}

/// `n` evenly spaced values from `min` to `max`, both included exactly.
pub fn linspace(min: f64, max: f64, n: usize) -> Result<Vec<f64>, SweepError> {
    if !(min.is_finite() && max.is_finite() && min < max && n >= 2) {
        return Err(SweepError::InvalidRange { min, max, n });
    }
    let step = (max - min) / (n - 1) as f64;
    let mut v: Vec<f64> = (0..n).map(|k| min + step * k as f64).collect();
    v[n - 1] = max;
    Ok(v)
}

/// Root of `f` in `[lo, hi]` by bisection, if `f` changes sign there.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, xtol: f64) -> Option<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() || !flo.is_finite() || !fhi.is_finite() {
        return None;
    }
    while hi - lo > xtol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

#[cfg(test)]
pub(crate) fn strictly_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_endpoints_and_length() {
        let v = linspace(-10.0, 10.0, 2001).unwrap();
        assert_eq!(v.len(), 2001);
        assert_eq!(v[0], -10.0);
        assert_eq!(v[2000], 10.0);
        assert_eq!(v[1000], 0.0);
        assert!(strictly_increasing(&v));
    }

    #[test]
    fn linspace_rejects_degenerate() {
        assert!(matches!(linspace(1.0, 1.0, 2), Err(SweepError::InvalidRange { .. })));
        assert!(linspace(2.0, 1.0, 5).is_err());
        assert!(linspace(0.0, 1.0, 1).is_err());
        assert!(linspace(0.0, f64::INFINITY, 5).is_err());
    }

    #[test]
    fn bisect_finds_sqrt_two() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
        assert_eq!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-9), None);
    }
}

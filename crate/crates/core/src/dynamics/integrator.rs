use thiserror::Error;

use super::density::{max_norm, CMatrix3, DensityMatrix};
use super::liouvillian_rhs;
use crate::params::{coherence_rates, SystemParams};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// In units of 1/γ.
pub const DEFAULT_MAX_TIME: f64 = 1000.0;
/// Steps between steady-state residual checks.
pub const CHECK_INTERVAL: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationReport {
    pub final_state: DensityMatrix,
    pub steps_taken: usize,
    pub elapsed_time: f64,
    /// Max-norm of dρ/dt at the final state.
    pub residual: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntegrationError {
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("integration time must be non-negative and finite, got {0}")]
    BadTime(f64),
    #[error("not converged after t = {:.3}: residual {:e}", .0.elapsed_time, .0.residual)]
    NotConverged(IntegrationReport),
}

impl IntegrationReport {
    /// `Err(NotConverged)` unless the run reached the tolerance.
    pub fn into_result(self) -> Result<IntegrationReport, IntegrationError> {
        if self.converged {
            Ok(self)
        } else {
            Err(IntegrationError::NotConverged(self))
        }
    }
}

/// Fixed RK4 step, in units of 1/γ, scaled to the fastest rate in the model.
pub fn step_size(params: &SystemParams) -> f64 {
    let rates = coherence_rates(params);
    let fastest = [
        rates.rho21,
        rates.rho31,
        params.omega_c.abs(),
        params.delta_p.abs(),
        params.delta_c.abs(),
        1.0,
    ]
    .into_iter()
    .fold(f64::MIN, f64::max);
    f64::min(0.01, 0.1 / fastest)
}

fn axpy(y: &CMatrix3, a: f64, x: &CMatrix3) -> CMatrix3 {
    let mut out = *y;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] += x[i][j] * a;
        }
    }
    out
}

fn rk4_step(rho: &CMatrix3, params: &SystemParams, h: f64) -> CMatrix3 {
    let k1 = liouvillian_rhs(rho, params);
    let k2 = liouvillian_rhs(&axpy(rho, 0.5 * h, &k1), params);
    let k3 = liouvillian_rhs(&axpy(rho, 0.5 * h, &k2), params);
    let k4 = liouvillian_rhs(&axpy(rho, h, &k3), params);
    let mut out = *rho;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] += (k1[i][j] + (k2[i][j] + k3[i][j]) * 2.0 + k4[i][j]) * (h / 6.0);
        }
    }
    out
}

/// Propagate `rho0` for exactly `duration`, using the largest step no
/// bigger than [`step_size`] that divides it evenly.
pub fn integrate(
    rho0: &DensityMatrix,
    params: &SystemParams,
    duration: f64,
) -> Result<DensityMatrix, IntegrationError> {
    if !(duration >= 0.0 && duration.is_finite()) {
        return Err(IntegrationError::BadTime(duration));
    }
    let steps = (duration / step_size(params)).ceil() as usize;
    if steps == 0 {
        return Ok(*rho0);
    }
    let h = duration / steps as f64;
    let mut rho = *rho0.as_array();
    for _ in 0..steps {
        rho = rk4_step(&rho, params, h);
    }
    Ok(DensityMatrix::from_raw(rho))
}

/// Integrate until the max-norm of dρ/dt drops to `tolerance`, checking
/// every [`CHECK_INTERVAL`] steps, or until `max_time` has passed.
///
/// A run that hits `max_time` still returns a report, with
/// `converged == false`.
pub fn integrate_to_steady_state(
    rho0: &DensityMatrix,
    params: &SystemParams,
    tolerance: f64,
    max_time: f64,
) -> Result<IntegrationReport, IntegrationError> {
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(IntegrationError::BadTolerance(tolerance));
    }
    if !(max_time >= 0.0 && max_time.is_finite()) {
        return Err(IntegrationError::BadTime(max_time));
    }
    let h = step_size(params);
    let mut rho = *rho0.as_array();
    let mut steps = 0usize;
    let mut residual = max_norm(&liouvillian_rhs(&rho, params));
    while residual > tolerance && (steps as f64) * h < max_time {
        for _ in 0..CHECK_INTERVAL {
            rho = rk4_step(&rho, params, h);
        }
        steps += CHECK_INTERVAL;
        residual = max_norm(&liouvillian_rhs(&rho, params));
    }
    Ok(IntegrationReport {
        final_state: DensityMatrix::from_raw(rho),
        steps_taken: steps,
        elapsed_time: steps as f64 * h,
        residual,
        converged: residual <= tolerance,
    })
}

/// Ground-state start, default tolerance and time limit.
pub fn integrate_to_steady_state_default(
    params: &SystemParams,
) -> Result<IntegrationReport, IntegrationError> {
    integrate_to_steady_state(&DensityMatrix::ground(), params, DEFAULT_TOLERANCE, DEFAULT_MAX_TIME)
}

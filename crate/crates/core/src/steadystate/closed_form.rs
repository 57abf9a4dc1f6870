//! Line-center (Δ_p = Δ_c = 0) closed forms for γ₂₁ = γ₃₁ = 1 and
//! chi_prefactor = 1.
//!
//! None of these take decay rates: the expressions are only valid in the
//! normalized units where both spontaneous rates equal one.

use thiserror::Error;

/// Relative size below which the zero-gain denominator counts as zero.
pub const SINGULAR_DENOMINATOR_RTOL: f64 = 1e-12;

fn pump_sum(r1: f64, r2: f64) -> f64 {
    r2 + r1 + 1.0
}

/// A = 2Ω_c² + r₂ + r₁ + 1.
fn a_factor(omega_c: f64, r1: f64, r2: f64) -> f64 {
    2.0 * omega_c * omega_c + pump_sum(r1, r2)
}

/// B = (r₂ + r₁ + 1)² + 4(r₁ + 2)Ω_c².
fn b_factor(omega_c: f64, r1: f64, r2: f64) -> f64 {
    let s = pump_sum(r1, r2);
    s * s + 4.0 * (r1 + 2.0) * omega_c * omega_c
}

/// n_g − 1 at line center; `omega_scale` is 2πω_p in units of γ.
pub fn group_index_closed_form(omega_c: f64, r1: f64, r2: f64, omega_scale: f64) -> f64 {
    let oc2 = omega_c * omega_c;
    let a = a_factor(omega_c, r1, r2);
    let b = b_factor(omega_c, r1, r2);
    let braces = 4.0 * (r1 - 1.0) * pump_sum(r1, r2)
        - 4.0 * (r1 * (r1 - 5.0) + r2 + 2.0 * r1 * r2 + r2 * r2) * oc2
        - 16.0 * (r1 - 1.0) * oc2 * oc2;
    omega_scale / (a * a * b) * braces
}

/// χ″ at line center.
pub fn absorption_closed_form(omega_c: f64, r1: f64, r2: f64) -> f64 {
    let oc2 = omega_c * omega_c;
    let ab = a_factor(omega_c, r1, r2) * b_factor(omega_c, r1, r2);
    4.0 * (r2 - 2.0 * r1 + 1.0) * oc2 / ab - 2.0 * (r1 - 1.0) * pump_sum(r1, r2) / ab
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ZeroGainError {
    #[error("SingularDenominator: r1 = 2*omega_c^2 + 1 (r1 = {r1}, omega_c = {omega_c})")]
    SingularDenominator { r1: f64, omega_c: f64 },
    #[error("UnphysicalPump: zero gain needs r2 = {value} < 0")]
    UnphysicalPump { value: f64 },
}

/// The pump r₂ that makes χ″ vanish at line center for the given r₁, Ω_c.
pub fn zero_gain_r2(r1: f64, omega_c: f64) -> Result<f64, ZeroGainError> {
    let oc2 = omega_c * omega_c;
    let denominator = -r1 + 2.0 * oc2 + 1.0;
    let scale = r1.abs().max(2.0 * oc2).max(1.0);
    if denominator.abs() <= SINGULAR_DENOMINATOR_RTOL * scale {
        return Err(ZeroGainError::SingularDenominator { r1, omega_c });
    }
    let value = (r1 * r1 + 4.0 * r1 * oc2 - 2.0 * oc2 - 1.0) / denominator;
    if value < 0.0 {
        return Err(ZeroGainError::UnphysicalPump { value });
    }
    Ok(value)
}

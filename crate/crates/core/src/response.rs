//! Probe response at a single parameter point from either solver.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::dynamics::{steady_state_linear, DensityMatrix, SteadyStateError};
use crate::params::SystemParams;
use crate::steadystate::{
    analytic_steady_state, dispersion_slope, AnalyticError, GroupIndexResult, Susceptibility,
};

/// Detuning step of the Richardson slope used by the exact backend.
pub const EXACT_SLOPE_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    /// Weak-probe closed solution; needs Δ_c = 0.
    #[default]
    Analytic,
    /// Direct linear solve of the full equations at the configured Ω_p.
    Exact,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Analytic => "analytic",
            Backend::Exact => "exact",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "analytic" => Ok(Backend::Analytic),
            "exact" => Ok(Backend::Exact),
            other => Err(format!("unknown backend {other:?}; expected analytic or exact")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ResponseError {
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error(transparent)]
    Exact(#[from] SteadyStateError),
    #[error("ZeroProbe: the exact backend needs omega_p != 0 to form rho31/omega_p")]
    ZeroProbe,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeResponse {
    pub rho11: f64,
    pub rho22: f64,
    pub rho33: f64,
    pub rho21: Complex64,
    pub rho31_over_omega_p: Complex64,
    pub chi: Susceptibility,
    pub group: GroupIndexResult,
}

fn exact_ratio(params: &SystemParams) -> Result<(DensityMatrix, Complex64), ResponseError> {
    if params.omega_p == 0.0 {
        return Err(ResponseError::ZeroProbe);
    }
    let rho = steady_state_linear(params)?;
    let ratio = rho.get(3, 1) / Complex64::new(params.omega_p, 0.0).conj();
    Ok((rho, ratio))
}

/// χ alone; cheaper than [`probe_response`] when the group index is not
/// needed.
pub fn susceptibility_with(params: &SystemParams, backend: Backend) -> Result<Susceptibility, ResponseError> {
    match backend {
        Backend::Analytic => Ok(crate::steadystate::susceptibility(params)?),
        Backend::Exact => {
            let (_, ratio) = exact_ratio(params)?;
            let chi = params.chi_prefactor * ratio;
            Ok(Susceptibility { chi_real: chi.re, chi_imag: chi.im })
        }
    }
}

/// Populations, coherences, χ and n_g − 1 at `params`.
///
/// The exact backend takes ∂χ′/∂Δ_p from a Richardson central difference
/// with step [`EXACT_SLOPE_STEP`].
pub fn probe_response(params: &SystemParams, backend: Backend) -> Result<ProbeResponse, ResponseError> {
    let (pops, rho21, ratio, slope) = match backend {
        Backend::Analytic => {
            let s = analytic_steady_state(params)?;
            let slope = dispersion_slope(params)?;
            ([s.rho11, s.rho22, s.rho33], s.rho21, s.rho31_over_omega_p, slope)
        }
        Backend::Exact => {
            let (rho, ratio) = exact_ratio(params)?;
            let chi_at = |d: f64| {
                susceptibility_with(&SystemParams { delta_p: params.delta_p + d, ..*params }, backend)
                    .map(|c| c.chi_real)
            };
            let central = |h: f64| -> Result<f64, ResponseError> {
                Ok((chi_at(h)? - chi_at(-h)?) / (2.0 * h))
            };
            let h = EXACT_SLOPE_STEP;
            let slope = (4.0 * central(0.5 * h)? - central(h)?) / 3.0;
            let pops = [rho.population(1), rho.population(2), rho.population(3)];
            (pops, rho.get(2, 1), ratio, slope)
        }
    };
    let chi = params.chi_prefactor * ratio;
    let n_g_minus_1 = 2.0 * PI * chi.re + params.omega_scale * slope;
    Ok(ProbeResponse {
        rho11: pops[0],
        rho22: pops[1],
        rho33: pops[2],
        rho21,
        rho31_over_omega_p: ratio,
        chi: Susceptibility { chi_real: chi.re, chi_imag: chi.im },
        group: GroupIndexResult::from_n_g_minus_1(n_g_minus_1),
    })
}

//! Weak-probe steady state with a resonant coupling field, and the optical
//! response derived from it: susceptibility, group index, and the closed
//! forms at line center.
//!
//! The analytic solution is first order in the probe Rabi frequency, so the
//! probe coherence is carried as the ratio ρ₃₁/Ω_p* and everything derived
//! from it is independent of Ω_p.

mod closed_form;

pub use closed_form::{
    absorption_closed_form, group_index_closed_form, zero_gain_r2, ZeroGainError,
    SINGULAR_DENOMINATOR_RTOL,
};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::params::{coherence_rates, ParamErrors, SystemParams};

/// Largest |Ω_p| / min(γ₂₁, γ₃₁) accepted by the weak-probe solution.
pub const WEAK_PROBE_RATIO: f64 = 0.1;

/// Half-width of the band around the group-index classification boundaries.
pub const CLASSIFICATION_TIE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error("invalid parameters: {0}")]
    InvalidParams(#[from] ParamErrors),
    #[error("CouplingDetuned: the analytic solution needs delta_c = 0, got {0}")]
    CouplingDetuned(f64),
    #[error("ProbeTooStrong: |omega_p| = {omega_p} exceeds the weak-probe limit {limit}")]
    ProbeTooStrong { omega_p: f64, limit: f64 },
}

/// Steady-state populations and coherences to first order in Ω_p.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalyticState {
    pub rho11: f64,
    pub rho22: f64,
    pub rho33: f64,
    pub rho21: Complex64,
    /// ρ₃₁/Ω_p*.
    pub rho31_over_omega_p: Complex64,
}

/// χ = χ′ + iχ″. Positive χ″ attenuates the probe, negative χ″ amplifies it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Susceptibility {
    pub chi_real: f64,
    pub chi_imag: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Propagation {
    /// n_g > 1.
    Subluminal,
    /// 0 < n_g ≤ 1.
    Superluminal,
    /// n_g < 0: negative group velocity.
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroupIndexResult {
    pub n_g_minus_1: f64,
    /// v_g/c = 1/n_g.
    pub v_g_over_c: f64,
    pub classification: Propagation,
    /// Set when n_g − 1 or n_g fell within [`CLASSIFICATION_TIE`] of zero.
    pub on_boundary: bool,
}

impl GroupIndexResult {
    pub fn from_n_g_minus_1(n_g_minus_1: f64) -> Self {
        let n_g = 1.0 + n_g_minus_1;
        let (classification, on_boundary) = if n_g_minus_1.abs() <= CLASSIFICATION_TIE {
            (Propagation::Subluminal, true)
        } else if n_g_minus_1 > 0.0 {
            (Propagation::Subluminal, false)
        } else if n_g.abs() <= CLASSIFICATION_TIE {
            (Propagation::Negative, true)
        } else if n_g > 0.0 {
            (Propagation::Superluminal, false)
        } else {
            (Propagation::Negative, false)
        };
        GroupIndexResult {
            n_g_minus_1,
            v_g_over_c: 1.0 / n_g,
            classification,
            on_boundary,
        }
    }

    pub fn n_g(&self) -> f64 {
        1.0 + self.n_g_minus_1
    }
}

fn check_preconditions(params: &SystemParams) -> Result<SystemParams, AnalyticError> {
    let p = params.validate()?;
    if p.delta_c != 0.0 {
        return Err(AnalyticError::CouplingDetuned(p.delta_c));
    }
    let limit = WEAK_PROBE_RATIO * p.gamma21.min(p.gamma31);
    if p.omega_p.abs() > limit {
        return Err(AnalyticError::ProbeTooStrong { omega_p: p.omega_p, limit });
    }
    Ok(p)
}

/// Pieces of the probe response that do not depend on Δ_p.
struct ProbeTerms {
    /// ρ₁₁ − ρ₃₃.
    probe_inversion: f64,
    /// ρ₁₁ − ρ₂₂.
    coupling_inversion: f64,
    coupling_sq: f64,
    g21: f64,
    g31: f64,
    g32: f64,
}

impl ProbeTerms {
    fn new(p: &SystemParams, state: &AnalyticState) -> Self {
        let rates = coherence_rates(p);
        ProbeTerms {
            probe_inversion: state.rho11 - state.rho33,
            coupling_inversion: state.rho11 - state.rho22,
            coupling_sq: p.omega_c * p.omega_c,
            g21: rates.rho21,
            g31: rates.rho31,
            g32: rates.rho32,
        }
    }

    /// ρ₃₁/Ω_p* at probe detuning `dp`, written in the dressed-denominator form.
    fn ratio(&self, dp: f64) -> Complex64 {
        let i = Complex64::i();
        let u = Complex64::new(self.g32, -dp);
        let v = Complex64::new(self.g31, -dp);
        let w2 = self.coupling_sq;
        i / (v + w2 / u)
            * (self.probe_inversion - w2 / (self.g21 * u) * self.coupling_inversion)
    }

    /// d(ρ₃₁/Ω_p*)/dΔ_p.
    ///
    /// With u = Γ₃₂ − iΔ_p, v = Γ₃₁ − iΔ_p the ratio is i·N/D where
    /// N = (ρ₁₁−ρ₃₃)u − |Ω_c|²(ρ₁₁−ρ₂₂)/Γ₂₁ and D = uv + |Ω_c|².
    fn ratio_derivative(&self, dp: f64) -> Complex64 {
        let i = Complex64::i();
        let u = Complex64::new(self.g32, -dp);
        let v = Complex64::new(self.g31, -dp);
        let w2 = self.coupling_sq;
        let n = self.probe_inversion * u - w2 * self.coupling_inversion / self.g21;
        let d = u * v + w2;
        let dn = -i * self.probe_inversion;
        let dd = -i * (u + v);
        i * (dn * d - n * dd) / (d * d)
    }
}

/// Populations and coherences in the weak-probe limit with Δ_c = 0.
///
/// Populations do not depend on Δ_p or Ω_p.
pub fn analytic_steady_state(params: &SystemParams) -> Result<AnalyticState, AnalyticError> {
    let p = check_preconditions(params)?;
    let rates = coherence_rates(&p);
    let w2 = p.omega_c * p.omega_c;

    let upper2_ratio = (2.0 * w2 + rates.rho21 * p.r2) / (rates.rho21 * p.gamma21 + 2.0 * w2);
    let upper3_ratio = p.r1 / p.gamma31;
    let rho11 = 1.0 / (1.0 + upper3_ratio + upper2_ratio);
    let rho22 = upper2_ratio * rho11;
    let rho33 = upper3_ratio * rho11;

    let i = Complex64::i();
    let oc_conj = Complex64::new(p.omega_c, 0.0).conj();
    let rho21 = i * oc_conj / rates.rho21 * (rho11 - rho22);

    let mut state = AnalyticState {
        rho11,
        rho22,
        rho33,
        rho21,
        rho31_over_omega_p: Complex64::new(0.0, 0.0),
    };
    state.rho31_over_omega_p = ProbeTerms::new(&p, &state).ratio(p.delta_p);
    Ok(state)
}

/// χ = chi_prefactor · ρ₃₁/Ω_p*.
pub fn susceptibility(params: &SystemParams) -> Result<Susceptibility, AnalyticError> {
    let state = analytic_steady_state(params)?;
    let chi = params.chi_prefactor * state.rho31_over_omega_p;
    Ok(Susceptibility { chi_real: chi.re, chi_imag: chi.im })
}

/// ∂χ′/∂Δ_p, from the exact derivative of the rational Δ_p dependence.
pub fn dispersion_slope(params: &SystemParams) -> Result<f64, AnalyticError> {
    let state = analytic_steady_state(params)?;
    let terms = ProbeTerms::new(params, &state);
    Ok(params.chi_prefactor * terms.ratio_derivative(params.delta_p).re)
}

/// n_g − 1 = 2πχ′ + (2πω_p)·∂χ′/∂ω_p, with ∂/∂ω_p taken as ∂/∂Δ_p and
/// 2πω_p = `omega_scale`.
pub fn group_index(params: &SystemParams) -> Result<GroupIndexResult, AnalyticError> {
    let chi = susceptibility(params)?;
    let slope = dispersion_slope(params)?;
    let n_g_minus_1 = 2.0 * PI * chi.chi_real + params.omega_scale * slope;
    Ok(GroupIndexResult::from_n_g_minus_1(n_g_minus_1))
}

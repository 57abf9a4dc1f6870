use rayon::prelude::*;
use serde::Serialize;

use super::{linspace, SweepError};
use crate::params::SystemParams;
use crate::response::{susceptibility_with, Backend};

/// χ′ and χ″ sampled over a probe-detuning axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumSeries {
    pub axis: Vec<f64>,
    pub chi_real: Vec<f64>,
    pub chi_imag: Vec<f64>,
    /// `delta_p` here is whatever the caller passed; the axis overrides it.
    pub params_used: SystemParams,
}

impl SpectrumSeries {
    pub fn len(&self) -> usize {
        self.axis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axis.is_empty()
    }

    /// Index of the axis sample closest to `delta_p`.
    pub fn nearest_index(&self, delta_p: f64) -> usize {
        let mut best = 0;
        for (k, &x) in self.axis.iter().enumerate() {
            if (x - delta_p).abs() < (self.axis[best] - delta_p).abs() {
                best = k;
            }
        }
        best
    }
}

pub fn spectrum_sweep(
    params: &SystemParams,
    delta_p_min: f64,
    delta_p_max: f64,
    n_points: usize,
) -> Result<SpectrumSeries, SweepError> {
    spectrum_sweep_with(params, delta_p_min, delta_p_max, n_points, Backend::Analytic)
}

/// [`spectrum_sweep`] with the solver chosen by `backend`.
pub fn spectrum_sweep_with(
    params: &SystemParams,
    delta_p_min: f64,
    delta_p_max: f64,
    n_points: usize,
    backend: Backend,
) -> Result<SpectrumSeries, SweepError> {
    let axis = linspace(delta_p_min, delta_p_max, n_points)?;
    let chi = axis
        .par_iter()
        .map(|&dp| susceptibility_with(&SystemParams { delta_p: dp, ..*params }, backend))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SpectrumSeries {
        chi_real: chi.iter().map(|c| c.chi_real).collect(),
        chi_imag: chi.iter().map(|c| c.chi_imag).collect(),
        axis,
        params_used: *params,
    })
}

use rayon::prelude::*;
use serde::Serialize;

use super::{linspace, SweepError};
use crate::params::SystemParams;
use crate::steadystate::{group_index_closed_form, zero_gain_r2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    /// n_g − 1 against r₁, one curve per Ω_c, r₂ fixed.
    R1Sweep,
    /// n_g − 1 against Ω_c, one curve per r₁, r₂ fixed.
    OmegaCSweep,
    /// n_g − 1 against r₁, one curve per Ω_c, r₂ chosen per point so that
    /// line-center gain vanishes.
    R1SweepWithZeroGainR2,
}

impl CurveKind {
    /// Name of the parameter that labels each curve.
    pub fn family_key(self) -> &'static str {
        match self {
            CurveKind::R1Sweep | CurveKind::R1SweepWithZeroGainR2 => "omega_c",
            CurveKind::OmegaCSweep => "r1",
        }
    }

    pub fn axis_key(self) -> &'static str {
        match self {
            CurveKind::R1Sweep | CurveKind::R1SweepWithZeroGainR2 => "r1",
            CurveKind::OmegaCSweep => "omega_c",
        }
    }
}

/// One group-index curve. `None` marks a gap: a point where the zero-gain
/// pump is singular or negative.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveSeries {
    pub axis: Vec<f64>,
    pub values: Vec<Option<f64>>,
    pub r2_used: Vec<Option<f64>>,
    pub sweep_kind: CurveKind,
    pub family_value: f64,
    pub label: String,
}

/// Line-center group-index curves, one per entry of `family`.
///
/// Uses the closed form, so decay rates are taken as 1 and only `r2` and
/// `omega_scale` are read from `fixed`.
pub fn group_index_curves(
    kind: CurveKind,
    fixed: &SystemParams,
    axis_min: f64,
    axis_max: f64,
    n_points: usize,
    family: &[f64],
) -> Result<Vec<CurveSeries>, SweepError> {
    let fixed = fixed.validate().map_err(crate::steadystate::AnalyticError::from)?;
    let axis = linspace(axis_min, axis_max, n_points)?;
    let pump_axis = match kind {
        CurveKind::OmegaCSweep => family.iter().copied().fold(f64::INFINITY, f64::min),
        _ => axis_min,
    };
    if pump_axis < 0.0 {
        return Err(SweepError::NegativeAxis { axis: "r1", min: pump_axis });
    }

    let curves = family
        .iter()
        .map(|&family_value| {
            let points: Vec<(Option<f64>, Option<f64>)> = axis
                .par_iter()
                .map(|&x| {
                    let (omega_c, r1) = match kind {
                        CurveKind::OmegaCSweep => (x, family_value),
                        _ => (family_value, x),
                    };
                    let r2 = match kind {
                        CurveKind::R1SweepWithZeroGainR2 => zero_gain_r2(r1, omega_c).ok(),
                        _ => Some(fixed.r2),
                    };
                    let ng = r2.map(|r2| group_index_closed_form(omega_c, r1, r2, fixed.omega_scale));
                    (ng, r2)
                })
                .collect();
            CurveSeries {
                axis: axis.clone(),
                values: points.iter().map(|p| p.0).collect(),
                r2_used: points.iter().map(|p| p.1).collect(),
                sweep_kind: kind,
                family_value,
                label: format!("{}={}", kind.family_key(), family_value),
            }
        })
        .collect();
    Ok(curves)
}

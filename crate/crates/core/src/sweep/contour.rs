use rayon::prelude::*;
use serde::Serialize;

use super::marching::{march, Polyline};
use super::{linspace, SweepError};
use crate::steadystate::{absorption_closed_form, group_index_closed_form};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContourQuantity {
    GroupIndexMinus1,
    ChiImag,
}

impl ContourQuantity {
    /// Levels drawn in the published contour maps, zero first.
    pub fn caption_levels(self) -> &'static [f64] {
        match self {
            ContourQuantity::GroupIndexMinus1 => &[0.0, -3.0, -10.0, -20.0, -30.0],
            ContourQuantity::ChiImag => &[0.0, -0.005, -0.012, -0.03, -0.07, -0.11, -0.15],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ContourQuantity::GroupIndexMinus1 => "group_index_minus_1",
            ContourQuantity::ChiImag => "chi_imag",
        }
    }
}

/// A line-center quantity sampled on Ω_c (columns) × r₁ (rows), r₂ = 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContourGrid {
    pub x_axis: Vec<f64>,
    pub y_axis: Vec<f64>,
    /// Row-major: `values[iy * x_axis.len() + ix]`.
    pub values: Vec<f64>,
    pub quantity: ContourQuantity,
    pub omega_scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelSet {
    pub level: f64,
    pub polylines: Vec<Polyline>,
}

impl ContourGrid {
    pub fn value(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.x_axis.len() + ix]
    }

    pub fn level_set(&self, level: f64) -> LevelSet {
        LevelSet {
            level,
            polylines: march(&self.x_axis, &self.y_axis, &self.values, level),
        }
    }

    pub fn zero_contour(&self) -> LevelSet {
        self.level_set(0.0)
    }

    pub fn level_sets(&self, levels: &[f64]) -> Vec<LevelSet> {
        levels.iter().map(|&l| self.level_set(l)).collect()
    }
}

/// Sample `quantity` from the line-center closed forms with r₂ = 0.
pub fn contour_grid(
    quantity: ContourQuantity,
    omega_c_range: (f64, f64),
    r1_range: (f64, f64),
    nx: usize,
    ny: usize,
    omega_scale: f64,
) -> Result<ContourGrid, SweepError> {
    let x_axis = linspace(omega_c_range.0, omega_c_range.1, nx)?;
    let y_axis = linspace(r1_range.0, r1_range.1, ny)?;
    if r1_range.0 < 0.0 {
        return Err(SweepError::NegativeAxis { axis: "r1", min: r1_range.0 });
    }
    let eval = |oc: f64, r1: f64| match quantity {
        ContourQuantity::GroupIndexMinus1 => group_index_closed_form(oc, r1, 0.0, omega_scale),
        ContourQuantity::ChiImag => absorption_closed_form(oc, r1, 0.0),
    };
    let values = y_axis
        .par_iter()
        .flat_map_iter(|&r1| x_axis.iter().map(move |&oc| eval(oc, r1)))
        .collect();
    Ok(ContourGrid { x_axis, y_axis, values, quantity, omega_scale })
}

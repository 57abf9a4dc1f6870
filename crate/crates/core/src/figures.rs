//! Parameter sets of the published figures.
//!
//! Axis ranges and resolutions are not part of the original figure
//! captions; the defaults here cover every feature the captions describe.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::params::SystemParams;
use crate::sweep::CurveKind;

pub const SPECTRUM_RANGE: (f64, f64) = (-10.0, 10.0);
pub const SPECTRUM_POINTS: usize = 2001;
/// Ω_c axis of the contour maps; Ω_c = 0 itself is left out.
pub const CONTOUR_OMEGA_C_RANGE: (f64, f64) = (0.02, 8.0);
pub const CONTOUR_R1_RANGE: (f64, f64) = (0.0, 8.0);
pub const CONTOUR_POINTS: usize = 401;
pub const CURVE_RANGE: (f64, f64) = (0.0, 8.0);
pub const CURVE_POINTS: usize = 1601;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Figure {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7a,
    Fig7b,
    Fig7c,
}

impl Figure {
    pub const ALL: [Figure; 8] = [
        Figure::Fig2,
        Figure::Fig3,
        Figure::Fig4,
        Figure::Fig5,
        Figure::Fig6,
        Figure::Fig7a,
        Figure::Fig7b,
        Figure::Fig7c,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Figure::Fig2 => "2",
            Figure::Fig3 => "3",
            Figure::Fig4 => "4",
            Figure::Fig5 => "5",
            Figure::Fig6 => "6",
            Figure::Fig7a => "7a",
            Figure::Fig7b => "7b",
            Figure::Fig7c => "7c",
        }
    }

    pub fn preset(self) -> FigurePreset {
        self.preset_on(&SystemParams::default())
    }

    /// Preset built on `base`: every value named in the caption (decay
    /// rates, pumps, coupling, Δ_c) is overwritten; `omega_p`,
    /// `chi_prefactor` and `omega_scale` are kept from `base`.
    pub fn preset_on(self, base: &SystemParams) -> FigurePreset {
        let base = SystemParams {
            gamma21: 1.0,
            gamma31: 1.0,
            r1: 0.0,
            r2: 0.0,
            omega_c: 0.0,
            delta_c: 0.0,
            delta_p: 0.0,
            ..*base
        };
        let spectra = |field: &'static str, values: &[f64], make: &dyn Fn(f64) -> SystemParams| {
            FigurePreset::Spectra {
                series: values
                    .iter()
                    .map(|&v| (format!("{field}={v}"), make(v)))
                    .collect(),
                delta_p_range: SPECTRUM_RANGE,
                n_points: SPECTRUM_POINTS,
            }
        };
        let curves = |kind, fixed: SystemParams, family: &[f64], range_is_choice| FigurePreset::Curves {
            kind,
            fixed,
            axis_range: CURVE_RANGE,
            n_points: CURVE_POINTS,
            family: family.to_vec(),
            axis_range_is_default: range_is_choice,
        };
        match self {
            Figure::Fig2 => spectra("omega_c", &[0.5, 0.7, 1.7, 4.0], &|oc| SystemParams {
                omega_c: oc,
                ..base
            }),
            Figure::Fig3 => FigurePreset::Contour {
                omega_c_range: CONTOUR_OMEGA_C_RANGE,
                r1_range: CONTOUR_R1_RANGE,
                nx: CONTOUR_POINTS,
                ny: CONTOUR_POINTS,
                omega_scale: base.omega_scale,
            },
            Figure::Fig4 => spectra("omega_c", &[0.7, 1.7, 4.0, 6.0], &|oc| SystemParams {
                omega_c: oc,
                r1: 1.5,
                ..base
            }),
            Figure::Fig5 => spectra("r1", &[1.2, 1.5, 3.0], &|r1| SystemParams {
                omega_c: 1.69,
                r1,
                ..base
            }),
            Figure::Fig6 => spectra("r2", &[0.0, 1.0, 2.43], &|r2| SystemParams {
                omega_c: 1.69,
                r1: 1.5,
                r2,
                ..base
            }),
            Figure::Fig7a => curves(CurveKind::R1Sweep, base, &[1.0, 1.7, 4.0, 6.0], false),
            Figure::Fig7b => curves(CurveKind::OmegaCSweep, base, &[1.5, 2.0, 3.0, 5.0], true),
            Figure::Fig7c => {
                curves(CurveKind::R1SweepWithZeroGainR2, base, &[0.5, 0.75, 1.0, 1.7], false)
            }
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownFigure(pub String);

impl fmt::Display for UnknownFigure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown figure {:?}; expected one of 2, 3, 4, 5, 6, 7a, 7b, 7c", self.0)
    }
}

impl std::error::Error for UnknownFigure {}

impl FromStr for Figure {
    type Err = UnknownFigure;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Figure::ALL
            .into_iter()
            .find(|f| f.id().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownFigure(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum FigurePreset {
    Spectra {
        series: Vec<(String, SystemParams)>,
        delta_p_range: (f64, f64),
        n_points: usize,
    },
    Contour {
        omega_c_range: (f64, f64),
        r1_range: (f64, f64),
        nx: usize,
        ny: usize,
        omega_scale: f64,
    },
    Curves {
        kind: CurveKind,
        fixed: SystemParams,
        axis_range: (f64, f64),
        n_points: usize,
        family: Vec<f64>,
        /// The swept range is a default, not taken from the caption.
        axis_range_is_default: bool,
    },
}

/// Every parameter point of the spectrum figures.
pub fn spectrum_parameter_sets() -> Vec<(Figure, String, SystemParams)> {
    Figure::ALL
        .into_iter()
        .filter_map(|f| match f.preset() {
            FigurePreset::Spectra { series, .. } => {
                Some(series.into_iter().map(move |(l, p)| (f, l, p)))
            }
            _ => None,
        })
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_ids() {
        for f in Figure::ALL {
            assert_eq!(f.id().parse::<Figure>(), Ok(f));
        }
        assert_eq!("7A".parse::<Figure>(), Ok(Figure::Fig7a));
        assert!("8".parse::<Figure>().is_err());
        assert!("7".parse::<Figure>().is_err());
    }

    #[test]
    fn fig6_caption_values() {
        match Figure::Fig6.preset() {
            FigurePreset::Spectra { series, .. } => {
                let r2: Vec<f64> = series.iter().map(|s| s.1.r2).collect();
                assert_eq!(r2, vec![0.0, 1.0, 2.43]);
                assert!(series.iter().all(|s| s.1.omega_c == 1.69 && s.1.r1 == 1.5));
                assert_eq!(series[2].0, "r2=2.43");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn preset_keeps_only_free_fields_of_base() {
        let base = SystemParams { r1: 3.0, gamma21: 2.0, omega_p: 1e-4, omega_scale: 50.0, ..SystemParams::default() };
        match Figure::Fig2.preset_on(&base) {
            FigurePreset::Spectra { series, .. } => {
                for (_, p) in &series {
                    assert_eq!((p.r1, p.gamma21), (0.0, 1.0));
                    assert_eq!((p.omega_p, p.omega_scale), (1e-4, 50.0));
                }
            }
            other => panic!("{other:?}"),
        }
        match Figure::Fig3.preset_on(&base) {
            FigurePreset::Contour { omega_scale, .. } => assert_eq!(omega_scale, 50.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fig7c_family() {
        match Figure::Fig7c.preset() {
            FigurePreset::Curves { kind, family, .. } => {
                assert_eq!(kind, CurveKind::R1SweepWithZeroGainR2);
                assert_eq!(family, vec![0.5, 0.75, 1.0, 1.7]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn contour_axis_has_401_points() {
        let (lo, hi) = CONTOUR_OMEGA_C_RANGE;
        let step = (hi - lo) / (CONTOUR_POINTS - 1) as f64;
        assert!((step - 0.01995).abs() < 1e-12);
        assert_eq!(spectrum_parameter_sets().len(), 4 + 4 + 3 + 3);
    }
}

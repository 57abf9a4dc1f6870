use std::f64::consts::FRAC_1_SQRT_2;

use vlevel_core::figures::{spectrum_parameter_sets, Figure, FigurePreset};
use vlevel_core::steadystate::{analytic_steady_state, susceptibility};
use vlevel_core::sweep::{contour_grid, group_index_curves, spectrum_sweep, ContourQuantity};
use vlevel_core::SystemParams;

fn zero_crossing_on_unpumped_row(n: usize) -> f64 {
    let g = contour_grid(ContourQuantity::GroupIndexMinus1, (0.02, 8.0), (0.0, 1.0), n, 2, 100.0).unwrap();
    let xs: Vec<f64> = g
        .zero_contour()
        .polylines
        .iter()
        .flat_map(|l| l.points.iter())
        .filter(|p| p.1 == 0.0)
        .map(|p| p.0)
        .collect();
    assert_eq!(xs.len(), 1, "n = {n}: {xs:?}");
    xs[0]
}

#[test]
fn zero_crossing_error_halves_with_spacing() {
    let mut prev: Option<f64> = None;
    for n in [51, 101, 201, 401, 801, 1601] {
        let spacing = 7.98 / (n - 1) as f64;
        let err = (zero_crossing_on_unpumped_row(n) - FRAC_1_SQRT_2).abs();
        assert!(err <= spacing, "n = {n}: {err:e} > spacing {spacing:e}");
        if let Some(p) = prev {
            assert!(err <= 0.5 * p, "n = {n}: {err:e} vs {p:e}");
        }
        prev = Some(err);
    }
}

fn peaks(p: &SystemParams) -> (f64, f64) {
    let s = spectrum_sweep(p, -10.0, 10.0, 2001).unwrap();
    let peak = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    (peak(&s.chi_real), peak(&s.chi_imag))
}

#[test]
fn absorption_tails_vanish_far_from_resonance() {
    for (figure, label, p) in spectrum_parameter_sets() {
        let (_, peak_im) = peaks(&p);
        for dp in [-50.0, 50.0] {
            let c = susceptibility(&SystemParams { delta_p: dp, ..p }).unwrap();
            assert!(c.chi_imag.abs() < 1e-2 * peak_im, "fig {figure} {label} at {dp}: {c:?}");
        }
    }
}

/// χ′ falls off as −(ρ₁₁ − ρ₃₃)/Δ_p, not faster.
#[test]
fn dispersion_tails_follow_inverse_detuning() {
    for (figure, label, p) in spectrum_parameter_sets() {
        let s = analytic_steady_state(&p).unwrap();
        let inversion = s.rho11 - s.rho33;
        for dp in [-200.0, 200.0] {
            let c = susceptibility(&SystemParams { delta_p: dp, ..p }).unwrap();
            let asymptote = -inversion / dp;
            assert!((c.chi_real - asymptote).abs() < 0.02 * asymptote.abs(), "fig {figure} {label}: {c:?}");
        }
    }
}

/// Literal tail bound for χ′ at |Δ_p| = 50. Dispersion tails are 2.7% to
/// 14% of the in-window peak there, so this bound cannot hold.
#[test]
#[ignore = "unattainable: chi' decays as 1/delta_p and is 2.7e-2..1.4e-1 of its peak at 50"]
fn dispersion_tails_below_one_percent_at_fifty() {
    for (figure, label, p) in spectrum_parameter_sets() {
        let (peak_re, _) = peaks(&p);
        let c = susceptibility(&SystemParams { delta_p: 50.0, ..p }).unwrap();
        assert!(c.chi_real.abs() < 1e-2 * peak_re, "fig {figure} {label}: {c:?}");
    }
}

#[test]
fn sweeps_match_sequential_evaluation_bitwise() {
    let p = SystemParams { omega_c: 1.69, r1: 1.5, r2: 1.0, ..SystemParams::default() };
    let s = spectrum_sweep(&p, -10.0, 10.0, 401).unwrap();
    for (k, &dp) in s.axis.iter().enumerate() {
        let c = susceptibility(&SystemParams { delta_p: dp, ..p }).unwrap();
        assert_eq!(c.chi_real.to_bits(), s.chi_real[k].to_bits());
        assert_eq!(c.chi_imag.to_bits(), s.chi_imag[k].to_bits());
    }
    assert_eq!(s, spectrum_sweep(&p, -10.0, 10.0, 401).unwrap());

    let grid = |q| contour_grid(q, (0.02, 8.0), (0.0, 8.0), 81, 61, 100.0).unwrap();
    for q in [ContourQuantity::GroupIndexMinus1, ContourQuantity::ChiImag] {
        let (a, b) = (grid(q), grid(q));
        assert_eq!(a, b);
        assert_eq!(a.level_sets(q.caption_levels()), b.level_sets(q.caption_levels()));
    }

    for figure in [Figure::Fig7a, Figure::Fig7b, Figure::Fig7c] {
        let FigurePreset::Curves { kind, fixed, axis_range, n_points, family, .. } = figure.preset() else {
            panic!("{figure}");
        };
        let run = || group_index_curves(kind, &fixed, axis_range.0, axis_range.1, n_points, &family).unwrap();
        assert_eq!(run(), run());
    }
}

#[test]
fn spectrum_axes_are_uniform_and_inclusive() {
    let s = spectrum_sweep(&SystemParams::default(), -10.0, 10.0, 2001).unwrap();
    assert_eq!((s.axis[0], s.axis[2000]), (-10.0, 10.0));
    assert_eq!(s.axis[1000], 0.0);
    assert!(s.axis.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(s.chi_real.len(), s.len());
    assert_eq!(s.chi_imag.len(), s.len());
}

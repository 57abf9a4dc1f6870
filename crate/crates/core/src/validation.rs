//! Cross-checks between the analytic formulas and the exact dynamics.
//!
//! Each check reports the worst error it saw next to its tolerance. The
//! random parameter grid comes from a seeded ChaCha stream, so a given seed
//! always yields the same report.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{
    hermiticity_defect, integrate_to_steady_state_default, liouvillian_rhs, steady_state_linear,
    CMatrix3, ZERO3,
};
use crate::figures::{spectrum_parameter_sets, SPECTRUM_POINTS, SPECTRUM_RANGE};
use crate::params::SystemParams;
use crate::steadystate::{
    absorption_closed_form, analytic_steady_state, dispersion_slope, group_index,
    group_index_closed_form, susceptibility, zero_gain_r2,
};
use crate::sweep::linspace;

pub const DEFAULT_SEED: u64 = 7;
pub const RANDOM_GRID_SIZE: usize = 200;
pub const RANDOM_STATE_COUNT: usize = 1000;

pub const CONSERVATION_TOL: f64 = 1e-14;
pub const ODE_VS_LINEAR_TOL: f64 = 1e-8;
pub const ANALYTIC_VS_EXACT_RTOL: f64 = 1e-5;
pub const CLOSED_FORM_RTOL: f64 = 1e-10;
pub const ZERO_GAIN_TOL: f64 = 1e-12;
pub const SLOPE_RTOL: f64 = 1e-6;
/// Slopes smaller than this are excluded from the relative comparison.
pub const SLOPE_FLOOR: f64 = 1e-8;
/// Probe Rabi frequency used for exact-vs-analytic comparisons.
pub const ORACLE_PROBE: f64 = 1e-3;
/// Base step of the finite-difference slope.
pub const FD_STEP: f64 = 1e-4;

/// `|a − b| / max(|a|, |b|)`, zero when both vanish.
pub fn relative_error(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

pub fn relative_error_complex(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

/// `n` points with Ω_c ∈ [0, 6], r₁ ∈ [0, 5], r₂ ∈ [0, 5], everything else
/// at its default.
pub fn random_grid(seed: u64, n: usize) -> Vec<SystemParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let omega_c = rng.gen_range(0.0..=6.0);
            let r1 = rng.gen_range(0.0..=5.0);
            let r2 = rng.gen_range(0.0..=5.0);
            SystemParams { omega_c, r1, r2, ..SystemParams::default() }
        })
        .collect()
}

/// Random positive Hermitian unit-trace matrix (A·A† normalized).
pub fn random_density_matrix<R: Rng>(rng: &mut R) -> CMatrix3 {
    let mut a = ZERO3;
    for row in a.iter_mut() {
        for z in row.iter_mut() {
            *z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    let mut m = ZERO3;
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = (0..3).map(|k| a[i][k] * a[j][k].conj()).sum();
        }
    }
    let tr = (m[0][0] + m[1][1] + m[2][2]).re;
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] /= tr;
        }
        m[i][i].im = 0.0;
    }
    for i in 0..3 {
        for j in 0..i {
            m[j][i] = m[i][j].conj();
        }
    }
    m
}

/// Random parameter point including detunings and a non-weak probe.
pub fn random_full_params<R: Rng>(rng: &mut R) -> SystemParams {
    SystemParams {
        gamma21: rng.gen_range(0.1..3.0),
        gamma31: rng.gen_range(0.1..3.0),
        r1: rng.gen_range(0.0..5.0),
        r2: rng.gen_range(0.0..5.0),
        omega_c: rng.gen_range(-6.0..6.0),
        omega_p: rng.gen_range(-1.0..1.0),
        delta_c: rng.gen_range(-5.0..5.0),
        delta_p: rng.gen_range(-10.0..10.0),
        ..SystemParams::default()
    }
}

/// Richardson-extrapolated central difference of χ′ in Δ_p.
pub fn finite_difference_slope(params: &SystemParams, h: f64) -> f64 {
    let chi_at = |d: f64| {
        susceptibility(&SystemParams { delta_p: params.delta_p + d, ..*params })
            .map(|c| c.chi_real)
            .unwrap_or(f64::NAN)
    };
    let central = |h: f64| (chi_at(h) - chi_at(-h)) / (2.0 * h);
    (4.0 * central(0.5 * h) - central(h)) / 3.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub name: &'static str,
    pub samples: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckRow {
    fn new(name: &'static str, errors: &[f64], tolerance: f64) -> Self {
        let max_error = errors.iter().copied().fold(0.0f64, |m, e| {
            if e.is_nan() || m.is_nan() {
                f64::NAN
            } else {
                m.max(e)
            }
        });
        CheckRow {
            name,
            samples: errors.len(),
            max_error,
            tolerance,
            passed: !errors.is_empty() && max_error <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub seed: u64,
    pub rows: Vec<CheckRow>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationOptions {
    pub seed: u64,
    pub grid_size: usize,
    pub state_count: usize,
    /// Replaces [`ODE_VS_LINEAR_TOL`] when set.
    pub ode_tolerance: Option<f64>,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            seed: DEFAULT_SEED,
            grid_size: RANDOM_GRID_SIZE,
            state_count: RANDOM_STATE_COUNT,
            ode_tolerance: None,
        }
    }
}

/// (trace defects, Hermiticity defects) of dρ/dt over random states.
pub fn conservation_errors(seed: u64, count: usize) -> (Vec<f64>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0001);
    (0..count)
        .map(|_| {
            let rho = random_density_matrix(&mut rng);
            let p = random_full_params(&mut rng);
            let d = liouvillian_rhs(&rho, &p);
            ((d[0][0] + d[1][1] + d[2][2]).norm(), hermiticity_defect(&d))
        })
        .unzip()
}

/// Entrywise distance between the linear solve and the integrated steady
/// state, per grid point. Points where the integrator fails report NaN.
pub fn ode_vs_linear_errors(grid: &[SystemParams]) -> Vec<f64> {
    grid.par_iter()
        .map(|p| {
            let p = SystemParams { omega_p: ORACLE_PROBE, ..*p };
            match (steady_state_linear(&p), integrate_to_steady_state_default(&p)) {
                (Ok(lin), Ok(rep)) if rep.converged => lin.max_abs_diff(&rep.final_state),
                _ => f64::NAN,
            }
        })
        .collect()
}

/// Analytic weak-probe solution against the exact linear solve at
/// Ω_p = [`ORACLE_PROBE`], at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleComparison {
    /// Largest population difference over the largest population.
    pub population_error: f64,
    /// |Δ(ρ₃₁/Ω_p)|.
    pub ratio_error: f64,
    /// max(|analytic|, |exact|) of ρ₃₁/Ω_p.
    pub ratio_scale: f64,
}

impl OracleComparison {
    pub fn ratio_relative(&self) -> f64 {
        if self.ratio_scale == 0.0 {
            0.0
        } else {
            self.ratio_error / self.ratio_scale
        }
    }
}

pub fn compare_with_exact(params: &SystemParams) -> Option<OracleComparison> {
    let p = SystemParams { omega_p: ORACLE_PROBE, delta_c: 0.0, ..*params };
    let a = analytic_steady_state(&p).ok()?;
    let e = steady_state_linear(&p).ok()?;
    let exact_ratio = e.get(3, 1) / Complex64::new(p.omega_p, 0.0).conj();
    let analytic_pops = [a.rho11, a.rho22, a.rho33];
    let pop_diff = (1..=3)
        .map(|k| (analytic_pops[k - 1] - e.population(k)).abs())
        .fold(0.0, f64::max);
    let pop_scale = (1..=3)
        .map(|k| analytic_pops[k - 1].abs().max(e.population(k).abs()))
        .fold(0.0, f64::max);
    Some(OracleComparison {
        population_error: pop_diff / pop_scale,
        ratio_error: (a.rho31_over_omega_p - exact_ratio).norm(),
        ratio_scale: a.rho31_over_omega_p.norm().max(exact_ratio.norm()),
    })
}

/// Pointwise relative mismatch: the worse of the population-vector error and
/// the relative error of ρ₃₁/Ω_p. NaN if either route fails.
pub fn analytic_vs_exact_error(params: &SystemParams) -> f64 {
    compare_with_exact(params)
        .map(|c| c.population_error.max(c.ratio_relative()))
        .unwrap_or(f64::NAN)
}

/// Normwise relative mismatch over a probe-detuning axis: the largest
/// ρ₃₁/Ω_p difference over the largest |ρ₃₁/Ω_p| on the curve, or the
/// population error if that is worse.
pub fn curve_analytic_vs_exact_error(params: &SystemParams, delta_p_axis: &[f64]) -> f64 {
    let comparisons: Option<Vec<OracleComparison>> = delta_p_axis
        .iter()
        .map(|&dp| compare_with_exact(&SystemParams { delta_p: dp, ..*params }))
        .collect();
    let Some(c) = comparisons else {
        return f64::NAN;
    };
    let pop = c.iter().map(|c| c.population_error).fold(0.0, f64::max);
    let err = c.iter().map(|c| c.ratio_error).fold(0.0, f64::max);
    let scale = c.iter().map(|c| c.ratio_scale).fold(0.0, f64::max);
    pop.max(if scale == 0.0 { 0.0 } else { err / scale })
}

/// Curve-level oracle errors for every spectrum figure set, sampled at `n`
/// detunings across the spectrum range.
pub fn figure_oracle_errors(n: usize) -> Vec<f64> {
    let axis = linspace(SPECTRUM_RANGE.0, SPECTRUM_RANGE.1, n).expect("n >= 2");
    spectrum_parameter_sets()
        .par_iter()
        .map(|(_, _, p)| curve_analytic_vs_exact_error(p, &axis))
        .collect()
}

/// Figure parameter sets at `n` probe detunings across the spectrum range.
pub fn figure_sample_points(n: usize) -> Vec<SystemParams> {
    let axis = linspace(SPECTRUM_RANGE.0, SPECTRUM_RANGE.1, n).expect("n >= 2");
    spectrum_parameter_sets()
        .into_iter()
        .flat_map(|(_, _, p)| axis.iter().map(move |&dp| SystemParams { delta_p: dp, ..p }))
        .collect()
}

/// Relative errors of the closed forms against the pipeline at line center:
/// (group index, absorption).
pub fn closed_form_errors(grid: &[SystemParams]) -> (Vec<f64>, Vec<f64>) {
    grid.iter()
        .map(|p| {
            let p = SystemParams { delta_p: 0.0, delta_c: 0.0, ..*p };
            let ng = group_index(&p).map(|g| g.n_g_minus_1).unwrap_or(f64::NAN);
            let chi = susceptibility(&p).map(|c| c.chi_imag).unwrap_or(f64::NAN);
            (
                relative_error(group_index_closed_form(p.omega_c, p.r1, p.r2, p.omega_scale), ng),
                relative_error(absorption_closed_form(p.omega_c, p.r1, p.r2), chi),
            )
        })
        .unzip()
}

/// |χ″| at line center with r₂ from the zero-gain condition, for every grid
/// point where that pump is physical.
pub fn zero_gain_errors(grid: &[SystemParams]) -> Vec<f64> {
    grid.iter()
        .filter_map(|p| {
            zero_gain_r2(p.r1, p.omega_c)
                .ok()
                .map(|r2| absorption_closed_form(p.omega_c, p.r1, r2).abs())
        })
        .collect()
}

/// Relative slope errors over the spectrum grids of every spectrum figure.
pub fn slope_errors() -> Vec<f64> {
    figure_sample_points(SPECTRUM_POINTS)
        .par_iter()
        .filter_map(|p| {
            let exact = dispersion_slope(p).unwrap_or(f64::NAN);
            if exact.abs() <= SLOPE_FLOOR {
                return None;
            }
            Some(relative_error(exact, finite_difference_slope(p, FD_STEP)))
        })
        .collect()
}

pub fn run_suite(opts: &ValidationOptions) -> ValidationReport {
    let grid = random_grid(opts.seed, opts.grid_size);
    let (trace, herm) = conservation_errors(opts.seed, opts.state_count);
    let ode = ode_vs_linear_errors(&grid);

    let axis = linspace(SPECTRUM_RANGE.0, SPECTRUM_RANGE.1, 41).expect("valid axis");
    let mut analytic = figure_oracle_errors(axis.len());
    analytic.extend(
        grid.par_iter()
            .map(|p| curve_analytic_vs_exact_error(p, &axis))
            .collect::<Vec<_>>(),
    );

    let (ng, chi) = closed_form_errors(&grid);

    let rows = vec![
        CheckRow::new("trace conservation of dρ/dt", &trace, CONSERVATION_TOL),
        CheckRow::new("Hermiticity of dρ/dt", &herm, CONSERVATION_TOL),
        CheckRow::new(
            "linear solve vs ODE steady state",
            &ode,
            opts.ode_tolerance.unwrap_or(ODE_VS_LINEAR_TOL),
        ),
        CheckRow::new("weak-probe analytic vs exact", &analytic, ANALYTIC_VS_EXACT_RTOL),
        CheckRow::new("closed-form n_g-1 vs pipeline", &ng, CLOSED_FORM_RTOL),
        CheckRow::new("closed-form chi'' vs pipeline", &chi, CLOSED_FORM_RTOL),
        CheckRow::new("zero-gain r2 identity", &zero_gain_errors(&grid), ZERO_GAIN_TOL),
        CheckRow::new("dispersion slope vs finite differences", &slope_errors(), SLOPE_RTOL),
    ];
    ValidationReport { seed: opts.seed, rows }
}

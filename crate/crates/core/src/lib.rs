//! Probe response of a coherently driven, incoherently pumped V-type
//! three-level atom.
//!
//! * [`params`]: model parameters and coherence decay rates.
//! * [`config`]: `key=value` parameter files.
//! * [`dynamics`]: exact equations of motion, RK4 integration and the direct
//!   linear steady-state solve.
//! * [`steadystate`]: weak-probe analytic steady state, susceptibility, group
//!   index and line-center closed forms.
//! * [`sweep`]: detuning spectra, contour grids and group-index curves.
//! * [`response`]: probe response from either the analytic or the exact
//!   solver.
//! * [`figures`]: parameter presets for the published figure datasets.
//! * [`validation`]: cross-checks between the analytic and exact routes.

pub mod config;
pub mod dynamics;
pub mod figures;
pub mod linalg;
pub mod params;
pub mod response;
pub mod steadystate;
pub mod sweep;
pub mod validation;

pub use params::{coherence_rates, CoherenceRates, ParamField, SystemParams};

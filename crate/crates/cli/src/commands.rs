use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use vlevel_core::config::{parse_config, ParamOverrides};
use vlevel_core::figures::{
    Figure, FigurePreset, CONTOUR_OMEGA_C_RANGE, CONTOUR_POINTS, CONTOUR_R1_RANGE, CURVE_POINTS,
    CURVE_RANGE, SPECTRUM_POINTS, SPECTRUM_RANGE,
};
use vlevel_core::response::{probe_response, Backend};
use vlevel_core::sweep::{
    contour_grid, group_index_curves, spectrum_sweep_with, ContourQuantity, CurveKind,
};
use vlevel_core::validation::{run_suite, ValidationOptions, ValidationReport, RANDOM_STATE_COUNT};
use vlevel_core::SystemParams;

use crate::args::{Common, ContourArgs, GroupIndexArgs, SpectrumArgs, SteadyArgs, ValidateArgs};
use crate::output::{
    fmt_num, fmt_opt, label_slug, sibling, stem_of, timestamp, write_manifest, Outputs, RunManifest, Table,
};
use crate::svg::{self, Panel, Series};

pub const STEADY_COLUMNS: [&str; 11] = [
    "delta_p",
    "rho11",
    "rho22",
    "rho33",
    "re_rho21",
    "im_rho21",
    "re_rho31_over_omega_p",
    "im_rho31_over_omega_p",
    "chi_real",
    "chi_imag",
    "ng_minus_1",
];
pub const SPECTRUM_COLUMNS: [&str; 3] = ["delta_p", "chi_real", "chi_imag"];
pub const CONTOUR_COLUMNS: [&str; 3] = ["omega_c", "r1", "value"];
pub const LEVEL_COLUMNS: [&str; 4] = ["level", "segment_id", "omega_c", "r1"];
pub const CURVE_COLUMNS: [&str; 4] = ["axis_value", "series_label", "ng_minus_1", "r2_used"];

/// Defaults, then the config file, then command-line flags.
pub fn resolve_params(common: &Common) -> Result<SystemParams> {
    let from_file = match &common.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_config(&text).with_context(|| format!("in {}", path.display()))?
        }
        None => ParamOverrides::new(),
    };
    let merged = from_file.merged_with(&common.params.overrides());
    Ok(merged.apply(SystemParams::default()).validate()?)
}

fn out_path(common: &Common, default_name: &str) -> PathBuf {
    match (&common.out, common.figure) {
        (Some(p), _) => p.clone(),
        (None, Some(f)) => PathBuf::from(format!("fig{}.csv", f.id())),
        (None, None) => PathBuf::from(format!("{default_name}.csv")),
    }
}

struct Run<'a> {
    command: &'static str,
    common: &'a Common,
    params: SystemParams,
    out: PathBuf,
    outputs: Outputs,
    notes: Vec<String>,
}

impl<'a> Run<'a> {
    fn new(command: &'static str, common: &'a Common) -> Result<Self> {
        Ok(Run {
            command,
            common,
            params: resolve_params(common)?,
            out: out_path(common, command),
            outputs: Outputs::default(),
            notes: Vec::new(),
        })
    }

    fn stem(&self) -> PathBuf {
        stem_of(&self.out)
    }

    fn write_svg(&mut self, panels: &[Panel]) -> Result<()> {
        if self.common.svg {
            let path = sibling(&self.stem(), "", "svg");
            self.outputs.write(&path, svg::render(panels).as_bytes())?;
        }
        Ok(())
    }

    fn finish(self) -> Result<Vec<PathBuf>> {
        let path = sibling(&self.stem(), ".manifest", "json");
        let manifest = RunManifest {
            command: self.command.to_string(),
            resolved_params: self.params,
            output_paths: self.outputs.paths.clone(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: timestamp()?,
            figure: self.common.figure.map(|f| f.id().to_string()),
            backend: self.common.backend.name().to_string(),
            notes: self.notes,
        };
        write_manifest(&path, &manifest)?;
        let mut all = self.outputs.paths;
        all.push(path);
        Ok(all)
    }
}

fn wrong_figure(f: Figure, command: &str) -> anyhow::Error {
    anyhow::anyhow!("figure {f} has no {command} preset; use `vlevel {} --figure {f}`", figure_command(f))
}

fn figure_command(f: Figure) -> &'static str {
    match f.preset() {
        FigurePreset::Spectra { .. } => "spectrum",
        FigurePreset::Contour { .. } => "contour",
        FigurePreset::Curves { .. } => "groupindex",
    }
}

/// Closed forms at line center assume unit decay rates.
fn require_unit_decay(p: &SystemParams) -> Result<()> {
    if p.gamma21 != 1.0 || p.gamma31 != 1.0 {
        bail!(
            "UnsupportedDecay: line-center closed forms need gamma21 = gamma31 = 1, got {} and {}",
            p.gamma21,
            p.gamma31
        );
    }
    Ok(())
}

fn require_analytic(common: &Common, command: &str) -> Result<()> {
    if common.backend != Backend::Analytic {
        bail!("{command} uses the line-center closed forms; --backend {} is not available", common.backend);
    }
    Ok(())
}

pub fn steady(args: &SteadyArgs) -> Result<Vec<PathBuf>> {
    let common = &args.common;
    if let Some(f) = common.figure {
        return Err(wrong_figure(f, "steady"));
    }
    if common.svg {
        bail!("steady writes a single row; --svg is not available");
    }
    let mut run = Run::new("steady", common)?;
    let r = probe_response(&run.params, common.backend)?;
    let mut t = Table::new(&STEADY_COLUMNS);
    t.push(
        [
            run.params.delta_p,
            r.rho11,
            r.rho22,
            r.rho33,
            r.rho21.re,
            r.rho21.im,
            r.rho31_over_omega_p.re,
            r.rho31_over_omega_p.im,
            r.chi.chi_real,
            r.chi.chi_imag,
            r.group.n_g_minus_1,
        ]
        .into_iter()
        .map(fmt_num)
        .collect(),
    );
    let out = run.out.clone();
    run.outputs.write_table(&out, &t)?;
    run.finish()
}

pub fn spectrum(args: &SpectrumArgs) -> Result<Vec<PathBuf>> {
    let common = &args.common;
    let mut run = Run::new("spectrum", common)?;
    let (series, range, n) = match common.figure {
        Some(f) => match f.preset_on(&run.params) {
            FigurePreset::Spectra { series, delta_p_range, n_points } => (series, delta_p_range, n_points),
            _ => return Err(wrong_figure(f, "spectrum")),
        },
        None => (vec![(String::new(), run.params)], SPECTRUM_RANGE, SPECTRUM_POINTS),
    };
    let lo = args.dp_min.unwrap_or(range.0);
    let hi = args.dp_max.unwrap_or(range.1);
    let n = args.points.unwrap_or(n);

    let mut real_panel = Vec::new();
    let mut imag_panel = Vec::new();
    for (label, params) in &series {
        let s = spectrum_sweep_with(params, lo, hi, n, common.backend)?;
        let mut t = Table::new(&SPECTRUM_COLUMNS);
        for k in 0..s.len() {
            t.push(vec![fmt_num(s.axis[k]), fmt_num(s.chi_real[k]), fmt_num(s.chi_imag[k])]);
        }
        let path = if label.is_empty() {
            run.out.clone()
        } else {
            sibling(&run.stem(), &format!("_{}", label_slug(label)), "csv")
        };
        run.outputs.write_table(&path, &t)?;
        let name = if label.is_empty() { "chi".to_string() } else { label.clone() };
        real_panel.push(Series::from_xy(name.clone(), &s.axis, &s.chi_real));
        imag_panel.push(Series::from_xy(name, &s.axis, &s.chi_imag));
    }
    run.write_svg(&[
        Panel { title: "dispersion".into(), x_label: "delta_p".into(), y_label: "chi_real".into(), series: real_panel },
        Panel { title: "absorption".into(), x_label: "delta_p".into(), y_label: "chi_imag".into(), series: imag_panel },
    ])?;
    run.finish()
}

pub fn contour(args: &ContourArgs) -> Result<Vec<PathBuf>> {
    let common = &args.common;
    require_analytic(common, "contour")?;
    let mut run = Run::new("contour", common)?;
    let (oc_range, r1_range, nx, ny, omega_scale) = match common.figure {
        Some(f) => match f.preset_on(&run.params) {
            FigurePreset::Contour { omega_c_range, r1_range, nx, ny, omega_scale } => {
                (omega_c_range, r1_range, nx, ny, omega_scale)
            }
            _ => return Err(wrong_figure(f, "contour")),
        },
        None => {
            require_unit_decay(&run.params)?;
            (CONTOUR_OMEGA_C_RANGE, CONTOUR_R1_RANGE, CONTOUR_POINTS, CONTOUR_POINTS, run.params.omega_scale)
        }
    };
    let quantity = ContourQuantity::from(args.quantity);
    let grid = contour_grid(
        quantity,
        (args.omega_c_min.unwrap_or(oc_range.0), args.omega_c_max.unwrap_or(oc_range.1)),
        (args.r1_min.unwrap_or(r1_range.0), args.r1_max.unwrap_or(r1_range.1)),
        args.nx.unwrap_or(nx),
        args.ny.unwrap_or(ny),
        omega_scale,
    )?;
    run.notes.push(format!("quantity={}; r2=0, delta_c=delta_p=0", quantity.name()));

    let mut t = Table::new(&CONTOUR_COLUMNS);
    for (iy, &r1) in grid.y_axis.iter().enumerate() {
        for (ix, &oc) in grid.x_axis.iter().enumerate() {
            t.push(vec![fmt_num(oc), fmt_num(r1), fmt_num(grid.value(ix, iy))]);
        }
    }
    let out = run.out.clone();
    run.outputs.write_table(&out, &t)?;

    let mut levels = Table::new(&LEVEL_COLUMNS);
    let mut series = Vec::new();
    let mut segment_id = 0usize;
    for set in grid.level_sets(quantity.caption_levels()) {
        let mut pieces = Vec::new();
        for line in &set.polylines {
            for &(oc, r1) in &line.points {
                levels.push(vec![fmt_num(set.level), segment_id.to_string(), fmt_num(oc), fmt_num(r1)]);
            }
            segment_id += 1;
            pieces.push(line.points.clone());
        }
        series.push(Series { label: format!("{}", set.level), pieces });
    }
    run.outputs.write_table(&sibling(&run.stem(), "_levels", "csv"), &levels)?;
    run.write_svg(&[Panel {
        title: format!("{} level lines", quantity.name()),
        x_label: "omega_c".into(),
        y_label: "r1".into(),
        series,
    }])?;
    run.finish()
}

pub fn groupindex(args: &GroupIndexArgs) -> Result<Vec<PathBuf>> {
    let common = &args.common;
    require_analytic(common, "groupindex")?;
    let mut run = Run::new("groupindex", common)?;
    let (kind, fixed, range, n, family) = match common.figure {
        Some(f) => match f.preset_on(&run.params) {
            FigurePreset::Curves { kind, fixed, axis_range, n_points, family, axis_range_is_default } => {
                if axis_range_is_default && args.axis_min.is_none() && args.axis_max.is_none() {
                    run.notes.push(format!(
                        "axis range [{}, {}] is a default, not a caption value",
                        axis_range.0, axis_range.1
                    ));
                }
                (kind, fixed, axis_range, n_points, family)
            }
            _ => return Err(wrong_figure(f, "groupindex")),
        },
        None => {
            require_unit_decay(&run.params)?;
            let kind = CurveKind::from(args.kind);
            let family = if !args.family.is_empty() {
                args.family.clone()
            } else if kind == CurveKind::OmegaCSweep {
                vec![run.params.r1]
            } else {
                vec![run.params.omega_c]
            };
            (kind, run.params, CURVE_RANGE, CURVE_POINTS, family)
        }
    };
    let curves = group_index_curves(
        kind,
        &fixed,
        args.axis_min.unwrap_or(range.0),
        args.axis_max.unwrap_or(range.1),
        args.points.unwrap_or(n),
        &family,
    )?;

    let mut t = Table::new(&CURVE_COLUMNS);
    let mut series = Vec::new();
    for c in &curves {
        for k in 0..c.axis.len() {
            t.push(vec![fmt_num(c.axis[k]), c.label.clone(), fmt_opt(c.values[k]), fmt_opt(c.r2_used[k])]);
        }
        series.push(Series::from_gapped(c.label.clone(), &c.axis, &c.values));
    }
    let out = run.out.clone();
    run.outputs.write_table(&out, &t)?;
    run.write_svg(&[Panel {
        title: "group index".into(),
        x_label: kind.axis_key().into(),
        y_label: "ng_minus_1".into(),
        series,
    }])?;
    run.finish()
}

pub fn validate(args: &ValidateArgs) -> ValidationReport {
    run_suite(&ValidationOptions {
        seed: args.seed,
        grid_size: args.grid_size,
        state_count: RANDOM_STATE_COUNT,
        ode_tolerance: args.tol,
    })
}

pub fn format_report(report: &ValidationReport) -> String {
    let width = report.rows.iter().map(|r| r.name.chars().count()).max().unwrap_or(0);
    let mut out = format!("seed {}\n", report.seed);
    out.push_str(&format!(
        "{:<width$}  {:>8}  {:>10}  {:>10}  result\n",
        "check", "samples", "max_error", "tolerance"
    ));
    for r in &report.rows {
        let pad = width - r.name.chars().count();
        out.push_str(&format!(
            "{}{}  {:>8}  {:>10.3e}  {:>10.3e}  {}\n",
            r.name,
            " ".repeat(pad),
            r.samples,
            r.max_error,
            r.tolerance,
            if r.passed { "PASS" } else { "FAIL" }
        ));
    }
    let failed = report.rows.iter().filter(|r| !r.passed).count();
    if failed == 0 {
        out.push_str("all checks passed\n");
    } else {
        out.push_str(&format!("{failed} check(s) failed\n"));
    }
    out
}

/// Path of the manifest for an output path.
pub fn manifest_path(out: &Path) -> PathBuf {
    sibling(&stem_of(out), ".manifest", "json")
}

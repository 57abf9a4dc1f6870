use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use vlevel_cli::output::reemit_csv;

fn vlevel(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vlevel"))
        .args(args)
        .current_dir(dir)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn rows(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    r.records().map(|rec| rec.unwrap().iter().map(str::to_string).collect()).collect()
}

fn header(path: &Path) -> Vec<String> {
    let mut r = csv::Reader::from_path(path).unwrap();
    r.headers().unwrap().iter().map(str::to_string).collect()
}

#[test]
fn steady_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let o = vlevel(dir.path(), &["steady"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = dir.path().join("steady.csv");
    assert_eq!(
        header(&csv),
        [
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
            "ng_minus_1"
        ]
    );
    let r = &rows(&csv)[0];
    let v = |k: usize| r[k].parse::<f64>().unwrap();
    assert_eq!(v(1), 1.0);
    assert_eq!(v(9), 2.0);
    assert_eq!(v(10), -400.0);
    assert!(dir.path().join("steady.manifest.json").exists());
}

#[test]
fn config_precedence_flag_over_file_over_default() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("run.cfg"), "# pumps\nr1 = 1.5\nomega_c = 1.0\nomega_scale=50\n").unwrap();
    let o = vlevel(dir.path(), &["steady", "--config", "run.cfg", "--omega-c", "1.7", "--out", "p.csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let m: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("p.manifest.json")).unwrap()).unwrap();
    let p = &m["resolved_params"];
    assert_eq!(p["omega_c"], 1.7);
    assert_eq!(p["r1"], 1.5);
    assert_eq!(p["omega_scale"], 50.0);
    assert_eq!(p["gamma21"], 1.0);
    assert_eq!(m["command"], "steady");
    assert_eq!(m["timestamp"], "2023-11-14T22:13:20Z");
    for path in m["output_paths"].as_array().unwrap() {
        assert!(dir.path().join(path.as_str().unwrap()).exists());
    }
}

#[test]
fn parameter_errors_exit_2_and_name_the_violation() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&[&str], &str); 5] = [
        (&["steady", "--delta-c", "0.5"], "CouplingDetuned"),
        (&["steady", "--r1", "-0.1"], "NegativeRate(r1)"),
        (&["steady", "--gamma31", "0"], "NonPositiveDecay(gamma31)"),
        (&["spectrum", "--dp-min", "1", "--dp-max", "1"], "InvalidRange"),
        (&["steady", "--backend", "exact", "--omega-p", "0"], "ZeroProbe"),
    ];
    for (args, name) in cases {
        let o = vlevel(dir.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains(name), "{args:?}: {}", stderr(&o));
    }
    let o = vlevel(dir.path(), &["steady", "--no-such-flag"]);
    assert_eq!(o.status.code(), Some(2));
    fs::write(dir.path().join("bad.cfg"), "omega_q = 1\n").unwrap();
    let o = vlevel(dir.path(), &["steady", "--config", "bad.cfg"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("omega_q"));
}

#[test]
fn exact_backend_handles_detuned_coupling() {
    let dir = tempfile::tempdir().unwrap();
    let o = vlevel(dir.path(), &["steady", "--backend", "exact", "--delta-c", "0.5", "--omega-c", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = &rows(&dir.path().join("steady.csv"))[0];
    let pops: f64 = r[1..4].iter().map(|s| s.parse::<f64>().unwrap()).sum();
    assert!((pops - 1.0).abs() < 1e-12);
}

#[test]
fn backends_agree_on_a_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let common = ["spectrum", "--omega-c", "1.7", "--r1", "0.5", "--points", "41"];
    for (backend, out) in [("analytic", "a.csv"), ("exact", "e.csv")] {
        let mut args = common.to_vec();
        args.extend(["--backend", backend, "--out", out]);
        assert_eq!(vlevel(dir.path(), &args).status.code(), Some(0));
    }
    let a = rows(&dir.path().join("a.csv"));
    let e = rows(&dir.path().join("e.csv"));
    assert_eq!(a.len(), 41);
    let peak = a.iter().map(|r| r[2].parse::<f64>().unwrap().abs()).fold(0.0, f64::max);
    for (ra, re) in a.iter().zip(&e) {
        assert_eq!(ra[0], re[0]);
        for k in 1..3 {
            let d = ra[k].parse::<f64>().unwrap() - re[k].parse::<f64>().unwrap();
            assert!(d.abs() < 1e-5 * peak);
        }
    }
}

#[test]
fn csv_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(vlevel(dir.path(), &["steady", "--omega-c", "1.69", "--r1", "1.5", "--r2", "2.43"]).status.code(), Some(0));
    assert_eq!(vlevel(dir.path(), &["groupindex", "--figure", "7c"]).status.code(), Some(0));
    assert_eq!(
        vlevel(dir.path(), &["contour", "--quantity", "chi", "--nx", "41", "--ny", "41"]).status.code(),
        Some(0)
    );
    for name in ["steady.csv", "fig7c.csv", "contour.csv", "contour_levels.csv"] {
        let bytes = fs::read(dir.path().join(name)).unwrap();
        assert_eq!(reemit_csv(&bytes).unwrap(), bytes, "{name}");
        assert!(!String::from_utf8(bytes).unwrap().contains("NaN"));
    }
}

#[test]
fn figure_6_gives_three_spectra() {
    let dir = tempfile::tempdir().unwrap();
    let o = vlevel(dir.path(), &["spectrum", "--figure", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for label in ["r2_0", "r2_1", "r2_2.43"] {
        let path = dir.path().join(format!("fig6_{label}.csv"));
        assert_eq!(header(&path), ["delta_p", "chi_real", "chi_imag"]);
        assert_eq!(rows(&path).len(), 2001);
    }
    let spectra = fs::read_dir(dir.path())
        .unwrap()
        .filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "csv"))
        .count();
    assert_eq!(spectra, 3);
}

#[test]
fn figure_7c_gives_four_gapped_curves() {
    let dir = tempfile::tempdir().unwrap();
    let o = vlevel(dir.path(), &["groupindex", "--figure", "7c", "--svg"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let path = dir.path().join("fig7c.csv");
    assert_eq!(header(&path), ["axis_value", "series_label", "ng_minus_1", "r2_used"]);
    let r = rows(&path);
    let mut labels: Vec<&str> = r.iter().map(|row| row[1].as_str()).collect();
    labels.dedup();
    assert_eq!(labels, ["omega_c=0.5", "omega_c=0.75", "omega_c=1", "omega_c=1.7"]);
    assert_eq!(r.len(), 4 * 1601);
    // Rows stay on a uniform axis; gaps are empty fields.
    assert!(r.iter().any(|row| row[2].is_empty() && row[3].is_empty()));
    for row in r.iter().filter(|row| !row[3].is_empty()) {
        assert!(row[3].parse::<f64>().unwrap() >= 0.0);
    }
    assert!(dir.path().join("fig7c.svg").exists());
}

#[test]
fn figure_3_zero_level_crosses_unpumped_row_near_root() {
    let dir = tempfile::tempdir().unwrap();
    let o = vlevel(dir.path(), &["contour", "--figure", "3", "--quantity", "ng"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(rows(&dir.path().join("fig3.csv")).len(), 401 * 401);
    let levels = rows(&dir.path().join("fig3_levels.csv"));
    let on_axis: Vec<f64> = levels
        .iter()
        .filter(|r| r[0] == "0.0" && r[3] == "0.0")
        .map(|r| r[2].parse().unwrap())
        .collect();
    assert_eq!(on_axis.len(), 1);
    assert!((on_axis[0] - std::f64::consts::FRAC_1_SQRT_2).abs() < 2e-3);
    let named: Vec<&str> = levels.iter().map(|r| r[0].as_str()).collect();
    for level in ["-3.0", "-10.0", "-20.0", "-30.0"] {
        assert!(named.contains(&level), "{level}");
    }
}

#[test]
fn figure_must_match_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let o = vlevel(dir.path(), &["spectrum", "--figure", "7a"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("groupindex"));
    let o = vlevel(dir.path(), &["contour", "--figure", "8"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_exit_codes_and_seed_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = vlevel(dir.path(), &["validate", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    let b = vlevel(dir.path(), &["validate", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("seed 7\n"));
    assert_eq!(text.matches("PASS").count(), 8);

    let tight = vlevel(dir.path(), &["validate", "--tol", "1e-15"]);
    assert_eq!(tight.status.code(), Some(1));
    let text = String::from_utf8(tight.stdout).unwrap();
    let ode_row = text.lines().find(|l| l.starts_with("linear solve vs ODE")).unwrap();
    assert!(ode_row.ends_with("FAIL"), "{ode_row}");
}

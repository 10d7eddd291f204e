use std::io::Write as _;
use std::path::Path;
use std::process::Command;

use dkp_spectra::cli::CONFIG_ENV;
use dkp_spectra::dkp_yukawa::{natural_units, PhysicalParams};
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_env(args: &[&str], config_env: Option<&Path>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dkp-spectra"));
    cmd.args(args).env_remove(CONFIG_ENV);
    if let Some(path) = config_env {
        cmd.env(CONFIG_ENV, path);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_env(args, None)
}

/// Data rows of a CSV table as header-keyed maps, skipping `#` metadata.
fn csv_rows(text: &str) -> Vec<Vec<(String, String)>> {
    let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    let mut rdr = csv::Reader::from_reader(body.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    rdr.records().map(|r| header.iter().cloned().zip(r.unwrap().iter().map(String::from)).collect()).collect()
}

fn field<'a>(row: &'a [(String, String)], key: &str) -> &'a str {
    &row.iter().find(|(k, _)| k == key).unwrap_or_else(|| panic!("no column {key}")).1
}

fn num(row: &[(String, String)], key: &str) -> f64 {
    field(row, key).parse().unwrap_or_else(|_| panic!("{key} = {:?}", field(row, key)))
}

fn meta(text: &str, key: &str) -> String {
    let prefix = format!("# {key}=");
    text.lines().find_map(|l| l.strip_prefix(&prefix)).unwrap_or_else(|| panic!("no {key}")).to_string()
}

fn config_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn energies_default_table() {
    let r = run(&["energies"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let rows = csv_rows(&r.stdout);
    assert_eq!(rows.len(), 36);
    for row in &rows {
        assert_eq!(field(row, "branch"), "paper");
        assert_eq!(field(row, "status"), "ok");
        let (n, j) = (num(row, "n") as usize, num(row, "J") as usize);
        let want = dkp_spectra::cli::reference_energy(n, j, 0).unwrap();
        assert!(((num(row, "E_MeV") - want) / want).abs() <= 1e-3);
    }
    assert!(r.stdout.lines().all(|l| !l.ends_with('\r')));
    assert!(r.stdout.contains("-871.7917626"), "ten significant digits");
}

#[test]
fn energies_both_branches() {
    let r = run(&["energies", "--branch", "both"]);
    assert_eq!(r.code, 0);
    let rows = csv_rows(&r.stdout);
    assert_eq!(rows.len(), 72);
    for row in &rows {
        let e = num(row, "E_MeV");
        match field(row, "branch") {
            "paper" => assert!(e < 0.0),
            "physical" => assert!(e > 0.0),
            other => panic!("{other}"),
        }
    }
}

#[test]
fn energies_single_cell() {
    let r = run(&["energies", "--n-max", "0", "--j-max", "0"]);
    assert_eq!(csv_rows(&r.stdout).len(), 1);
}

#[test]
fn energies_without_binding_report_status() {
    let r = run(&["energies", "--u0", "0", "--n-max", "1", "--j-max", "1"]);
    assert_eq!(r.code, 0);
    let rows = csv_rows(&r.stdout);
    assert_eq!(rows.len(), 4);
    for row in &rows {
        assert_eq!(field(row, "status"), "no_bound_state");
        assert_eq!(field(row, "E_MeV"), "");
    }
}

#[test]
fn table2_default_passes() {
    let r = run(&["table2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let rows = csv_rows(&r.stdout);
    assert_eq!(rows.len(), 72);
    let max: f64 = meta(&r.stdout, "max_rel_deviation").parse().unwrap();
    assert!(max <= 1e-3);
    assert_eq!(meta(&r.stdout, "verdict"), "pass");
    let suspect: Vec<_> = rows.iter().filter(|r| field(r, "status") == "suspect_excluded").collect();
    assert_eq!(suspect.len(), 1);
    assert_eq!((field(suspect[0], "n"), field(suspect[0], "J")), ("5", "5"));
    assert_eq!(rows.iter().filter(|r| field(r, "status") == "ok").count(), 71);
}

#[test]
fn table2_tight_tolerance_fails() {
    let r = run(&["table2", "--tolerance", "1e-6"]);
    assert_eq!(r.code, 1);
    assert_eq!(meta(&r.stdout, "verdict"), "fail");
}

#[test]
fn table2_in_natural_units() {
    let base = csv_rows(&run(&["table2"]).stdout);
    let np = natural_units(&PhysicalParams::reference(0.005));
    let (g, a) = (format!("{:e}", np.g), format!("{:e}", np.a));
    let full = run(&["table2", "--hbar-c", "1", "--u0", &g, "--a", &a]);
    assert_eq!(full.code, 0, "{}", full.stderr);
    let rounded = run(&["table2", "--hbar-c", "1", "--u0", "0.342274", "--a", "0.98663"]);
    for (out, tol) in [(&full, 1e-9), (&rounded, 1e-6)] {
        let rows = csv_rows(&out.stdout);
        assert_eq!(rows.len(), 36);
        for (x, y) in rows.iter().zip(&base) {
            let (ex, ey) = (num(x, "E_MeV"), num(y, "E_MeV"));
            assert!(((ex - ey) / ey).abs() <= tol, "{ex} vs {ey}");
        }
    }
}

#[test]
fn wavefunction_columns() {
    let r = run(&["wavefunction", "1", "0", "--samples", "400"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(meta(&r.stdout, "branch"), "physical");
    let rows = csv_rows(&r.stdout);
    assert_eq!(rows.len(), 400);
    assert!(rows.iter().all(|row| num(row, "H_minus") == 0.0));
    let f: Vec<f64> = rows.iter().map(|row| num(row, "F")).collect();
    let peak = f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(f[0].abs() < 1e-3 * peak);
    let changes = f.windows(2).filter(|w| w[0] != 0.0 && w[1] != 0.0 && w[0].signum() != w[1].signum()).count();
    assert_eq!(changes, 1);
}

#[test]
fn wavefunction_component_selection() {
    let r = run(&["wavefunction", "0", "1", "--components", "F,H_plus", "--samples", "5", "--r-max", "20"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let header = r.stdout.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "r_fm,F,H_plus");
    let rows = csv_rows(&r.stdout);
    assert!((num(&rows[4], "r_fm") - 20.0).abs() < 1e-9);
}

#[test]
fn wavefunction_missing_level() {
    let r = run(&["wavefunction", "0", "0", "--u0", "0"]);
    assert_eq!(r.code, 1);
}

#[test]
fn verify_report() {
    let r = run(&["verify", "0", "0"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["paper_level_in_oracle_spectrum"], false);
    assert!(v["delta"]["physical_vs_approx_rel"].as_f64().unwrap() <= 1e-6);
    assert!(v["delta"]["exact_vs_approx_MeV"].as_f64().unwrap() < 1.0);
    let approx = v["ode_residual"]["physical_approx"].as_f64().unwrap();
    let exact = v["ode_residual"]["physical_exact"].as_f64().unwrap();
    assert!(approx <= 1e-8 && exact >= 1e4 * approx);
}

#[test]
fn verify_without_binding() {
    let r = run(&["verify", "0", "0", "--u0", "0"]);
    assert_eq!(r.code, 0);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["status"], "no bound states");
}

#[test]
fn approx_curve() {
    let r = run(&["approx", "--samples", "300"]);
    assert_eq!(r.code, 0);
    let rows = csv_rows(&r.stdout);
    assert_eq!(rows.len(), 300);
    let mut prev = -1.0;
    for row in &rows {
        let (y, ap, dev) = (num(row, "V_yukawa_MeV"), num(row, "V_approx_MeV"), num(row, "relative_deviation"));
        assert!(ap.abs() <= y.abs());
        assert!(dev > prev);
        prev = dev;
    }
    // r = 20 fm at a = 0.005 fm^-1 is a r = 0.1.
    let at = run(&["approx", "--samples", "10", "--r-max", "200"]);
    let row = &csv_rows(&at.stdout)[0];
    assert!((num(row, "r_fm") - 20.0).abs() < 1e-9);
    assert!((num(row, "relative_deviation") - 1.66472e-3).abs() < 1e-8);
}

#[test]
fn json_round_trip_is_byte_identical() {
    for args in [
        vec!["energies", "--format", "json", "--branch", "both"],
        vec!["table2", "--format", "json"],
        vec!["approx", "--format", "json", "--samples", "20"],
        vec!["wavefunction", "2", "1", "--format", "json", "--samples", "20"],
    ] {
        let r = run(&args);
        assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
        let v: Value = serde_json::from_str(&r.stdout).unwrap();
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(again, r.stdout, "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [vec!["energies", "--branch", "both"], vec!["table2"], vec!["wavefunction", "1", "1"]] {
        assert_eq!(run(&args).stdout, run(&args).stdout, "{args:?}");
    }
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.csv");
    let r = run(&["energies", "--output", path.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), run(&["energies"]).stdout);
}

/// `file` must change the output relative to the defaults, and the flag
/// must win over the file.
fn check_precedence(base: &[&str], file_line: &str, flag: &[&str]) {
    let cfg = config_file(file_line);
    let path = cfg.path().to_str().unwrap();
    let with_args = |extra: &[&str]| -> Vec<String> { base.iter().chain(extra).map(|s| s.to_string()).collect() };
    let call = |args: Vec<String>| run(&args.iter().map(String::as_str).collect::<Vec<_>>());

    let default = call(with_args(&[]));
    let from_file = call(with_args(&["--config", path]));
    let flag_only = call(with_args(flag));
    let mut both_args = with_args(&["--config", path]);
    both_args.extend(flag.iter().map(|s| s.to_string()));
    let both = call(both_args);
    assert_ne!(from_file.stdout, default.stdout, "{file_line} has no effect");
    assert_ne!(flag_only.stdout, from_file.stdout, "{file_line} vs {flag:?} not distinguishable");
    assert_eq!(both.stdout, flag_only.stdout, "flag must override {file_line}");
}

#[test]
fn config_precedence_per_key() {
    let e = ["energies", "--n-max", "1", "--j-max", "1"];
    check_precedence(&e, "mass_mev = 1000\n", &["--mass-mev", "900"]);
    check_precedence(&e, "u0_mev_fm = 50\n", &["--u0", "60"]);
    check_precedence(&e, "a_inv_fm = 0.01, 0.02\n", &["--a", "0.012"]);
    check_precedence(&e, "hbar_c = 190\n", &["--hbar-c", "200"]);
    check_precedence(&["energies"], "n_max = 2\n", &["--n-max", "3"]);
    check_precedence(&["energies"], "j_max = 2\n", &["--j-max", "1"]);
    check_precedence(&e, "branch = physical\n", &["--branch", "both"]);
    check_precedence(&e, "format = json\n", &["--format", "csv"]);
    check_precedence(&["table2"], "# comment\ntolerance = 0.01\n", &["--tolerance", "0.002"]);
}

#[test]
fn config_from_environment() {
    let cfg = config_file("n_max = 0\nj_max = 0\nbranch = both\n");
    let r = run_env(&["energies"], Some(cfg.path()));
    assert_eq!(r.code, 0);
    assert_eq!(csv_rows(&r.stdout).len(), 2);
    let r = run_env(&["energies", "--branch", "paper"], Some(cfg.path()));
    assert_eq!(csv_rows(&r.stdout).len(), 1);
    let other = config_file("n_max = 1\n");
    let r = run_env(&["energies", "--config", other.path().to_str().unwrap()], Some(cfg.path()));
    assert_eq!(csv_rows(&r.stdout).len(), 12);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["energies", "--a", "-0.005"],
        vec!["energies", "--mass-mev", "0"],
        vec!["energies", "--u0", "-1"],
        vec!["energies", "--branch", "sideways"],
        vec!["approx", "--samples", "1"],
        vec!["approx", "--r-max", "-3"],
        vec!["table2", "--tolerance", "0"],
        vec!["wavefunction", "0", "0", "--branch", "both"],
        vec!["frobnicate"],
    ] {
        let r = run(&args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stderr);
    }
    let bad = config_file("colour = blue\n");
    let r = run(&["energies", "--config", bad.path().to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("unknown key"));
    let r = run(&["energies", "--config", "/nonexistent/dkp.cfg"]);
    assert_eq!(r.code, 2);
}

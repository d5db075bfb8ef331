use std::path::Path;
use std::process::{Command, Output};

use harmonic_shear::cli::{MapDocument, SuiteReport};
use harmonic_shear::analysis::CheckReport;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_harmonic-shear"));
    cmd.env_remove("HARMONIC_SHEAR_GRID");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let path_str = path.to_str().unwrap().to_owned();
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path_str]);
    let out = run(&full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path_str
}

fn load(path: &str) -> MapDocument {
    MapDocument::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn gen_half_plane_coefficients() {
    let out = run(&["gen", "half-plane", "--N", "128"]);
    assert_eq!(code(&out), 0);
    let doc = MapDocument::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(doc.truncation, 128);
    assert_eq!(doc.family, "half-plane");
    assert!((doc.h[2].re - 1.5).abs() < 1e-15);
    assert!((doc.g[2].re + 0.5).abs() < 1e-15);
}

#[test]
fn gen_phi_kernel_gives_arctan() {
    let out = run(&["gen", "phi-kernel", "--mu", "0", "--nu", "1.5707963", "--N", "64"]);
    assert_eq!(code(&out), 0);
    let doc = MapDocument::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    for (k, c) in doc.h.iter().enumerate() {
        let expected = if k % 2 == 1 { (if k % 4 == 1 { 1.0 } else { -1.0 }) / k as f64 } else { 0.0 };
        assert!((c.re - expected).abs() < 1e-6 && c.im.abs() < 1e-12, "k = {k}: {c}");
    }
    assert!(doc.g.iter().all(|c| c.norm() == 0.0));
}

#[test]
fn gen_strip_with_zero_omega_is_analytic() {
    let out = run(&["gen", "strip", "--mu", "2.0943951", "--omega", "a=0,n=1"]);
    assert_eq!(code(&out), 0);
    let doc = MapDocument::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(doc.g.iter().all(|c| c.norm() == 0.0));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["gen", "not-a-family"])), 2);
    assert_eq!(code(&run(&["gen", "strip"])), 2);
    assert_eq!(code(&run(&["gen", "half-plane", "--omega", "a=0.5,n=1"])), 2);
    assert_eq!(code(&run(&["gen", "strip", "--mu", "2", "--omega", "a=1.2,n=0"])), 2);
    assert_eq!(code(&run(&["verify", "no-such-suite"])), 2);
    assert_eq!(code(&run(&["verify", "counterexample", "--n", "2"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn document_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), "phi.json", &["phi-kernel", "--mu", "0.4", "--nu", "1.2", "--omega", "a=0.3,0.1,n=2", "--N", "96"]);
    let doc = load(&path);
    let again = MapDocument::from_json(&doc.to_json()).unwrap();
    assert_eq!(again, doc);
    let map = doc.to_map().unwrap();
    for (a, b) in again.h.iter().zip(map.h().coeffs()) {
        assert_eq!((a.re.to_bits(), a.im.to_bits()), (b.re.to_bits(), b.im.to_bits()));
    }
}

#[test]
fn convolve_with_identity_reproduces_the_map() {
    let dir = tempfile::tempdir().unwrap();
    let hp = gen(dir.path(), "hp.json", &["half-plane", "--N", "64"]);
    let id = gen(dir.path(), "id.json", &["phi-kernel", "--mu", "0", "--nu", "0", "--N", "64"]);
    let out = run(&["convolve", &hp, &id, "--mode", "tilde"]);
    assert_eq!(code(&out), 0);
    let conv = MapDocument::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let original = load(&hp);
    assert_eq!(conv.h, original.h);
    assert_eq!(conv.g, original.g);

    // Harmonic mode with an analytic second factor drops the co-analytic part.
    assert_eq!(code(&run(&["convolve", &hp, &hp, "--mode", "tilde"])), 2);
}

#[test]
fn convolve_truncates_to_smaller_order_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    let a = gen(dir.path(), "a.json", &["half-plane", "--N", "40"]);
    let b = gen(dir.path(), "b.json", &["slanted-half-plane", "--alpha", "0.7", "--omega", "a=-1,n=1", "--N", "64"]);
    let out = run(&["convolve", &a, &b]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let doc = MapDocument::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(doc.truncation, 40);
    assert_eq!(doc.family, "custom");
}

#[test]
fn check_criteria_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let hp = gen(dir.path(), "hp.json", &["half-plane"]);
    let grid = "0.5,0.9;64";

    let out = run(&["check", &hp, "--criterion", "sense", "--grid", grid]);
    assert_eq!(code(&out), 0);
    let report: CheckReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!((report.extremal_value - 0.9).abs() < 1e-9);

    let out = run(&["check", &hp, "--criterion", "direction", "--gamma", "0", "--grid", grid]);
    assert_eq!(code(&out), 0);

    let out = run(&["check", &hp, "--criterion", "boundary", "--gamma", "0", "--r", "0.9"]);
    assert_eq!(code(&out), 0);
    let report: CheckReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.extremal_value, 2.0);

    // Beyond the reliable radius of N = 256.
    assert_eq!(code(&run(&["check", &hp, "--criterion", "boundary", "--r", "0.99"])), 3);
    // Convexity needs an analytic document.
    assert_eq!(code(&run(&["check", &hp, "--criterion", "convex"])), 2);

    let phi = gen(dir.path(), "phi.json", &["phi-kernel", "--mu", "1.0", "--nu", "0.5"]);
    assert_eq!(code(&run(&["check", &phi, "--criterion", "convex", "--grid", grid])), 0);

    // z + z^2 is not convex near z = -0.45.
    let poly = dir.path().join("poly.json");
    let mut doc = load(&phi);
    doc.family = "custom".into();
    doc.params.clear();
    for (k, c) in doc.h.iter_mut().enumerate() {
        *c = num_complex::Complex64::new(if k == 1 || k == 2 { 1.0 } else { 0.0 }, 0.0);
    }
    std::fs::write(&poly, doc.to_json()).unwrap();
    let out = run(&["check", poly.to_str().unwrap(), "--criterion", "convex", "--grid", "0.2,0.45,0.6;720"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn grid_environment_variable_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let hp = gen(dir.path(), "hp.json", &["half-plane"]);
    let out = bin()
        .args(["check", &hp, "--criterion", "sense"])
        .env("HARMONIC_SHEAR_GRID", "0.3;16")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let report: CheckReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.samples_checked, 16);
    let out = bin()
        .args(["check", &hp, "--criterion", "sense"])
        .env("HARMONIC_SHEAR_GRID", "garbage")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "monomial-theorem", "--n", "2", "--a", "1.0", "--mu", "0.3", "--nu", "0.7"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let out = run(&["verify", "monomial-theorem", "--n", "3", "--a", "0.5"]);
    assert_eq!(code(&out), 1);
    let report: SuiteReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.cases[0].report.criterion.to_string(), "out-of-theorem-range");

    let out = run(&["verify", "counterexample", "--n", "3"]);
    assert_eq!(code(&out), 0);
    let report: SuiteReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!((report.cases[0].report.metric("root_product_modulus").unwrap() - 1.5).abs() < 1e-12);

    let out = run(&["verify", "phi-convex", "--samples", "20", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let report: SuiteReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.cases.len(), 20);

    let out = run(&["verify", "generalized-f1", "--n", "3", "--a", "0.2∠1.0", "--mu1", "1.1", "--mu2", "-0.4", "--nu", "2.0"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));

    let out = run(&["verify", "tilde-convex", "--mu", "0.6", "--nu", "0.9", "--a", "0.8,0.1", "--grid", "0.3,0.6,0.9;180"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let report: SuiteReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.cases.len(), 36);
}

#[test]
fn export_boundary_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let strip = gen(dir.path(), "strip.json", &["strip", "--mu", "2.0943951", "--N", "64"]);
    let csv = dir.path().join("strip.csv");
    let out = run(&["export-boundary", &strip, "--r", "0.999", "--out", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("strip bounds"));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,re,im"));
    for line in lines {
        let re: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!(re > -0.6046 - 1e-2 && re < 1.2092 + 1e-2, "{line}");
    }

    let hp = gen(dir.path(), "hp.json", &["half-plane"]);
    let out = run(&["export-boundary", &hp, "--r", "0.999"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let min_re = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap())
        .fold(f64::INFINITY, f64::min);
    assert!(min_re >= -0.5 - 1e-2);

    let out = run(&["export-boundary", &hp, "--r", "0.5", "--M", "8"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let thetas: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(thetas.len(), 8);
    assert!(thetas.windows(2).all(|w| w[0] < w[1]));

    assert_eq!(code(&run(&["export-boundary", &hp, "--r", "1.0"])), 2);
    assert_eq!(code(&run(&["export-boundary", "/nonexistent/doc.json", "--r", "0.5"])), 4);
    let unwritable = dir.path().join("missing-dir").join("x.csv");
    assert_eq!(code(&run(&["export-boundary", &hp, "--r", "0.5", "--out", unwritable.to_str().unwrap()])), 4);
}

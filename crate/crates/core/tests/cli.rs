use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use torfilter::io::read_filter_file;
use torfilter::obstruction::dilation;
use torfilter::torus::{bracket_on, BracketKind};
use torfilter::Complex64;

const BIN: &str = env!("CARGO_BIN_EXE_torfilter");

const HAAR: &str =
    r#"{"dilation":[[2]],"n":1,"representation":"coeff","coeffs":[{"k":[0],"re":1,"im":0},{"k":[1],"re":1,"im":0}]}"#;
const QUINCUNX: &str = r#"{"dilation":[[1,1],[1,-1]],"n":2,"representation":"coeff","coeffs":[{"k":[0,0],"re":1,"im":0},{"k":[1,0],"re":1,"im":0}]}"#;

struct Workspace {
    dir: tempfile::TempDir,
}

impl Workspace {
    fn new() -> Self {
        Self { dir: tempfile::tempdir().unwrap() }
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(BIN).args(args).current_dir(self.dir.path()).output().unwrap()
    }
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

#[test]
fn lattice_prints_q_and_dual_group() {
    let ws = Workspace::new();
    ws.file("a.json", "[[2]]");
    let out = ws.run(&["lattice", "a.json"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("q = 2"), "{text}");
    assert!(text.contains("{(0), (1/2)}"), "{text}");
}

#[test]
fn lattice_of_the_five_dimensional_matrix() {
    let ws = Workspace::new();
    ws.file("a.json", r#"{"dilation": [[0,0,0,0,3],[1,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0],[0,0,0,1,0]]}"#);
    let out = ws.run(&["lattice", "a.json", "--json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["q"], 3);
    let dual: Vec<Vec<String>> = serde_json::from_value(v["dual_group"].clone()).unwrap();
    let expected: Vec<Vec<String>> =
        ["0", "1/3", "2/3"].iter().map(|w| std::iter::once(w.to_string()).chain(std::iter::repeat_n("0".to_string(), 4)).collect()).collect();
    assert_eq!(dual, expected);
}

#[test]
fn lattice_rejects_singular_and_contracting_matrices() {
    let ws = Workspace::new();
    ws.file("s.json", "[[1,1],[2,2]]");
    ws.file("c.json", "[[1,0],[0,2]]");
    let out = ws.run(&["lattice", "s.json"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("singular"));
    assert_eq!(code(&ws.run(&["lattice", "c.json"])), 2);
    assert_eq!(code(&ws.run(&["lattice", "missing.json"])), 2);
}

#[test]
fn lattice_out_writes_json() {
    let ws = Workspace::new();
    ws.file("q.json", "[1,1,1,-1]");
    let out = ws.run(&["lattice", "q.json", "--out", "l.json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(ws.path("l.json")).unwrap()).unwrap();
    assert_eq!(v["coset_representatives"], serde_json::json!([[0, 0], [1, 0]]));
}

#[test]
fn validate_haar_passes_and_constant_fails_condition_i() {
    let ws = Workspace::new();
    ws.file("haar.json", HAAR);
    ws.file("one.json", r#"{"dilation":[[2]],"n":1,"representation":"coeff","coeffs":[{"k":[0],"re":1,"im":0}]}"#);
    let out = ws.run(&["validate", "haar.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["pass"], true);

    let out = ws.run(&["validate", "one.json"]);
    assert_eq!(code(&out), 1);
    let checks = &json(&out)["low_pass"]["checks"];
    assert_eq!(checks[0]["pass"], false);
    assert!(checks[0]["condition"].as_str().unwrap().contains("(i)"));
}

#[test]
fn validate_reports_data_errors() {
    let ws = Workspace::new();
    ws.file("bad.json", "{\"n\": ");
    ws.file("nodil.json", r#"{"n":1,"representation":"coeff","coeffs":[{"k":[0],"re":2,"im":0}]}"#);
    ws.file("extra.json", r#"{"dilation":[[2]],"n":1,"representation":"coeff","coeffs":[],"bogus":1}"#);
    for f in ["bad.json", "nodil.json", "extra.json"] {
        let out = ws.run(&["validate", f]);
        assert_eq!(code(&out), 2, "{f}");
        assert!(stderr(&out).starts_with("error:"));
    }
}

#[test]
fn complete_q2_writes_a_valid_bank_that_round_trips() {
    let ws = Workspace::new();
    ws.file("haar.json", HAAR);
    let out = ws.run(&["complete", "haar.json", "--method", "q2", "--out", "bank.json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = ws.run(&["validate", "bank.json"]);
    assert_eq!(code(&out), 0);
    assert!(json(&out)["family"]["pass"].as_bool().unwrap());

    let loaded = read_filter_file(&ws.path("bank.json")).unwrap();
    assert_eq!(loaded.filters.len(), 2);
    let m0 = loaded.filters[0].coefficients().unwrap();
    assert_eq!(m0.get(&vec![0]).copied(), Some(Complex64::new(1.0, 0.0)));
    let m1 = &loaded.filters[1];
    assert!(m1.evaluate(&[0.0]).unwrap().norm() < 1e-15);

    let out = ws.run(&["complete", "bank.json", "--method", "q2", "--out", "again.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read(ws.path("bank.json")).unwrap(), std::fs::read(ws.path("again.json")).unwrap());
}

#[test]
fn complete_q2_refuses_q3() {
    let ws = Workspace::new();
    ws.file("t.json", r#"{"dilation":[[3]],"n":1,"representation":"coeff","coeffs":[{"k":[0],"re":3,"im":0}]}"#);
    let out = ws.run(&["complete", "t.json", "--method", "q2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("q = 2"));
}

#[test]
fn complete_sweep_reports_jumps_and_writes_the_bank() {
    let ws = Workspace::new();
    ws.file("haar.json", HAAR);
    let out = ws.run(&["complete", "haar.json", "--method", "sweep", "--grid", "64", "--out", "sw.json", "--report", "r.json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(ws.path("r.json")).unwrap()).unwrap();
    assert_eq!(report["closed"], true);
    assert!(report["max_jump"].as_f64().unwrap() < 0.2);
    assert_eq!(report["sweep"], "lexicographic");
    let out = ws.run(&["validate", "sw.json", "--tol", "1e-3"]);
    assert_eq!(code(&out), 0);

    let out = ws.run(&["complete", "haar.json", "--method", "sweep", "--grid", "64", "--jump-tol", "0.01"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["closed"], false);
}

#[test]
fn cascade_haar_matches_the_closed_form() {
    let ws = Workspace::new();
    ws.file("haar.json", HAAR);
    let out = ws.run(&["cascade", "haar.json", "--depth", "40", "--box=-4,4", "--res", "512", "--out", "phi.csv"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stderr(&out).contains("depth,max_change"));
    let (header, rows) = read_csv(&ws.path("phi.csv"));
    assert_eq!(header, ["x1", "phi_re", "phi_im"]);
    assert_eq!(rows.len(), 512);
    for row in rows {
        let x = row[0];
        let z = Complex64::new(0.0, 2.0 * std::f64::consts::PI * x);
        let expected = if x == 0.0 { Complex64::new(1.0, 0.0) } else { (z.exp() - 1.0) / z };
        assert!((Complex64::new(row[1], row[2]) - expected).norm() < 1e-6, "x = {x}");
    }
}

#[test]
fn cascade_quincunx_box_has_unit_value_at_origin() {
    let ws = Workspace::new();
    ws.file("q.json", QUINCUNX);
    let out = ws.run(&["cascade", "q.json", "--box", "-2,2", "--res", "9", "--out", "q.csv"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let (header, rows) = read_csv(&ws.path("q.csv"));
    assert_eq!(header.len(), 4);
    assert_eq!(rows.len(), 81);
    let origin = rows.iter().find(|r| r[0] == 0.0 && r[1] == 0.0).unwrap();
    assert_eq!((origin[2], origin[3]), (1.0, 0.0));
}

#[test]
fn cascade_with_wavelets_adds_columns() {
    let ws = Workspace::new();
    ws.file("haar.json", HAAR);
    assert_eq!(code(&ws.run(&["complete", "haar.json", "--method", "q2", "--out", "bank.json"])), 0);
    let out = ws.run(&["cascade", "bank.json", "--wavelets", "--res", "5", "--box", "-1,1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("x1,phi_re,phi_im,psi1_re,psi1_im\n"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn cascade_rejects_depth_zero() {
    let ws = Workspace::new();
    ws.file("haar.json", HAAR);
    let out = ws.run(&["cascade", "haar.json", "--depth", "0"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("depth"));
}

#[test]
fn obstruct_identity_check_is_seeded() {
    let ws = Workspace::new();
    let out = ws.run(&["obstruct", "--check", "identities", "--samples", "300"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["seed"], 0);
    for check in v["checks"].as_array().unwrap() {
        assert!(check["residual"].as_f64().unwrap() < 1e-11, "{check}");
    }
    let again = ws.run(&["obstruct", "--check", "identities", "--samples", "300"]);
    assert_eq!(out.stdout, again.stdout);
    let other = ws.run(&["obstruct", "--check", "identities", "--samples", "300", "--seed", "5"]);
    assert_eq!(json(&other)["seed"], 5);
}

#[test]
fn obstruct_build_h0_writes_a_normalized_grid_filter() {
    let ws = Workspace::new();
    let out = ws.run(&["obstruct", "--build-h0", "--res", "6,4,4,4,4", "--out", "h0.json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let loaded = read_filter_file(&ws.path("h0.json")).unwrap();
    assert!(loaded.normalized);
    let h0 = &loaded.filters[0];
    let grid = h0.grid().unwrap().clone();
    assert_eq!(grid.shape(), [6, 4, 4, 4, 4]);
    let b = bracket_on(h0, h0, &dilation().dual_group(), BracketKind::Primed, &grid).unwrap();
    let residual = b.values_on(&grid).unwrap().iter().map(|v| (v - 1.0).norm()).fold(0.0, f64::max);
    assert!(residual < 1e-9);
    assert!((h0.values_on(&grid).unwrap()[0] - 1.0).norm() < 1e-10);

    let out = ws.run(&["obstruct", "--build-h0", "--res", "4,4,4,4,4"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn obstruct_demo_failure_emits_both_ladders() {
    let ws = Workspace::new();
    let out = ws.run(&["obstruct", "--demo-failure", "--relax-iters", "20", "--out", "demo.json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(ws.path("demo.json")).unwrap()).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["case"], "haar-control");
    assert_eq!(reports[1]["case"], "obstruction-h0");
    for r in reports {
        assert_eq!(r["verdict_note"], "demonstration-not-proof");
        assert_eq!(r["resolutions"].as_array().unwrap().len(), 3);
        assert_eq!(r["max_jumps"].as_array().unwrap().len(), 3);
    }
}

#[test]
fn usage_errors_exit_with_2() {
    let ws = Workspace::new();
    assert_eq!(code(&ws.run(&[])), 2);
    assert_eq!(code(&ws.run(&["frobnicate"])), 2);
    assert_eq!(code(&ws.run(&["obstruct"])), 2);
    assert_eq!(code(&ws.run(&["obstruct", "--build-h0", "--demo-failure"])), 2);
    assert_eq!(code(&ws.run(&["complete", "x.json"])), 2);
    assert_eq!(code(&ws.run(&["validate", "x.json", "--tol", "abc"])), 2);
    assert_eq!(code(&ws.run(&["--help"])), 0);
}

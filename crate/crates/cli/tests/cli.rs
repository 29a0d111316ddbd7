use std::process::{Command, Output};

use serde_json::Value;

fn triality(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triality")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn coords(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|c| c.as_str().unwrap().to_string()).collect()
}

fn zeros_after(prefix: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = prefix.iter().map(|s| s.to_string()).collect();
    v.resize(8, "0".into());
    v
}

#[test]
fn fixset_e2_prints_exact_cube_root() {
    let out = triality(&["--backend", "exact", "fixset", "[0,1,0,0,0,0,0,0]"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["results"][0];
    assert_eq!(coords(&r["point"]["x"]), zeros_after(&["-1/2", "1/2*r3"]));
    assert_eq!(coords(&r["point"]["y"]), zeros_after(&["-1/2", "-1/2*r3"]));
    assert_eq!(r["fixed"], true);
    assert_eq!(r["characterization"], true);
    assert_eq!(r["tau_orbit"].as_array().unwrap().len(), 3);
}

#[test]
fn fixset_rational_direction() {
    let out = triality(&["--backend", "exact", "fixset", "[0,3/5,4/5,0,0,0,0,0]"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["results"][0];
    assert_eq!(coords(&r["point"]["x"]), zeros_after(&["-1/2", "3/10*r3", "2/5*r3"]));
    assert_eq!(r["fixed"], true);
}

#[test]
fn fixset_float_backend_agrees() {
    let out = triality(&["--backend", "float", "fixset", "[0,1,0,0,0,0,0,0]"]);
    assert_eq!(out.status.code(), Some(0));
    let x = &json(&out)["results"][0]["point"]["x"];
    assert!((x[0].as_f64().unwrap() + 0.5).abs() < 1e-15);
    assert!((x[1].as_f64().unwrap() - 3f64.sqrt() / 2.0).abs() < 1e-15);
}

#[test]
fn usage_errors_exit_two() {
    let real = triality(&["fixset", "[1,0,0,0,0,0,0,0]"]);
    assert_eq!(real.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&real.stderr).contains("imaginary"));
    assert_eq!(triality(&["fixset", "[0,1,0]"]).status.code(), Some(2));
    assert_eq!(triality(&["fixset", "[0,1,1,0,0,0,0,0]"]).status.code(), Some(2));
    assert_eq!(triality(&["--trials", "0", "kai"]).status.code(), Some(2));
    assert_eq!(triality(&["--eps", "-1", "kai"]).status.code(), Some(2));
    assert_eq!(triality(&["--backend", "quad", "kai"]).status.code(), Some(2));
}

#[test]
fn antipodal_e2_certificates() {
    let out = triality(&["--backend", "exact", "--trials", "20", "antipodal", "[0,1,0,0,0,0,0,0]"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["results"][0];
    let certs = r["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 9);
    assert!(certs.iter().all(|c| c["fixed"] == true && c["residual"] == 0.0));
    assert_eq!(r["sigma_swaps_p_q"], true);
    assert_eq!(r["polar_intersection"], true);
    assert_eq!(r["scan"]["extra_acceptances"], 0);
    assert_eq!(r["scan"]["matches_expected"], true);
    assert_eq!(coords(&r["points"][1]["x"]), zeros_after(&["-1/2", "1/2*r3"]));
}

#[test]
fn antipodal_negated_direction_swaps_p_and_q() {
    let run = |v: &str| {
        let out = triality(&["--backend", "exact", "--trials", "3", "antipodal", v]);
        assert_eq!(out.status.code(), Some(0));
        json(&out)["results"][0]["points"].clone()
    };
    let plus = run("[0,1,0,0,0,0,0,0]");
    let minus = run("[0,-1,0,0,0,0,0,0]");
    assert_eq!(plus[0], minus[0]);
    assert_eq!(plus[1], minus[2]);
    assert_eq!(plus[2], minus[1]);
}

#[test]
fn unreachable_tolerance_fails_but_still_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = triality(&[
        "--backend",
        "float",
        "--eps",
        "1e-30",
        "--trials",
        "5",
        "--out",
        path.to_str().unwrap(),
        "verify-all",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["status"] == "fail"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL"));
}

#[test]
fn exact_backend_residuals_are_zero() {
    let out = triality(&["--backend", "exact", "--trials", "4", "--seed", "9", "verify-all"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["schema"], 1);
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 17);
    for c in checks {
        assert_eq!(c["backend"], "exact");
        assert_eq!(c["max_residual"], 0.0, "{}", c["name"]);
        assert!(!c["anchor"].as_str().unwrap().is_empty());
    }
}

#[test]
fn kai_subcommand_runs_one_check_per_backend() {
    let out = triality(&["--trials", "3", "kai"]);
    assert_eq!(out.status.code(), Some(0));
    let checks = json(&out)["checks"].as_array().unwrap().clone();
    assert_eq!(checks.len(), 2);
    assert!(checks.iter().all(|c| c["name"] == "kai_property" && c["status"] == "pass"));
}

#[test]
fn same_seed_same_bytes_other_seed_differs() {
    let args = |seed: &'static str| ["--trials", "3", "--seed", seed, "verify-all"];
    let a = triality(&args("4"));
    let b = triality(&args("4"));
    let c = triality(&args("5"));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn table_has_cayley_dickson_signs() {
    let out = triality(&["table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[0], ["e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8"]);
    // Row e2: e2 e3 = e4, e2 e5 = e6, e2 e2 = -e1.
    assert_eq!(rows[2][0], "e2");
    assert_eq!(rows[2][2], "-e1");
    assert_eq!(rows[2][3], "+e4");
    assert_eq!(rows[2][5], "+e6");
    for (i, row) in rows.iter().enumerate().skip(2) {
        assert_eq!(row[i], "-e1");
    }
}

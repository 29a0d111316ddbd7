//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;
use triality_core::octonion::{cube_root_of_unity, left_translation};
use triality_core::symspace::{antipodal_set, maximality_scan};
use triality_core::verify::{run_selected, Backend, BackendSelection, Report, RunConfig, Status};
use triality_core::{ImaginaryUnit, Octonion, QuadExt, Scalar};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn selected(names: &[&str]) -> Result<Report, String> {
    run_selected(&RunConfig::default(), names).map_err(|e| e.to_string())
}

/// Every named check passed on both backends, exact residuals are zero and float
/// residuals are within 1e-9; returns a short digest.
fn all_pass(report: &Report, expect_trials: &[(&str, Backend, usize)]) -> Outcome {
    for c in &report.checks {
        ensure(c.status == Status::Pass, format!("{} {:?} failed: {}", c.name, c.backend, c.detail))?;
        match c.backend {
            Backend::Exact => {
                ensure(c.max_residual == 0.0, format!("{} exact residual {}", c.name, c.max_residual))?
            }
            Backend::Float => {
                ensure(c.max_residual <= 1e-9, format!("{} float residual {}", c.name, c.max_residual))?
            }
        }
    }
    for (name, backend, n) in expect_trials {
        let c = report
            .checks
            .iter()
            .find(|c| c.name == *name && c.backend == *backend)
            .ok_or(format!("{name} missing"))?;
        ensure(c.trials >= *n, format!("{name} ran {} trials, need {n}", c.trials))?;
    }
    let worst = report.checks.iter().map(|c| c.max_residual).fold(0.0, f64::max);
    Ok(format!("{} results, worst float residual {worst:e}", report.checks.len()))
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let report = selected(&["octonion_axioms"])?;
    let elapsed = start.elapsed();
    let digest = all_pass(
        &report,
        &[("octonion_axioms", Backend::Exact, 200), ("octonion_axioms", Backend::Float, 1000)],
    )?;
    ensure(elapsed < Duration::from_secs(5), format!("took {elapsed:?}"))?;
    Ok(format!("{digest}, {:.2}s", elapsed.as_secs_f64()))
}

fn ac2() -> Outcome {
    let report = run_selected(
        &RunConfig { backend: BackendSelection::Exact, ..RunConfig::default() },
        &["translation_sandwich"],
    )
    .map_err(|e| e.to_string())?;
    let digest = all_pass(&report, &[("translation_sandwich", Backend::Exact, 50)])?;
    // L_s L_x L_s = L_{sxs} holds for any s, unit or not.
    let s: Octonion<QuadExt> =
        "[1, 2, 0, -1, 1/2, 0, 3, 0]".parse().map_err(|e: triality_core::Error| e.to_string())?;
    let x: Octonion<QuadExt> =
        "[0, 1, -2, 0, 0, 5, 0, 1/3]".parse().map_err(|e: triality_core::Error| e.to_string())?;
    let ls = left_translation(&s);
    let lhs = &(&ls * &left_translation(&x)) * &ls;
    ensure(lhs == left_translation(&(&(&s * &x) * &s)), "fixed sandwich example")?;
    Ok(digest)
}

fn ac3() -> Outcome {
    let report = selected(&["triple_closure"])?;
    all_pass(&report, &[("triple_closure", Backend::Exact, 100), ("triple_closure", Backend::Float, 100)])
}

fn ac4() -> Outcome {
    let names = ["tau_order_three", "sigma_involution", "s3_relations"];
    let report = selected(&names)?;
    let expect: Vec<_> =
        names.iter().flat_map(|n| [(*n, Backend::Exact, 100), (*n, Backend::Float, 100)]).collect();
    all_pass(&report, &expect)
}

fn ac5() -> Outcome {
    let report = selected(&["g2_fixed_group"])?;
    let digest = all_pass(&report, &[("g2_fixed_group", Backend::Exact, 100)])?;
    let fixed = report.checks.iter().all(|c| c.detail.contains("tau_fixed="));
    ensure(fixed, "no tau-fixed samples were examined")?;
    Ok(digest)
}

fn ac6() -> Outcome {
    let report = selected(&["isotropy", "sphere_descent"])?;
    all_pass(&report, &[("sphere_descent", Backend::Exact, 100), ("sphere_descent", Backend::Float, 100)])
}

fn ac7() -> Outcome {
    let report = selected(&["fix_tau", "fix_sigma", "fix_full_group"])?;
    all_pass(&report, &[("fix_tau", Backend::Exact, 50)])
}

fn ac8() -> Outcome {
    let report = selected(&["kai_property"])?;
    all_pass(&report, &[("kai_property", Backend::Exact, 100), ("kai_property", Backend::Float, 100)])
}

struct CliRun {
    stdout: Vec<u8>,
    success: bool,
    elapsed: Duration,
}

fn verify_all() -> Result<CliRun, String> {
    let start = Instant::now();
    let out =
        Command::new(env!("CARGO_BIN_EXE_triality")).arg("verify-all").output().map_err(|e| e.to_string())?;
    Ok(CliRun { stdout: out.stdout, success: out.status.success(), elapsed: start.elapsed() })
}

fn ac9(first: &CliRun) -> Outcome {
    ensure(first.success, "verify-all exited nonzero")?;
    ensure(first.elapsed <= Duration::from_secs(60), format!("verify-all took {:?}", first.elapsed))?;
    let json: Value = serde_json::from_slice(&first.stdout).map_err(|e| e.to_string())?;
    let checks = json["checks"].as_array().ok_or("no checks")?;
    ensure(checks.iter().all(|c| c["status"] == "pass"), "a check failed")?;
    for name in ["antipodal_set", "maximality_scan", "polar_intersection"] {
        for c in checks.iter().filter(|c| c["name"] == name) {
            ensure(c["status"] == "pass", format!("{name} failed"))?;
        }
    }
    let scan = checks
        .iter()
        .find(|c| c["name"] == "maximality_scan" && c["backend"] == "exact")
        .ok_or("no exact maximality scan")?;
    ensure(scan["trials"].as_u64() >= Some(1000), "scan used fewer than 1000 directions")?;
    ensure(scan["detail"].as_str().unwrap_or("").contains("extra_acceptances=0"), "extra acceptances")?;
    let sets = checks
        .iter()
        .find(|c| c["name"] == "antipodal_set" && c["backend"] == "exact")
        .ok_or("no exact antipodal check")?;
    ensure(sets["trials"].as_u64() >= Some(20), "fewer than 20 random directions")?;

    // Direct exact reproduction for v = e2.
    let v = ImaginaryUnit::<QuadExt>::basis(2);
    let set = antipodal_set(&v).map_err(|e| e.to_string())?;
    let s = cube_root_of_unity(&v);
    ensure(set.p().x() == s.value() && set.q().x() == &s.value().conj(), "p, q coordinates")?;
    ensure(set.sigma_swaps_p_q(), "sigma does not swap p and q")?;
    let report = maximality_scan(&v, 1000, 17, 1e-9).map_err(|e| e.to_string())?;
    ensure(report.matches_expected && report.extra_acceptances(&set) == 0, "direct scan")?;
    ensure(set.certificates.iter().all(|c| c.fixed && c.residual == 0.0), "certificates")?;
    let half = QuadExt::from_ratio(-1, 2);
    ensure(s.value().re() == &half, "Re s = -1/2")?;
    Ok(format!(
        "verify-all in {:.1}s, e2 set certified, 1000-candidate e2 scan clean",
        first.elapsed.as_secs_f64()
    ))
}

fn ac10(first: &CliRun) -> Outcome {
    let second = verify_all()?;
    ensure(!first.stdout.is_empty(), "empty report")?;
    ensure(first.stdout == second.stdout, "reports differ")?;
    Ok(format!("{} identical bytes", first.stdout.len()))
}

fn main() {
    let mut failed = 0;
    let mut report = |id: &str, what: &str, outcome: Outcome| match outcome {
        Ok(msg) => println!("PASS {id} {what}: {msg}"),
        Err(msg) => {
            failed += 1;
            println!("FAIL {id} {what}: {msg}");
        }
    };
    report("AC1", "octonion axioms", ac1());
    report("AC2", "translation sandwich", ac2());
    report("AC3", "triple closure", ac3());
    report("AC4", "tau, sigma and S3 relations", ac4());
    report("AC5", "G2 fixed group", ac5());
    report("AC6", "isotropy and descent", ac6());
    report("AC7", "fixed sets", ac7());
    report("AC8", "kai property", ac8());
    match verify_all() {
        Ok(first) => {
            report("AC9", "antipodal set and full suite", ac9(&first));
            report("AC10", "determinism", ac10(&first));
        }
        Err(e) => {
            report("AC9", "antipodal set and full suite", Err(e.clone()));
            report("AC10", "determinism", Err(e));
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

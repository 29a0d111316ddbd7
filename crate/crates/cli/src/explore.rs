use serde_json::{json, Value};

use triality_core::sample::Sampling;
use triality_core::symspace::{
    antipodal_set, fix_tau_point, is_fixed_by_tau, maximality_scan, polar_intersection_check,
    satisfies_fix_tau_characterization, tau_sphere, SpherePoint,
};
use triality_core::verify::{mix_seed, Backend, RunConfig};
use triality_core::{ApproxReal, ImaginaryUnit, Octonion, QuadExt, Result, Scalar, WithSqrt3};

fn direction<S: Scalar>(text: &str, eps: f64) -> Result<ImaginaryUnit<S>> {
    let v: Octonion<S> = text.parse()?;
    ImaginaryUnit::new(v.with_tolerance(eps))
}

fn backend_name(b: Backend) -> &'static str {
    match b {
        Backend::Exact => "exact",
        Backend::Float => "float",
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn wrap(cfg: &RunConfig, results: Vec<Value>) -> String {
    let mut s = serde_json::to_string(&json!({
        "schema": triality_core::verify::SCHEMA_VERSION,
        "config": cfg,
        "results": results,
    }))
    .expect("serializable");
    s.push('\n');
    s
}

fn fixset_for<S: WithSqrt3>(text: &str, cfg: &RunConfig, backend: Backend) -> Result<(Value, bool)> {
    let v = direction::<S>(text, cfg.eps)?;
    let p = fix_tau_point(&v)?;
    let orbit = [p.clone(), tau_sphere(&p), tau_sphere(&tau_sphere(&p))];
    let fixed = is_fixed_by_tau(&p);
    let characterization = satisfies_fix_tau_characterization(&p);
    let o = SpherePoint::<S>::origin();
    let ok = fixed && characterization && orbit.iter().all(|q| *q == p) && is_fixed_by_tau(&o);
    eprintln!("{}: o = {}, {}", backend_name(backend), o.x(), o.y());
    eprintln!("{}: s = {}", backend_name(backend), p.x());
    eprintln!("{}: tau-fixed {fixed}, conj x = y = x^2 {characterization}", backend_name(backend));
    let value = json!({
        "backend": backend,
        "v": to_value(&v),
        "o": to_value(&o),
        "point": to_value(&p),
        "tau_orbit": to_value(&orbit),
        "fixed": fixed,
        "characterization": characterization,
    });
    Ok((value, ok))
}

pub fn fixset(text: &str, cfg: &RunConfig) -> Result<(String, bool)> {
    let mut results = Vec::new();
    let mut ok = true;
    for &b in cfg.backend.backends() {
        let (value, passed) = match b {
            Backend::Exact => fixset_for::<QuadExt>(text, cfg, b)?,
            Backend::Float => fixset_for::<ApproxReal>(text, cfg, b)?,
        };
        ok &= passed;
        results.push(value);
    }
    Ok((wrap(cfg, results), ok))
}

fn antipodal_for<S: WithSqrt3 + Sampling>(
    text: &str,
    cfg: &RunConfig,
    backend: Backend,
) -> Result<(Value, bool)> {
    let name = backend_name(backend);
    let v = direction::<S>(text, cfg.eps)?;
    let set = antipodal_set(&v)?;
    let swap = set.sigma_swaps_p_q();
    let scan = maximality_scan(&v, cfg.trials, mix_seed(cfg.seed), cfg.eps)?;
    let extra = scan.extra_acceptances(&set);
    let (polar_ok, _) = polar_intersection_check(&v)?;
    let certified = set.certificates.iter().all(|c| c.fixed);
    let ok = certified && swap && scan.matches_expected && scan.inconsistent == 0 && polar_ok;

    for (label, p) in ["o", "p", "q"].iter().zip(&set.points) {
        eprintln!("{name}: {label} = ({}, {})", p.x(), p.y());
    }
    eprintln!(
        "{name}: certificates {}/{} fixed, sigma swaps p and q: {swap}",
        set.certificates.iter().filter(|c| c.fixed).count(),
        set.certificates.len()
    );
    eprintln!(
        "{name}: scan of {} candidates accepted {} points, {extra} outside the set",
        scan.entries.len(),
        scan.accepted.len()
    );
    let value = json!({
        "backend": backend,
        "v": to_value(&v),
        "points": to_value(&set.points),
        "certificates": to_value(&set.certificates),
        "sigma_swaps_p_q": swap,
        "polar_intersection": polar_ok,
        "scan": {
            "trials": cfg.trials,
            "accepted": to_value(&scan.accepted),
            "extra_acceptances": extra,
            "matches_expected": scan.matches_expected,
            "inconsistent": scan.inconsistent,
            "entries": to_value(&scan.entries),
        },
    });
    Ok((value, ok))
}

pub fn antipodal(text: &str, cfg: &RunConfig) -> Result<(String, bool)> {
    let mut results = Vec::new();
    let mut ok = true;
    for &b in cfg.backend.backends() {
        let (value, passed) = match b {
            Backend::Exact => antipodal_for::<QuadExt>(text, cfg, b)?,
            Backend::Float => antipodal_for::<ApproxReal>(text, cfg, b)?,
        };
        ok &= passed;
        results.push(value);
    }
    Ok((wrap(cfg, results), ok))
}

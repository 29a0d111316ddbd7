//! The verification suite: every identity checked on seeded samples, once per
//! backend, collected into a deterministic JSON report.
//!
//! Each check derives its own seed from the run seed, and each trial derives a
//! seed from the check seed, so trials run in parallel and are merged by index.

use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::{clifford_embed, induced_vector_map, recover_vector, Parity};
use crate::error::{Error, Result};
use crate::linalg::{trace_inner_product, Mat16};
use crate::octonion::{cube_root_of_unity, left_translation, ImaginaryUnit, Octonion};
use crate::sample::{Sampler, Sampling};
use crate::scalar::{ApproxReal, QuadExt, Rational, Scalar, WithSqrt3, DEFAULT_EPS};
use crate::symspace::{
    act, antipodal_set, conjugate_group_fixes, fix_tau_point, gamma_sphere, is_fixed_by_sigma,
    is_fixed_by_tau, kai_residual, maximality_scan, polar_intersection_check,
    satisfies_fix_tau_characterization, sigma_sphere, tau_sphere, SpherePoint,
};
use crate::triality::{
    is_octonion_automorphism, spin_from_unit, triality_residual, GammaElement, TrialityTriple,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendSelection {
    Exact,
    Float,
    Both,
}

impl BackendSelection {
    pub fn backends(self) -> &'static [Backend] {
        match self {
            BackendSelection::Exact => &[Backend::Exact],
            BackendSelection::Float => &[Backend::Float],
            BackendSelection::Both => &[Backend::Exact, Backend::Float],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub eps: f64,
    pub backend: BackendSelection,
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 1,
            trials: 100,
            eps: DEFAULT_EPS,
            backend: BackendSelection::Both,
            output_path: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Parse("trials must be at least 1".into()));
        }
        if !(self.eps.is_finite() && self.eps > 0.0) {
            return Err(Error::Parse(format!("eps must be positive, got {}", self.eps)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    /// The identity under test, in formula form.
    pub anchor: String,
    pub backend: Backend,
    pub status: Status,
    pub max_residual: f64,
    pub trials: usize,
    pub seed: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub config: RunConfig,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per check.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let backend = match c.backend {
                Backend::Exact => "exact",
                Backend::Float => "float",
            };
            out.push_str(&format!(
                "{status} {:<22} {backend:<5} trials={:<5} max_residual={:e}  {}\n",
                c.name, c.trials, c.max_residual, c.detail
            ));
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }
}

/// Outcome of one or more trials.
#[derive(Clone, Debug, Default)]
pub struct Tally {
    pub max_residual: f64,
    pub failures: usize,
    pub first_failure: Option<String>,
    /// Free-form counters reported in the check detail.
    pub counts: Vec<(&'static str, usize)>,
}

impl Tally {
    /// Record an identity that must hold; `residual` enters the reported maximum.
    pub fn identity(&mut self, what: &str, equal: bool, residual: f64) {
        self.max_residual = self.max_residual.max(residual);
        if !equal {
            self.fail(format!("{what} (residual {residual:e})"));
        }
    }

    /// Record a predicate that must hold.
    pub fn expect(&mut self, what: &str, ok: bool) {
        if !ok {
            self.fail(what.to_string());
        }
    }

    pub fn fail(&mut self, msg: String) {
        self.failures += 1;
        self.first_failure.get_or_insert(msg);
    }

    pub fn count(&mut self, key: &'static str, n: usize) {
        match self.counts.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => *v += n,
            None => self.counts.push((key, n)),
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.max_residual = self.max_residual.max(other.max_residual);
        self.failures += other.failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
        for (k, v) in other.counts {
            self.count(k, v);
        }
        self
    }
}

/// SplitMix64 finalizer.
pub fn mix_seed(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn check_seed(run_seed: u64, index: usize, backend: Backend) -> u64 {
    let b = match backend {
        Backend::Exact => 0,
        Backend::Float => 1,
    };
    mix_seed(mix_seed(run_seed) ^ ((index as u64) << 1 | b))
}

/// Run `n` independent trials in parallel, each with its own sampler, and merge
/// them in index order. An error inside a trial counts as a failure.
pub fn run_trials<F>(n: usize, seed: u64, eps: f64, f: F) -> Tally
where
    F: Fn(&mut Sampler, &mut Tally) -> Result<()> + Sync,
{
    (0..n)
        .into_par_iter()
        .map(|i| {
            let rng = ChaCha8Rng::seed_from_u64(mix_seed(seed ^ mix_seed(i as u64)));
            let mut sampler = Sampler::new(rng, eps);
            let mut tally = Tally::default();
            if let Err(e) = f(&mut sampler, &mut tally) {
                tally.fail(format!("trial {i}: {e}"));
            }
            tally
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

/// Parameters handed to a check body.
#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub seed: u64,
    pub eps: f64,
    pub trials: usize,
}

type CheckFn = fn(&Ctx) -> Tally;

struct CheckSpec {
    name: &'static str,
    anchor: &'static str,
    /// Trial count as a function of `--trials`, per backend.
    exact_trials: fn(usize) -> usize,
    float_trials: fn(usize) -> usize,
    exact: CheckFn,
    float: CheckFn,
}

fn same(n: usize) -> usize {
    n
}

fn half(n: usize) -> usize {
    n.div_ceil(2)
}

fn double(n: usize) -> usize {
    2 * n
}

fn tenfold(n: usize) -> usize {
    10 * n
}

fn fifth(n: usize) -> usize {
    n.div_ceil(5)
}

type X = QuadExt;
type F = ApproxReal;

fn checks() -> Vec<CheckSpec> {
    vec![
        CheckSpec {
            name: "octonion_axioms",
            anchor: "|xy| = |x||y|, x(xy) = (xx)y, conj(xy) = conj(y)conj(x)",
            exact_trials: double,
            float_trials: tenfold,
            exact: octonion_axioms::<Rational>,
            float: octonion_axioms::<F>,
        },
        CheckSpec {
            name: "translation_sandwich",
            anchor: "L(s)L(x)L(s) = L(sxs), L(h)L(l) = L(l)L(conj h)",
            exact_trials: half,
            float_trials: half,
            exact: translation_sandwich::<Rational>,
            float: translation_sandwich::<F>,
        },
        CheckSpec {
            name: "clifford_model",
            anchor: "x^ = [[0, -L(conj x)], [L(x), 0]], x^ x^ = -|x|^2",
            exact_trials: half,
            float_trials: half,
            exact: clifford_model::<Rational>,
            float: clifford_model::<F>,
        },
        CheckSpec {
            name: "triple_closure",
            anchor: "B(xy) = (Cx)(Ay) closed under products",
            exact_trials: same,
            float_trials: same,
            exact: triple_closure::<Rational>,
            float: triple_closure::<F>,
        },
        CheckSpec {
            name: "tau_order_three",
            anchor: "tau(A,B,C) = (~B,~C,A), tau^3 = id",
            exact_trials: same,
            float_trials: same,
            exact: tau_order_three::<Rational>,
            float: tau_order_three::<F>,
        },
        CheckSpec {
            name: "sigma_involution",
            anchor: "sigma(A,B,C) = (B,A,~C), sigma^2 = id",
            exact_trials: same,
            float_trials: same,
            exact: sigma_involution::<Rational>,
            float: sigma_involution::<F>,
        },
        CheckSpec {
            name: "s3_relations",
            anchor: "sigma tau sigma = tau^2",
            exact_trials: same,
            float_trials: same,
            exact: s3_relations::<Rational>,
            float: s3_relations::<F>,
        },
        CheckSpec {
            name: "g2_fixed_group",
            anchor: "Fix(tau) = Fix(tau, sigma) = {A = B = C} = G2",
            exact_trials: same,
            float_trials: same,
            exact: g2_fixed_group::<X>,
            float: g2_fixed_group::<F>,
        },
        CheckSpec {
            name: "isotropy",
            anchor: "g(1,1) = (1,1) iff g in G2",
            exact_trials: same,
            float_trials: same,
            exact: isotropy::<X>,
            float: isotropy::<F>,
        },
        CheckSpec {
            name: "sphere_descent",
            anchor: "tau(x,y) = (conj y, x conj y), tau(g o) = tau(g) o",
            exact_trials: same,
            float_trials: same,
            exact: sphere_descent::<Rational>,
            float: sphere_descent::<F>,
        },
        CheckSpec {
            name: "fix_tau",
            anchor: "Fix(tau) = {(x, conj x) : x^3 = 1}",
            exact_trials: half,
            float_trials: half,
            exact: fix_tau::<X>,
            float: fix_tau::<F>,
        },
        CheckSpec {
            name: "fix_sigma",
            anchor: "Fix(sigma) = {(x, x)}",
            exact_trials: half,
            float_trials: half,
            exact: fix_sigma::<Rational>,
            float: fix_sigma::<F>,
        },
        CheckSpec {
            name: "fix_full_group",
            anchor: "Fix(tau) n Fix(sigma) = {(1,1)}",
            exact_trials: half,
            float_trials: half,
            exact: fix_full_group::<X>,
            float: fix_full_group::<F>,
        },
        CheckSpec {
            name: "kai_property",
            anchor: "g_x d_y g_x^-1 = phi_{g_x(y)}(g d g^-1)",
            exact_trials: same,
            float_trials: same,
            exact: kai_property::<Rational>,
            float: kai_property::<F>,
        },
        CheckSpec {
            name: "antipodal_set",
            anchor: "P = {(1,1), (s, conj s), (conj s, s)}",
            exact_trials: fifth,
            float_trials: fifth,
            exact: antipodal::<X>,
            float: antipodal::<F>,
        },
        CheckSpec {
            name: "maximality_scan",
            anchor: "(st, conj s conj t) fixed iff st = ts",
            exact_trials: tenfold,
            float_trials: tenfold,
            exact: maximality::<X>,
            float: maximality::<F>,
        },
        CheckSpec {
            name: "polar_intersection",
            anchor: "polars of o, p, q meet pairwise in P",
            exact_trials: fifth,
            float_trials: fifth,
            exact: polar_intersection::<X>,
            float: polar_intersection::<F>,
        },
    ]
}

/// Names of all checks in report order.
pub fn check_names() -> Vec<&'static str> {
    checks().iter().map(|c| c.name).collect()
}

/// Run every check.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    run_selected(cfg, &[])
}

/// Run the named checks, or all of them when `names` is empty.
pub fn run_selected(cfg: &RunConfig, names: &[&str]) -> Result<Report> {
    cfg.validate()?;
    let specs = checks();
    for n in names {
        if !specs.iter().any(|c| c.name == *n) {
            return Err(Error::Parse(format!("unknown check {n}")));
        }
    }
    let jobs: Vec<(usize, &CheckSpec, Backend)> = specs
        .iter()
        .enumerate()
        .filter(|(_, c)| names.is_empty() || names.contains(&c.name))
        .flat_map(|(i, c)| cfg.backend.backends().iter().map(move |b| (i, c, *b)))
        .collect();
    let checks = jobs.par_iter().map(|&(i, spec, backend)| run_one(cfg, i, spec, backend)).collect();
    Ok(Report { schema: SCHEMA_VERSION, config: cfg.clone(), checks })
}

fn run_one(cfg: &RunConfig, index: usize, spec: &CheckSpec, backend: Backend) -> CheckResult {
    let seed = check_seed(cfg.seed, index, backend);
    let (trials, body) = match backend {
        Backend::Exact => ((spec.exact_trials)(cfg.trials), spec.exact),
        Backend::Float => ((spec.float_trials)(cfg.trials), spec.float),
    };
    let tally = body(&Ctx { seed, eps: cfg.eps, trials });
    let within = match backend {
        Backend::Exact => tally.max_residual == 0.0,
        Backend::Float => tally.max_residual <= cfg.eps,
    };
    let status = if tally.failures == 0 && within { Status::Pass } else { Status::Fail };
    let mut detail: Vec<String> = tally.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
    if tally.failures > 0 {
        detail.push(format!("failures={}", tally.failures));
    }
    if let Some(f) = &tally.first_failure {
        detail.push(format!("first: {f}"));
    } else if !within {
        detail.push("residual above tolerance".into());
    }
    CheckResult {
        name: spec.name.to_string(),
        anchor: spec.anchor.to_string(),
        backend,
        status,
        max_residual: tally.max_residual,
        trials,
        seed,
        detail: detail.join(", "),
    }
}

fn eq_oct<S: Scalar>(t: &mut Tally, what: &str, a: &Octonion<S>, b: &Octonion<S>) {
    t.identity(what, a == b, a.residual(b));
}

fn eq_scalar<S: Scalar>(t: &mut Tally, what: &str, a: &S, b: &S) {
    t.identity(what, a == b, a.residual(b));
}

fn eq_point<S: Scalar>(t: &mut Tally, what: &str, a: &SpherePoint<S>, b: &SpherePoint<S>) {
    t.identity(what, a == b, a.residual(b));
}

fn octonion_axioms<S: Sampling>(ctx: &Ctx) -> Tally {
    run_trials(ctx.trials, ctx.seed, ctx.eps, |smp, t| {
        let x = smp.octonion::<S>();
        let y = smp.octonion::<S>();
        let xy = &x * &y;
        eq_scalar(t, "|xy|^2 = |x|^2 |y|^2", &xy.norm_sq(), &(x.norm_sq() * y.norm_sq()));
        eq_oct(t, "x(xy) = (xx)y", &(&x * &xy), &(&(&x * &x) * &y));
        eq_oct(t, "(yx)x = y(xx)", &(&(&y * &x) * &x), &(&y * &(&x * &x)));
        eq_oct(t, "(xy)x = x(yx)", &(&xy * &x), &(&x * &(&y * &x)));
        eq_oct(t, "conj(x)(xy) = (conj(x)x)y", &(&x.conj() * &xy), &(&(&x.conj() * &x) * &y));
        eq_oct(t, "conj(xy) = conj(y)conj(x)", &xy.conj(), &(&y.conj() * &x.conj()));
        Ok(())
    })
}

fn translation_sandwich<S: Sampling>(ctx: &Ctx) -> Tally {
    let l = Octonion::<S>::e(5);
    run_trials(ctx.trials, ctx.seed, ctx.eps, |smp, t| {
        let s = smp.octonion::<S>();
        let x = smp.octonion::<S>();
        let ls = left_translation(&s);
        let lhs = &(&ls * &left_translation(&x)) * &ls;
        let rhs = left_translation(&(&(&s * &x) * &s));
        t.identity("L(s)L(x)L(s) = L(sxs)", lhs == rhs, lhs.residual(&rhs));
        let h = smp.quaternionic::<S>();
        let ll = left_translation(&l);
        let lhs = &left_translation(&h) * &ll;
        let rhs = &ll * &left_translation(&h.conj());
        t.identity("L(h)L(l) = L(l)L(conj h)", lhs == rhs, lhs.residual(&rhs));
        Ok(())
    })
}

fn clifford_model<S: Sampling>(ctx: &Ctx) -> Tally {
    run_trials(ctx.trials, ctx.seed, ctx.eps, |smp, t| {
        let x = smp.octonion::<S>();
        let y = smp.octonion::<S>();
        let xh = clifford_embed(&x);
        let yh = clifford_embed(&y);
        t.expect("x^ is odd", xh.parity() == Parity::Odd || x.is_zero());
        eq_scalar(t, "<x^, y^> = <x, y>", &trace_inner_product(xh.matrix(), yh.matrix()), &x.dot(&y));
        let sq = xh.mul(&xh);
        let expect = Mat16::identity().scale(&(-x.norm_sq()));
        t.identity("x^ x^ = -|x|^2", *sq.matrix() == expect, sq.matrix().residual(&expect));
        if !x.is_zero() && !y.is_zero() {
            t.expect("odd * odd is even", xh.mul(&yh).parity() == Parity::Even);
            t.expect("odd * odd * odd is odd", xh.mul(&yh).mul(&xh).parity() == Parity::Odd);
        }
        let back = recover_vector(xh.matrix())?;
        eq_oct(t, "recover(x^) = x", &back, &x);
        let g = spin_from_unit(&smp.unit::<S>())?;
        let c = induced_vector_map(g.a(), g.b())?;
        t.identity("Ad(diag(A, B)) induces C", c == *g.c(), c.residual(g.c()));
        Ok(())
    })
}

fn triple_closure<S: Sampling>(ctx: &Ctx) -> Tally {
    run_trials(ctx.trials, ctx.seed, ctx.eps, |smp, t| {
        let g = smp.spin_word::<S>()?;
        let h = smp.spin_word::<S>()?;
        let gh = g.mul(&h)?;
        let (r, _) = triality_residual(gh.a(), gh.b(), gh.c());
        t.identity("product re-verifies", true, r);
        let gi = g.inverse()?;
        let id = gi.mul(&g)?;
        let e = TrialityTriple::identity();
        t.identity("g^-1 g = 1", id == e, id.residual(&e));
        Ok(())
    })
}

fn tau_order_three<S: Sampling>(ctx: &Ctx) -> Tally {
    run_trials(ctx.trials, ctx.seed, ctx.eps, |smp, t| {
        let g = smp.spin_word::<S>()?;
        let g3 = g.tau()?.tau()?.tau()?;
        t.identity("tau^3 = id", g3 == g, g3.residual(&g));
        let h = smp.spin_word::<S>()?;
        let lhs = g.mul(&h)?.tau()?;
        let rhs = g.tau()?.mul(&h.tau()?)?;
        t.identity("tau(gh) = tau(g)tau(h)", lhs == rhs, lhs.residual(&rhs));
        Ok(())
    })
}

fn sigma_involution<S: Sampling>(ctx: &Ctx) -> Tally {
    run_trials(ctx.trials, ctx.seed, ctx.eps, |smp, t| {
        let g = smp.spin_word::<S>()?;
        let h = smp.spin_word::<S>()?;
        let g2 = g.sigma()?.sigma()?;
        t.identity("sigma^2 = id", g2 == g, g2.residual(&g));
        let lhs = g.mul(&h)?.sigma()?;
        let rhs = g.sigma()?.mul(&h.sigma()?)?;
        t.identity("sigma(gh) = sigma(g)sigma(h)", lhs == rhs, lhs.residual(&rhs));
        Ok(())
    })
}

fn s3_relations<S: Sampling>(ctx: &Ctx) -> Tally {
    run_trials(ctx.trials, ctx.seed, ctx.eps, |smp, t| {
        let g = smp.spin_word::<S>()?;
        let lhs = g.sigma()?.tau()?.sigma()?;
        let rhs = g.tau()?.tau()?;
        t.identity("sigma tau sigma = tau^2", lhs == rhs, lhs.residual(&rhs));
        let w1 = GammaElement::ALL[smp.scalar_index(6)];
        let w2 = GammaElement::ALL[smp.scalar_index(6)];
        let lhs = g.apply(w1.mul(w2))?;
        let rhs = g.apply(w2)?.apply(w1)?;
        t.identity("(w1 w2)(g) = w1(w2(g))", lhs == rhs, lhs.residual(&rhs));
        Ok(())
    })
}

fn g2_fixed_group<S: Sampling + WithSqrt3>(ctx: &Ctx) -> Tally {
    run_trials(ctx.trials, ctx.seed, ctx.eps, |smp, t| {
        let k = smp.g2_word::<S>()?;
        let g = smp.spin_word::<S>()?;
        for (h, is_sample_g2) in [(k, true), (g, false)] {
            let th = h.tau()?;
            let tau_fixed = th == h;
            let equal_parts = h.a() == h.b() && h.b() == h.c();
            if is_sample_g2 {
                t.identity("tau(k) = k", tau_fixed, th.residual(&h));
                let sh = h.sigma()?;
                t.identity("sigma(k) = k", sh == h, sh.residual(&h));
            }
            if tau_fixed {
                t.count("tau_fixed", 1);
                t.expect("tau-fixed implies A = B = C", equal_parts);
                t.expect("tau-fixed A is an automorphism", is_octonion_automorphism(h.a()));
            }
            if equal_parts {
                t.expect("A = B = C implies tau-fixed", tau_fixed);
                t.expect("A = B = C implies sigma-fixed", h.sigma()? == h);
            }
        }
        Ok(())
    })
}

fn isotropy<S: Sampling + WithSqrt3>(ctx: &Ctx) -> Tally {
    let o = SpherePoint::<S>::origin();
    run_trials(ctx.trials, ctx.seed, ctx.eps, |smp, t| {
        let k = smp.g2_word::<S>()?;
        eq_point(t, "k(o) = o", &act(&k, &o), &o);
        t.expect("stabilizer element is in G2", k.is_g2());
        let (g, p) = smp.witnessed_point::<S>()?;
        let conj = g.mul(&k)?.mul(&g.inverse()?)?;
        eq_point(t, "g k g^-1 fixes g(o)", &act(&conj, &p), &p);
        if act(&g, &o) == o {
            t.count("word_stabilizers", 1);
            t.expect("word fixing o is in G2", g.is_g2());
        }
        Ok(())
    })
}

fn sphere_descent<S: Sampling>(ctx: &Ctx) -> Tally {
    let o = SpherePoint::<S>::origin();
    run_trials(ctx.trials, ctx.seed, ctx.eps, |smp, t| {
        let g = smp.spin_word::<S>()?;
        let go = act(&g, &o);
        eq_point(t, "tau(g o) = tau(g) o", &tau_sphere(&go), &act(&g.tau()?, &o));
        eq_point(t, "sigma(g o) = sigma(g) o", &sigma_sphere(&go), &act(&g.sigma()?, &o));
        let w = GammaElement::ALL[smp.scalar_index(6)];
        let pt = smp.sphere_point::<S>();
        let lhs = gamma_sphere(w, &act(&g, &pt));
        let rhs = act(&g.apply(w)?, &gamma_sphere(w, &pt));
        eq_point(t, "w(g x) = w(g) w(x)", &lhs, &rhs);
        let p3 = tau_sphere(&tau_sphere(&tau_sphere(&pt)));
        eq_point(t, "tau^3 = id on X", &p3, &pt);
        let l = sigma_sphere(&tau_sphere(&sigma_sphere(&pt)));
        eq_point(t, "sigma tau sigma = tau^2 on X", &l, &tau_sphere(&tau_sphere(&pt)));
        Ok(())
    })
}

fn fix_tau<S: Sampling + WithSqrt3>(ctx: &Ctx) -> Tally {
    run_trials(ctx.trials, ctx.seed, ctx.eps, |smp, t| {
        let v = smp.imaginary_unit::<S>();
        let p = fix_tau_point(&v)?;
        eq_point(t, "tau(p) = p", &tau_sphere(&p), &p);
        t.expect("conj x = y = x^2 on Y", satisfies_fix_tau_characterization(&p));
        let s = p.x();
        eq_oct(t, "s^3 = 1", &(&(s * s) * s), &Octonion::one());
        let q = fix_tau_point(&v.antipode())?;
        eq_point(t, "fix(-v) = sigma(fix(v))", &q, &sigma_sphere(&p));
        let z = smp.sphere_point::<S>();
        t.expect(
            "direct evaluation agrees with x^2 = conj x = y",
            is_fixed_by_tau(&z) == satisfies_fix_tau_characterization(&z),
        );
        if is_fixed_by_tau(&z) {
            t.count("random_fixed", 1);
        }
        Ok(())
    })
}

fn fix_sigma<S: Sampling>(ctx: &Ctx) -> Tally {
    run_trials(ctx.trials, ctx.seed, ctx.eps, |smp, t| {
        let x = smp.unit::<S>();
        let d = SpherePoint::new(x.clone(), x);
        eq_point(t, "sigma(x, x) = (x, x)", &sigma_sphere(&d), &d);
        let z = smp.sphere_point::<S>();
        t.expect("sigma fixes exactly the diagonal", is_fixed_by_sigma(&z) == z.is_diagonal());
        let zz = sigma_sphere(&sigma_sphere(&z));
        eq_point(t, "sigma^2 = id on X", &zz, &z);
        Ok(())
    })
}

fn fix_full_group<S: Sampling + WithSqrt3>(ctx: &Ctx) -> Tally {
    let o = SpherePoint::<S>::origin();
    run_trials(ctx.trials, ctx.seed, ctx.eps, |smp, t| {
        for w in GammaElement::ALL {
            eq_point(t, "w(o) = o", &gamma_sphere(w, &o), &o);
        }
        let p = fix_tau_point(&smp.imaginary_unit::<S>())?;
        t.expect("no point of Y is on the diagonal", !is_fixed_by_sigma(&p));
        let z = smp.sphere_point::<S>();
        if is_fixed_by_tau(&z) && is_fixed_by_sigma(&z) {
            t.expect("common fixed point is o", z == o);
        }
        Ok(())
    })
}

fn kai_property<S: Sampling>(ctx: &Ctx) -> Tally {
    run_trials(ctx.trials, ctx.seed, ctx.eps, |smp, t| {
        let gx = smp.spin_word::<S>()?;
        let gy = smp.spin_word::<S>()?;
        let gamma = GammaElement::ALL[smp.scalar_index(6)];
        let delta = GammaElement::ALL[smp.scalar_index(6)];
        let grid: Vec<SpherePoint<S>> = (0..10).map(|_| smp.sphere_point()).collect();
        let (equal, r) = kai_residual(&gx, &gy, gamma, delta, &grid)?;
        t.identity("kai property on the grid", equal, r);
        Ok(())
    })
}

/// `e2` first, then random directions.
fn direction<S: Sampling>(smp: &mut Sampler, index: usize) -> ImaginaryUnit<S> {
    if index == 0 {
        ImaginaryUnit::basis(2)
    } else {
        smp.imaginary_unit()
    }
}

fn indexed_trials<F>(ctx: &Ctx, n: usize, f: F) -> Tally
where
    F: Fn(usize, &mut Sampler, &mut Tally) -> Result<()> + Sync,
{
    let indices: Vec<usize> = (0..n).collect();
    indices
        .par_iter()
        .map(|&i| run_trials(1, mix_seed(ctx.seed ^ i as u64), ctx.eps, |smp, t| f(i, smp, t)))
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

fn antipodal<S: Sampling + WithSqrt3>(ctx: &Ctx) -> Tally {
    indexed_trials(ctx, ctx.trials + 1, |i, smp, t| {
        let v = direction::<S>(smp, i);
        let set = antipodal_set(&v)?;
        for c in &set.certificates {
            t.identity("Gamma_p fixes every point of P", c.fixed, c.residual);
        }
        t.expect("sigma swaps p and q", set.sigma_swaps_p_q());
        t.count("sets", 1);
        Ok(())
    })
}

fn maximality<S: Sampling + WithSqrt3>(ctx: &Ctx) -> Tally {
    let directions = 1 + (ctx.trials / 50).max(1);
    indexed_trials(ctx, directions, |i, smp, t| {
        let v = direction::<S>(smp, i);
        let seed = smp.next_seed();
        let report = maximality_scan(&v, ctx.trials, seed, ctx.eps)?;
        let set = antipodal_set(&v)?;
        t.expect("accepted candidates are exactly {o, p, q}", report.matches_expected);
        t.expect("acceptance agrees with tau", report.inconsistent == 0);
        t.count("candidates", report.entries.len());
        t.count("extra_acceptances", report.extra_acceptances(&set));
        Ok(())
    })
}

fn polar_intersection<S: Sampling + WithSqrt3>(ctx: &Ctx) -> Tally {
    indexed_trials(ctx, ctx.trials + 1, |i, smp, t| {
        let v = direction::<S>(smp, i);
        let (ok, r) = polar_intersection_check(&v)?;
        t.identity("polars meet pairwise in P", ok, r);
        let set = antipodal_set(&v)?;
        let other = fix_tau_point(&smp.imaginary_unit::<S>())?;
        if !set.points.contains(&other) {
            let (fixed, _) = conjugate_group_fixes(&set.witnesses[1], &other)?;
            t.expect("a different point of Y is moved by Gamma_p", !fixed);
        }
        let s = cube_root_of_unity(&v);
        eq_oct(t, "s^2 = conj s", &(s.value() * s.value()), &s.value().conj());
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(backend: BackendSelection) -> RunConfig {
        RunConfig { seed: 3, trials: 6, eps: 1e-9, backend, output_path: None }
    }

    #[test]
    fn small_run_passes_on_both_backends() {
        let report = run(&small(BackendSelection::Both)).unwrap();
        assert_eq!(report.checks.len(), 2 * check_names().len());
        for c in &report.checks {
            assert_eq!(c.status, Status::Pass, "{c:?}");
            if c.backend == Backend::Exact {
                assert_eq!(c.max_residual, 0.0, "{}", c.name);
            }
        }
    }

    #[test]
    fn tight_tolerance_fails() {
        let cfg = RunConfig { eps: 1e-30, ..small(BackendSelection::Float) };
        let report = run_selected(&cfg, &["kai_property", "triple_closure"]).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn invalid_config_is_rejected() {
        assert!(run(&RunConfig { trials: 0, ..RunConfig::default() }).is_err());
        assert!(run(&RunConfig { eps: 0.0, ..RunConfig::default() }).is_err());
        assert!(run_selected(&RunConfig::default(), &["nope"]).is_err());
    }

    #[test]
    fn selection_keeps_order() {
        let cfg = small(BackendSelection::Exact);
        let report = run_selected(&cfg, &["fix_sigma", "octonion_axioms"]).unwrap();
        let names: Vec<_> = report.checks.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["octonion_axioms", "fix_sigma"]);
    }

    #[test]
    fn seeds_are_deterministic() {
        let cfg = small(BackendSelection::Float);
        let a = run_selected(&cfg, &["sphere_descent"]).unwrap();
        let b = run_selected(&cfg, &["sphere_descent"]).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn tally_merge_keeps_first_failure() {
        let mut a = Tally::default();
        a.identity("x", true, 0.5);
        let mut b = Tally::default();
        b.fail("first".into());
        let mut c = Tally::default();
        c.fail("second".into());
        let m = a.merge(b).merge(c);
        assert_eq!(m.failures, 2);
        assert_eq!(m.max_residual, 0.5);
        assert_eq!(m.first_failure.as_deref(), Some("first"));
    }
}

//! The space `X = S7 x S7 = Spin(8)/G2` with its S3 action.
//!
//! Spin(8) acts by `(A, B, C)(x, y) = (Ax, By)`; the base point is `o = (1, 1)`.
//! In sphere coordinates
//!
//! * `tau(x, y) = (conj y, x conj y)`,
//! * `sigma(x, y) = (y, x)`.
//!
//! `Fix(tau) = {o} u Y` with `Y = {(s, conj s) : s = (-1 + sqrt(3) v)/2, v in S6}`,
//! a 6-sphere that is the polar of `o`.
//!
//! Points other than `o` carry a transporter witness `g` with `g(o) = x`; the
//! conjugate group at `x` is `Gamma_x = g Gamma g^-1`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::octonion::{cube_root_of_unity, ImaginaryUnit, Octonion, UnitOctonion};
use crate::sample::{Sampler, Sampling};
use crate::scalar::{Scalar, WithSqrt3};
use crate::triality::{spin_from_unit, GammaElement, SemidirectElement, TrialityTriple};

#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct SpherePoint<S> {
    x: UnitOctonion<S>,
    y: UnitOctonion<S>,
}

impl<S: Scalar> SpherePoint<S> {
    pub fn new(x: UnitOctonion<S>, y: UnitOctonion<S>) -> Self {
        SpherePoint { x, y }
    }

    pub fn from_octonions(x: Octonion<S>, y: Octonion<S>) -> Result<Self> {
        Ok(SpherePoint { x: UnitOctonion::new(x)?, y: UnitOctonion::new(y)? })
    }

    /// Images of unit vectors under isometries stay on the sphere.
    fn from_parts(x: Octonion<S>, y: Octonion<S>) -> Self {
        SpherePoint { x: UnitOctonion::new_unchecked(x), y: UnitOctonion::new_unchecked(y) }
    }

    /// The base point `o = (1, 1)`.
    pub fn origin() -> Self {
        SpherePoint { x: UnitOctonion::one(), y: UnitOctonion::one() }
    }

    pub fn x(&self) -> &Octonion<S> {
        self.x.value()
    }

    pub fn y(&self) -> &Octonion<S> {
        self.y.value()
    }

    pub fn residual(&self, other: &Self) -> f64 {
        self.x().residual(other.x()).max(self.y().residual(other.y()))
    }

    pub fn is_diagonal(&self) -> bool {
        self.x == self.y
    }
}

impl<'de, S: Scalar> Deserialize<'de> for SpherePoint<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(bound = "S: Scalar")]
        struct Repr<S: Scalar> {
            x: Octonion<S>,
            y: Octonion<S>,
        }
        let r = Repr::<S>::deserialize(deserializer)?;
        SpherePoint::from_octonions(r.x, r.y).map_err(serde::de::Error::custom)
    }
}

/// `g(x, y) = (Ax, By)`.
pub fn act<S: Scalar>(g: &TrialityTriple<S>, pt: &SpherePoint<S>) -> SpherePoint<S> {
    SpherePoint::from_parts(g.a().apply_oct(pt.x()), g.b().apply_oct(pt.y()))
}

pub fn tau_sphere<S: Scalar>(pt: &SpherePoint<S>) -> SpherePoint<S> {
    let yb = pt.y().conj();
    let second = pt.x() * &yb;
    SpherePoint::from_parts(yb, second)
}

pub fn sigma_sphere<S: Scalar>(pt: &SpherePoint<S>) -> SpherePoint<S> {
    SpherePoint { x: pt.y.clone(), y: pt.x.clone() }
}

/// Action of `sigma^a tau^b` on `X`: `tau` `b` times, then `sigma` if `a = 1`.
pub fn gamma_sphere<S: Scalar>(w: GammaElement, pt: &SpherePoint<S>) -> SpherePoint<S> {
    let mut p = pt.clone();
    for _ in 0..w.tau_power() {
        p = tau_sphere(&p);
    }
    if w.has_sigma() {
        p = sigma_sphere(&p);
    }
    p
}

/// `(g, gamma)` acts as `g` after `gamma`.
pub fn act_semidirect<S: Scalar>(el: &SemidirectElement<S>, pt: &SpherePoint<S>) -> SpherePoint<S> {
    act(&el.spin, &gamma_sphere(el.gamma, pt))
}

/// `(s, conj s)` for the cube root of unity `s` in direction `v`.
pub fn fix_tau_point<S: WithSqrt3>(v: &ImaginaryUnit<S>) -> Result<SpherePoint<S>> {
    let s = cube_root_of_unity(v);
    let pt = SpherePoint { y: s.conj(), x: s };
    if !is_fixed_by_tau(&pt) {
        return Err(Error::InvariantViolated(format!("{} is not fixed by tau", pt.x())));
    }
    Ok(pt)
}

/// Direct evaluation of `tau(pt) = pt`.
pub fn is_fixed_by_tau<S: Scalar>(pt: &SpherePoint<S>) -> bool {
    tau_sphere(pt) == *pt
}

/// The algebraic description of `Fix(tau)`: `conj x = y = x^2`.
pub fn satisfies_fix_tau_characterization<S: Scalar>(pt: &SpherePoint<S>) -> bool {
    let x = pt.x();
    x.conj() == *pt.y() && *pt.y() == x * x
}

pub fn is_fixed_by_sigma<S: Scalar>(pt: &SpherePoint<S>) -> bool {
    sigma_sphere(pt) == *pt
}

/// `phi_x(gamma) = g gamma g^-1` for a witness `g` with `g(o) = x`.
pub fn phi_x<S: Scalar>(witness: &TrialityTriple<S>, w: GammaElement) -> Result<SemidirectElement<S>> {
    let g = SemidirectElement::from_spin(witness.clone());
    let gi = SemidirectElement::from_spin(witness.inverse()?);
    g.mul(&SemidirectElement::from_gamma(w))?.mul(&gi)
}

/// Whether `Gamma_x = <phi_x(tau)>` fixes `z`, with the worst residual of
/// `phi_x(tau) z` and `phi_x(tau^2) z` against `z`.
pub fn conjugate_group_fixes<S: Scalar>(
    witness: &TrialityTriple<S>,
    z: &SpherePoint<S>,
) -> Result<(bool, f64)> {
    let mut fixed = true;
    let mut residual: f64 = 0.0;
    for w in [GammaElement::TAU, GammaElement::TAU2] {
        let image = act_semidirect(&phi_x(witness, w)?, z);
        residual = residual.max(image.residual(z));
        fixed &= image == *z;
    }
    Ok((fixed, residual))
}

/// Both sides of `gamma_x delta_y gamma_x^-1 = phi_{gamma_x(y)}(gamma delta gamma^-1)`
/// as semidirect elements. The witness for `gamma_x(y)` is
/// `g_x gamma(g_x^-1 g_y)`, which maps `o` to `gamma_x(y)`.
pub fn kai_sides<S: Scalar>(
    gx: &TrialityTriple<S>,
    gy: &TrialityTriple<S>,
    gamma: GammaElement,
    delta: GammaElement,
) -> Result<(SemidirectElement<S>, SemidirectElement<S>)> {
    let gamma_x = phi_x(gx, gamma)?;
    let delta_y = phi_x(gy, delta)?;
    let lhs = gamma_x.mul(&delta_y)?.mul(&gamma_x.inverse()?)?;
    let witness = gx.mul(&gx.inverse()?.mul(gy)?.apply(gamma)?)?;
    let rhs = phi_x(&witness, gamma.mul(delta).mul(gamma.inverse()))?;
    Ok((lhs, rhs))
}

/// Largest residual between the two sides of the kai identity as maps of `X`,
/// evaluated on `points`.
pub fn kai_residual<S: Scalar>(
    gx: &TrialityTriple<S>,
    gy: &TrialityTriple<S>,
    gamma: GammaElement,
    delta: GammaElement,
    points: &[SpherePoint<S>],
) -> Result<(bool, f64)> {
    let (lhs, rhs) = kai_sides(gx, gy, gamma, delta)?;
    let mut equal = true;
    let mut residual: f64 = 0.0;
    for p in points {
        let (l, r) = (act_semidirect(&lhs, p), act_semidirect(&rhs, p));
        residual = residual.max(l.residual(&r));
        equal &= l == r;
    }
    Ok((equal, residual))
}

pub fn kai_check<S: Scalar>(
    gx: &TrialityTriple<S>,
    gy: &TrialityTriple<S>,
    gamma: GammaElement,
    delta: GammaElement,
    points: &[SpherePoint<S>],
) -> Result<bool> {
    Ok(kai_residual(gx, gy, gamma, delta, points)?.0)
}

/// The polar of `witness(o)`: the image under `witness` of the 6-sphere `Y`.
#[derive(Clone, Debug)]
pub struct PolarSphere<S> {
    basepoint: SpherePoint<S>,
    witness: TrialityTriple<S>,
}

impl<S: WithSqrt3> PolarSphere<S> {
    pub fn new(witness: TrialityTriple<S>) -> Self {
        PolarSphere { basepoint: act(&witness, &SpherePoint::origin()), witness }
    }

    /// The polar `Y` of `o`.
    pub fn of_origin() -> Self {
        Self::new(TrialityTriple::identity())
    }

    pub fn basepoint(&self) -> &SpherePoint<S> {
        &self.basepoint
    }

    pub fn witness(&self) -> &TrialityTriple<S> {
        &self.witness
    }

    /// Point of the polar with parameter `v in S6`.
    pub fn point(&self, v: &ImaginaryUnit<S>) -> Result<SpherePoint<S>> {
        Ok(act(&self.witness, &fix_tau_point(v)?))
    }

    /// `z` lies on the polar iff `witness^-1 z` is a `tau`-fixed point other than `o`.
    pub fn contains(&self, z: &SpherePoint<S>) -> Result<bool> {
        let back = act(&self.witness.inverse()?, z);
        Ok(is_fixed_by_tau(&back) && back != SpherePoint::origin())
    }
}

/// Fixed-point certificate: `Gamma_{points[base]}` fixes `points[target]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub base: usize,
    pub target: usize,
    pub fixed: bool,
    pub residual: f64,
}

/// The three-point antipodal set `{o, p, q}` with `p = (s, conj s)`, `q = (conj s, s)`.
#[derive(Clone, Debug, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct AntipodalSet<S> {
    pub points: Vec<SpherePoint<S>>,
    pub v: ImaginaryUnit<S>,
    #[serde(skip)]
    pub witnesses: Vec<TrialityTriple<S>>,
    pub certificates: Vec<Certificate>,
}

impl<S: Scalar> AntipodalSet<S> {
    pub fn o(&self) -> &SpherePoint<S> {
        &self.points[0]
    }

    pub fn p(&self) -> &SpherePoint<S> {
        &self.points[1]
    }

    pub fn q(&self) -> &SpherePoint<S> {
        &self.points[2]
    }

    /// `sigma` fixes `o` and exchanges `p` and `q`.
    pub fn sigma_swaps_p_q(&self) -> bool {
        sigma_sphere(self.o()) == *self.o()
            && sigma_sphere(self.p()) == *self.q()
            && sigma_sphere(self.q()) == *self.p()
    }

    pub fn max_residual(&self) -> f64 {
        self.certificates.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

/// All pairwise certificates for `points` with transporter `witnesses`.
pub fn antipodality_certificates<S: Scalar>(
    points: &[SpherePoint<S>],
    witnesses: &[TrialityTriple<S>],
) -> Result<Vec<Certificate>> {
    let mut out = Vec::new();
    for (base, w) in witnesses.iter().enumerate() {
        for (target, z) in points.iter().enumerate() {
            let (fixed, residual) = conjugate_group_fixes(w, z)?;
            out.push(Certificate { base, target, fixed, residual });
        }
    }
    Ok(out)
}

pub fn antipodal_set<S: WithSqrt3>(v: &ImaginaryUnit<S>) -> Result<AntipodalSet<S>> {
    let p = fix_tau_point(v)?;
    let q = sigma_sphere(&p);
    let s = cube_root_of_unity(v);
    let witnesses = vec![TrialityTriple::identity(), spin_from_unit(&s)?, spin_from_unit(&s.conj())?];
    let points = vec![SpherePoint::origin(), p, q];
    for (w, pt) in witnesses.iter().zip(&points) {
        if act(w, &SpherePoint::origin()) != *pt {
            return Err(Error::InvariantViolated("witness does not reach its point".into()));
        }
    }
    let certificates = antipodality_certificates(&points, &witnesses)?;
    if let Some(bad) = certificates.iter().find(|c| !c.fixed) {
        return Err(Error::AntipodalityViolated(format!(
            "Gamma at point {} moves point {} (residual {})",
            bad.base, bad.target, bad.residual
        )));
    }
    Ok(AntipodalSet { points, v: v.clone(), witnesses, certificates })
}

/// One candidate `(st, conj s conj t)` of the maximality scan.
#[derive(Clone, Debug, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct ScanEntry<S> {
    pub candidate: SpherePoint<S>,
    pub accepted: bool,
    /// `|conj(s) conj(t) - conj(st)|`, zero iff `s` and `t` commute.
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct ScanReport<S> {
    pub entries: Vec<ScanEntry<S>>,
    /// Distinct accepted candidates in order of first acceptance.
    pub accepted: Vec<SpherePoint<S>>,
    /// Accepted candidates are exactly `{o, p, q}`.
    pub matches_expected: bool,
    /// Entries where acceptance disagreed with direct evaluation of `tau`.
    pub inconsistent: usize,
}

impl<S: Scalar> ScanReport<S> {
    pub fn extra_acceptances(&self, set: &AntipodalSet<S>) -> usize {
        self.accepted.iter().filter(|c| !set.points.contains(c)).count()
    }
}

/// Enumerate `q~ = (st, conj s conj t)` for cube roots `t`: `t = 1`, `t` in the
/// directions `v` and `-v`, and `t` in `trials` random directions. A candidate
/// is accepted iff `conj(s) conj(t) = conj(st)`, i.e. `q~` is `tau`-fixed.
pub fn maximality_scan<S: WithSqrt3 + Sampling>(
    v: &ImaginaryUnit<S>,
    trials: usize,
    seed: u64,
    eps: f64,
) -> Result<ScanReport<S>> {
    let set = antipodal_set(v)?;
    let s = cube_root_of_unity(v).into_inner();
    let g = &set.witnesses[1];

    let mut roots = vec![Octonion::one(), cube_root_of_unity(v).into_inner()];
    roots.push(cube_root_of_unity(&v.antipode()).into_inner());
    let mut sampler = Sampler::new(ChaCha8Rng::seed_from_u64(seed), eps);
    for _ in 0..trials {
        roots.push(cube_root_of_unity(&sampler.imaginary_unit::<S>()).into_inner());
    }

    let mut entries = Vec::with_capacity(roots.len());
    let mut accepted: Vec<SpherePoint<S>> = Vec::new();
    let mut inconsistent = 0;
    for t in roots {
        let tb = t.conj();
        let candidate = act(g, &SpherePoint::from_parts(t.clone(), tb.clone()));
        let lhs = &s.conj() * &tb;
        let rhs = (&s * &t).conj();
        let is_accepted = lhs == rhs;
        if is_accepted != is_fixed_by_tau(&candidate) {
            inconsistent += 1;
        }
        if is_accepted && !accepted.contains(&candidate) {
            accepted.push(candidate.clone());
        }
        entries.push(ScanEntry { candidate, accepted: is_accepted, residual: lhs.residual(&rhs) });
    }
    let matches_expected =
        accepted.len() == set.points.len() && set.points.iter().all(|p| accepted.contains(p));
    Ok(ScanReport { entries, accepted, matches_expected, inconsistent })
}

/// Pairwise intersection of the three polars through `P = {o, p, q}`:
/// `o, q` are fixed by `Gamma_p`, `o, p` by `Gamma_q`, `p, q` by `Gamma_o`, and
/// `q` is the antipode of `p` on `Y`, i.e. `q = fix_tau_point(-v)`.
pub fn polar_intersection_check<S: WithSqrt3>(v: &ImaginaryUnit<S>) -> Result<(bool, f64)> {
    let set = antipodal_set(v)?;
    let mut ok = true;
    let mut residual: f64 = 0.0;
    for (base, targets) in [(1, [0, 2]), (2, [0, 1]), (0, [1, 2])] {
        for t in targets {
            let (fixed, r) = conjugate_group_fixes(&set.witnesses[base], &set.points[t])?;
            ok &= fixed;
            residual = residual.max(r);
        }
    }
    let antipode = fix_tau_point(&v.antipode())?;
    residual = residual.max(antipode.residual(set.q()));
    ok &= antipode == *set.q();
    let polar = PolarSphere::of_origin();
    ok &= polar.contains(set.p())? && polar.contains(set.q())?;
    Ok((ok, residual))
}

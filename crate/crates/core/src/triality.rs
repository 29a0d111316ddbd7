//! Spin(8) as triples `(A, B, C)` of SO(8) matrices with `B(xy) = (Cx)(Ay)`.
//!
//! The outer automorphisms are
//!
//! * `tau:   (A, B, C) -> (~B, ~C, A)` of order 3,
//! * `sigma: (A, B, C) -> (B, A, ~C)` of order 2,
//!
//! where `~D = kappa D kappa`. Together they generate a copy of S3.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{require_special_orthogonal, Mat8};
use crate::octonion::{left_translation, table, Octonion, UnitOctonion};
use crate::scalar::Scalar;

/// A verified element of Spin(8).
#[derive(Clone, PartialEq, Debug)]
pub struct TrialityTriple<S> {
    a: Mat8<S>,
    b: Mat8<S>,
    c: Mat8<S>,
}

/// Worst residual of `B(e_i e_j) - (C e_i)(A e_j)` over all 64 basis pairs,
/// together with the (1-based) pair attaining it.
pub fn triality_residual<S: Scalar>(a: &Mat8<S>, b: &Mat8<S>, c: &Mat8<S>) -> (f64, (usize, usize)) {
    let mut worst = (0.0, (1, 1));
    for_each_basis_pair(a, b, c, |i, j, lhs, rhs| {
        let r = lhs.residual(rhs);
        if r > worst.0 {
            worst = (r, (i + 1, j + 1));
        }
        true
    });
    worst
}

/// Calls `f(i, j, B(e_i e_j), (C e_i)(A e_j))` until it returns false.
fn for_each_basis_pair<S: Scalar>(
    a: &Mat8<S>,
    b: &Mat8<S>,
    c: &Mat8<S>,
    mut f: impl FnMut(usize, usize, &Octonion<S>, &Octonion<S>) -> bool,
) {
    let t = table();
    let a_cols: Vec<Octonion<S>> = (0..8).map(|j| a.column_oct(j)).collect();
    let b_cols: Vec<Octonion<S>> = (0..8).map(|j| b.column_oct(j)).collect();
    let c_cols: Vec<Octonion<S>> = (0..8).map(|j| c.column_oct(j)).collect();
    for (i, ci) in c_cols.iter().enumerate() {
        for (j, aj) in a_cols.iter().enumerate() {
            let p = t.product(i, j);
            let lhs = if p.sign > 0 { b_cols[p.index].clone() } else { -b_cols[p.index].clone() };
            let rhs = ci * aj;
            if !f(i, j, &lhs, &rhs) {
                return;
            }
        }
    }
}

impl<S: Scalar> TrialityTriple<S> {
    /// Check that each factor is in SO(8) and that `B(xy) = (Cx)(Ay)` on all basis pairs.
    pub fn verify(a: Mat8<S>, b: Mat8<S>, c: Mat8<S>) -> Result<Self> {
        require_special_orthogonal(&a, "A")?;
        require_special_orthogonal(&b, "B")?;
        require_special_orthogonal(&c, "C")?;
        let mut ok = true;
        for_each_basis_pair(&a, &b, &c, |_, _, lhs, rhs| {
            ok = lhs == rhs;
            ok
        });
        if !ok {
            let (residual, (x, y)) = triality_residual(&a, &b, &c);
            return Err(Error::TrialityViolated { x, y, residual });
        }
        Ok(TrialityTriple { a, b, c })
    }

    pub fn identity() -> Self {
        TrialityTriple { a: Mat8::identity(), b: Mat8::identity(), c: Mat8::identity() }
    }

    /// Complete a pair `(A, B)` to a triple with `C x = B(x) conj(A e1)`, then verify.
    pub fn from_pair(a: Mat8<S>, b: Mat8<S>) -> Result<Self> {
        let a1_conj = a.column_oct(0).conj();
        let cols: [Octonion<S>; 8] = std::array::from_fn(|j| &b.column_oct(j) * &a1_conj);
        let c = Mat8::from_columns(&cols);
        Self::verify(a, b, c)
    }

    pub fn a(&self) -> &Mat8<S> {
        &self.a
    }

    pub fn b(&self) -> &Mat8<S> {
        &self.b
    }

    pub fn c(&self) -> &Mat8<S> {
        &self.c
    }

    pub fn into_parts(self) -> (Mat8<S>, Mat8<S>, Mat8<S>) {
        (self.a, self.b, self.c)
    }

    /// Componentwise product `(A A', B B', C C')`; `self` acts after `other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        Self::verify(&self.a * &other.a, &self.b * &other.b, &self.c * &other.c)
    }

    /// `(A^t, B^t, C^t)`.
    pub fn inverse(&self) -> Result<Self> {
        Self::verify(self.a.transpose(), self.b.transpose(), self.c.transpose())
    }

    /// Largest entrywise residual over the three factors.
    pub fn residual(&self, other: &Self) -> f64 {
        self.a.residual(&other.a).max(self.b.residual(&other.b)).max(self.c.residual(&other.c))
    }

    /// `A = B = C`, the common fixed group of `tau` and `sigma`.
    pub fn is_g2(&self) -> bool {
        self.a == self.b && self.b == self.c && is_octonion_automorphism(&self.a)
    }

    pub fn tau(&self) -> Result<Self> {
        Self::verify(kappa_conj(&self.b), kappa_conj(&self.c), self.a.clone())
    }

    pub fn sigma(&self) -> Result<Self> {
        Self::verify(self.b.clone(), self.a.clone(), kappa_conj(&self.c))
    }

    pub fn apply(&self, w: GammaElement) -> Result<Self> {
        let mut g = self.clone();
        for _ in 0..w.tau_power() {
            g = g.tau()?;
        }
        if w.has_sigma() {
            g = g.sigma()?;
        }
        Ok(g)
    }

    pub fn with_tolerance(self, eps: f64) -> Self {
        TrialityTriple {
            a: self.a.with_tolerance(eps),
            b: self.b.with_tolerance(eps),
            c: self.c.with_tolerance(eps),
        }
    }
}

/// The triple `(L(s), L(conj s), x -> conj(s) x conj(s))` of a unit octonion `s`.
/// It maps the base point `(1, 1)` of `S7 x S7` to `(s, conj s)`.
pub fn spin_from_unit<S: Scalar>(s: &UnitOctonion<S>) -> Result<TrialityTriple<S>> {
    let s = s.value();
    let sb = s.conj();
    let cols: [Octonion<S>; 8] = std::array::from_fn(|j| &(&sb * &Octonion::e(j + 1)) * &sb);
    TrialityTriple::verify(left_translation(s), left_translation(&sb), Mat8::from_columns(&cols))
}

/// `A(xy) = A(x) A(y)` on every basis pair.
pub fn is_octonion_automorphism<S: Scalar>(a: &Mat8<S>) -> bool {
    let t = table();
    let cols: Vec<Octonion<S>> = (0..8).map(|j| a.column_oct(j)).collect();
    (0..8).all(|i| {
        (0..8).all(|j| {
            let p = t.product(i, j);
            let lhs = if p.sign > 0 { cols[p.index].clone() } else { -cols[p.index].clone() };
            lhs == &cols[i] * &cols[j]
        })
    })
}

/// `kappa D kappa` without the SO(8) check: flips the sign of row 0 and column 0
/// entries except the corner.
fn kappa_conj<S: Scalar>(d: &Mat8<S>) -> Mat8<S> {
    Mat8::from_fn(|i, j| {
        let v = d.get(i, j).clone();
        if (i == 0) != (j == 0) {
            -v
        } else {
            v
        }
    })
}

/// `~D = kappa D kappa` for `D in SO(8)`.
pub fn kappa_conjugate<S: Scalar>(d: &Mat8<S>) -> Result<Mat8<S>> {
    require_special_orthogonal(d, "D")?;
    Ok(kappa_conj(d))
}

impl<S: Scalar> Serialize for TrialityTriple<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        #[derive(Serialize)]
        struct Repr<'a, S: Scalar> {
            #[serde(rename = "A")]
            a: &'a Mat8<S>,
            #[serde(rename = "B")]
            b: &'a Mat8<S>,
            #[serde(rename = "C")]
            c: &'a Mat8<S>,
        }
        Repr { a: &self.a, b: &self.b, c: &self.c }.serialize(serializer)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for TrialityTriple<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(bound = "S: Scalar")]
        struct Repr<S: Scalar> {
            #[serde(rename = "A")]
            a: Mat8<S>,
            #[serde(rename = "B")]
            b: Mat8<S>,
            #[serde(rename = "C")]
            c: Mat8<S>,
        }
        let r = Repr::<S>::deserialize(deserializer)?;
        TrialityTriple::verify(r.a, r.b, r.c).map_err(serde::de::Error::custom)
    }
}

/// Element `sigma^a tau^b` of the group generated by `tau` and `sigma`
/// (`a in {0, 1}`, `b in {0, 1, 2}`).
///
/// As a map, `sigma tau` means `tau` first, then `sigma`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GammaElement {
    sigma: bool,
    tau: u8,
}

impl GammaElement {
    pub const E: Self = GammaElement { sigma: false, tau: 0 };
    pub const TAU: Self = GammaElement { sigma: false, tau: 1 };
    pub const TAU2: Self = GammaElement { sigma: false, tau: 2 };
    pub const SIGMA: Self = GammaElement { sigma: true, tau: 0 };
    pub const SIGMA_TAU: Self = GammaElement { sigma: true, tau: 1 };
    pub const SIGMA_TAU2: Self = GammaElement { sigma: true, tau: 2 };

    pub const ALL: [Self; 6] =
        [Self::E, Self::TAU, Self::TAU2, Self::SIGMA, Self::SIGMA_TAU, Self::SIGMA_TAU2];

    /// The cyclic subgroup generated by `tau`.
    pub const CYCLIC: [Self; 3] = [Self::E, Self::TAU, Self::TAU2];

    pub fn new(sigma: bool, tau: u8) -> Self {
        GammaElement { sigma, tau: tau % 3 }
    }

    pub fn has_sigma(self) -> bool {
        self.sigma
    }

    pub fn tau_power(self) -> u8 {
        self.tau
    }

    /// Group product using `tau sigma = sigma tau^2`.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: Self) -> Self {
        let t = if rhs.sigma { (3 - self.tau) % 3 } else { self.tau };
        GammaElement::new(self.sigma ^ rhs.sigma, t + rhs.tau)
    }

    pub fn inverse(self) -> Self {
        if self.sigma {
            self
        } else {
            GammaElement::new(false, 3 - self.tau)
        }
    }

    pub fn name(self) -> &'static str {
        match (self.sigma, self.tau) {
            (false, 0) => "e",
            (false, 1) => "t",
            (false, _) => "t2",
            (true, 0) => "s",
            (true, 1) => "st",
            (true, _) => "st2",
        }
    }
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GammaElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GammaElement::ALL
            .into_iter()
            .find(|g| g.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown group element `{s}` (expected e|t|t2|s|st|st2)")))
    }
}

impl Serialize for GammaElement {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for GammaElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Element `(g, gamma)` of the semidirect product of Spin(8) with S3, with
/// `(g, gamma)(h, delta) = (g gamma(h), gamma delta)`.
#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct SemidirectElement<S> {
    pub spin: TrialityTriple<S>,
    pub gamma: GammaElement,
}

impl<S: Scalar> SemidirectElement<S> {
    pub fn new(spin: TrialityTriple<S>, gamma: GammaElement) -> Self {
        SemidirectElement { spin, gamma }
    }

    pub fn identity() -> Self {
        Self::new(TrialityTriple::identity(), GammaElement::E)
    }

    pub fn from_spin(spin: TrialityTriple<S>) -> Self {
        Self::new(spin, GammaElement::E)
    }

    pub fn from_gamma(gamma: GammaElement) -> Self {
        Self::new(TrialityTriple::identity(), gamma)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let moved = other.spin.apply(self.gamma)?;
        Ok(Self::new(self.spin.mul(&moved)?, self.gamma.mul(other.gamma)))
    }

    /// `(gamma^-1(g^-1), gamma^-1)`.
    pub fn inverse(&self) -> Result<Self> {
        let gi = self.gamma.inverse();
        Ok(Self::new(self.spin.inverse()?.apply(gi)?, gi))
    }
}

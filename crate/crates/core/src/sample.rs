//! Seeded random sample families.
//!
//! Sphere points come from inverse stereographic projection, which maps
//! rational coordinates to rational points of the sphere, so exact backends
//! get exact unit vectors.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::octonion::{cube_root_of_unity, ImaginaryUnit, Octonion, UnitOctonion};
use crate::scalar::{ApproxReal, QuadExt, Rational, Scalar, WithSqrt3};
use crate::symspace::{act, SpherePoint};
use crate::triality::{spin_from_unit, TrialityTriple};

/// Scalars with a sampling distribution for free coordinates.
pub trait Sampling: Scalar {
    fn sample_coordinate(rng: &mut ChaCha8Rng) -> Self;
}

/// Numerators in `[-2, 2]`, denominators in `{1, 2}`: keeps exact words small.
fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.random_range(-2..=2), rng.random_range(1..=2)).expect("nonzero denominator")
}

impl Sampling for Rational {
    fn sample_coordinate(rng: &mut ChaCha8Rng) -> Self {
        small_rational(rng)
    }
}

impl Sampling for QuadExt {
    fn sample_coordinate(rng: &mut ChaCha8Rng) -> Self {
        QuadExt::rational(small_rational(rng))
    }
}

impl Sampling for ApproxReal {
    fn sample_coordinate(rng: &mut ChaCha8Rng) -> Self {
        ApproxReal::new(rng.random_range(-2.0..=2.0))
    }
}

/// Inverse stereographic projection `R^n -> S^n`, pole last.
fn inverse_stereographic<S: Scalar>(u: &[S]) -> Vec<S> {
    let r2 = u.iter().fold(S::zero(), |acc, x| acc + x.square());
    let inv = (S::one() + r2.clone()).try_inv().expect("1 + |u|^2 > 0");
    let two = S::from_i64(2);
    let mut out: Vec<S> = u.iter().map(|x| two.clone() * x.clone() * inv.clone()).collect();
    out.push((r2 - S::one()) * inv);
    out
}

pub struct Sampler {
    rng: ChaCha8Rng,
    eps: f64,
}

impl Sampler {
    /// `eps` is stamped on every sampled float value.
    pub fn new(rng: ChaCha8Rng, eps: f64) -> Self {
        Sampler { rng, eps }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Uniform index in `0..n`.
    pub fn scalar_index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn next_seed(&mut self) -> u64 {
        self.rng.random()
    }

    pub fn scalar<S: Sampling>(&mut self) -> S {
        S::sample_coordinate(&mut self.rng).with_tolerance(self.eps)
    }

    fn coords<S: Sampling>(&mut self, n: usize) -> Vec<S> {
        (0..n).map(|_| self.scalar()).collect()
    }

    fn stamp<S: Scalar>(&self, x: Octonion<S>) -> Octonion<S> {
        x.with_tolerance(self.eps)
    }

    pub fn octonion<S: Sampling>(&mut self) -> Octonion<S> {
        let c = self.coords::<S>(8);
        Octonion::from_fn(|i| c[i].clone())
    }

    /// Element of the quaternion subalgebra spanned by `e1..e4`.
    pub fn quaternionic<S: Sampling>(&mut self) -> Octonion<S> {
        let c = self.coords::<S>(4);
        Octonion::from_fn(|i| if i < 4 { c[i].clone() } else { S::zero() })
    }

    pub fn unit<S: Sampling>(&mut self) -> UnitOctonion<S> {
        let u = self.coords::<S>(7);
        let p = inverse_stereographic(&u);
        let x = self.stamp(Octonion::from_fn(|i| p[i].clone()));
        UnitOctonion::new_unchecked(x)
    }

    pub fn imaginary_unit<S: Sampling>(&mut self) -> ImaginaryUnit<S> {
        let u = self.coords::<S>(6);
        let p = inverse_stereographic(&u);
        let v = self.stamp(Octonion::from_fn(|i| if i == 0 { S::zero() } else { p[i - 1].clone() }));
        ImaginaryUnit::new_unchecked(v)
    }

    /// An arbitrary point of `S7 x S7`.
    pub fn sphere_point<S: Sampling>(&mut self) -> SpherePoint<S> {
        SpherePoint::new(self.unit(), self.unit())
    }

    /// A word of length 1 to 6 in `spin(s)`, `tau(spin(s))`, `sigma(spin(s))`.
    /// Fails only when a float tolerance is too tight to re-verify the factors.
    pub fn spin_word<S: Sampling>(&mut self) -> Result<TrialityTriple<S>> {
        let len = self.rng.random_range(1..=6);
        let mut g = TrialityTriple::identity();
        for _ in 0..len {
            let s = self.unit::<S>();
            let h = spin_from_unit(&s)?;
            let h = match self.rng.random_range(0..3) {
                0 => h,
                1 => h.tau()?,
                _ => h.sigma()?,
            };
            g = g.mul(&h)?;
        }
        Ok(g)
    }

    /// A point of `X` together with a transporter witness `g`, `g(o) = point`.
    pub fn witnessed_point<S: Sampling>(&mut self) -> Result<(TrialityTriple<S>, SpherePoint<S>)> {
        let g = self.spin_word::<S>()?;
        let p = act(&g, &SpherePoint::origin());
        Ok((g, p))
    }

    /// A word of length 1 to 3 in `k(s) = spin(s)^-1 tau(spin(s))` with `s^3 = 1`;
    /// each factor is `x -> conj(s) x s` and so lies in G2.
    pub fn g2_word<S: Sampling + WithSqrt3>(&mut self) -> Result<TrialityTriple<S>> {
        let len = self.rng.random_range(1..=3);
        let mut g = TrialityTriple::identity();
        for _ in 0..len {
            let v = self.imaginary_unit::<S>();
            let r = spin_from_unit(&cube_root_of_unity(&v))?;
            g = g.mul(&r.inverse()?.mul(&r.tau()?)?)?;
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn sampler(seed: u64) -> Sampler {
        Sampler::new(ChaCha8Rng::seed_from_u64(seed), 1e-9)
    }

    #[test]
    fn stereographic_points_are_exact_units() {
        let mut s = sampler(1);
        for _ in 0..20 {
            assert_eq!(s.unit::<Rational>().value().norm_sq(), Rational::integer(1));
            let v = s.imaginary_unit::<QuadExt>();
            assert!(v.value().is_imaginary());
        }
    }

    #[test]
    fn same_seed_same_samples() {
        let a: Vec<_> = (0..5)
            .map({
                let mut s = sampler(9);
                move |_| s.octonion::<Rational>()
            })
            .collect();
        let mut s = sampler(9);
        for x in a {
            assert_eq!(x, s.octonion::<Rational>());
        }
    }

    #[test]
    fn float_samples_carry_eps() {
        let mut s = Sampler::new(ChaCha8Rng::seed_from_u64(3), 1e-6);
        let x: ApproxReal = s.scalar();
        assert_eq!(x.eps(), 1e-6);
    }

    #[test]
    fn g2_words_are_g2() {
        let mut s = sampler(4);
        for _ in 0..5 {
            let k = s.g2_word::<QuadExt>().unwrap();
            assert!(k.is_g2());
            assert_eq!(act(&k, &SpherePoint::origin()), SpherePoint::origin());
        }
    }

    #[test]
    fn witnessed_points_match() {
        let mut s = sampler(5);
        let (g, p) = s.witnessed_point::<QuadExt>().unwrap();
        assert_eq!(act(&g, &SpherePoint::origin()), p);
    }
}

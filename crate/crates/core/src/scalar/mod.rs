//! Field elements used by every other layer.
//!
//! Three backends implement [`Scalar`]:
//!
//! * [`Rational`]: exact arbitrary-precision rationals.
//! * [`QuadExt`]: exact elements `a + b*sqrt(3)` of the quadratic field Q(sqrt 3).
//!   This is the exact backend for anything touching cube roots of unity.
//! * [`ApproxReal`]: an `f64` carrying an absolute comparison tolerance.
//!
//! Exact backends compare with exact equality. The float backend compares with
//! `|a - b| <= eps`, so `PartialEq` on [`ApproxReal`] is a tolerance test and is
//! not transitive.

mod approx;
mod quad;
mod rational;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

pub use approx::{ApproxReal, DEFAULT_EPS};
pub use quad::QuadExt;
pub use rational::Rational;

/// `sqrt(3)` rounded to the nearest `f64`.
pub const SQRT_3_F64: f64 = 1.732_050_807_568_877_2;

pub trait Scalar:
    Clone
    + Debug
    + Display
    + FromStr<Err = Error>
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Serialize
    + DeserializeOwned
{
    /// True for backends whose equality is exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;

    /// `n / d`; `d` must be nonzero.
    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&Rational::new(n, d).expect("nonzero denominator"))
    }

    /// Zero test: exact for exact backends, `|v| <= eps` for floats.
    fn is_zero(&self) -> bool;

    /// Cheap structural zero test used to skip work in sparse products.
    /// Must never return true for a value that is not exactly zero.
    fn is_exact_zero(&self) -> bool {
        false
    }

    fn try_inv(&self) -> Result<Self>;

    fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.try_inv()?)
    }

    /// Nearest `f64`.
    fn to_f64(&self) -> f64;

    /// `|self - other|` as a float. Exact backends return exactly 0.0 iff the
    /// values are equal and a strictly positive value otherwise.
    fn residual(&self, other: &Self) -> f64;

    /// Attach a comparison tolerance. A no-op for exact backends.
    fn with_tolerance(self, _eps: f64) -> Self {
        self
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    /// `sum k * x * y` over `(k, x, y)` with small integer weights `k`.
    fn sum_of_products(terms: &[(i64, &Self, &Self)]) -> Self {
        terms.iter().fold(Self::zero(), |acc, (k, x, y)| {
            let t = (*x).clone() * (*y).clone();
            match k {
                1 => acc + t,
                -1 => acc - t,
                k => acc + Self::from_i64(*k) * t,
            }
        })
    }
}

/// Fields containing `sqrt(3)`.
pub trait WithSqrt3: Scalar {
    fn sqrt3() -> Self;
}

/// Map any scalar to the float backend.
pub fn embed_float<S: Scalar>(x: &S) -> ApproxReal {
    ApproxReal::new(x.to_f64())
}

/// Residual helper for exact backends: 0 on equality, otherwise the float
/// magnitude of the difference, never rounded down to zero.
pub(crate) fn exact_residual(diff: f64, equal: bool) -> f64 {
    if equal {
        0.0
    } else {
        diff.abs().max(f64::MIN_POSITIVE)
    }
}

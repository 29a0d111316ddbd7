use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{QuadExt, Rational, Scalar, WithSqrt3, SQRT_3_F64};
use crate::error::{Error, Result};

/// Default absolute tolerance of the float backend.
pub const DEFAULT_EPS: f64 = 1e-9;

/// `f64` with an absolute comparison tolerance.
///
/// Constants (`zero`, `one`, parsed literals) carry no tolerance of their own
/// and inherit the tolerance of whatever they are combined with. Values with a
/// tolerance combine by taking the larger one. Comparisons of two values that
/// both lack a tolerance use [`DEFAULT_EPS`].
#[derive(Clone, Copy)]
pub struct ApproxReal {
    value: f64,
    eps: Option<f64>,
}

impl ApproxReal {
    pub fn new(value: f64) -> Self {
        ApproxReal { value, eps: None }
    }

    pub fn with_eps(value: f64, eps: f64) -> Self {
        assert!(eps > 0.0, "tolerance must be positive");
        ApproxReal { value, eps: Some(eps) }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// Effective tolerance used when this value is compared.
    pub fn eps(&self) -> f64 {
        self.eps.unwrap_or(DEFAULT_EPS)
    }

    fn combine(a: Option<f64>, b: Option<f64>) -> Option<f64> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    fn lift(&self, value: f64, other: &ApproxReal) -> ApproxReal {
        ApproxReal { value, eps: Self::combine(self.eps, other.eps) }
    }
}

impl PartialEq for ApproxReal {
    fn eq(&self, other: &Self) -> bool {
        let eps = Self::combine(self.eps, other.eps).unwrap_or(DEFAULT_EPS);
        (self.value - other.value).abs() <= eps
    }
}

impl Add for ApproxReal {
    type Output = ApproxReal;
    fn add(self, rhs: ApproxReal) -> ApproxReal {
        self.lift(self.value + rhs.value, &rhs)
    }
}

impl Sub for ApproxReal {
    type Output = ApproxReal;
    fn sub(self, rhs: ApproxReal) -> ApproxReal {
        self.lift(self.value - rhs.value, &rhs)
    }
}

impl Mul for ApproxReal {
    type Output = ApproxReal;
    fn mul(self, rhs: ApproxReal) -> ApproxReal {
        self.lift(self.value * rhs.value, &rhs)
    }
}

impl Neg for ApproxReal {
    type Output = ApproxReal;
    fn neg(self) -> ApproxReal {
        ApproxReal { value: -self.value, eps: self.eps }
    }
}

impl fmt::Display for ApproxReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Avoid printing "-0".
        let v = if self.value == 0.0 { 0.0 } else { self.value };
        write!(f, "{v}")
    }
}

impl fmt::Debug for ApproxReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.eps {
            Some(eps) => write!(f, "{}±{eps:e}", self),
            None => fmt::Display::fmt(self, f),
        }
    }
}

impl FromStr for ApproxReal {
    type Err = Error;

    /// Decimal literals, or any exact literal (`p/q`, `a+b*r3`) evaluated in `f64`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Ok(v) = compact.parse::<f64>() {
            return Ok(ApproxReal::new(v));
        }
        let exact: QuadExt =
            compact.parse().map_err(|_| Error::Parse(format!("invalid real literal `{s}`")))?;
        Ok(ApproxReal::new(exact.to_f64()))
    }
}

impl Serialize for ApproxReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_f64(if self.value == 0.0 { 0.0 } else { self.value })
    }
}

impl<'de> Deserialize<'de> for ApproxReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = scalar_literal(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// Accept a scalar either as a JSON string literal or as a bare number.
pub(crate) fn scalar_literal<'de, D: Deserializer<'de>>(
    deserializer: D,
) -> std::result::Result<String, D::Error> {
    struct Literal;

    impl Visitor<'_> for Literal {
        type Value = String;

        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("a scalar literal string or number")
        }

        fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<String, E> {
            Ok(v.to_owned())
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<String, E> {
            Ok(v.to_string())
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<String, E> {
            Ok(v.to_string())
        }

        fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<String, E> {
            Ok(format!("{v:?}"))
        }
    }

    deserializer.deserialize_any(Literal)
}

impl Scalar for ApproxReal {
    const EXACT: bool = false;

    fn zero() -> Self {
        ApproxReal::new(0.0)
    }

    fn one() -> Self {
        ApproxReal::new(1.0)
    }

    fn from_i64(n: i64) -> Self {
        ApproxReal::new(n as f64)
    }

    fn from_rational(r: &Rational) -> Self {
        ApproxReal::new(r.to_f64())
    }

    fn is_zero(&self) -> bool {
        self.value.abs() <= self.eps()
    }

    fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(ApproxReal { value: 1.0 / self.value, eps: self.eps })
        }
    }

    fn try_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.lift(self.value / rhs.value, rhs))
        }
    }

    fn to_f64(&self) -> f64 {
        self.value
    }

    fn residual(&self, other: &Self) -> f64 {
        (self.value - other.value).abs()
    }

    fn with_tolerance(self, eps: f64) -> Self {
        ApproxReal::with_eps(self.value, eps)
    }
}

impl WithSqrt3 for ApproxReal {
    fn sqrt3() -> Self {
        ApproxReal::new(SQRT_3_F64)
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{exact_residual, Rational, Scalar, WithSqrt3, SQRT_3_F64};
use crate::error::{Error, Result};

/// Exact element `a + b*sqrt(3)` of Q(sqrt 3).
///
/// Text form is `a+b*r3` where `r3` stands for sqrt(3), e.g. `-1/2+1/2*r3`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadExt { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt { a, b: Rational::default() }
    }

    /// Rational part.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of sqrt(3).
    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a - b*sqrt(3)`.
    pub fn galois_conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -&self.b }
    }

    /// Field norm `a^2 - 3 b^2`; zero only for zero.
    pub fn field_norm(&self) -> Rational {
        &(&self.a * &self.a) - &(&Rational::integer(3) * &(&self.b * &self.b))
    }
}

impl From<Rational> for QuadExt {
    fn from(a: Rational) -> Self {
        QuadExt::rational(a)
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        QuadExt { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        QuadExt { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        match (self.b.is_zero(), rhs.b.is_zero()) {
            (true, true) => QuadExt::rational(self.a * rhs.a),
            (true, false) => QuadExt { b: &self.a * &rhs.b, a: self.a * rhs.a },
            (false, true) => QuadExt { b: &self.b * &rhs.a, a: self.a * rhs.a },
            (false, false) => {
                let a = &(&self.a * &rhs.a) + &(&Rational::integer(3) * &(&self.b * &rhs.b));
                let b = &(&self.a * &rhs.b) + &(&self.b * &rhs.a);
                QuadExt { a, b }
            }
        }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a, b: -self.b }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*r3", self.b),
            (false, false) if self.b.is_negative() => {
                write!(f, "{}-{}*r3", self.a, self.b.abs())
            }
            (false, false) => write!(f, "{}+{}*r3", self.a, self.b),
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Split `-1/2+3*r3-r3` into signed terms `["-1/2", "+3*r3", "-r3"]`.
fn split_terms(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut terms = Vec::new();
    let mut start = 0;
    for i in 1..bytes.len() {
        let sign = bytes[i] == b'+' || bytes[i] == b'-';
        let after_op = matches!(bytes[i - 1], b'/' | b'*' | b'+' | b'-');
        if sign && !after_op {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    terms
}

impl FromStr for QuadExt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty scalar literal".into()));
        }
        let mut out = QuadExt::default();
        for term in split_terms(&compact) {
            let (negative, body) = match term.as_bytes()[0] {
                b'-' => (true, &term[1..]),
                b'+' => (false, &term[1..]),
                _ => (false, term),
            };
            let (coeff, surd) = if body == "r3" {
                (Rational::integer(1), true)
            } else if let Some(c) = body.strip_suffix("*r3") {
                (c.parse()?, true)
            } else if let Some(c) = body.strip_prefix("r3*") {
                (c.parse()?, true)
            } else if body.contains("r3") {
                return Err(Error::Parse(format!("malformed sqrt(3) term `{term}` in `{s}`")));
            } else {
                (body.parse()?, false)
            };
            let coeff = if negative { -coeff } else { coeff };
            if surd {
                out.b = out.b + coeff;
            } else {
                out.a = out.a + coeff;
            }
        }
        Ok(out)
    }
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = super::approx::scalar_literal(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Scalar for QuadExt {
    const EXACT: bool = true;

    fn zero() -> Self {
        QuadExt::default()
    }

    fn one() -> Self {
        QuadExt::rational(Rational::integer(1))
    }

    fn from_i64(n: i64) -> Self {
        QuadExt::rational(Rational::integer(n))
    }

    fn from_rational(r: &Rational) -> Self {
        QuadExt::rational(r.clone())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }

    fn sum_of_products(terms: &[(i64, &Self, &Self)]) -> Self {
        let a = terms.iter().flat_map(|&(k, x, y)| [(k, &x.a, &y.a), (3 * k, &x.b, &y.b)]);
        let b = terms.iter().flat_map(|&(k, x, y)| [(k, &x.a, &y.b), (k, &x.b, &y.a)]);
        QuadExt { a: Rational::sum_of_products(a), b: Rational::sum_of_products(b) }
    }

    fn try_inv(&self) -> Result<Self> {
        // (a + b r3)^-1 = (a - b r3) / (a^2 - 3 b^2); the norm vanishes only at 0.
        let n = self.field_norm().recip()?;
        Ok(QuadExt { a: &self.a * &n, b: -(&self.b * &n) })
    }

    fn to_f64(&self) -> f64 {
        if self.b.is_zero() {
            return self.a.to_f64();
        }
        // Evaluate through the conjugate when the two terms nearly cancel.
        let direct = self.a.to_f64() + self.b.to_f64() * SQRT_3_F64;
        let scale = self.a.to_f64().abs() + self.b.to_f64().abs() * SQRT_3_F64;
        if direct.abs() < 0.25 * scale {
            let conj = self.a.to_f64() - self.b.to_f64() * SQRT_3_F64;
            if conj != 0.0 {
                return self.field_norm().to_f64() / conj;
            }
        }
        direct
    }

    fn residual(&self, other: &Self) -> f64 {
        let equal = self == other;
        exact_residual(if equal { 0.0 } else { (self.clone() - other.clone()).to_f64() }, equal)
    }
}

impl WithSqrt3 for QuadExt {
    fn sqrt3() -> Self {
        QuadExt { a: Rational::default(), b: Rational::integer(1) }
    }
}

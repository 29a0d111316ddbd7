use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{exact_residual, Scalar};
use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in an `i128` are stored inline
/// and combined with checked machine arithmetic; anything larger spills to a
/// [`BigRational`]. The representation is canonical, so structural equality is
/// value equality.
#[derive(Clone)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// `n / d` with `d > 0`, `gcd(n, d) = 1`, `n != i128::MIN`.
    Small(i128, i128),
    Big(BigRational),
}

fn gcd(a: u128, b: u128) -> u128 {
    if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
        return gcd_u64(a as u64, b as u64) as u128;
    }
    let (mut a, mut b) = (a, b);
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn narrow(x: i128) -> Option<i64> {
    i64::try_from(x).ok()
}

fn small_add(a: i128, b: i128, c: i128, d: i128) -> Option<(i128, i128)> {
    if let (Some(a), Some(b), Some(c), Some(d)) = (narrow(a), narrow(b), narrow(c), narrow(d)) {
        return Some(add64(a, b, c, d));
    }
    let g = gcd(b as u128, d as u128) as i128;
    let t = a.checked_mul(d / g)?.checked_add(c.checked_mul(b / g)?)?;
    let g2 = gcd(t.unsigned_abs(), g as u128) as i128;
    Some((t / g2, (b / g).checked_mul(d / g2)?))
}

fn small_mul(a: i128, b: i128, c: i128, d: i128) -> Option<(i128, i128)> {
    if let (Some(a), Some(b), Some(c), Some(d)) = (narrow(a), narrow(b), narrow(c), narrow(d)) {
        return Some(mul64(a, b, c, d));
    }
    let g1 = gcd(a.unsigned_abs(), d as u128) as i128;
    let g2 = gcd(c.unsigned_abs(), b as u128) as i128;
    Some(((a / g1).checked_mul(c / g2)?, (b / g2).checked_mul(d / g1)?))
}

/// `a/b + c/d` for 64-bit operands; the result always fits in `i128`.
fn add64(a: i64, b: i64, c: i64, d: i64) -> (i128, i128) {
    if b == d && b == 1 {
        return (a as i128 + c as i128, 1);
    }
    let g = gcd_u64(b as u64, d as u64) as i64;
    if g == 1 {
        return (a as i128 * d as i128 + c as i128 * b as i128, b as i128 * d as i128);
    }
    let (bg, dg) = (b / g, d / g);
    let t = a as i128 * dg as i128 + c as i128 * bg as i128;
    let g2 = gcd_u64((t.unsigned_abs() % g as u128) as u64, g as u64) as i64;
    if g2 == 1 {
        (t, bg as i128 * d as i128)
    } else {
        (t / g2 as i128, bg as i128 * (d / g2) as i128)
    }
}

fn mul64(a: i64, b: i64, c: i64, d: i64) -> (i128, i128) {
    if a == 0 || c == 0 {
        return (0, 1);
    }
    let g1 = gcd_u64(a.unsigned_abs(), d as u64) as i64;
    let g2 = gcd_u64(c.unsigned_abs(), b as u64) as i64;
    let (a, d) = if g1 == 1 { (a, d) } else { (a / g1, d / g1) };
    let (c, b) = if g2 == 1 { (c, b) } else { (c / g2, b / g2) };
    (a as i128 * c as i128, b as i128 * d as i128)
}

/// Running `n / d` with `d > 0`, not reduced. `None` once anything overflows.
fn accumulate<'a>(terms: impl Iterator<Item = (i64, &'a Rational, &'a Rational)>) -> Option<(i128, i128)> {
    let (mut n, mut d): (i128, i128) = (0, 1);
    for (k, x, y) in terms {
        let (Repr::Small(a, b), Repr::Small(c, e)) = (&x.0, &y.0) else {
            return None;
        };
        if *a == 0 || *c == 0 {
            continue;
        }
        let tn = a.checked_mul(*c)?.checked_mul(k as i128)?;
        let td = b.checked_mul(*e)?;
        if td == d {
            n = n.checked_add(tn)?;
        } else if d % td == 0 {
            n = n.checked_add(tn.checked_mul(d / td)?)?;
        } else if td % d == 0 {
            n = n.checked_mul(td / d)?.checked_add(tn)?;
            d = td;
        } else {
            n = n.checked_mul(td)?.checked_add(tn.checked_mul(d)?)?;
            d = d.checked_mul(td)?;
        }
    }
    Some((n, d))
}

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::DivisionByZero);
        }
        let (n, d) = (numer as i128, denom as i128);
        let g = gcd(n.unsigned_abs(), d.unsigned_abs()) as i128;
        let sign = if d < 0 { -1 } else { 1 };
        Ok(Self::small(sign * n / g, sign * d / g))
    }

    fn reduce(n: i128, d: i128) -> Self {
        if n == 0 {
            return Rational::default();
        }
        let g = gcd(n.unsigned_abs(), d as u128) as i128;
        if g == 1 {
            Self::small(n, d)
        } else {
            Self::small(n / g, d / g)
        }
    }

    /// `sum k * x * y`; exact, with a single reduction at the end when
    /// everything fits in machine integers.
    pub fn sum_of_products<'a>(
        terms: impl Iterator<Item = (i64, &'a Rational, &'a Rational)> + Clone,
    ) -> Self {
        match accumulate(terms.clone()) {
            Some((n, d)) => Self::reduce(n, d),
            None => {
                let (mut n, mut d) = (BigInt::zero(), BigInt::one());
                for (k, x, y) in terms {
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    let tn = x.numer() * y.numer() * BigInt::from(k);
                    let td = x.denom() * y.denom();
                    if td == d {
                        n += tn;
                    } else if (&d % &td).is_zero() {
                        n += tn * (&d / &td);
                    } else {
                        n = n * &td + tn * &d;
                        d *= td;
                    }
                }
                Self::from_big(BigRational::new(n, d))
            }
        }
    }

    /// `n / d` already in lowest terms with `d > 0`.
    fn small(n: i128, d: i128) -> Self {
        if n == i128::MIN {
            Rational(Repr::Big(BigRational::new_raw(n.into(), d.into())))
        } else {
            Rational(Repr::Small(n, d))
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i128(), r.denom().to_i128()) {
            (Some(n), Some(d)) if n != i128::MIN => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw((*n).into(), (*d).into()),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_big(BigRational::new(numer, denom)))
    }

    pub fn integer(n: i64) -> Self {
        Rational(Repr::Small(n as i128, 1))
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => (*n).into(),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => (*d).into(),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Self> {
        match &self.0 {
            Repr::Small(0, _) => Err(Error::DivisionByZero),
            Repr::Small(n, d) if *n < 0 => Ok(Self::small(-d, -n)),
            Repr::Small(n, d) => Ok(Self::small(*d, *n)),
            Repr::Big(r) => Ok(Self::from_big(r.recip())),
        }
    }

    pub fn to_f64(&self) -> f64 {
        const EXACT: u128 = 1 << 53;
        match &self.0 {
            Repr::Small(n, d) if n.unsigned_abs() < EXACT && (*d as u128) < EXACT => *n as f64 / *d as f64,
            _ => self.to_big().to_f64().unwrap_or(f64::NAN),
        }
    }

    fn add_ref(&self, rhs: &Rational) -> Rational {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            if let Some((n, m)) = small_add(*a, *b, *c, *d) {
                return Self::small(n, m);
            }
        }
        Self::from_big(self.to_big() + rhs.to_big())
    }

    fn mul_ref(&self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(0, _), _) | (_, Repr::Small(0, _)) => return Rational::zero(),
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if let Some((n, m)) = small_mul(*a, *b, *c, *d) {
                    return Self::small(n, m);
                }
            }
            _ => {}
        }
        Self::from_big(self.to_big() * rhs.to_big())
    }

    fn neg_ref(&self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-n, *d)),
            Repr::Big(r) => Self::from_big(-r),
        }
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => match (a.checked_mul(*d), c.checked_mul(*b)) {
                (Some(x), Some(y)) => x.cmp(&y),
                _ => self.to_big().cmp(&other.to_big()),
            },
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $body(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                $body(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, Rational::add_ref);
forward_binop!(Sub, sub, |a: &Rational, b: &Rational| a.add_ref(&b.neg_ref()));
forward_binop!(Mul, mul, Rational::mul_ref);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p`, `p/q`, with optional sign and surrounding whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let parse_int = |t: &str| {
            t.parse::<BigInt>().map_err(|_| Error::Parse(format!("invalid integer `{t}` in `{s}`")))
        };
        match compact.split_once('/') {
            Some((n, d)) => Rational::from_bigints(parse_int(n)?, parse_int(d)?),
            None => Ok(Self::from_big(BigRational::from_integer(parse_int(&compact)?))),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = super::approx::scalar_literal(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    fn from_i64(n: i64) -> Self {
        Rational::integer(n)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }

    fn is_exact_zero(&self) -> bool {
        Rational::is_zero(self)
    }

    fn sum_of_products(terms: &[(i64, &Self, &Self)]) -> Self {
        Rational::sum_of_products(terms.iter().copied())
    }

    fn try_inv(&self) -> Result<Self> {
        self.recip()
    }

    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }

    fn residual(&self, other: &Self) -> f64 {
        let equal = self == other;
        exact_residual(if equal { 0.0 } else { (self - other).to_f64() }, equal)
    }
}

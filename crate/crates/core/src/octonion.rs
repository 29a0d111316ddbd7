//! The octonions on R^8 with basis `e1..e8`, `e1` the unit.
//!
//! The multiplication table comes from Cayley-Dickson doubling
//! `(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))` applied three times
//! starting from the reals. With `x = a + b*l` this yields
//! `e2 = i, e3 = j, e4 = ij, e5 = l, e6 = il, e7 = jl, e8 = (ij)l`.
//!
//! Conjugation is octonionic conjugation `kappa = diag(1, -1, ..., -1)`, an
//! anti-automorphism: `conj(xy) = conj(y) conj(x)`.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::LazyLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::Mat8;
use crate::scalar::{Scalar, WithSqrt3};

/// `e_i e_j = sign * e_index` (0-based indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Product {
    pub sign: i8,
    pub index: usize,
}

/// Multiplication table of a Cayley-Dickson algebra of dimension `2^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulTable {
    entries: Vec<Vec<Product>>,
}

impl MulTable {
    /// Table of the reals.
    fn reals() -> Self {
        MulTable { entries: vec![vec![Product { sign: 1, index: 0 }]] }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn product(&self, i: usize, j: usize) -> Product {
        self.entries[i][j]
    }

    fn conj_sign(k: usize) -> i8 {
        if k == 0 {
            1
        } else {
            -1
        }
    }

    /// One doubling step on basis elements. Basis `p < n` is `(e_p, 0)`,
    /// basis `p >= n` is `(0, e_{p-n})`.
    pub fn double(&self) -> Self {
        let n = self.dim();
        let mut entries = vec![vec![Product { sign: 0, index: 0 }; 2 * n]; 2 * n];
        for (p, row) in entries.iter_mut().enumerate() {
            for (q, slot) in row.iter_mut().enumerate() {
                *slot = match (p < n, q < n) {
                    // (a,0)(c,0) = (ac, 0)
                    (true, true) => self.product(p, q),
                    // (a,0)(0,d) = (0, d a)
                    (true, false) => {
                        let r = self.product(q - n, p);
                        Product { sign: r.sign, index: n + r.index }
                    }
                    // (0,b)(c,0) = (0, b conj(c))
                    (false, true) => {
                        let r = self.product(p - n, q);
                        Product { sign: r.sign * Self::conj_sign(q), index: n + r.index }
                    }
                    // (0,b)(0,d) = (-conj(d) b, 0)
                    (false, false) => {
                        let r = self.product(q - n, p - n);
                        Product { sign: -r.sign * Self::conj_sign(q - n), index: r.index }
                    }
                };
            }
        }
        MulTable { entries }
    }

    pub fn octonions() -> Self {
        Self::reals().double().double().double()
    }
}

impl fmt::Display for MulTable {
    /// One row per left factor, entries like `+e4` / `-e7` (1-based).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "     ")?;
        for j in 0..self.dim() {
            write!(f, " {:>4}", format!("e{}", j + 1))?;
        }
        writeln!(f)?;
        for i in 0..self.dim() {
            write!(f, "{:>4} ", format!("e{}", i + 1))?;
            for j in 0..self.dim() {
                let p = self.product(i, j);
                let sign = if p.sign > 0 { '+' } else { '-' };
                write!(f, " {:>4}", format!("{sign}e{}", p.index + 1))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

static TABLE: LazyLock<MulTable> = LazyLock::new(MulTable::octonions);

/// The octonion multiplication table shared by every product.
pub fn table() -> &'static MulTable {
    &TABLE
}

#[derive(Clone, PartialEq)]
pub struct Octonion<S> {
    c: [S; 8],
}

impl<S: Scalar> Octonion<S> {
    pub fn new(coeffs: [S; 8]) -> Self {
        Octonion { c: coeffs }
    }

    pub fn from_fn(f: impl FnMut(usize) -> S) -> Self {
        Octonion { c: std::array::from_fn(f) }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_| S::zero())
    }

    pub fn one() -> Self {
        Self::e(1)
    }

    /// Basis vector `e_n`, `n` in `1..=8`.
    pub fn e(n: usize) -> Self {
        assert!((1..=8).contains(&n), "basis index e{n} out of range");
        Self::from_fn(|i| if i + 1 == n { S::one() } else { S::zero() })
    }

    pub fn real(r: S) -> Self {
        let mut x = Self::zero();
        x.c[0] = r;
        x
    }

    /// Build from a real part and seven imaginary coordinates (for `e2..e8`).
    pub fn from_real_imag(re: S, im: [S; 7]) -> Self {
        let mut it = im.into_iter();
        Self::from_fn(|i| if i == 0 { re.clone() } else { it.next().unwrap() })
    }

    pub fn coeffs(&self) -> &[S; 8] {
        &self.c
    }

    pub fn into_coeffs(self) -> [S; 8] {
        self.c
    }

    /// Coefficient of `e_n`, `n` in `1..=8`.
    pub fn coeff(&self, n: usize) -> &S {
        &self.c[n - 1]
    }

    pub fn re(&self) -> &S {
        &self.c[0]
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|i| if i == 0 { self.c[0].clone() } else { -self.c[i].clone() })
    }

    /// Euclidean inner product.
    pub fn dot(&self, other: &Self) -> S {
        self.c
            .iter()
            .zip(&other.c)
            .filter(|(a, b)| !a.is_exact_zero() && !b.is_exact_zero())
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn norm_sq(&self) -> S {
        self.dot(self)
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::from_fn(|i| self.c[i].clone() * k.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    pub fn is_imaginary(&self) -> bool {
        self.c[0].is_zero()
    }

    /// `x^-1 = conj(x) / |x|^2`.
    pub fn try_inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let inv = self.norm_sq().try_inv().map_err(|_| Error::ZeroDivisor)?;
        Ok(self.conj().scale(&inv))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.clone() * other.clone() - other.clone() * self.clone()
    }

    pub fn associator(&self, y: &Self, z: &Self) -> Self {
        (self.clone() * y.clone()) * z.clone() - self.clone() * (y.clone() * z.clone())
    }

    /// Largest coefficient residual against `other`.
    pub fn residual(&self, other: &Self) -> f64 {
        self.c.iter().zip(&other.c).map(|(a, b)| a.residual(b)).fold(0.0, f64::max)
    }

    pub fn with_tolerance(self, eps: f64) -> Self {
        Octonion { c: self.c.map(|v| v.with_tolerance(eps)) }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Octonion<T> {
        Octonion::from_fn(|i| f(&self.c[i]))
    }
}

impl<S: Scalar> Index<usize> for Octonion<S> {
    type Output = S;

    /// 0-based coordinate access; `x[0]` is the coefficient of `e1`.
    fn index(&self, i: usize) -> &S {
        &self.c[i]
    }
}

impl<S: Scalar> Add for Octonion<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut r = rhs.c.into_iter();
        Octonion { c: self.c.map(|a| a + r.next().unwrap()) }
    }
}

impl<S: Scalar> Sub for Octonion<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut r = rhs.c.into_iter();
        Octonion { c: self.c.map(|a| a - r.next().unwrap()) }
    }
}

impl<S: Scalar> Neg for Octonion<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Octonion { c: self.c.map(|a| -a) }
    }
}

impl<S: Scalar> Mul for Octonion<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<S: Scalar> Mul<&Octonion<S>> for &Octonion<S> {
    type Output = Octonion<S>;
    fn mul(self, rhs: &Octonion<S>) -> Octonion<S> {
        let solve = &*SOLVE;
        Octonion::from_fn(|k| {
            let terms: [(i64, &S, &S); 8] = std::array::from_fn(|i| {
                let (j, sign) = solve[k][i];
                (sign, &self.c[i], &rhs.c[j])
            });
            S::sum_of_products(&terms)
        })
    }
}

/// `SOLVE[k][i] = (j, sign)` with `e_i e_j = sign * e_k`.
static SOLVE: LazyLock<[[(usize, i64); 8]; 8]> = LazyLock::new(|| {
    let t = table();
    std::array::from_fn(|k| {
        std::array::from_fn(|i| {
            let j = (0..8).find(|&j| t.product(i, j).index == k).expect("each row is a signed permutation");
            (j, t.product(i, j).sign as i64)
        })
    })
});

impl<S: Scalar> fmt::Display for Octonion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl<S: fmt::Debug> fmt::Debug for Octonion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v:?}")?;
        }
        write!(f, "]")
    }
}

impl<S: Scalar> FromStr for Octonion<S> {
    type Err = Error;

    /// `[c1, c2, ..., c8]` with scalar literals of the backend.
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("octonion literal must be bracketed: `{s}`")))?;
        let parts: Vec<&str> = body.split(',').collect();
        if parts.len() != 8 {
            return Err(Error::Parse(format!("octonion literal needs 8 coordinates, found {}", parts.len())));
        }
        let coeffs: Vec<S> = parts.iter().map(|p| p.parse()).collect::<Result<_>>()?;
        let mut it = coeffs.into_iter();
        Ok(Octonion::from_fn(|_| it.next().unwrap()))
    }
}

impl<S: Scalar> Serialize for Octonion<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        self.c.serialize(serializer)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for Octonion<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<S> = Vec::deserialize(deserializer)?;
        if v.len() != 8 {
            return Err(serde::de::Error::custom(Error::DimensionMismatch { expected: 8, found: v.len() }));
        }
        let mut it = v.into_iter();
        Ok(Octonion::from_fn(|_| it.next().unwrap()))
    }
}

/// Octonion of norm 1, a point of the 7-sphere.
#[derive(Clone, PartialEq, Debug)]
pub struct UnitOctonion<S>(Octonion<S>);

impl<S: Scalar> UnitOctonion<S> {
    pub fn new(x: Octonion<S>) -> Result<Self> {
        let n = x.norm_sq();
        if n == S::one() {
            Ok(UnitOctonion(x))
        } else {
            Err(Error::NotUnit { norm_sq: n.to_f64() })
        }
    }

    pub(crate) fn new_unchecked(x: Octonion<S>) -> Self {
        UnitOctonion(x)
    }

    pub fn one() -> Self {
        UnitOctonion(Octonion::one())
    }

    pub fn value(&self) -> &Octonion<S> {
        &self.0
    }

    pub fn into_inner(self) -> Octonion<S> {
        self.0
    }

    /// Conjugate, which is also the inverse.
    pub fn conj(&self) -> Self {
        UnitOctonion(self.0.conj())
    }
}

impl<S: Scalar> fmt::Display for UnitOctonion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl<S: Scalar> Serialize for UnitOctonion<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for UnitOctonion<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        UnitOctonion::new(Octonion::deserialize(deserializer)?).map_err(serde::de::Error::custom)
    }
}

/// Unit octonion with zero real part, a point of the 6-sphere in `Im(O)`.
#[derive(Clone, PartialEq, Debug)]
pub struct ImaginaryUnit<S>(Octonion<S>);

impl<S: Scalar> ImaginaryUnit<S> {
    pub fn new(v: Octonion<S>) -> Result<Self> {
        let n = v.norm_sq();
        if v.is_imaginary() && n == S::one() {
            Ok(ImaginaryUnit(v))
        } else {
            Err(Error::NotImaginaryUnit { real: v.re().to_f64(), norm_sq: n.to_f64() })
        }
    }

    pub(crate) fn new_unchecked(v: Octonion<S>) -> Self {
        ImaginaryUnit(v)
    }

    /// `e_n` for `n` in `2..=8`.
    pub fn basis(n: usize) -> Self {
        assert!((2..=8).contains(&n), "e{n} is not imaginary");
        ImaginaryUnit(Octonion::e(n))
    }

    pub fn value(&self) -> &Octonion<S> {
        &self.0
    }

    /// The antipode `-v` on the 6-sphere.
    pub fn antipode(&self) -> Self {
        ImaginaryUnit(-self.0.clone())
    }
}

impl<S: Scalar> fmt::Display for ImaginaryUnit<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl<S: Scalar> Serialize for ImaginaryUnit<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        self.0.serialize(serializer)
    }
}

/// Left translation `L(x): y -> x y` as an 8x8 matrix; column `j` is `x e_{j+1}`.
pub fn left_translation<S: Scalar>(x: &Octonion<S>) -> Mat8<S> {
    translation(x, true)
}

/// Right translation `R(x): y -> y x`.
pub fn right_translation<S: Scalar>(x: &Octonion<S>) -> Mat8<S> {
    translation(x, false)
}

fn translation<S: Scalar>(x: &Octonion<S>, left: bool) -> Mat8<S> {
    let t = table();
    let mut m = Mat8::<S>::zero();
    for (i, xi) in x.coeffs().iter().enumerate() {
        if xi.is_exact_zero() {
            continue;
        }
        for j in 0..8 {
            let p = if left { t.product(i, j) } else { t.product(j, i) };
            let cur = m.get(p.index, j).clone();
            let next = if p.sign > 0 { cur + xi.clone() } else { cur - xi.clone() };
            m.set(p.index, j, next);
        }
    }
    m
}

/// The octonion conjugation matrix `kappa = diag(1, -1, ..., -1)`.
pub fn kappa<S: Scalar>() -> Mat8<S> {
    Mat8::from_fn(|i, j| match (i == j, i) {
        (false, _) => S::zero(),
        (true, 0) => S::one(),
        (true, _) => -S::one(),
    })
}

/// Primitive cube root of unity `s = (-1 + sqrt(3) v) / 2`.
///
/// `s^3 = 1`, `s^2 = conj(s)` and `s != 1`.
pub fn cube_root_of_unity<S: WithSqrt3>(v: &ImaginaryUnit<S>) -> UnitOctonion<S> {
    let half = S::from_ratio(1, 2);
    let s = (Octonion::real(-S::one()) + v.value().scale(&S::sqrt3())).scale(&half);
    UnitOctonion::new_unchecked(s)
}

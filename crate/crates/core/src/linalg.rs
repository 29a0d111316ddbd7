//! Dense square matrices over a [`Scalar`] backend.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::octonion::Octonion;
use crate::scalar::{ApproxReal, Scalar};

/// Row-major `N x N` matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<S, const N: usize> {
    entries: Vec<S>,
}

pub type Mat8<S> = Matrix<S, 8>;
pub type Mat16<S> = Matrix<S, 16>;

impl<S: Scalar, const N: usize> Matrix<S, N> {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(N * N);
        for i in 0..N {
            for j in 0..N {
                entries.push(f(i, j));
            }
        }
        Matrix { entries }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| S::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn diagonal(d: &[S]) -> Result<Self> {
        if d.len() != N {
            return Err(Error::DimensionMismatch { expected: N, found: d.len() });
        }
        Ok(Self::from_fn(|i, j| if i == j { d[i].clone() } else { S::zero() }))
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        if rows.len() != N {
            return Err(Error::DimensionMismatch { expected: N, found: rows.len() });
        }
        let mut entries = Vec::with_capacity(N * N);
        for row in rows {
            if row.len() != N {
                return Err(Error::DimensionMismatch { expected: N, found: row.len() });
            }
            entries.extend(row);
        }
        Ok(Matrix { entries })
    }

    pub fn dim(&self) -> usize {
        N
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * N + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.entries[i * N + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.entries[i * N..(i + 1) * N]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..N).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::from_fn(|i, j| self.get(i, j).clone() * k.clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(|i, j| -self.get(i, j).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(|i, j| self.get(i, j).clone() + other.get(i, j).clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(|i, j| self.get(i, j).clone() - other.get(i, j).clone())
    }

    /// Matrix-vector product; `x` must have length `N`.
    pub fn apply(&self, x: &[S]) -> Result<Vec<S>> {
        if x.len() != N {
            return Err(Error::DimensionMismatch { expected: N, found: x.len() });
        }
        Ok((0..N).map(|i| dot(self.row(i), x)).collect())
    }

    pub fn trace(&self) -> S {
        (0..N).fold(S::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Largest entrywise residual against `other`.
    pub fn residual(&self, other: &Self) -> f64 {
        self.entries.iter().zip(&other.entries).map(|(a, b)| a.residual(b)).fold(0.0, f64::max)
    }

    /// `max |(M^t M - I)_ij|`.
    pub fn orthogonality_residual(&self) -> f64 {
        (&self.transpose() * self).residual(&Self::identity())
    }

    /// `M^t M = I`, testing each column pair once and stopping at the first miss.
    pub fn is_orthogonal(&self) -> bool {
        let cols = self.transpose();
        (0..N).all(|i| {
            (i..N).all(|j| {
                let d = dot(cols.row(i), cols.row(j));
                if i == j {
                    d == S::one()
                } else {
                    d.is_zero()
                }
            })
        })
    }

    /// Fraction-free elimination for exact backends, partial-pivot LU otherwise.
    pub fn determinant(&self) -> S {
        if S::EXACT {
            self.det_bareiss()
        } else {
            self.det_lu()
        }
    }

    /// Bareiss fraction-free elimination. Every division is exact.
    pub fn det_bareiss(&self) -> S {
        let mut m: Vec<Vec<S>> = (0..N).map(|i| self.row(i).to_vec()).collect();
        let mut negate = false;
        let mut prev = S::one();
        for k in 0..N.saturating_sub(1) {
            if m[k][k].is_zero() {
                match (k + 1..N).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        negate = !negate;
                    }
                    None => return S::zero(),
                }
            }
            for i in k + 1..N {
                for j in k + 1..N {
                    let num = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                    m[i][j] = num.try_div(&prev).expect("Bareiss pivot is nonzero");
                }
            }
            prev = m[k][k].clone();
        }
        let det = if N == 0 { S::one() } else { m[N - 1][N - 1].clone() };
        if negate {
            -det
        } else {
            det
        }
    }

    /// LU decomposition with partial pivoting on `|entry|`.
    pub fn det_lu(&self) -> S {
        let mut m: Vec<Vec<S>> = (0..N).map(|i| self.row(i).to_vec()).collect();
        let mut det = S::one();
        for k in 0..N {
            let pivot =
                (k..N).max_by(|&a, &b| m[a][k].to_f64().abs().total_cmp(&m[b][k].to_f64().abs())).unwrap();
            if m[pivot][k].to_f64() == 0.0 {
                return S::zero();
            }
            if pivot != k {
                m.swap(k, pivot);
                det = -det;
            }
            let p = m[k][k].clone();
            det = det * p.clone();
            let (top, rest) = m.split_at_mut(k + 1);
            let pivot_row = &top[k];
            for row in rest.iter_mut() {
                let f = row[k].try_div(&p).expect("nonzero pivot");
                for (x, y) in row.iter_mut().zip(pivot_row).skip(k + 1) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        det
    }

    pub fn with_tolerance(self, eps: f64) -> Self {
        Matrix { entries: self.entries.into_iter().map(|v| v.with_tolerance(eps)).collect() }
    }
}

impl<S: Scalar> Matrix<S, 8> {
    /// Apply to an octonion viewed as a vector of R^8.
    pub fn apply_oct(&self, x: &Octonion<S>) -> Octonion<S> {
        Octonion::from_fn(|i| dot(self.row(i), x.coeffs()))
    }

    /// Column `j` (0-based) as an octonion; the image of `e_{j+1}`.
    pub fn column_oct(&self, j: usize) -> Octonion<S> {
        Octonion::from_fn(|i| self.get(i, j).clone())
    }

    pub fn from_columns(cols: &[Octonion<S>; 8]) -> Self {
        Self::from_fn(|i, j| cols[j][i].clone())
    }
}

fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    let terms: Vec<(i64, &S, &S)> = a.iter().zip(b).map(|(x, y)| (1, x, y)).collect();
    S::sum_of_products(&terms)
}

impl<S: Scalar, const N: usize> Mul for &Matrix<S, N> {
    type Output = Matrix<S, N>;

    fn mul(self, rhs: &Matrix<S, N>) -> Matrix<S, N> {
        let rt = rhs.transpose();
        Matrix::from_fn(|i, j| dot(self.row(i), rt.row(j)))
    }
}

impl<S: Scalar, const N: usize> Mul for Matrix<S, N> {
    type Output = Matrix<S, N>;

    fn mul(self, rhs: Matrix<S, N>) -> Matrix<S, N> {
        &self * &rhs
    }
}

/// `M in SO(N)`: `M^t M = I` (exact or within tolerance) and `det M = +1`.
/// The determinant is compared exactly for exact backends and by sign for floats.
pub fn is_special_orthogonal<S: Scalar, const N: usize>(m: &Matrix<S, N>) -> bool {
    m.is_orthogonal() && det_is_positive_one(m)
}

/// For an orthogonal `m`, whose determinant is exactly `+1` or `-1`.
fn det_is_positive_one<S: Scalar, const N: usize>(m: &Matrix<S, N>) -> bool {
    let approx =
        Matrix::<ApproxReal, N>::from_fn(|i, j| ApproxReal::new(m.get(i, j).to_f64())).det_lu().value();
    if !S::EXACT || (approx.abs() - 1.0).abs() < 0.25 {
        return approx > 0.0;
    }
    m.determinant() == S::one()
}

/// Require `M in SO(N)`, naming the offending factor on failure.
pub fn require_special_orthogonal<S: Scalar, const N: usize>(
    m: &Matrix<S, N>,
    which: &'static str,
) -> Result<()> {
    if is_special_orthogonal(m) {
        Ok(())
    } else {
        Err(Error::NotOrthogonal {
            which,
            residual: m.orthogonality_residual(),
            det: m.determinant().to_f64(),
        })
    }
}

/// Normalized trace metric `<A, B> = trace(A^t B) / N`.
pub fn trace_inner_product<S: Scalar, const N: usize>(a: &Matrix<S, N>, b: &Matrix<S, N>) -> S {
    let sum = dot(&a.entries, &b.entries);
    sum.try_div(&S::from_i64(N as i64)).expect("N > 0")
}

impl<S: fmt::Debug, const N: usize> fmt::Debug for Matrix<S, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..N {
            write!(f, "  [")?;
            for (j, v) in self.entries[i * N..(i + 1) * N].iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v:?}")?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<S: Scalar, const N: usize> Serialize for Matrix<S, N> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let rows: Vec<&[S]> = (0..N).map(|i| self.row(i)).collect();
        rows.serialize(serializer)
    }
}

impl<'de, S: Scalar, const N: usize> Deserialize<'de> for Matrix<S, N> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<S>> = Vec::deserialize(deserializer)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

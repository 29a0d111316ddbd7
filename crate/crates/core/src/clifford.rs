//! Matrix model of the Clifford algebra `Cl8` as real 16x16 matrices.
//!
//! Octonions embed into the odd part by
//!
//! ```text
//! x^ = [ 0      -L(conj x) ]
//!      [ L(x)    0         ]
//! ```
//!
//! and `(A, B)` lies in Spin(8) iff `Ad(diag(A, B))` maps every `x^` to some `w^`,
//! i.e. `B L(x) = L(w) A`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{require_special_orthogonal, Mat16, Mat8};
use crate::octonion::{left_translation, Octonion};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// Block diagonal. The zero matrix counts as even.
    Even,
    /// Block antidiagonal.
    Odd,
    Mixed,
}

impl Parity {
    pub fn of<S: Scalar>(m: &Mat16<S>) -> Parity {
        let off_zero = block(m, 0, 1).is_zero() && block(m, 1, 0).is_zero();
        let diag_zero = block(m, 0, 0).is_zero() && block(m, 1, 1).is_zero();
        match (off_zero, diag_zero) {
            (true, _) => Parity::Even,
            (false, true) => Parity::Odd,
            (false, false) => Parity::Mixed,
        }
    }

    /// Parity of a product of homogeneous elements.
    pub fn compose(self, other: Parity) -> Parity {
        match (self, other) {
            (Parity::Mixed, _) | (_, Parity::Mixed) => Parity::Mixed,
            (a, b) if a == b => Parity::Even,
            _ => Parity::Odd,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliffordElement<S> {
    matrix: Mat16<S>,
    parity: Parity,
}

impl<S: Scalar> CliffordElement<S> {
    pub fn new(matrix: Mat16<S>) -> Self {
        let parity = Parity::of(&matrix);
        CliffordElement { matrix, parity }
    }

    pub fn matrix(&self) -> &Mat16<S> {
        &self.matrix
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.matrix * &other.matrix)
    }
}

/// 8x8 block `(bi, bj)` of a 16x16 matrix, `bi, bj in {0, 1}`.
pub fn block<S: Scalar>(m: &Mat16<S>, bi: usize, bj: usize) -> Mat8<S> {
    Mat8::from_fn(|i, j| m.get(8 * bi + i, 8 * bj + j).clone())
}

pub fn from_blocks<S: Scalar>(
    top_left: &Mat8<S>,
    top_right: &Mat8<S>,
    bottom_left: &Mat8<S>,
    bottom_right: &Mat8<S>,
) -> Mat16<S> {
    Mat16::from_fn(|i, j| {
        let b = match (i < 8, j < 8) {
            (true, true) => top_left,
            (true, false) => top_right,
            (false, true) => bottom_left,
            (false, false) => bottom_right,
        };
        b.get(i % 8, j % 8).clone()
    })
}

/// The embedding `x -> x^`.
pub fn clifford_embed<S: Scalar>(x: &Octonion<S>) -> CliffordElement<S> {
    let zero = Mat8::zero();
    let m = from_blocks(&zero, &left_translation(&x.conj()).neg(), &left_translation(x), &zero);
    CliffordElement::new(m)
}

/// `diag(A, B) x^ diag(A^t, B^t)`.
pub fn ad_conjugate<S: Scalar>(a: &Mat8<S>, b: &Mat8<S>, x: &Octonion<S>) -> Result<Mat16<S>> {
    require_special_orthogonal(a, "A")?;
    require_special_orthogonal(b, "B")?;
    Ok(ad_conjugate_unchecked(a, b, x))
}

fn ad_conjugate_unchecked<S: Scalar>(a: &Mat8<S>, b: &Mat8<S>, x: &Octonion<S>) -> Mat16<S> {
    let zero = Mat8::zero();
    let g = from_blocks(a, &zero, &zero, b);
    let gt = from_blocks(&a.transpose(), &zero, &zero, &b.transpose());
    &(&g * clifford_embed(x).matrix()) * &gt
}

/// Read `w` off a matrix of the form `w^`.
///
/// `w` is the lower-left block applied to `e1`; the full block structure
/// (zero diagonal blocks, `L(w)` lower left, `-L(conj w)` upper right) is then
/// checked, and any partial match is rejected.
pub fn recover_vector<S: Scalar>(m: &Mat16<S>) -> Result<Octonion<S>> {
    if !block(m, 0, 0).is_zero() || !block(m, 1, 1).is_zero() {
        return Err(Error::NotVectorShaped("diagonal blocks are not zero"));
    }
    let lower = block(m, 1, 0);
    let w = lower.column_oct(0);
    if lower != left_translation(&w) {
        return Err(Error::NotVectorShaped("lower-left block is not a left translation"));
    }
    if block(m, 0, 1) != left_translation(&w.conj()).neg() {
        return Err(Error::NotVectorShaped("upper-right block is not -L(conj w)"));
    }
    Ok(w)
}

/// Spin(8) membership through the Clifford route: if `Ad(diag(A, B))`
/// preserves the embedded vectors, return the induced map `C: x -> w`.
pub fn induced_vector_map<S: Scalar>(a: &Mat8<S>, b: &Mat8<S>) -> Result<Mat8<S>> {
    require_special_orthogonal(a, "A")?;
    require_special_orthogonal(b, "B")?;
    let mut cols = Vec::with_capacity(8);
    for n in 1..=8 {
        cols.push(recover_vector(&ad_conjugate_unchecked(a, b, &Octonion::e(n)))?);
    }
    let cols: [Octonion<S>; 8] = cols.try_into().expect("eight columns");
    Ok(Mat8::from_columns(&cols))
}

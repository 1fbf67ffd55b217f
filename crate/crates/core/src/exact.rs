//! Fraction-free (Bareiss) elimination on integer matrices.
//!
//! Elimination runs without pivoting on `-M`, so the pivot reached at step
//! `k` is exactly the `k`-th leading principal minor of `-M`. A matrix is
//! negative definite iff every one of those pivots is positive, and in that
//! case the same elimination solves `M x = b` with integer-only back
//! substitution. Each routine first runs on `i128` with checked arithmetic
//! and reruns on `BigInt` if anything overflows.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{CheckedMul, CheckedSub, One, Signed, Zero};

use crate::graph::IntersectionMatrix;

trait ExactInt: Clone + Zero + One {
    fn from_i64(v: i64) -> Self;
    fn mul_checked(&self, other: &Self) -> Option<Self>;
    fn sub_checked(&self, other: &Self) -> Option<Self>;
    /// Exact division; the dividend is always a multiple of the divisor.
    fn div_exact(&self, other: &Self) -> Self;
    fn is_pos(&self) -> bool;
    fn into_big(self) -> BigInt;
}

impl ExactInt for i128 {
    fn from_i64(v: i64) -> Self {
        v.into()
    }
    fn mul_checked(&self, other: &Self) -> Option<Self> {
        self.checked_mul(other)
    }
    fn sub_checked(&self, other: &Self) -> Option<Self> {
        CheckedSub::checked_sub(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        debug_assert_eq!(self % other, 0);
        self / other
    }
    fn is_pos(&self) -> bool {
        *self > 0
    }
    fn into_big(self) -> BigInt {
        self.into()
    }
}

impl ExactInt for BigInt {
    fn from_i64(v: i64) -> Self {
        v.into()
    }
    fn mul_checked(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub_checked(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        debug_assert!((self % other).is_zero());
        self / other
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn into_big(self) -> BigInt {
        self
    }
}

enum Elimination<T> {
    NotDefinite,
    Done(Vec<Vec<T>>),
}

/// Bareiss elimination of `[-M | rhs]`, stopping at the first non-positive
/// pivot. `None` signals overflow.
fn eliminate<T: ExactInt>(m: &IntersectionMatrix, rhs: Option<&[i64]>) -> Option<Elimination<T>> {
    let n = m.dim();
    let width = n + usize::from(rhs.is_some());
    let mut rows: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let mut row: Vec<T> = (0..n).map(|j| T::from_i64(-m.get(i, j))).collect();
            if let Some(b) = rhs {
                row.push(T::from_i64(b[i]));
            }
            row
        })
        .collect();
    let mut prev = T::one();
    for k in 0..n {
        if !rows[k][k].is_pos() {
            return Some(Elimination::NotDefinite);
        }
        let (upper, lower) = rows.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        let pivot = &pivot_row[k];
        for row in lower.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..width {
                let value = row[j]
                    .mul_checked(pivot)?
                    .sub_checked(&factor.mul_checked(&pivot_row[j])?)?;
                row[j] = value.div_exact(&prev);
            }
            row[k] = T::zero();
        }
        prev = pivot.clone();
    }
    Some(Elimination::Done(rows))
}

/// Leading principal minors of `-M`, up to and including the first
/// non-positive one.
pub fn leading_minors_of_negation(m: &IntersectionMatrix) -> Vec<BigInt> {
    fn run<T: ExactInt>(m: &IntersectionMatrix) -> Option<Vec<BigInt>> {
        let n = m.dim();
        let mut rows: Vec<Vec<T>> = (0..n)
            .map(|i| (0..n).map(|j| T::from_i64(-m.get(i, j))).collect())
            .collect();
        let mut minors = Vec::with_capacity(n);
        let mut prev = T::one();
        for k in 0..n {
            let pivot = rows[k][k].clone();
            minors.push(pivot.clone().into_big());
            if !pivot.is_pos() {
                break;
            }
            let (upper, lower) = rows.split_at_mut(k + 1);
            let pivot_row = &upper[k];
            for row in lower.iter_mut() {
                let factor = row[k].clone();
                for j in k + 1..n {
                    row[j] = row[j]
                        .mul_checked(&pivot)?
                        .sub_checked(&factor.mul_checked(&pivot_row[j])?)?
                        .div_exact(&prev);
                }
            }
            prev = pivot;
        }
        Some(minors)
    }
    run::<i128>(m).unwrap_or_else(|| run::<BigInt>(m).expect("BigInt arithmetic cannot overflow"))
}

/// True iff `(-1)^k` times the `k`-th leading principal minor of `M` is
/// positive for every `k`. The empty matrix counts as definite.
pub fn is_negative_definite(m: &IntersectionMatrix) -> bool {
    fn run<T: ExactInt>(m: &IntersectionMatrix) -> Option<bool> {
        Some(matches!(eliminate::<T>(m, None)?, Elimination::Done(_)))
    }
    run::<i128>(m).unwrap_or_else(|| run::<BigInt>(m).expect("BigInt arithmetic cannot overflow"))
}

/// Solves `M x = b` exactly. Returns `None` when `M` is not negative
/// definite.
pub fn solve_negative_definite(m: &IntersectionMatrix, b: &[i64]) -> Option<Vec<BigRational>> {
    assert_eq!(b.len(), m.dim());
    // -M x = -b
    let neg_b: Vec<i64> = b.iter().map(|v| -v).collect();

    fn run<T: ExactInt>(m: &IntersectionMatrix, rhs: &[i64]) -> Option<Option<Vec<BigRational>>> {
        let n = m.dim();
        let rows = match eliminate::<T>(m, Some(rhs))? {
            Elimination::NotDefinite => return Some(None),
            Elimination::Done(rows) => rows,
        };
        if n == 0 {
            return Some(Some(Vec::new()));
        }
        let det = rows[n - 1][n - 1].clone();
        // y_i = det * x_i is integral (Cramer); back-substitute on y.
        let mut y: Vec<T> = vec![T::zero(); n];
        for i in (0..n).rev() {
            let mut acc = det.mul_checked(&rows[i][n])?;
            for j in i + 1..n {
                acc = acc.sub_checked(&rows[i][j].mul_checked(&y[j])?)?;
            }
            y[i] = acc.div_exact(&rows[i][i]);
        }
        let det = det.into_big();
        Some(Some(
            y.into_iter()
                .map(|yi| BigRational::new(yi.into_big(), det.clone()))
                .collect(),
        ))
    }
    run::<i128>(m, &neg_b)
        .unwrap_or_else(|| run::<BigInt>(m, &neg_b).expect("BigInt arithmetic cannot overflow"))
}

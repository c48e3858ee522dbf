//! Square determinant engines.
//!
//! * [`det_exact`]: fraction-free (Bareiss) elimination over big integers
//!   after clearing row denominators.
//! * [`det_float`]: LU with partial pivoting on `f64`.
//! * [`det_cofactor`]: first-column cofactor expansion, kept as an
//!   independent oracle for small sizes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{dim, Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar};

/// Largest size accepted by [`det_cofactor`].
pub const COFACTOR_MAX: usize = 7;

fn require_square<S: Scalar>(a: &Matrix<S>) -> Result<()> {
    if !a.is_square() {
        return dim(format!("determinant of non-square {}x{} matrix", a.rows(), a.cols()));
    }
    Ok(())
}

pub fn det_exact(a: &Matrix<Rational>) -> Result<Rational> {
    require_square(a)?;
    let mut buf = a.data().to_vec();
    Ok(bareiss(&mut buf, a.rows()))
}

pub fn det_float(a: &Matrix<f64>) -> Result<f64> {
    require_square(a)?;
    a.ensure_finite()?;
    let mut buf = a.data().to_vec();
    Ok(lu_partial_pivot(&mut buf, a.rows()))
}

/// Determinant in whichever engine the scalar domain selects.
pub fn det<S: Scalar>(a: &Matrix<S>) -> Result<S> {
    require_square(a)?;
    a.ensure_finite()?;
    let mut buf = a.data().to_vec();
    Ok(S::det_in_place(&mut buf, a.rows()))
}

/// Naive first-column cofactor expansion. O(n!) by construction.
pub fn det_cofactor<S: Scalar>(a: &Matrix<S>) -> Result<S> {
    require_square(a)?;
    if a.rows() > COFACTOR_MAX {
        return Err(Error::Size { what: "cofactor oracle size", got: a.rows(), limit: COFACTOR_MAX });
    }
    let rows: Vec<usize> = (0..a.rows()).collect();
    Ok(cofactor(a, &rows, 0))
}

fn cofactor<S: Scalar>(a: &Matrix<S>, rows: &[usize], col: usize) -> S {
    if rows.len() == 1 {
        return a.get(rows[0], col).clone();
    }
    let mut total = S::zero();
    for (k, &r) in rows.iter().enumerate() {
        let entry = a.get(r, col);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
        let term = entry.clone() * cofactor(a, &rest, col + 1);
        if k % 2 == 0 {
            total = total + term;
        } else {
            total = total - term;
        }
    }
    total
}

/// Bareiss elimination on the `n`×`n` rational matrix in `buf`.
///
/// Each row is first scaled by the lcm of its denominators so the
/// elimination runs on integers; every intermediate is then itself a minor
/// of the scaled matrix and the divisions are exact.
pub(crate) fn bareiss(buf: &mut [Rational], n: usize) -> Rational {
    debug_assert_eq!(buf.len(), n * n);
    if n == 1 {
        return buf[0].clone();
    }
    if n == 2 {
        return &buf[0] * &buf[3] - &buf[1] * &buf[2];
    }
    let mut scale = BigInt::one();
    let mut m: Vec<BigInt> = Vec::with_capacity(n * n);
    for i in 0..n {
        let row = &buf[i * n..(i + 1) * n];
        let l = row.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
        for v in row {
            m.push(v.numer() * (&l / v.denom()));
        }
        scale *= l;
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k * n + k].is_zero() {
            match (k + 1..n).find(|&i| !m[i * n + k].is_zero()) {
                Some(p) => {
                    for j in 0..n {
                        m.swap(k * n + j, p * n + j);
                    }
                    negate = !negate;
                }
                None => return Rational::zero(),
            }
        }
        let pivot = m[k * n + k].clone();
        for i in k + 1..n {
            let lead = m[i * n + k].clone();
            for j in k + 1..n {
                let v = &m[i * n + j] * &pivot - &lead * &m[k * n + j];
                m[i * n + j] = v / &prev;
            }
            m[i * n + k] = BigInt::zero();
        }
        prev = pivot;
    }
    let d = m[n * n - 1].clone();
    let d = if negate { -d } else { d };
    Rational::new(d, scale)
}

/// Partially pivoted LU. Pivot is the largest magnitude in the column; ties
/// go to the lowest row index.
pub(crate) fn lu_partial_pivot(buf: &mut [f64], n: usize) -> f64 {
    debug_assert_eq!(buf.len(), n * n);
    let mut det = 1.0;
    for k in 0..n {
        let mut p = k;
        let mut best = buf[k * n + k].abs();
        for i in k + 1..n {
            let v = buf[i * n + k].abs();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if p != k {
            for j in 0..n {
                buf.swap(k * n + j, p * n + j);
            }
            det = -det;
        }
        let pivot = buf[k * n + k];
        det *= pivot;
        for i in k + 1..n {
            let f = buf[i * n + k] / pivot;
            if f != 0.0 {
                for j in k + 1..n {
                    buf[i * n + j] -= f * buf[k * n + j];
                }
            }
        }
    }
    det
}

//! Scalar domains: exact rationals and binary floats.
//!
//! Every algorithm in the crate is generic over [`Scalar`]. The exact domain
//! uses arbitrary-precision rationals (always in lowest terms), the float
//! domain is plain `f64` with compensated accumulation.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::squaredet;

/// Arbitrary-precision rational, reduced to lowest terms with a positive
/// denominator by construction.
pub type Rational = num_rational::BigRational;

/// Order-sensitive running sum. Values are fed in the order the caller
/// chooses; the total is a pure function of that sequence.
pub trait Accumulator<S>: Default {
    fn add(&mut self, value: S);
    fn total(&self) -> S;
}

/// Plain exact summation.
#[derive(Debug, Clone, Default)]
pub struct ExactSum(Rational);

impl Accumulator<Rational> for ExactSum {
    fn add(&mut self, value: Rational) {
        self.0 += value;
    }

    fn total(&self) -> Rational {
        self.0.clone()
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl Accumulator<f64> for CompensatedSum {
    fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// A field of scalars the determinant engines can run over.
pub trait Scalar: Num + Signed + Clone + Debug + Display + PartialOrd + Send + Sync + 'static {
    /// `true` when arithmetic is exact (no rounding).
    const EXACT: bool;
    /// Short name used in reports: `"exact"` or `"float"`.
    const DOMAIN: &'static str;

    type Acc: Accumulator<Self>;

    fn from_i64(value: i64) -> Self;
    fn from_f64(value: f64) -> Option<Self>;
    fn to_f64(&self) -> f64;
    fn is_finite(&self) -> bool;

    /// Determinant of the `n`×`n` row-major matrix held in `buf`. The buffer
    /// is used as scratch space and left in an unspecified state.
    fn det_in_place(buf: &mut [Self], n: usize) -> Self;

    /// Square root when it lies in the same domain exactly; `None` for
    /// floats and for rationals that are not perfect squares.
    fn perfect_sqrt(&self) -> Option<Self> {
        None
    }

    fn sum_in_order<I: IntoIterator<Item = Self>>(values: I) -> Self {
        let mut acc = Self::Acc::default();
        for v in values {
            acc.add(v);
        }
        acc.total()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    const DOMAIN: &'static str = "exact";
    type Acc = ExactSum;

    fn from_i64(value: i64) -> Self {
        Rational::from_integer(BigInt::from(value))
    }

    fn from_f64(value: f64) -> Option<Self> {
        Rational::from_float(value)
    }

    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn det_in_place(buf: &mut [Self], n: usize) -> Self {
        squaredet::bareiss(buf, n)
    }

    fn perfect_sqrt(&self) -> Option<Self> {
        exact_sqrt(self)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const DOMAIN: &'static str = "float";
    type Acc = CompensatedSum;

    fn from_i64(value: i64) -> Self {
        value as f64
    }

    fn from_f64(value: f64) -> Option<Self> {
        Some(value)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn det_in_place(buf: &mut [Self], n: usize) -> Self {
        squaredet::lu_partial_pivot(buf, n)
    }
}

/// Nearest-ish `f64` to a big rational, robust to numerators and
/// denominators that individually overflow `f64`.
pub fn ratio_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    // Shift both parts down to ~64 significant bits.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 64).max(0);
    let shift_d = (db - 64).max(0);
    let n = (r.numer() >> shift_n as usize).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift_d as usize).to_f64().unwrap_or(f64::NAN);
    (n / d) * 2f64.powi((shift_n - shift_d) as i32)
}

/// Parses `"p"`, `"p/q"` or a decimal literal such as `"-1.25"` into an exact
/// rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    if t.is_empty() {
        return None;
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str_radix(p.trim(), 10).ok()?;
        let q = BigInt::from_str_radix(q.trim(), 10).ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Ok(i) = BigInt::from_str_radix(t, 10) {
        return Some(Rational::from_integer(i));
    }
    parse_decimal(t)
}

fn parse_decimal(t: &str) -> Option<Rational> {
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let all = format!("{int_part}{frac_part}");
    let mut numer = BigInt::from_str_radix(&all, 10).ok()?;
    if neg {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}

/// Literal used in serialized output: `"p"` for integers, `"p/q"` otherwise.
pub fn rational_literal(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact square root of a non-negative rational, when it is a perfect square.
pub fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

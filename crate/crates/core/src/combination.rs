//! Ascending index tuples and their lexicographic ranking.
//!
//! Public indices are 1-based; internal iteration uses 0-based slices.

use std::fmt;

use crate::error::{dim, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// `C(m, n)`, saturating at `u128::MAX`.
pub fn binomial(m: usize, n: usize) -> u128 {
    if n > m {
        return 0;
    }
    let n = n.min(m - n);
    let mut acc: u128 = 1;
    for i in 0..n {
        let num = (m - i) as u128;
        let den = (i + 1) as u128;
        acc = match acc.checked_mul(num) {
            Some(v) => v / den,
            None => {
                // den / g divides num because acc * num is a multiple of den.
                let g = gcd(acc, den);
                match (acc / g).checked_mul(num / (den / g)) {
                    Some(v) => v,
                    None => return u128::MAX,
                }
            }
        };
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Strictly ascending tuple `i₁ < … < iₙ` drawn from `1..=ambient`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Combination {
    indices: Vec<usize>,
    ambient: usize,
}

impl Combination {
    /// Builds a combination from 1-based indices.
    pub fn new(indices: Vec<usize>, ambient: usize) -> Result<Self> {
        if indices.is_empty() {
            return dim("combination must have at least one index");
        }
        if indices[0] < 1 || *indices.last().unwrap() > ambient {
            return dim(format!("combination {indices:?} out of range 1..={ambient}"));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return dim(format!("combination {indices:?} is not strictly ascending"));
        }
        Ok(Self { indices, ambient })
    }

    pub(crate) fn from_zero_based(idx: &[usize], ambient: usize) -> Self {
        Self { indices: idx.iter().map(|i| i + 1).collect(), ambient }
    }

    /// `(1, 2, …, n)`.
    pub fn first(n: usize, ambient: usize) -> Result<Self> {
        check_shape(ambient, n)?;
        Ok(Self { indices: (1..=n).collect(), ambient })
    }

    /// 1-based indices.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn zero_based(&self) -> Vec<usize> {
        self.indices.iter().map(|i| i - 1).collect()
    }

    /// Lexicographic rank among all `C(ambient, len)` combinations.
    pub fn rank(&self) -> u128 {
        rank_zero_based(&self.zero_based(), self.ambient)
    }

    /// `(-1)^Σⱼ (iⱼ + j)` with 1-based `iⱼ` and `j`.
    pub fn laplace_sign(&self) -> i8 {
        laplace_sign_zero_based(&self.zero_based())
    }
}

impl fmt::Debug for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.indices.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn check_shape(m: usize, n: usize) -> Result<()> {
    if n == 0 {
        return dim("combination size must be at least 1");
    }
    if n > m {
        return dim(format!("cannot choose {n} of {m} indices"));
    }
    Ok(())
}

/// All `C(m, n)` combinations in lexicographic order.
pub fn enumerate_combinations(m: usize, n: usize) -> Result<Vec<Combination>> {
    check_shape(m, n)?;
    let mut it = LexCombinations::new(m, n);
    let mut out = Vec::new();
    while let Some(c) = it.advance() {
        out.push(Combination::from_zero_based(c, m));
    }
    Ok(out)
}

/// Position of `c` in [`enumerate_combinations`] order.
pub fn tau_rank(c: &Combination) -> u128 {
    c.rank()
}

/// Inverse of [`tau_rank`].
pub fn tau_unrank(rank: u128, m: usize, n: usize) -> Result<Combination> {
    check_shape(m, n)?;
    let total = binomial(m, n);
    if rank >= total {
        return dim(format!("rank {rank} out of range for C({m},{n}) = {total}"));
    }
    let mut out = Vec::with_capacity(n);
    let mut rest = rank;
    let mut next = 0usize;
    for slot in 0..n {
        let remaining = n - slot - 1;
        loop {
            let block = binomial(m - next - 1, remaining);
            if rest < block {
                break;
            }
            rest -= block;
            next += 1;
        }
        out.push(next);
        next += 1;
    }
    Ok(Combination::from_zero_based(&out, m))
}

pub(crate) fn rank_zero_based(idx: &[usize], m: usize) -> u128 {
    let n = idx.len();
    let mut rank = 0u128;
    let mut start = 0usize;
    for (slot, &i) in idx.iter().enumerate() {
        for v in start..i {
            rank += binomial(m - v - 1, n - slot - 1);
        }
        start = i + 1;
    }
    rank
}

pub(crate) fn laplace_sign_zero_based(idx: &[usize]) -> i8 {
    // (i+1) + (j+1) has the parity of i + j.
    let parity: usize = idx.iter().enumerate().map(|(j, &i)| i + j).sum();
    if parity.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `|rowset|`×`|colset|` submatrix of `a`, keeping relative order.
pub fn submatrix<S: Scalar>(a: &Matrix<S>, rowset: &Combination, colset: &Combination) -> Result<Matrix<S>> {
    if colset.indices().last().copied().unwrap_or(0) > a.cols() {
        return dim(format!("column set {colset} exceeds {} columns", a.cols()));
    }
    if rowset.indices().last().copied().unwrap_or(0) > a.rows() {
        return dim(format!("row set {rowset} exceeds {} rows", a.rows()));
    }
    a.select(&rowset.zero_based(), &colset.zero_based())
}

/// Streaming lexicographic iterator over 0-based ascending tuples. Yields a
/// borrowed slice so the hot loops never allocate.
pub(crate) struct LexCombinations {
    current: Vec<usize>,
    m: usize,
    started: bool,
    done: bool,
}

impl LexCombinations {
    pub(crate) fn new(m: usize, n: usize) -> Self {
        Self { current: (0..n).collect(), m, started: false, done: n > m || n == 0 }
    }

    pub(crate) fn advance(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.current);
        }
        let n = self.current.len();
        let mut k = n;
        while k > 0 {
            k -= 1;
            if self.current[k] < self.m - n + k {
                self.current[k] += 1;
                for t in k + 1..n {
                    self.current[t] = self.current[t - 1] + 1;
                }
                return Some(&self.current);
            }
        }
        self.done = true;
        None
    }
}

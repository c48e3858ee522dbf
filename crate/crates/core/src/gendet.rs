//! Generalized determinants of tall matrices.
//!
//! All four sums run over the `C(m, n)` maximal minors `det A_c`, `c`
//! ranging over ascending row combinations in lexicographic order:
//!
//! | function | summand |
//! |----------|---------|
//! | [`detl`] (squared) | `det² A_c` |
//! | [`vdet`] | `det A_c · e_τ(c)` |
//! | [`gdet_closed`] | `(-1)^Σ(iⱼ+j) det A_c` |
//! | [`tdet`] | `det A_c` |
//!
//! Minors are evaluated independently, in parallel blocks for large counts,
//! and always reduced sequentially in lexicographic order, so results are
//! bit-identical to a single-threaded run.

use rayon::prelude::*;

use crate::combination::{binomial, check_shape, laplace_sign_zero_based, Combination, LexCombinations};
use crate::error::{dim, Error, Result};
use crate::exterior::Multivector;
use crate::matrix::Matrix;
use crate::scalar::{Accumulator, Scalar};
use crate::squaredet;

pub const DEFAULT_MAX_MINORS: u128 = 10_000_000;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Minors per parallel block.
const BLOCK: usize = 8192;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Options {
    /// Largest number of maximal minors a single call may enumerate.
    pub max_minors: u128,
    /// Relative tolerance for float-domain checks.
    pub tolerance: f64,
}

impl Default for Options {
    fn default() -> Self {
        Self { max_minors: DEFAULT_MAX_MINORS, tolerance: DEFAULT_TOLERANCE }
    }
}

impl Options {
    pub fn with_max_minors(mut self, cap: u128) -> Self {
        self.max_minors = cap;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn unbounded() -> Self {
        Self::default().with_max_minors(u128::MAX)
    }
}

fn require_tall<S: Scalar>(a: &Matrix<S>, what: &str) -> Result<()> {
    if !a.is_tall() {
        return dim(format!("{what} needs a tall matrix (rows >= cols), got {}x{}", a.rows(), a.cols()));
    }
    Ok(())
}

fn checked_count<S: Scalar>(a: &Matrix<S>, opts: &Options) -> Result<u128> {
    let count = binomial(a.rows(), a.cols());
    if count > opts.max_minors {
        return Err(Error::CapExceeded { rows: a.rows(), cols: a.cols(), count, cap: opts.max_minors });
    }
    Ok(count)
}

/// Calls `visit` with every 0-based row combination and its maximal minor,
/// in lexicographic order. Returns the number of minors visited.
pub(crate) fn for_each_minor<S, F>(a: &Matrix<S>, mut visit: F) -> u128
where
    S: Scalar,
    F: FnMut(&[usize], S),
{
    let (m, n) = a.shape();
    let fill = |buf: &mut Vec<S>, rows: &[usize]| {
        buf.clear();
        for &r in rows {
            buf.extend_from_slice(a.row(r));
        }
    };
    let mut combos = LexCombinations::new(m, n);
    let mut visited = 0u128;
    if binomial(m, n) <= BLOCK as u128 {
        let mut buf = Vec::with_capacity(n * n);
        while let Some(c) = combos.advance() {
            fill(&mut buf, c);
            let d = S::det_in_place(&mut buf, n);
            visit(c, d);
            visited += 1;
        }
        return visited;
    }
    let mut flat = Vec::with_capacity(BLOCK * n);
    loop {
        flat.clear();
        while flat.len() < BLOCK * n {
            match combos.advance() {
                Some(c) => flat.extend_from_slice(c),
                None => break,
            }
        }
        if flat.is_empty() {
            return visited;
        }
        let dets: Vec<S> = flat
            .par_chunks(n)
            .map_init(
                || Vec::with_capacity(n * n),
                |buf, rows| {
                    fill(buf, rows);
                    S::det_in_place(buf, n)
                },
            )
            .collect();
        for (rows, d) in flat.chunks(n).zip(dets) {
            visit(rows, d);
            visited += 1;
        }
    }
}

/// The `C(m, n)` maximal minors of a tall matrix, in lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct MinorTable<S> {
    rows: usize,
    cols: usize,
    entries: Vec<(Combination, S)>,
}

impl<S: Scalar> MinorTable<S> {
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(Combination, S)] {
        &self.entries
    }

    pub fn get(&self, rank: usize) -> Option<&(Combination, S)> {
        self.entries.get(rank)
    }

    pub fn values(&self) -> impl Iterator<Item = &S> {
        self.entries.iter().map(|(_, v)| v)
    }
}

pub fn minor_table<S: Scalar>(a: &Matrix<S>, opts: &Options) -> Result<MinorTable<S>> {
    require_tall(a, "minor table")?;
    a.ensure_finite()?;
    let count = checked_count(a, opts)?;
    let mut entries = Vec::with_capacity(count as usize);
    let m = a.rows();
    for_each_minor(a, |c, d| entries.push((Combination::from_zero_based(c, m), d)));
    Ok(MinorTable { rows: a.rows(), cols: a.cols(), entries })
}

/// How a [`Detl`] value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetlPath {
    /// Sum of squared maximal minors.
    Minors,
    /// `det(AᵀA)`, requested explicitly.
    Gram,
    /// `det(AᵀA)`, taken because the minor count exceeded the cap.
    GramFallback,
    /// More columns than rows; the value is zero.
    Wide,
}

impl DetlPath {
    pub fn as_str(self) -> &'static str {
        match self {
            DetlPath::Minors => "minors",
            DetlPath::Gram => "gram",
            DetlPath::GramFallback => "gram-fallback",
            DetlPath::Wide => "wide",
        }
    }
}

/// Determinant-like function. The square is kept in the scalar domain; the
/// root is only taken by [`Detl::value`].
#[derive(Debug, Clone, PartialEq)]
pub struct Detl<S> {
    pub squared: S,
    pub path: DetlPath,
    pub minors_visited: u128,
}

impl<S: Scalar> Detl<S> {
    pub fn value(&self) -> f64 {
        self.squared.to_f64().sqrt()
    }

    pub fn fell_back(&self) -> bool {
        self.path == DetlPath::GramFallback
    }
}

/// The unsigned n-volume spanned by the columns of `a`.
///
/// Wide inputs give exactly zero. Float inputs whose minor count exceeds the
/// cap are evaluated through the Gram determinant instead and flagged as
/// [`DetlPath::GramFallback`]; exact inputs fail with
/// [`Error::CapExceeded`].
pub fn detl<S: Scalar>(a: &Matrix<S>, opts: &Options) -> Result<Detl<S>> {
    a.ensure_finite()?;
    if !a.is_tall() {
        return Ok(Detl { squared: S::zero(), path: DetlPath::Wide, minors_visited: 0 });
    }
    if let Err(e) = checked_count(a, opts) {
        if S::EXACT {
            return Err(e);
        }
        let squared = gram_squared(a, opts.tolerance)?;
        return Ok(Detl { squared, path: DetlPath::GramFallback, minors_visited: 0 });
    }
    let mut acc = S::Acc::default();
    let visited = for_each_minor(a, |_, d| acc.add(d.clone() * d));
    Ok(Detl { squared: acc.total(), path: DetlPath::Minors, minors_visited: visited })
}

/// `det(AᵀA)` in either domain; no minor enumeration.
pub fn detl_squared_gram<S: Scalar>(a: &Matrix<S>, tolerance: f64) -> Result<Detl<S>> {
    a.ensure_finite()?;
    if !a.is_tall() {
        return dim(format!("Gram path needs a tall matrix, got {}x{}", a.rows(), a.cols()));
    }
    Ok(Detl { squared: gram_squared(a, tolerance)?, path: DetlPath::Gram, minors_visited: 0 })
}

/// `√det(AᵀA)` for float matrices.
///
/// Negative Gram determinants within `tolerance · Πⱼ‖cⱼ‖²` (Hadamard's
/// bound on `det(AᵀA)`) are rounding noise and clamp to zero; anything more
/// negative is reported as a numeric error.
pub fn detl_gram(a: &Matrix<f64>, tolerance: f64) -> Result<f64> {
    Ok(detl_squared_gram(a, tolerance)?.value())
}

fn gram_squared<S: Scalar>(a: &Matrix<S>, tolerance: f64) -> Result<S> {
    let gram = a.transpose().mul(a)?;
    let g = squaredet::det(&gram)?;
    if S::EXACT || !g.is_negative() {
        return Ok(g);
    }
    let bound: f64 = (0..a.cols()).map(|j| a.column(j).iter().map(|v| v.to_f64() * v.to_f64()).sum::<f64>()).product();
    if g.to_f64() < -tolerance * bound {
        return Err(Error::Numeric(format!("Gram determinant {} is negative beyond tolerance", g)));
    }
    Ok(S::zero())
}

/// Vector determinant: the coefficient at `τ(c)` is `det A_c`.
pub fn vdet<S: Scalar>(a: &Matrix<S>, opts: &Options) -> Result<Multivector<S>> {
    require_tall(a, "vdet")?;
    a.ensure_finite()?;
    let count = checked_count(a, opts)?;
    let mut coeffs = Vec::with_capacity(count as usize);
    for_each_minor(a, |_, d| coeffs.push(d));
    Multivector::new(a.rows(), a.cols(), coeffs)
}

/// g-determinant from its closed form `Σ (-1)^Σ(iⱼ+j) det A_c`.
pub fn gdet_closed<S: Scalar>(a: &Matrix<S>, opts: &Options) -> Result<S> {
    require_tall(a, "gdet")?;
    a.ensure_finite()?;
    checked_count(a, opts)?;
    let mut acc = S::Acc::default();
    for_each_minor(a, |c, d| if laplace_sign_zero_based(c) > 0 { acc.add(d) } else { acc.add(-d) });
    Ok(acc.total())
}

/// g-determinant by Laplace expansion along the first column, down to the
/// alternating-sum base case for a single column. Exponential; meant as an
/// oracle for small shapes.
pub fn gdet_recursive<S: Scalar>(a: &Matrix<S>) -> Result<S> {
    require_tall(a, "gdet")?;
    check_shape(a.rows(), a.cols())?;
    let rows: Vec<usize> = (0..a.rows()).collect();
    Ok(gdet_expand(a, &rows, 0))
}

fn gdet_expand<S: Scalar>(a: &Matrix<S>, rows: &[usize], col: usize) -> S {
    if col + 1 == a.cols() {
        return rows.iter().enumerate().fold(S::zero(), |acc, (k, &r)| {
            let v = a.get(r, col).clone();
            if k % 2 == 0 {
                acc + v
            } else {
                acc - v
            }
        });
    }
    let mut total = S::zero();
    let mut rest = Vec::with_capacity(rows.len() - 1);
    for (k, &r) in rows.iter().enumerate() {
        let entry = a.get(r, col);
        if entry.is_zero() {
            continue;
        }
        rest.clear();
        rest.extend(rows.iter().copied().filter(|&x| x != r));
        let term = entry.clone() * gdet_expand(a, &rest, col + 1);
        total = if k % 2 == 0 { total + term } else { total - term };
    }
    total
}

/// Sum-determinant: the unweighted sum of all maximal minors.
pub fn tdet<S: Scalar>(a: &Matrix<S>, opts: &Options) -> Result<S> {
    require_tall(a, "tdet")?;
    a.ensure_finite()?;
    checked_count(a, opts)?;
    let mut acc = S::Acc::default();
    for_each_minor(a, |_, d| acc.add(d));
    Ok(acc.total())
}

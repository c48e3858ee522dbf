//! Grade-n multivectors over `R^m` and a brute-force wedge expansion.
//!
//! Basis blades `e_{i₁} ∧ … ∧ e_{iₙ}` (ascending indices) are orthonormal and
//! indexed by lexicographic rank. [`wedge_columns`] builds `⋀ⱼ cⱼ` by
//! distributing every column over the standard basis and sorting each
//! resulting blade with permutation-sign bookkeeping; it never forms a
//! determinant, which makes it an independent check on [`crate::vdet`].

use crate::combination::{binomial, enumerate_combinations, rank_zero_based, Combination, LexCombinations};
use crate::error::{dim, Error, Result};
use crate::gendet::{vdet, Options};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Ambient dimension limit for [`wedge_columns`].
pub const WEDGE_MAX_AMBIENT: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct Multivector<S> {
    ambient: usize,
    grade: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> Multivector<S> {
    pub fn new(ambient: usize, grade: usize, coeffs: Vec<S>) -> Result<Self> {
        if grade == 0 || grade > ambient {
            return dim(format!("no grade-{grade} blades in dimension {ambient}"));
        }
        let expected = binomial(ambient, grade);
        if coeffs.len() as u128 != expected {
            return dim(format!(
                "grade-{grade} multivector in dimension {ambient} needs {expected} coefficients, got {}",
                coeffs.len()
            ));
        }
        Ok(Self { ambient, grade, coeffs })
    }

    pub fn zero(ambient: usize, grade: usize) -> Result<Self> {
        let count = binomial(ambient, grade) as usize;
        Self::new(ambient, grade, vec![S::zero(); count])
    }

    /// Unit blade for `c`.
    pub fn basis(c: &Combination) -> Result<Self> {
        let mut out = Self::zero(c.ambient(), c.len())?;
        out.coeffs[c.rank() as usize] = S::one();
        Ok(out)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn coefficients(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<S> {
        self.coeffs
    }

    pub fn coefficient(&self, c: &Combination) -> Option<&S> {
        if c.ambient() != self.ambient || c.len() != self.grade {
            return None;
        }
        self.coeffs.get(c.rank() as usize)
    }

    /// `(blade, coefficient)` pairs in rank order.
    pub fn terms(&self) -> impl Iterator<Item = (Combination, &S)> {
        let mut it = LexCombinations::new(self.ambient, self.grade);
        let ambient = self.ambient;
        self.coeffs.iter().map(move |v| {
            let c = it.advance().expect("coefficient count matches C(m,n)");
            (Combination::from_zero_based(c, ambient), v)
        })
    }

    pub fn norm_squared(&self) -> S {
        S::sum_in_order(self.coeffs.iter().map(|v| v.clone() * v.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|v| v.is_zero())
    }

    pub fn scaled(&self, k: &S) -> Self {
        Self {
            ambient: self.ambient,
            grade: self.grade,
            coeffs: self.coeffs.iter().map(|v| v.clone() * k.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_shape(self, other)?;
        Ok(Self {
            ambient: self.ambient,
            grade: self.grade,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect(),
        })
    }
}

fn same_shape<S>(x: &Multivector<S>, y: &Multivector<S>) -> Result<()> {
    if x.ambient != y.ambient || x.grade != y.grade {
        return dim(format!(
            "multivector shapes differ: grade {} in R^{} vs grade {} in R^{}",
            x.grade, x.ambient, y.grade, y.ambient
        ));
    }
    Ok(())
}

/// Euclidean inner product of two multivectors of the same grade.
pub fn blade_dot<S: Scalar>(x: &Multivector<S>, y: &Multivector<S>) -> Result<S> {
    same_shape(x, y)?;
    Ok(S::sum_in_order(x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a.clone() * b.clone())))
}

/// `c₁ ∧ … ∧ cₙ` for the columns of `a`, by full distribution.
///
/// Each of the `mⁿ` index choices `(i₁, …, iₙ)` contributes
/// `Πⱼ a_{iⱼ j} · e_{i₁} ∧ … ∧ e_{iₙ}`. Choices with a repeated index are
/// zero (`e ∧ e = 0`) and are cut as soon as the repeat appears; nonzero
/// ones are sorted to ascending order with sign `(-1)^inversions`.
pub fn wedge_columns<S: Scalar>(a: &Matrix<S>) -> Result<Multivector<S>> {
    let (m, n) = a.shape();
    if m < n {
        return dim(format!("wedge of {n} vectors in R^{m} is zero-dimensional; need rows >= cols"));
    }
    if m > WEDGE_MAX_AMBIENT {
        return Err(Error::Size { what: "wedge oracle ambient dimension", got: m, limit: WEDGE_MAX_AMBIENT });
    }
    a.ensure_finite()?;
    // Rank of each n-element subset, keyed by its bitmask.
    let mut rank_of = vec![usize::MAX; 1 << m];
    for c in enumerate_combinations(m, n)? {
        let mask = c.zero_based().iter().fold(0usize, |acc, &i| acc | 1 << i);
        rank_of[mask] = rank_zero_based(&c.zero_based(), m) as usize;
    }
    let mut out = Multivector::zero(m, n)?;
    let mut expander = Expander { a, rank_of: &rank_of, coeffs: &mut out.coeffs };
    expander.expand(0, 0, false, S::one());
    Ok(out)
}

struct Expander<'a, S> {
    a: &'a Matrix<S>,
    rank_of: &'a [usize],
    coeffs: &'a mut [S],
}

impl<S: Scalar> Expander<'_, S> {
    fn expand(&mut self, col: usize, used: usize, negative: bool, partial: S) {
        let (m, n) = self.a.shape();
        if col == n {
            let slot = &mut self.coeffs[self.rank_of[used]];
            let current = std::mem::replace(slot, S::zero());
            *slot = if negative { current - partial } else { current + partial };
            return;
        }
        for i in 0..m {
            if used & (1 << i) != 0 {
                continue;
            }
            let entry = self.a.get(i, col);
            if entry.is_zero() {
                continue;
            }
            // Already-placed larger indices each form one inversion with i.
            let inversions = (used >> (i + 1)).count_ones();
            let sign = negative ^ (inversions % 2 == 1);
            self.expand(col + 1, used | 1 << i, sign, partial.clone() * entry.clone());
        }
    }
}

/// Signed projection of `vdet A` onto the unit n-blade spanned by the
/// columns of `B`: `⟨vdet A, vdet B⟩ / |vdet B|`.
///
/// The numerator and `detl²(B)` are kept separately so exact callers never
/// need a square root.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection<S> {
    /// `⟨vdet A, vdet B⟩ = det(AᵀB)`.
    pub numerator: S,
    /// `|vdet B|² = detl²(B)`, always positive.
    pub direction_norm_squared: S,
}

impl<S: Scalar> Projection<S> {
    pub fn value(&self) -> f64 {
        self.numerator.to_f64() / self.direction_norm_squared.to_f64().sqrt()
    }

    /// `projection²` as an exact ratio.
    pub fn squared(&self) -> S {
        self.numerator.clone() * self.numerator.clone() / self.direction_norm_squared.clone()
    }
}

pub fn directional_det<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>, opts: &Options) -> Result<Projection<S>> {
    if a.shape() != b.shape() {
        return dim(format!(
            "directional determinant needs equal shapes, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        ));
    }
    let va = vdet(a, opts)?;
    let vb = vdet(b, opts)?;
    let direction_norm_squared = vb.norm_squared();
    if direction_norm_squared.is_zero() {
        return Err(Error::DegenerateDirection);
    }
    Ok(Projection { numerator: blade_dot(&va, &vb)?, direction_norm_squared })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn ex(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let e12 = ex(&[&[1, 0], &[0, 1], &[0, 0]]);
        assert_eq!(wedge_columns(&e12).unwrap().coefficients(), &[q(1), q(0), q(0)]);
        let dup = ex(&[&[2, 2], &[-1, -1], &[5, 5]]);
        assert!(wedge_columns(&dup).unwrap().is_zero());
        let a = ex(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(wedge_columns(&a).unwrap().coefficients(), &[q(1), q(1), q(-1)]);
    }

    #[test]
    fn wedge_errors() {
        assert!(matches!(wedge_columns(&ex(&[&[1, 2]])), Err(Error::Dimension(_))));
        let tall = Matrix::<Rational>::new(11, 1, vec![q(1); 11]).unwrap();
        assert!(matches!(wedge_columns(&tall), Err(Error::Size { .. })));
    }

    #[test]
    fn basis_blades_are_orthonormal() {
        let blades = enumerate_combinations(4, 2).unwrap();
        for x in &blades {
            for y in &blades {
                let dot =
                    blade_dot(&Multivector::<Rational>::basis(x).unwrap(), &Multivector::basis(y).unwrap()).unwrap();
                assert_eq!(dot, if x == y { q(1) } else { q(0) });
            }
        }
    }

    #[test]
    fn blade_dot_sample_and_mismatch() {
        let w = wedge_columns(&ex(&[&[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(blade_dot(&w, &w).unwrap(), q(3));
        let other = Multivector::<Rational>::zero(4, 2).unwrap();
        assert!(blade_dot(&w, &other).is_err());
    }

    #[test]
    fn terms_are_in_rank_order() {
        let w = wedge_columns(&ex(&[&[1, 0], &[0, 1], &[1, 1]])).unwrap();
        let labels: Vec<String> = w.terms().map(|(c, v)| format!("{c}={v}")).collect();
        assert_eq!(labels, ["(1,2)=1", "(1,3)=1", "(2,3)=-1"]);
    }

    #[test]
    fn directional_examples() {
        let o = Options::default();
        let a = ex(&[&[1, 2], &[0, 1], &[3, 1]]);
        let p = directional_det(&a, &a, &o).unwrap();
        assert_eq!(p.numerator, p.direction_norm_squared);
        let d = crate::detl(&a, &o).unwrap();
        assert!((p.value() - d.value()).abs() < 1e-12);

        let a = ex(&[&[1, 0], &[0, 1], &[0, 0], &[0, 0]]);
        let b = ex(&[&[0, 0], &[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(directional_det(&a, &b, &o).unwrap().numerator, q(0));

        let flat = ex(&[&[1, 2], &[1, 2], &[1, 2]]);
        assert_eq!(
            directional_det(&a.clone(), &ex(&[&[1, 2], &[1, 2], &[1, 2], &[0, 0]]), &o),
            Err(Error::DegenerateDirection)
        );
        assert!(directional_det(&a, &flat, &o).is_err());
    }
}

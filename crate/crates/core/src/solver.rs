//! Cramer's rule for tall systems `Ax = b` through vector determinants.
//!
//! For a solvable rank-n system, `vdet(A with column j replaced by b)` equals
//! `xⱼ · vdet(A)`. The solver checks that proportionality blade by blade and
//! reads `xⱼ` off the ratio.

use crate::combination::tau_unrank;
use crate::combination::Combination;
use crate::error::{dim, Error, Result};
use crate::gendet::{detl, vdet, Options};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum SolveOutcome<S> {
    /// The unique solution, `n` components.
    Solution(Vec<S>),
    /// `vdet(A_j←b)` is not a multiple of `vdet(A)`: the cross-multiplication
    /// fails at `blade` when replacing column `column` (1-based).
    Inconsistent { column: usize, blade: Combination },
    /// `vdet(A)` vanishes; the columns of `A` are linearly dependent.
    RankDeficient,
}

impl<S> SolveOutcome<S> {
    pub fn solution(&self) -> Option<&[S]> {
        match self {
            SolveOutcome::Solution(x) => Some(x),
            _ => None,
        }
    }

    /// The outcome as an error, for callers that require a solution.
    pub fn into_result(self) -> Result<Vec<S>> {
        match self {
            SolveOutcome::Solution(x) => Ok(x),
            SolveOutcome::Inconsistent { column, blade } => {
                Err(Error::Inconsistent { column, blade: blade.to_string() })
            }
            SolveOutcome::RankDeficient => Err(Error::RankDeficient),
        }
    }
}

fn check_system<S: Scalar>(a: &Matrix<S>, b: &[S]) -> Result<()> {
    if !a.is_tall() {
        return dim(format!("system with {} equations in {} unknowns is underdetermined", a.rows(), a.cols()));
    }
    if b.len() != a.rows() {
        return dim(format!("right-hand side has length {}, matrix has {} rows", b.len(), a.rows()));
    }
    Ok(())
}

fn sq<S: Scalar>(v: &S) -> S {
    v.clone() * v.clone()
}

fn blade(rank: usize, a_shape: (usize, usize)) -> Combination {
    tau_unrank(rank as u128, a_shape.0, a_shape.1).expect("rank below C(m,n)")
}

pub fn solve_overdetermined<S: Scalar>(a: &Matrix<S>, b: &[S], opts: &Options) -> Result<SolveOutcome<S>> {
    check_system(a, b)?;
    let v = vdet(a, opts)?.into_coefficients();
    let tol = S::from_f64(opts.tolerance).unwrap_or_else(S::zero);

    let pivot = if S::EXACT {
        match v.iter().position(|c| !c.is_zero()) {
            Some(p) => p,
            None => return Ok(SolveOutcome::RankDeficient),
        }
    } else {
        // Hadamard: |vdet A| ≤ Πⱼ |cⱼ|, so this is a relative volume test.
        let hadamard =
            (0..a.cols()).map(|j| S::sum_in_order(a.column(j).iter().map(sq))).fold(S::one(), |acc, n2| acc * n2);
        let norm2 = S::sum_in_order(v.iter().map(sq));
        if norm2 <= sq(&tol) * hadamard || norm2.is_zero() {
            return Ok(SolveOutcome::RankDeficient);
        }
        (0..v.len()).fold(0, |best, r| if v[r].abs() > v[best].abs() { r } else { best })
    };

    let mut x = Vec::with_capacity(a.cols());
    let mut worst: Option<(S, usize, usize)> = None;
    for j in 0..a.cols() {
        let vj = vdet(&a.with_column(j, b)?, opts)?.into_coefficients();
        let xj = vj[pivot].clone() / v[pivot].clone();
        if S::EXACT {
            let lhs_pivot = vj[pivot].clone();
            if let Some(r) =
                (0..v.len()).find(|&r| vj[r].clone() * v[pivot].clone() != lhs_pivot.clone() * v[r].clone())
            {
                return Ok(SolveOutcome::Inconsistent { column: j + 1, blade: blade(r, a.shape()) });
            }
        } else {
            let residuals: Vec<S> = vj.iter().zip(&v).map(|(p, q)| p.clone() - xj.clone() * q.clone()).collect();
            let res2 = S::sum_in_order(residuals.iter().map(sq));
            let norm2 = S::sum_in_order(vj.iter().map(sq));
            let r = (0..residuals.len()).fold(
                0,
                |best, r| {
                    if residuals[r].abs() > residuals[best].abs() {
                        r
                    } else {
                        best
                    }
                },
            );
            if res2 > sq(&tol) * norm2.clone() {
                return Ok(SolveOutcome::Inconsistent { column: j + 1, blade: blade(r, a.shape()) });
            }
            let rel = if norm2.is_zero() { S::zero() } else { res2 / norm2 };
            if worst.as_ref().is_none_or(|(w, _, _)| rel > *w) {
                worst = Some((rel, j, r));
            }
        }
        x.push(xj);
    }

    // Substitute back.
    let ax = a.mul_vec(&x)?;
    if S::EXACT {
        if ax != b {
            return Err(Error::Numeric("exact solution failed substitution".into()));
        }
    } else {
        let scale = S::sum_in_order(b.iter().map(sq))
            + S::sum_in_order(a.data().iter().map(sq)) * S::sum_in_order(x.iter().map(sq));
        let res2 = S::sum_in_order(ax.iter().zip(b).map(|(p, q)| sq(&(p.clone() - q.clone()))));
        if res2 > sq(&tol) * scale {
            let (_, j, r) = worst.unwrap_or((S::zero(), 0, 0));
            return Ok(SolveOutcome::Inconsistent { column: j + 1, blade: blade(r, a.shape()) });
        }
    }
    Ok(SolveOutcome::Solution(x))
}

/// `|xⱼ|² = detl²(A_j←b) / detl²(A)` for a solvable system.
#[derive(Debug, Clone, PartialEq)]
pub struct CramerMagnitudes<S> {
    pub squared: Vec<S>,
}

impl<S: Scalar> CramerMagnitudes<S> {
    pub fn values(&self) -> Vec<f64> {
        self.squared.iter().map(|v| v.to_f64().sqrt()).collect()
    }
}

pub fn cramer_magnitudes<S: Scalar>(a: &Matrix<S>, b: &[S], opts: &Options) -> Result<CramerMagnitudes<S>> {
    solve_overdetermined(a, b, opts)?.into_result()?;
    let base = detl(a, opts)?.squared;
    let squared = (0..a.cols())
        .map(|j| Ok(detl(&a.with_column(j, b)?, opts)?.squared / base.clone()))
        .collect::<Result<Vec<S>>>()?;
    Ok(CramerMagnitudes { squared })
}

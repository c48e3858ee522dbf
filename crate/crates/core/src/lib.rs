//! Determinants of tall (m×n, m ≥ n) matrices.
//!
//! Three generalizations of the square determinant, all built from the
//! `C(m, n)` maximal minors `det A_c` over ascending row combinations `c`:
//!
//! - the determinant-like function [`detl`], the unsigned n-volume
//!   `√Σ det² A_c` spanned by the columns;
//! - the vector determinant [`vdet`], the coefficient vector of the wedge of
//!   the columns, indexed by lexicographic rank of `c`;
//! - the g-determinant [`gdet_closed`] / [`gdet_recursive`], the signed sum
//!   `Σ (-1)^Σ(iⱼ+j) det A_c`, equivalently Laplace expansion down to an
//!   alternating sum;
//!
//! plus the unweighted sum [`tdet`], generalized Cramer's rule
//! ([`solve_overdetermined`]), g-determinant polygon areas, and a
//! brute-force exterior-algebra oracle ([`wedge_columns`]).
//!
//! Every routine is generic over [`Scalar`]: exact [`Rational`]s for
//! verification and `f64` for throughput.

pub mod bench;
pub mod combination;
mod error;
pub mod exterior;
pub mod gendet;
pub mod geometry;
pub mod io;
pub mod matrix;
pub mod scalar;
pub mod solver;
pub mod squaredet;

pub use combination::{binomial, enumerate_combinations, submatrix, tau_rank, tau_unrank, Combination};
pub use error::{Error, Result};
pub use exterior::{blade_dot, directional_det, wedge_columns, Multivector, Projection};
pub use gendet::{
    detl, detl_gram, detl_squared_gram, gdet_closed, gdet_recursive, minor_table, tdet, vdet, Detl, DetlPath,
    MinorTable, Options,
};
pub use geometry::{circle_area_convergence, polygon_area_gdet, polygon_area_shoelace, Point};
pub use matrix::Matrix;
pub use scalar::{Rational, Scalar};
pub use solver::{cramer_magnitudes, solve_overdetermined, CramerMagnitudes, SolveOutcome};
pub use squaredet::{det_cofactor, det_exact, det_float};

/// `(-1)^Σⱼ (iⱼ + j)` for a combination.
pub fn laplace_sign(c: &Combination) -> i8 {
    c.laplace_sign()
}

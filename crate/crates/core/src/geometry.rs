//! Polygon areas from the m×2 g-determinant.
//!
//! For vertices `P₁ … P_m`, the signed area is `½ gdet` of the m×2 matrix
//! whose i-th row is `Pᵢ + Pᵢ₊₁` (indices cyclic). The shoelace formula is
//! kept alongside as an independent check.

use std::f64::consts::PI;

use crate::error::{dim, Result};
use crate::gendet::{gdet_closed, Options};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        Self { x, y }
    }
}

fn require_polygon<S>(vertices: &[Point<S>]) -> Result<()> {
    if vertices.len() < 3 {
        return dim(format!("a polygon needs at least 3 vertices, got {}", vertices.len()));
    }
    Ok(())
}

/// Signed area, positive for counterclockwise order. Self-intersecting input
/// yields the winding-weighted area.
pub fn polygon_area_gdet<S: Scalar>(vertices: &[Point<S>]) -> Result<S> {
    require_polygon(vertices)?;
    let m = vertices.len();
    let mut data = Vec::with_capacity(2 * m);
    for i in 0..m {
        let (p, q) = (&vertices[i], &vertices[(i + 1) % m]);
        data.push(p.x.clone() + q.x.clone());
        data.push(p.y.clone() + q.y.clone());
    }
    let sums = Matrix::new(m, 2, data)?;
    // The minor count is C(m, 2); polygons are never capped.
    let g = gdet_closed(&sums, &Options::unbounded())?;
    Ok(g / S::from_i64(2))
}

/// `½ Σᵢ (xᵢ yᵢ₊₁ − xᵢ₊₁ yᵢ)`.
pub fn polygon_area_shoelace<S: Scalar>(vertices: &[Point<S>]) -> Result<S> {
    require_polygon(vertices)?;
    let m = vertices.len();
    let twice = S::sum_in_order((0..m).map(|i| {
        let (p, q) = (&vertices[i], &vertices[(i + 1) % m]);
        p.x.clone() * q.y.clone() - q.x.clone() * p.y.clone()
    }));
    Ok(twice / S::from_i64(2))
}

/// Vertices of the regular m-gon inscribed in the radius-`r` circle, vertex
/// `k` at angle `2πk/m`.
pub fn regular_polygon(m: usize, r: f64) -> Vec<Point<f64>> {
    (0..m)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / m as f64;
            Point::new(r * t.cos(), r * t.sin())
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleConvergence {
    pub vertices: usize,
    pub radius: f64,
    pub area: f64,
    /// `|area − πr²|`.
    pub abs_error: f64,
}

pub fn circle_area_convergence(m: usize, r: f64) -> Result<CircleConvergence> {
    if m < 3 {
        return dim(format!("a polygon needs at least 3 vertices, got {m}"));
    }
    if !(r > 0.0 && r.is_finite()) {
        return dim(format!("radius must be positive and finite, got {r}"));
    }
    let area = polygon_area_gdet(&regular_polygon(m, r))?;
    Ok(CircleConvergence { vertices: m, radius: r, area, abs_error: (area - PI * r * r).abs() })
}

use std::fmt;

use crate::error::{dim, Error, Result};
use crate::scalar::{Rational, Scalar};

/// Dense row-major `rows`×`cols` matrix. Both dimensions are at least one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return dim(format!("matrix shape {rows}x{cols} has an empty dimension"));
        }
        if data.len() != rows * cols {
            return dim(format!("data length {} does not match shape {rows}x{cols}", data.len()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[S]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return dim(format!("row {} has {} entries, expected {cols}", i + 1, r.len()));
            }
            data.extend_from_slice(r);
        }
        Self::new(rows.len(), cols, data)
    }

    /// Integer entries, row by row. Convenient for tests and examples.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let converted: Vec<Vec<S>> =
            rows.iter().map(|r| r.as_ref().iter().map(|&v| S::from_i64(v)).collect()).collect();
        Self::from_rows(&converted)
    }

    pub fn column_vector(values: Vec<S>) -> Result<Self> {
        let m = values.len();
        Self::new(m, 1, values)
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut data = vec![S::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = S::one();
        }
        Self::new(n, n, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_tall(&self) -> bool {
        self.rows >= self.cols
    }

    /// Row-major entries.
    pub fn data(&self) -> &[S] {
        &self.data
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return dim(format!("cannot multiply {}x{} by {}x{}", self.rows, self.cols, rhs.rows, rhs.cols));
        }
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = S::zero();
                for k in 0..self.cols {
                    acc = acc + self.get(i, k).clone() * rhs.get(k, j).clone();
                }
                data.push(acc);
            }
        }
        Self::new(self.rows, rhs.cols, data)
    }

    /// `self * x` for a plain vector `x` of length `cols`.
    pub fn mul_vec(&self, x: &[S]) -> Result<Vec<S>> {
        if x.len() != self.cols {
            return dim(format!("vector of length {} for {} columns", x.len(), self.cols));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect())
    }

    /// Copy of `self` with 0-based column `j` replaced by `values`.
    pub fn with_column(&self, j: usize, values: &[S]) -> Result<Self> {
        if j >= self.cols {
            return dim(format!("column {} out of range 1..={}", j + 1, self.cols));
        }
        if values.len() != self.rows {
            return dim(format!("replacement column has length {}, matrix has {} rows", values.len(), self.rows));
        }
        let mut out = self.clone();
        for (i, v) in values.iter().enumerate() {
            out.data[i * self.cols + j] = v.clone();
        }
        Ok(out)
    }

    pub fn swap_columns(&self, a: usize, b: usize) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            out.data.swap(i * self.cols + a, i * self.cols + b);
        }
        out
    }

    pub fn swap_rows(&self, a: usize, b: usize) -> Self {
        let mut out = self.clone();
        for j in 0..self.cols {
            out.data.swap(a * self.cols + j, b * self.cols + j);
        }
        out
    }

    /// Copy with rows `i` and columns `j` removed (0-based index lists).
    pub fn without(&self, row: Option<usize>, col: Option<usize>) -> Result<Self> {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| Some(i) != row).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&j| Some(j) != col).collect();
        self.select(&rows, &cols)
    }

    /// Submatrix from 0-based row and column index lists, preserving order.
    pub(crate) fn select(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Self::new(rows.len(), cols.len(), data)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub(crate) fn ensure_finite(&self) -> Result<()> {
        match self.data.iter().position(|v| !v.is_finite()) {
            Some(p) => Err(Error::NonFinite { row: p / self.cols + 1, col: p % self.cols + 1 }),
            None => Ok(()),
        }
    }
}

impl Matrix<Rational> {
    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(|v| v.to_f64())
    }
}

impl Matrix<f64> {
    /// Exact rational copy of a float matrix (every finite `f64` is a
    /// dyadic rational).
    pub fn to_rational(&self) -> Result<Matrix<Rational>> {
        self.ensure_finite()?;
        Ok(self.map(|&v| Rational::from_float(v).expect("finite")))
    }
}

impl<S: fmt::Display> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

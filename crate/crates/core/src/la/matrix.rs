use std::ops::Range;

use super::kernels::{axpy, dot, round_slice};
use super::Precision;
use crate::error::{shape_err, Error, Result};

/// Column-major real matrix tagged with the precision its entries live in.
///
/// Every entry is representable in the tagged precision. Constructors and
/// [`DenseMatrix::set`] round on write; [`DenseMatrix::col_mut`] hands out raw
/// storage and the caller is responsible for writing representable values.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    precision: Precision,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::zeros_in(rows, cols, Precision::Double)
    }

    pub fn zeros_in(rows: usize, cols: usize, precision: Precision) -> Self {
        DenseMatrix { rows, cols, data: vec![0.0; rows * cols], precision }
    }

    pub fn identity(n: usize) -> Self {
        Self::eye(n, n)
    }

    /// `rows × cols` matrix with ones on the main diagonal.
    pub fn eye(rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows.min(cols) {
            m.data[i + i * rows] = 1.0;
        }
        m
    }

    pub fn from_col_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        Self::from_col_major_in(rows, cols, data, Precision::Double)
    }

    pub fn from_col_major_in(
        rows: usize,
        cols: usize,
        mut data: Vec<f64>,
        precision: Precision,
    ) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(shape_err(format!(
                "{} values supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        round_slice(precision, &mut data);
        Ok(DenseMatrix { rows, cols, data, precision })
    }

    /// Build from row slices; handy for small literals.
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        Self::from_fn(r, c, |i, j| {
            assert_eq!(rows[i].len(), c, "ragged row {i}");
            rows[i][j]
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data, precision: Precision::Double }
    }

    /// Matrix whose columns are the given vectors (all the same length).
    pub fn from_columns(rows: usize, columns: &[Vec<f64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(shape_err(format!("column {j} has length {} not {rows}", c.len())));
            }
            data.extend_from_slice(c);
        }
        Ok(DenseMatrix { rows, cols: columns.len(), data, precision: Precision::Double })
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

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i + j * self.rows]
    }

    /// Store `v` rounded to the matrix precision.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i + j * self.rows] = self.precision.round(v);
    }

    #[inline]
    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Raw mutable column storage. Values written here must already be
    /// representable in [`DenseMatrix::precision`].
    #[inline]
    pub fn col_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Copy `v` into column `j`, rounding to the matrix precision.
    pub fn set_col(&mut self, j: usize, v: &[f64]) {
        assert_eq!(v.len(), self.rows);
        let p = self.precision;
        for (d, s) in self.col_mut(j).iter_mut().zip(v) {
            *d = p.round(*s);
        }
    }

    /// Copy of columns `range`.
    pub fn columns(&self, range: Range<usize>) -> DenseMatrix {
        assert!(range.end <= self.cols);
        DenseMatrix {
            rows: self.rows,
            cols: range.len(),
            data: self.data[range.start * self.rows..range.end * self.rows].to_vec(),
            precision: self.precision,
        }
    }

    /// Copy of the rows `rows` and columns `cols`.
    pub fn block(&self, rows: Range<usize>, cols: Range<usize>) -> DenseMatrix {
        assert!(rows.end <= self.rows && cols.end <= self.cols);
        let nr = rows.len();
        let mut data = Vec::with_capacity(nr * cols.len());
        for j in cols.clone() {
            data.extend_from_slice(&self.col(j)[rows.clone()]);
        }
        DenseMatrix { rows: nr, cols: cols.len(), data, precision: self.precision }
    }

    /// Overwrite the block starting at `(r0, c0)` with `src`, rounding on write.
    pub fn set_block(&mut self, r0: usize, c0: usize, src: &DenseMatrix) {
        assert!(r0 + src.rows <= self.rows && c0 + src.cols <= self.cols);
        let p = self.precision;
        for j in 0..src.cols {
            let dst = &mut self.col_mut(c0 + j)[r0..r0 + src.rows];
            for (d, s) in dst.iter_mut().zip(src.col(j)) {
                *d = p.round(*s);
            }
        }
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros_in(self.cols, self.rows, self.precision);
        for j in 0..self.cols {
            for i in 0..self.rows {
                t.data[j + i * self.cols] = self.data[i + j * self.rows];
            }
        }
        t
    }

    /// Round every entry to `p` and retag. Never fails; overflow becomes ±inf.
    pub fn rounded_to(&self, p: Precision) -> DenseMatrix {
        let mut data = self.data.clone();
        round_slice(p, &mut data);
        DenseMatrix { rows: self.rows, cols: self.cols, data, precision: p }
    }

    /// Retag as double without changing values (always exact).
    pub fn to_double(&self) -> DenseMatrix {
        DenseMatrix { precision: Precision::Double, ..self.clone() }
    }

    /// `self · other`, accumulated in `p`; the result is tagged `p`.
    pub fn matmul(&self, other: &DenseMatrix, p: Precision) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "matmul inner dimensions");
        let mut c = DenseMatrix::zeros_in(self.rows, other.cols, p);
        for j in 0..other.cols {
            let cj = &mut c.data[j * self.rows..(j + 1) * self.rows];
            for k in 0..self.cols {
                let b = other.get(k, j);
                if b != 0.0 {
                    axpy(p, b, &self.data[k * self.rows..(k + 1) * self.rows], cj);
                }
            }
        }
        c
    }

    /// `selfᵗ · other`, accumulated in `p`.
    pub fn tr_matmul(&self, other: &DenseMatrix, p: Precision) -> DenseMatrix {
        assert_eq!(self.rows, other.rows, "tr_matmul inner dimensions");
        let mut c = DenseMatrix::zeros_in(self.cols, other.cols, p);
        for j in 0..other.cols {
            for i in 0..self.cols {
                c.data[i + j * self.cols] = dot(p, self.col(i), other.col(j));
            }
        }
        c
    }

    /// `self · x` accumulated in `p`.
    pub fn matvec(&self, x: &[f64], p: Precision) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        let mut y = vec![0.0; self.rows];
        for (k, &xk) in x.iter().enumerate() {
            if xk != 0.0 {
                axpy(p, xk, self.col(k), &mut y);
            }
        }
        y
    }

    /// `selfᵗ · x` accumulated in `p`.
    pub fn tr_matvec(&self, x: &[f64], p: Precision) -> Vec<f64> {
        assert_eq!(x.len(), self.rows);
        (0..self.cols).map(|j| dot(p, self.col(j), x)).collect()
    }

    /// `self − other` in `p`.
    pub fn sub(&self, other: &DenseMatrix, p: Precision) -> DenseMatrix {
        assert_eq!(self.shape(), other.shape());
        let data = self.data.iter().zip(&other.data).map(|(a, b)| p.round(a - b)).collect();
        DenseMatrix { rows: self.rows, cols: self.cols, data, precision: p }
    }

    pub fn scaled(&self, alpha: f64) -> DenseMatrix {
        let p = self.precision;
        let data = self.data.iter().map(|a| p.round(alpha * a)).collect();
        DenseMatrix { rows: self.rows, cols: self.cols, data, precision: p }
    }

    /// Frobenius norm computed in double.
    pub fn frobenius_norm(&self) -> f64 {
        dot(Precision::Double, &self.data, &self.data).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Copy keeping only the upper triangle (diagonal included).
    pub fn upper_triangle(&self) -> DenseMatrix {
        let mut m = self.clone();
        for j in 0..self.cols {
            for i in (j + 1)..self.rows {
                m.data[i + j * self.rows] = 0.0;
            }
        }
        m
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.cols).all(|j| ((j + 1)..self.rows).all(|i| self.get(i, j) == 0.0))
    }

    /// True when every entry strictly above the diagonal is zero.
    pub fn is_lower_trapezoidal(&self) -> bool {
        (0..self.cols).all(|j| (0..j.min(self.rows)).all(|i| self.get(i, j) == 0.0))
    }
}

/// Round every entry of `m` to `p`.
///
/// A finite entry that overflows the target format is reported as
/// [`Error::Range`] so the caller knows the input needs rescaling.
pub fn cast_precision(m: &DenseMatrix, p: Precision) -> Result<DenseMatrix> {
    let out = m.rounded_to(p);
    for (a, b) in m.data.iter().zip(&out.data) {
        if a.is_finite() && !b.is_finite() {
            return Err(Error::Range { value: *a, precision: p });
        }
    }
    Ok(out)
}

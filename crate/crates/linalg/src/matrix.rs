//! Dense exact matrices and Gauss-Jordan elimination.

use std::fmt;

use thiserror::Error;

use crate::field::Field;
use crate::par;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("boundary space is not contained in the cycle space")]
    NotSubspace,
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(LinalgError::Shape("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from integer literals; handy in tests and fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v = rows
            .iter()
            .map(|r| r.iter().map(|&x| F::from_i64(x)).collect())
            .collect();
        Self::from_rows(v).expect("rectangular literal")
    }

    pub fn from_columns(rows: usize, cols: &[Vec<F>]) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(LinalgError::Shape(format!(
                    "column {j} has length {}, expected {rows}",
                    c.len()
                )));
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &F) {
        let k = i * self.cols + j;
        self.data[k] = self.data[k].add(v);
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Shape(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect())
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hcat(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.rows != rhs.rows {
            return Err(LinalgError::Shape(format!(
                "hcat of {} and {} rows",
                self.rows, rhs.rows
            )));
        }
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                out.set(i, k, self.get(i, j).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// In-place Gauss-Jordan elimination; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = self.get(r, c).inv().expect("pivot is nonzero");
            for j in c..cols {
                let v = self.get(r, j).mul(&inv);
                self.set(r, j, v);
            }
            let pivot_row: Vec<F> = self.row(r)[c..].to_vec();
            let eliminate = |i: usize, row: &mut [F]| {
                if i == r {
                    return;
                }
                let factor = row[c].clone();
                if factor.is_zero() {
                    return;
                }
                for (x, p) in row[c..].iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x = x.sub(&factor.mul(p));
                    }
                }
            };
            // sparse columns leave most rows untouched; count the real work first
            let active = (0..rows).filter(|&i| i != r && !self.get(i, c).is_zero()).count();
            if active * (cols - c) >= par::MIN_PARALLEL_CELLS {
                par::for_each_chunk_mut(&mut self.data, cols, eliminate);
            } else {
                self.data.chunks_mut(cols).enumerate().for_each(|(i, row)| eliminate(i, row));
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form and its strictly increasing pivot columns.
pub fn rref<F: Field>(a: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut r = a.clone();
    let p = r.rref_in_place();
    (r, p)
}

pub fn rank<F: Field>(a: &Matrix<F>) -> usize {
    if a.rows == 0 || a.cols == 0 {
        return 0;
    }
    rref(a).1.len()
}

/// Columns span the kernel of `a`; one column per free variable.
pub fn kernel_basis<F: Field>(a: &Matrix<F>) -> Matrix<F> {
    let (r, pivots) = rref(a);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    let mut k = Matrix::zeros(a.cols, free.len());
    for (col, &f) in free.iter().enumerate() {
        k.set(f, col, F::one());
        for (i, &p) in pivots.iter().enumerate() {
            let v = r.get(i, f);
            if !v.is_zero() {
                k.set(p, col, v.neg());
            }
        }
    }
    k
}

/// A witness `x` with `a·x = b`, or `None` when the system is inconsistent.
pub fn solve<F: Field>(a: &Matrix<F>, b: &[F]) -> Result<Option<Vec<F>>, LinalgError> {
    if b.len() != a.rows {
        return Err(LinalgError::Shape(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows
        )));
    }
    let aug = a.hcat(&Matrix::from_columns(a.rows, &[b.to_vec()])?)?;
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut x = vec![F::zero(); a.cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r.get(i, a.cols).clone();
    }
    Ok(Some(x))
}

/// `dim span(z) - dim span(b)`, after checking `span(b) ⊆ span(z)`.
pub fn subquotient_dim<F: Field>(z: &Matrix<F>, b: &Matrix<F>) -> Result<usize, LinalgError> {
    Ok(Subquotient::new(z, b)?.dim())
}

/// `span(Z) / span(B)` with canonical coset representatives taken from the
/// columns of `Z` in order.
#[derive(Clone, Debug)]
pub struct Subquotient<F: Field> {
    boundary: Matrix<F>,
    reps: Matrix<F>,
    z_indices: Vec<usize>,
}

impl<F: Field> Subquotient<F> {
    pub fn new(z: &Matrix<F>, b: &Matrix<F>) -> Result<Self, LinalgError> {
        if z.rows != b.rows {
            return Err(LinalgError::Shape(format!(
                "cycles live in dimension {}, boundaries in {}",
                z.rows, b.rows
            )));
        }
        let joint = b.hcat(z)?;
        let (_, pivots) = rref(&joint);
        let b_piv: Vec<usize> = pivots.iter().copied().filter(|&p| p < b.cols).collect();
        let z_piv: Vec<usize> = pivots
            .iter()
            .copied()
            .filter(|&p| p >= b.cols)
            .map(|p| p - b.cols)
            .collect();
        let boundary = b.select_columns(&b_piv);
        if rank(&z.hcat(&boundary)?) != rank(z) {
            return Err(LinalgError::NotSubspace);
        }
        Ok(Subquotient {
            reps: z.select_columns(&z_piv),
            boundary,
            z_indices: z_piv,
        })
    }

    pub fn dim(&self) -> usize {
        self.reps.cols
    }

    /// Coset representatives, as columns.
    pub fn representatives(&self) -> &Matrix<F> {
        &self.reps
    }

    /// Indices of the columns of `Z` that were chosen as representatives.
    pub fn representative_indices(&self) -> &[usize] {
        &self.z_indices
    }

    /// Coordinates of the class of `v` in the representative basis; `None`
    /// when `v` is not in `span(Z)`.
    pub fn coordinates(&self, v: &[F]) -> Result<Option<Vec<F>>, LinalgError> {
        let all = self.boundary.hcat(&self.reps)?;
        Ok(solve(&all, v)?.map(|x| x[self.boundary.cols..].to_vec()))
    }
}

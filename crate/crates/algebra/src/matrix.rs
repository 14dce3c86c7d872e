//! Dense matrices of polynomials.

use mfcat_linalg::Field;

use crate::poly::Poly;
use crate::ring::GradedRing;
use crate::AlgebraError;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix<F> {
    nvars: usize,
    rows: usize,
    cols: usize,
    data: Vec<Poly<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn zeros(nvars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            nvars,
            rows,
            cols,
            data: vec![Poly::zero(nvars); rows * cols],
        }
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        let mut m = Self::zeros(nvars, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(nvars));
        }
        m
    }

    pub fn from_fn(
        nvars: usize,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Poly<F>,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        PolyMatrix { nvars, rows, cols, data }
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<Poly<F>>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(AlgebraError::Shape("ragged rows".into()));
        }
        Ok(PolyMatrix {
            nvars,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Parses rows of polynomial strings in the ring's variables.
    pub fn parse(ring: &GradedRing<F>, rows: &[Vec<String>]) -> Result<Self, AlgebraError> {
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|s| ring.parse_poly(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(ring.nvars(), parsed)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly<F> {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Poly<F>) {
        self.data[r * self.cols + c] = p;
    }

    pub fn column(&self, c: usize) -> Vec<Poly<F>> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> Vec<Poly<F>> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn from_columns(nvars: usize, rows: usize, cols: &[Vec<Poly<F>>]) -> Self {
        Self::from_fn(nvars, rows, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.nvars, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map(&self, mut f: impl FnMut(&Poly<F>) -> Poly<F>) -> Self {
        PolyMatrix {
            nvars: self.nvars,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|p| f(p)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.map(|p| p.neg())
    }

    pub fn normal_form(&self, ring: &GradedRing<F>) -> Self {
        self.map(|p| ring.normal_form(p))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(AlgebraError::Shape(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(PolyMatrix {
            nvars: self.nvars,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.add(&rhs.neg())
    }

    /// Product in `R`, reduced to normal form.
    pub fn mul(&self, rhs: &Self, ring: &GradedRing<F>) -> Result<Self, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::Shape(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.nvars, self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = Poly::zero(self.nvars);
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    let b = rhs.get(k, c);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                out.set(r, c, ring.normal_form(&acc));
            }
        }
        Ok(out)
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.nvars, self.rows + rhs.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..rhs.rows {
            for c in 0..rhs.cols {
                out.set(self.rows + r, self.cols + c, rhs.get(r, c).clone());
            }
        }
        out
    }

    pub fn hcat(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if self.rows != rhs.rows {
            return Err(AlgebraError::Shape("hcat row mismatch".into()));
        }
        Ok(Self::from_fn(self.nvars, self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                rhs.get(r, c - self.cols).clone()
            }
        }))
    }

    pub fn vcat(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if self.cols != rhs.cols {
            return Err(AlgebraError::Shape("vcat column mismatch".into()));
        }
        Ok(Self::from_fn(self.nvars, self.rows + rhs.rows, self.cols, |r, c| {
            if r < self.rows {
                self.get(r, c).clone()
            } else {
                rhs.get(r - self.rows, c).clone()
            }
        }))
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(self.nvars, rows.len(), cols.len(), |r, c| {
            self.get(rows[r], cols[c]).clone()
        })
    }

    /// Renders entries with the ring's variable names.
    pub fn display_rows(&self, ring: &GradedRing<F>) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| ring.display(self.get(r, c))).collect())
            .collect()
    }
}

//! Dense linear algebra over `Q`: row reduction, kernels, solving, and
//! coordinates on subquotients `Z / B`.

use num_traits::{One, Zero};

use crate::coeff::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![vec![Rational::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rational::one();
        }
        m
    }

    pub fn from_rows(cols: usize, data: Vec<Vec<Rational>>) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged rows");
        QMatrix { rows: data.len(), cols, data }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column of the wrong length");
            for (i, x) in c.iter().enumerate() {
                m.data[i][j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|r| r.iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.iter().map(|x| x * c).collect()).collect(),
        }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect()).collect(),
        }
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, other.rows);
        QMatrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.iter().chain(b).cloned().collect()).collect(),
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.data[i][c].is_zero()) else { continue };
            m.data.swap(r, p);
            let inv = m.data[r][c].recip();
            for x in m.data[r].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = m.data[r].clone();
            for i in 0..m.rows {
                if i != r && !m.data[i][c].is_zero() {
                    let f = m.data[i][c].clone();
                    for (x, y) in m.data[i].iter_mut().zip(&pivot_row) {
                        if !y.is_zero() {
                            *x -= &f * y;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (k, &p) in pivots.iter().enumerate() {
                    v[p] = -r.data[k][f].clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hcat(&QMatrix::from_columns(self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = r.data[k][self.cols].clone();
        }
        Some(x)
    }

    /// A maximal independent subset of the columns, by index.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }
}

/// Basis of the span of `vectors` in `Q^dim`.
pub fn span_basis(dim: usize, vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let m = QMatrix::from_columns(dim, vectors);
    m.independent_columns().into_iter().map(|j| vectors[j].clone()).collect()
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Greedily extends `base` (assumed independent) by members of `candidates`
/// and returns the indices of the candidates that were added.
pub fn extend_basis(dim: usize, base: &[Vec<Rational>], candidates: &[Vec<Rational>]) -> Vec<usize> {
    let mut cols: Vec<Vec<Rational>> = base.to_vec();
    cols.extend(candidates.iter().cloned());
    let m = QMatrix::from_columns(dim, &cols);
    m.independent_columns().into_iter().filter(|&j| j >= base.len()).map(|j| j - base.len()).collect()
}

/// The subquotient `Z / B` of `Q^dim` with `B ⊆ Z`, with chosen
/// representatives for a basis of the quotient.
#[derive(Clone, Debug)]
pub struct Subquotient {
    dim: usize,
    boundary_basis: Vec<Vec<Rational>>,
    reps: Vec<Vec<Rational>>,
    solver: QMatrix,
}

impl Subquotient {
    pub fn new(dim: usize, cycles: &[Vec<Rational>], boundaries: &[Vec<Rational>]) -> Self {
        let boundary_basis = span_basis(dim, boundaries);
        let added = extend_basis(dim, &boundary_basis, cycles);
        let reps: Vec<Vec<Rational>> = added.into_iter().map(|i| cycles[i].clone()).collect();
        let mut cols = boundary_basis.clone();
        cols.extend(reps.iter().cloned());
        let solver = QMatrix::from_columns(dim, &cols);
        Subquotient { dim, boundary_basis, reps, solver }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[Vec<Rational>] {
        &self.reps
    }

    pub fn boundary_basis(&self) -> &[Vec<Rational>] {
        &self.boundary_basis
    }

    /// Quotient coordinates of a vector of `Z`; `None` when it is not in `Z`.
    pub fn coords(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if self.solver.cols() == 0 {
            return is_zero_vector(v).then(Vec::new);
        }
        let x = self.solver.solve(v)?;
        Some(x[self.boundary_basis.len()..].to_vec())
    }
}

//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use super::rat::{Rat, RatVec};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    cols: usize,
    rows: Vec<RatVec>,
}

impl Matrix {
    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<RatVec>) -> Self {
        assert!(rows.iter().all(|r| r.dim() == cols), "ragged matrix rows");
        Self { cols, rows }
    }

    /// Builds a `rows x columns.len()` matrix from its columns.
    pub fn from_columns(rows: usize, columns: &[RatVec]) -> Self {
        assert!(columns.iter().all(|c| c.dim() == rows), "ragged matrix columns");
        let data = (0..rows)
            .map(|r| columns.iter().map(|c| c[r].clone()).collect())
            .collect();
        Self::from_rows(columns.len(), data)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_rows(n, (0..n).map(|k| RatVec::unit(n, k)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_rows(cols, vec![RatVec::zeros(cols); rows])
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[RatVec] {
        &self.rows
    }

    pub fn row(&self, r: usize) -> &RatVec {
        &self.rows[r]
    }

    pub fn column(&self, c: usize) -> RatVec {
        self.rows.iter().map(|r| r[c].clone()).collect()
    }

    pub fn columns(&self) -> Vec<RatVec> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.rows[r][c]
    }

    pub fn apply(&self, x: &RatVec) -> RatVec {
        assert_eq!(x.dim(), self.cols, "matrix-vector dimension mismatch");
        self.rows.iter().map(|r| r.dot(x)).collect()
    }

    /// `xᵀ M`, i.e. `Mᵀ x`.
    pub fn apply_transpose(&self, x: &RatVec) -> RatVec {
        assert_eq!(x.dim(), self.nrows(), "transpose-vector dimension mismatch");
        RatVec::combination(self.cols, x.coords(), &self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_rows(self.nrows(), self.columns())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.nrows(), "matrix product dimension mismatch");
        let rows = self.rows.iter().map(|r| other.apply_transpose(r)).collect();
        Matrix::from_rows(other.ncols(), rows)
    }

    pub fn scale(&self, factor: &Rat) -> Matrix {
        Matrix::from_rows(self.cols, self.rows.iter().map(|r| r.scale(factor)).collect())
    }

    pub fn rank(&self) -> usize {
        rank(&self.rows)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.nrows();
        if n != self.cols {
            return None;
        }
        let augmented: Vec<Vec<Rat>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(k, r)| {
                let mut row = r.coords().to_vec();
                row.extend(RatVec::unit(n, k).into_coords());
                row
            })
            .collect();
        let (reduced, pivots) = rref(augmented, n);
        if pivots.len() < n {
            return None;
        }
        let rows = reduced
            .into_iter()
            .take(n)
            .map(|r| RatVec::new(r[n..].to_vec()))
            .collect();
        Some(Matrix::from_rows(n, rows))
    }
}

/// Reduced row echelon form, pivoting only within the first `pivot_cols` columns.
/// Returns the reduced rows and the pivot column of each leading row.
pub fn rref(mut rows: Vec<Vec<Rat>>, pivot_cols: usize) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..pivot_cols {
        if lead == rows.len() {
            break;
        }
        let Some(found) = (lead..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(lead, found);
        let inv = rows[lead][col].recip();
        for entry in rows[lead].iter_mut() {
            *entry *= &inv;
        }
        let pivot_row = rows[lead].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == lead || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (entry, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *entry -= &factor * p;
                }
            }
        }
        pivots.push(col);
        lead += 1;
    }
    (rows, pivots)
}

pub fn rank(rows: &[RatVec]) -> usize {
    let Some(width) = rows.first().map(RatVec::dim) else {
        return 0;
    };
    let data = rows.iter().map(|r| r.coords().to_vec()).collect();
    rref(data, width).1.len()
}

/// Some solution of `A x = b` (free variables set to zero), or `None` when inconsistent.
pub fn solve(a: &Matrix, b: &RatVec) -> Option<RatVec> {
    assert_eq!(a.nrows(), b.dim(), "right-hand side dimension mismatch");
    let n = a.ncols();
    let augmented = a
        .rows()
        .iter()
        .zip(b.iter())
        .map(|(r, v)| {
            let mut row = r.coords().to_vec();
            row.push(v.clone());
            row
        })
        .collect();
    let (reduced, pivots) = rref(augmented, n);
    // a zero row with nonzero right-hand side means no solution
    if reduced.iter().skip(pivots.len()).any(|r| !r[n].is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (row, &col) in reduced.iter().zip(&pivots) {
        x[col] = row[n].clone();
    }
    Some(RatVec::new(x))
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace(a: &Matrix) -> Vec<RatVec> {
    let n = a.ncols();
    let data = a.rows().iter().map(|r| r.coords().to_vec()).collect();
    let (reduced, pivots) = rref(data, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); n];
            v[f] = Rat::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            RatVec::new(v)
        })
        .collect()
}

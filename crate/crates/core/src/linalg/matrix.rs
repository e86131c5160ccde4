use std::fmt;

use crate::field::Field;
use crate::linalg::{LinalgError, SparseVec};

/// Sparse matrix stored by columns.
///
/// Column `j` is the image of the `j`-th source basis vector, which is how
/// every map in this crate is assembled.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix<F> {
    rows: usize,
    cols: Vec<SparseVec<F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![SparseVec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, cols: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseVec<F>>) -> Result<Self, LinalgError> {
        for c in &cols {
            if let Some(m) = c.max_index() {
                if m >= rows {
                    return Err(LinalgError::IndexOutOfBounds { index: m, bound: rows });
                }
            }
        }
        Ok(SparseMatrix { rows, cols })
    }

    pub(crate) fn from_columns_unchecked(rows: usize, cols: Vec<SparseVec<F>>) -> Self {
        debug_assert!(cols.iter().all(|c| c.max_index().is_none_or(|m| m < rows)));
        SparseMatrix { rows, cols }
    }

    /// Builds from (row, col, value) triplets; repeated positions are summed
    /// and zeros dropped, so the result is independent of insertion order.
    pub fn from_triplets(rows: usize, cols: usize, triplets: Vec<(usize, usize, F)>) -> Result<Self, LinalgError> {
        let mut buckets: Vec<Vec<(usize, F)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows {
                return Err(LinalgError::IndexOutOfBounds { index: r, bound: rows });
            }
            if c >= cols {
                return Err(LinalgError::IndexOutOfBounds { index: c, bound: cols });
            }
            buckets[c].push((r, v));
        }
        Ok(SparseMatrix { rows, cols: buckets.into_iter().map(SparseVec::from_pairs).collect() })
    }

    pub fn from_dense(rows: &[Vec<F>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let cols = (0..ncols)
            .map(|j| SparseVec::from_pairs((0..nrows).map(|i| (i, rows[i][j].clone())).collect()))
            .collect();
        SparseMatrix { rows: nrows, cols }
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let mut out = vec![vec![F::zero(); self.ncols()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col.iter() {
                out[i][j] = v.clone();
            }
        }
        out
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols.len())
    }

    pub fn column(&self, j: usize) -> &SparseVec<F> {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec<F>] {
        &self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn get(&self, row: usize, col: usize) -> F {
        self.cols[col].get(row)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, v)| (i, j, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut buckets: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col.iter() {
                buckets[i].push((j, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols.len(),
            cols: buckets.into_iter().map(SparseVec::from_sorted_unchecked).collect(),
        }
    }

    pub fn mul_vec(&self, v: &SparseVec<F>) -> Result<SparseVec<F>, LinalgError> {
        if let Some(m) = v.max_index() {
            if m >= self.ncols() {
                return Err(LinalgError::DimensionMismatch {
                    context: "matrix-vector product",
                    expected: self.ncols(),
                    found: m + 1,
                });
            }
        }
        let mut pairs = Vec::new();
        for (j, c) in v.iter() {
            for (i, a) in self.cols[j].iter() {
                pairs.push((i, a.mul(c)));
            }
        }
        Ok(SparseVec::from_pairs(pairs))
    }

    pub fn mul_dense_vec(&self, v: &[F]) -> Result<Vec<F>, LinalgError> {
        if v.len() != self.ncols() {
            return Err(LinalgError::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.ncols(),
                found: v.len(),
            });
        }
        Ok(self.mul_vec(&SparseVec::from_dense(v))?.to_dense(self.rows))
    }

    /// `self * other`
    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.ncols() != other.nrows() {
            return Err(LinalgError::DimensionMismatch {
                context: "matrix product",
                expected: self.ncols(),
                found: other.nrows(),
            });
        }
        let cols = other.cols.iter().map(|c| self.mul_vec(c).expect("checked shape")).collect();
        Ok(SparseMatrix { rows: self.rows, cols })
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.add_scaled(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.add_scaled(&F::one().neg(), other)
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: &F, other: &Self) -> Result<Self, LinalgError> {
        if self.shape() != other.shape() {
            return Err(LinalgError::ShapeMismatch { left: self.shape(), right: other.shape() });
        }
        let cols = self.cols.iter().zip(&other.cols).map(|(a, b)| a.add_scaled(c, b)).collect();
        Ok(SparseMatrix { rows: self.rows, cols })
    }

    pub fn scale(&self, c: &F) -> Self {
        SparseMatrix { rows: self.rows, cols: self.cols.iter().map(|col| col.scale(c)).collect() }
    }

    /// Kronecker product; index `(i, j)` of the result is `i * other.dim + j`.
    pub fn kron(&self, other: &Self) -> Self {
        let (r2, c2) = other.shape();
        let mut cols = Vec::with_capacity(self.ncols() * c2);
        for a in &self.cols {
            for b in &other.cols {
                let mut entries = Vec::with_capacity(a.nnz() * b.nnz());
                for (i, x) in a.iter() {
                    for (k, y) in b.iter() {
                        entries.push((i * r2 + k, x.mul(y)));
                    }
                }
                cols.push(SparseVec::from_sorted_unchecked(entries));
            }
        }
        SparseMatrix { rows: self.rows * r2, cols }
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let offset = self.rows;
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().map(|c| c.reindex(|i| i + offset)));
        SparseMatrix { rows: self.rows + other.rows, cols }
    }

    /// Restricts to the given columns, in the given order.
    pub fn select_columns(&self, which: &[usize]) -> Self {
        SparseMatrix { rows: self.rows, cols: which.iter().map(|&j| self.cols[j].clone()).collect() }
    }

    /// Restricts to the given rows; row `which[k]` becomes row `k`.
    pub fn select_rows(&self, which: &[usize]) -> Self {
        let mut position = vec![usize::MAX; self.rows];
        for (k, &r) in which.iter().enumerate() {
            position[r] = k;
        }
        let cols = self
            .cols
            .iter()
            .map(|c| {
                SparseVec::from_pairs(
                    c.iter().filter(|(i, _)| position[*i] != usize::MAX).map(|(i, v)| (position[i], v.clone())).collect(),
                )
            })
            .collect();
        SparseMatrix { rows: which.len(), cols }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch {
                context: "horizontal concatenation",
                expected: self.rows,
                found: other.rows,
            });
        }
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        Ok(SparseMatrix { rows: self.rows, cols })
    }
}

impl<F: fmt::Debug> fmt::Debug for SparseMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix {}x{} {{", self.rows, self.cols.len())?;
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col.raw_entries() {
                write!(f, " ({i},{j}):{v:?}")?;
            }
        }
        f.write_str(" }")
    }
}

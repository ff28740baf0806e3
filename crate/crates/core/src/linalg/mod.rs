//! Exact sparse linear algebra: matrices, row reduction and subspaces.

mod echelon;
mod mat;

use thiserror::Error;

use crate::scalars::{FieldSpec, Scalar};

pub use echelon::EchelonBuilder;
pub use mat::{Mat, SparseRow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("operands live over different fields")]
    FieldMismatch,
}

/// A subspace of `field^n`, held as the canonical RREF of a spanning set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        Subspace { basis: Mat::zeros(field, 0, n), pivots: Vec::new() }
    }

    pub fn full(field: &FieldSpec, n: usize) -> Self {
        Subspace { basis: Mat::identity(field, n), pivots: (0..n).collect() }
    }

    /// Span of the rows of `m`.
    pub fn row_span(m: &Mat) -> Self {
        let mut b = EchelonBuilder::new(m.field(), m.cols());
        b.insert_mat_rows(m).expect("same shape");
        b.into()
    }

    /// Span of the columns of `m`.
    pub fn col_span(m: &Mat) -> Self {
        Subspace::row_span(&m.transpose())
    }

    pub fn field(&self) -> &FieldSpec {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Basis vectors as the rows of an RREF matrix.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(LinalgError::ShapeMismatch(format!("ambient {} vs {}", self.ambient_dim(), other.ambient_dim())));
        }
        let mut b = EchelonBuilder::from_subspace(self);
        b.insert_mat_rows(&other.basis)?;
        Ok(b.into())
    }

    /// Whether `other` is contained in `self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool, LinalgError> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(LinalgError::ShapeMismatch(format!("ambient {} vs {}", self.ambient_dim(), other.ambient_dim())));
        }
        let b = EchelonBuilder::from_subspace(self);
        Ok(other.basis.sparse_rows().iter().all(|r| b.contains_row(r)))
    }

    /// Whether every column of `m` lies in the subspace.
    pub fn contains_columns(&self, m: &Mat) -> Result<bool, LinalgError> {
        if m.rows() != self.ambient_dim() {
            return Err(LinalgError::ShapeMismatch(format!("vectors of length {} in ambient {}", m.rows(), self.ambient_dim())));
        }
        let b = EchelonBuilder::from_subspace(self);
        Ok(m.transpose().sparse_rows().iter().all(|r| b.contains_row(r)))
    }

    /// Normal form of each column of `m` modulo the subspace.
    pub fn reduce_columns(&self, m: &Mat) -> Mat {
        let b = EchelonBuilder::from_subspace(self);
        let rows = m.transpose().into_sparse_rows().into_iter().map(|r| b.reduce(r)).collect();
        Mat::from_sparse_rows(m.field(), m.rows(), rows).transpose()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(LinalgError::ShapeMismatch(format!("ambient {} vs {}", self.ambient_dim(), other.ambient_dim())));
        }
        // u = a·U = b·V  <=>  (a, -b) in ker [U; V]^T
        let stacked = self.basis.vstack(&other.basis)?.transpose();
        let k = kernel(&stacked);
        let coeffs = k.basis().select_cols(&(0..self.dim()).collect::<Vec<_>>());
        Ok(Subspace::row_span(&coeffs.matmul(&self.basis)?))
    }

    /// Quotient coordinates from the non-pivot columns.
    ///
    /// `section` is `n x q` with the non-pivot unit vectors as columns;
    /// `projection` is `q x n`, kills the subspace and satisfies
    /// `projection · section = id`.
    pub fn pivot_complement(&self) -> (Mat, Mat) {
        let n = self.ambient_dim();
        let field = self.field();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; n];
            for &p in &self.pivots {
                v[p] = true;
            }
            v
        };
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut qpos = vec![usize::MAX; n];
        for (k, &c) in free.iter().enumerate() {
            qpos[c] = k;
        }
        let one = field.one();
        let section = Mat::from_triplets(field, n, free.len(), free.iter().enumerate().map(|(k, &c)| (c, k, one.clone())));
        let mut trip: Vec<(usize, usize, Scalar)> = free.iter().enumerate().map(|(k, &c)| (k, c, one.clone())).collect();
        for (r, &p) in self.pivots.iter().enumerate() {
            for (c, v) in self.basis.row(r) {
                if *c != p {
                    trip.push((qpos[*c], p, -v));
                }
            }
        }
        let projection = Mat::from_triplets(field, free.len(), n, trip);
        (section, projection)
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim() - self.dim()
    }
}

impl From<EchelonBuilder> for Subspace {
    fn from(b: EchelonBuilder) -> Self {
        let (basis, pivots) = b.finish();
        Subspace { basis, pivots }
    }
}

/// Reduced row-echelon form and pivot columns.
pub fn rref(a: &Mat) -> (Mat, Vec<usize>) {
    let mut b = EchelonBuilder::new(a.field(), a.cols());
    b.insert_mat_rows(a).expect("same shape");
    b.finish()
}

pub fn rank(a: &Mat) -> usize {
    let mut b = EchelonBuilder::new(a.field(), a.cols());
    b.insert_mat_rows(a).expect("same shape");
    b.rank()
}

/// Null space `{x : a x = 0}`.
pub fn kernel(a: &Mat) -> Subspace {
    let (r, pivots) = rref(a);
    let n = a.cols();
    let field = a.field();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let one = field.one();
    let mut trip = Vec::new();
    let mut k = 0;
    for f in (0..n).filter(|&c| !is_pivot[c]) {
        trip.push((k, f, one.clone()));
        for (row, &p) in pivots.iter().enumerate() {
            let v = r.get(row, f);
            if !v.is_zero() {
                trip.push((k, p, -v));
            }
        }
        k += 1;
    }
    Subspace::row_span(&Mat::from_triplets(field, k, n, trip))
}

/// Column space of `a`.
pub fn image(a: &Mat) -> Subspace {
    Subspace::col_span(a)
}

pub fn invert(a: &Mat) -> Result<Mat, LinalgError> {
    let n = a.rows();
    if a.cols() != n {
        return Err(LinalgError::ShapeMismatch(format!("invert {}x{}", n, a.cols())));
    }
    let aug = a.hstack(&Mat::identity(a.field(), n))?;
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(LinalgError::Singular);
    }
    Ok(r.select_cols(&(n..2 * n).collect::<Vec<_>>()))
}

/// Some `x` with `a x = b`, or `None` when the system is inconsistent.
pub fn solve_linear(a: &Mat, b: &Mat) -> Result<Option<Mat>, LinalgError> {
    if a.rows() != b.rows() {
        return Err(LinalgError::ShapeMismatch(format!("solve {:?} x = {:?}", a.shape(), b.shape())));
    }
    let n = a.cols();
    let (r, pivots) = rref(&a.hstack(b)?);
    if pivots.last().is_some_and(|&p| p >= n) {
        return Ok(None);
    }
    let mut trip = Vec::new();
    for (row, &p) in pivots.iter().enumerate() {
        for (c, v) in r.row(row) {
            if *c >= n {
                trip.push((p, c - n, v.clone()));
            }
        }
    }
    Ok(Some(Mat::from_triplets(a.field(), n, b.cols(), trip)))
}

#[cfg(test)]
mod tests;

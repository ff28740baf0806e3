use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::scalars::{FieldSpec, Scalar};

use super::LinalgError;

pub type SparseRow = Vec<(usize, Scalar)>;

/// Exact matrix stored as sorted sparse rows.
///
/// A morphism `V -> W` is a `dim W x dim V` matrix acting on column vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: FieldSpec,
    nrows: usize,
    ncols: usize,
    data: Vec<SparseRow>,
}

/// `target + c * src` on sorted sparse rows.
pub(crate) fn row_axpy(target: &[(usize, Scalar)], c: &Scalar, src: &[(usize, Scalar)]) -> SparseRow {
    let mut out = Vec::with_capacity(target.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < src.len() {
        let ti = target.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let sj = src.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ti < sj {
            out.push(target[i].clone());
            i += 1;
        } else if sj < ti {
            out.push((sj, c * &src[j].1));
            j += 1;
        } else {
            let v = &target[i].1 + &(c * &src[j].1);
            if !v.is_zero() {
                out.push((ti, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub(crate) fn row_scale(row: &[(usize, Scalar)], c: &Scalar) -> SparseRow {
    if c.is_zero() {
        return Vec::new();
    }
    row.iter().map(|(k, v)| (*k, v * c)).collect()
}

fn accumulate(acc: &mut BTreeMap<usize, Scalar>, col: usize, v: Scalar) {
    use std::collections::btree_map::Entry;
    match acc.entry(col) {
        Entry::Vacant(e) => {
            e.insert(v);
        }
        Entry::Occupied(mut e) => {
            let s = e.get() + &v;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

fn finish_acc(acc: BTreeMap<usize, Scalar>) -> SparseRow {
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

impl Mat {
    pub fn zeros(field: &FieldSpec, nrows: usize, ncols: usize) -> Self {
        Mat { field: field.clone(), nrows, ncols, data: vec![Vec::new(); nrows] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let one = field.one();
        Mat { field: field.clone(), nrows: n, ncols: n, data: (0..n).map(|i| vec![(i, one.clone())]).collect() }
    }

    /// The `1 x 1` matrix holding `s`.
    pub fn scalar(field: &FieldSpec, s: Scalar) -> Self {
        Mat::from_triplets(field, 1, 1, [(0, 0, s)])
    }

    pub fn from_dense(field: &FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows);
        for r in rows {
            if r.len() != ncols {
                return Err(LinalgError::ShapeMismatch(format!("ragged row of length {} (expected {ncols})", r.len())));
            }
            let mut row = Vec::new();
            for (j, v) in r.into_iter().enumerate() {
                if !field.contains(&v) {
                    return Err(LinalgError::FieldMismatch);
                }
                if !v.is_zero() {
                    row.push((j, v));
                }
            }
            data.push(row);
        }
        Ok(Mat { field: field.clone(), nrows, ncols, data })
    }

    /// Builds from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets<I>(field: &FieldSpec, nrows: usize, ncols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut acc: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); nrows];
        for (i, j, v) in entries {
            assert!(i < nrows && j < ncols, "triplet ({i},{j}) out of bounds {nrows}x{ncols}");
            if !v.is_zero() {
                accumulate(&mut acc[i], j, v);
            }
        }
        Mat { field: field.clone(), nrows, ncols, data: acc.into_iter().map(finish_acc).collect() }
    }

    pub fn from_sparse_rows(field: &FieldSpec, ncols: usize, rows: Vec<SparseRow>) -> Self {
        debug_assert!(rows.iter().all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)));
        debug_assert!(rows.iter().all(|r| r.iter().all(|(c, v)| *c < ncols && !v.is_zero())));
        Mat { field: field.clone(), nrows: rows.len(), ncols, data: rows }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.nrows
    }

    pub fn cols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn row(&self, i: usize) -> &[(usize, Scalar)] {
        &self.data[i]
    }

    pub fn sparse_rows(&self) -> &[SparseRow] {
        &self.data
    }

    pub fn into_sparse_rows(self) -> Vec<SparseRow> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match self.data[i].binary_search_by_key(&j, |e| e.0) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        (0..self.nrows).map(|i| (0..self.ncols).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.nrows == self.ncols
            && self.data.iter().enumerate().all(|(i, r)| r.len() == 1 && r[0].0 == i && r[0].1.is_one())
    }

    /// The single entry of a `1 x 1` matrix.
    pub fn as_scalar(&self) -> Result<Scalar, LinalgError> {
        if self.shape() != (1, 1) {
            return Err(LinalgError::ShapeMismatch(format!("expected 1x1, got {}x{}", self.nrows, self.ncols)));
        }
        Ok(self.get(0, 0))
    }

    fn check_field(&self, other: &Mat) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        Ok(())
    }

    pub fn transpose(&self) -> Mat {
        let mut data = vec![Vec::new(); self.ncols];
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in r {
                data[*j].push((i, v.clone()));
            }
        }
        Mat { field: self.field.clone(), nrows: self.ncols, ncols: self.nrows, data }
    }

    pub fn try_add(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(LinalgError::ShapeMismatch(format!("add {:?} + {:?}", self.shape(), other.shape())));
        }
        let one = self.field.one();
        let data = self.data.par_iter().zip(other.data.par_iter()).map(|(a, b)| row_axpy(a, &one, b)).collect();
        Ok(Mat { field: self.field.clone(), nrows: self.nrows, ncols: self.ncols, data })
    }

    pub fn try_sub(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.try_add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        let data = self.data.par_iter().map(|r| row_scale(r, c)).collect();
        Mat { field: self.field.clone(), nrows: self.nrows, ncols: self.ncols, data }
    }

    pub fn neg(&self) -> Mat {
        self.scale(&self.field.from_int(-1))
    }

    pub fn matmul(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.check_field(other)?;
        if self.ncols != other.nrows {
            return Err(LinalgError::ShapeMismatch(format!("matmul {:?} * {:?}", self.shape(), other.shape())));
        }
        let data = self
            .data
            .par_iter()
            .map(|r| {
                let mut acc = BTreeMap::new();
                for (k, a) in r {
                    for (j, b) in &other.data[*k] {
                        accumulate(&mut acc, *j, a * b);
                    }
                }
                finish_acc(acc)
            })
            .collect();
        Ok(Mat { field: self.field.clone(), nrows: self.nrows, ncols: other.ncols, data })
    }

    /// Kronecker product; entry `((i,k),(j,l))` sits at `(i*rows(b)+k, j*cols(b)+l)`.
    pub fn kron(&self, other: &Mat) -> Mat {
        assert_eq!(self.field, other.field, "kron across fields");
        let (br, bc) = other.shape();
        let data = (0..self.nrows * br)
            .into_par_iter()
            .map(|row| {
                let (i, k) = (row / br, row % br);
                let mut out = Vec::with_capacity(self.data[i].len() * other.data[k].len());
                for (j, a) in &self.data[i] {
                    for (l, b) in &other.data[k] {
                        out.push((j * bc + l, a * b));
                    }
                }
                out
            })
            .collect();
        Mat { field: self.field.clone(), nrows: self.nrows * br, ncols: self.ncols * bc, data }
    }

    /// Kronecker product of a list; the empty list gives the `1 x 1` identity.
    pub fn kron_all<'a, I: IntoIterator<Item = &'a Mat>>(field: &FieldSpec, mats: I) -> Mat {
        mats.into_iter().fold(Mat::identity(field, 1), |acc, m| acc.kron(m))
    }

    /// `(id_left ⊗ local ⊗ id_right) · self`, without forming the Kronecker product.
    pub fn apply_local(&self, left: usize, local: &Mat, right: usize) -> Result<Mat, LinalgError> {
        self.check_field(local)?;
        if left * local.ncols * right != self.nrows {
            return Err(LinalgError::ShapeMismatch(format!(
                "apply_local: {left}*{}*{right} != {}",
                local.ncols, self.nrows
            )));
        }
        let (lr, lc) = local.shape();
        let out_rows = left * lr * right;
        let data = (0..out_rows)
            .into_par_iter()
            .map(|row| {
                let a = row / (lr * right);
                let ip = (row / right) % lr;
                let b = row % right;
                let mut out: SparseRow = Vec::new();
                for (i, c) in &local.data[ip] {
                    let src = &self.data[a * lc * right + i * right + b];
                    if !src.is_empty() {
                        out = row_axpy(&out, c, src);
                    }
                }
                out
            })
            .collect();
        Ok(Mat { field: self.field.clone(), nrows: out_rows, ncols: self.ncols, data })
    }

    /// `self · (id_left ⊗ local ⊗ id_right)`.
    pub fn compose_local(&self, left: usize, local: &Mat, right: usize) -> Result<Mat, LinalgError> {
        Ok(self.transpose().apply_local(left, &local.transpose(), right)?.transpose())
    }

    pub fn hstack(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.check_field(other)?;
        if self.nrows != other.nrows {
            return Err(LinalgError::ShapeMismatch(format!("hstack {:?} | {:?}", self.shape(), other.shape())));
        }
        let off = self.ncols;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().cloned().chain(b.iter().map(|(j, v)| (j + off, v.clone()))).collect())
            .collect();
        Ok(Mat { field: self.field.clone(), nrows: self.nrows, ncols: self.ncols + other.ncols, data })
    }

    pub fn vstack(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.check_field(other)?;
        if self.ncols != other.ncols {
            return Err(LinalgError::ShapeMismatch(format!("vstack {:?} / {:?}", self.shape(), other.shape())));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Mat { field: self.field.clone(), nrows: data.len(), ncols: self.ncols, data })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat { field: self.field.clone(), nrows: idx.len(), ncols: self.ncols, data: idx.iter().map(|&i| self.data[i].clone()).collect() }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        self.transpose().select_rows(idx).transpose()
    }

    /// Column `j` as an `n x 1` matrix.
    pub fn column(&self, j: usize) -> Mat {
        self.select_cols(&[j])
    }

    /// Relabels columns: column `j` of `self` moves to column `perm[j]`.
    pub fn permute_cols(&self, perm: &[usize]) -> Mat {
        assert_eq!(perm.len(), self.ncols);
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut out: SparseRow = r.iter().map(|(j, v)| (perm[*j], v.clone())).collect();
                out.sort_by_key(|e| e.0);
                out
            })
            .collect();
        Mat { field: self.field.clone(), nrows: self.nrows, ncols: self.ncols, data }
    }

    /// Relabels rows: row `i` of `self` moves to row `perm[i]`.
    pub fn permute_rows(&self, perm: &[usize]) -> Mat {
        assert_eq!(perm.len(), self.nrows);
        let mut data = vec![Vec::new(); self.nrows];
        for (i, r) in self.data.iter().enumerate() {
            data[perm[i]] = r.clone();
        }
        Mat { field: self.field.clone(), nrows: self.nrows, ncols: self.ncols, data }
    }

    /// Direct sum `self ⊕ other` as a block-diagonal matrix.
    pub fn block_diag(&self, other: &Mat) -> Mat {
        let (r, c) = self.shape();
        let mut data = self.data.clone();
        data.extend(other.data.iter().map(|row| row.iter().map(|(j, v)| (j + c, v.clone())).collect::<SparseRow>()));
        Mat { field: self.field.clone(), nrows: r + other.nrows, ncols: c + other.ncols, data }
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.nrows, self.ncols, self.field)?;
        if self.nrows * self.ncols <= 256 {
            for r in self.to_dense() {
                let cells: Vec<String> = r.iter().map(|s| s.format(&self.field)).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        } else {
            for (i, j, v) in self.entries().take(64) {
                writeln!(f, "  ({i},{j}) = {}", v.format(&self.field))?;
            }
        }
        Ok(())
    }
}

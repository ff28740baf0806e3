use std::collections::HashMap;

use crate::scalars::{FieldSpec, Scalar};

use super::mat::{row_axpy, row_scale, SparseRow};
use super::{LinalgError, Mat};

/// Incremental row-echelon builder.
///
/// Each stored row is monic at its leading column and no stored row has a
/// nonzero entry at an earlier row's leading column ahead of its own lead.
/// Inserting reduces the new row against all stored rows.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    field: FieldSpec,
    ncols: usize,
    rows: Vec<SparseRow>,
    pivot_of: HashMap<usize, usize>,
}

impl EchelonBuilder {
    pub fn new(field: &FieldSpec, ncols: usize) -> Self {
        EchelonBuilder { field: field.clone(), ncols, rows: Vec::new(), pivot_of: HashMap::new() }
    }

    pub fn from_subspace(s: &super::Subspace) -> Self {
        let mut b = EchelonBuilder::new(s.field(), s.ambient_dim());
        for r in s.basis().sparse_rows() {
            b.pivot_of.insert(r[0].0, b.rows.len());
            b.rows.push(r.clone());
        }
        b
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Removes every stored leading column from `row`.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut cursor = 0;
        loop {
            let hit = row.iter().find(|(c, _)| *c >= cursor && self.pivot_of.contains_key(c)).map(|(c, v)| (*c, v.clone()));
            let Some((c, v)) = hit else { return row };
            let pr = &self.rows[self.pivot_of[&c]];
            row = row_axpy(&row, &(-&v), pr);
            cursor = c + 1;
        }
    }

    /// Inserts a row; returns true when it enlarged the span.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        if self.is_full() {
            return false;
        }
        let r = self.reduce(row);
        let Some((lead, lc)) = r.first().cloned() else { return false };
        let r = if lc.is_one() { r } else { row_scale(&r, &lc.inv().expect("nonzero lead")) };
        self.pivot_of.insert(lead, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn insert_mat_rows(&mut self, m: &Mat) -> Result<usize, LinalgError> {
        if m.cols() != self.ncols {
            return Err(LinalgError::ShapeMismatch(format!("builder has {} columns, got {}", self.ncols, m.cols())));
        }
        if m.field() != &self.field {
            return Err(LinalgError::FieldMismatch);
        }
        let mut added = 0;
        for r in m.sparse_rows() {
            if self.insert(r.clone()) {
                added += 1;
            }
        }
        Ok(added)
    }

    pub fn contains_row(&self, row: &[(usize, Scalar)]) -> bool {
        self.reduce(row.to_vec()).is_empty()
    }

    /// Back-substitutes to the reduced row-echelon form.
    pub fn finish(self) -> (Mat, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rows[i][0].0));
        let mut done: HashMap<usize, SparseRow> = HashMap::new();
        for i in order {
            let mut row = self.rows[i].clone();
            let lead = row[0].0;
            loop {
                let hit = row
                    .iter()
                    .find(|(c, _)| *c != lead && done.contains_key(c))
                    .map(|(c, v)| (*c, v.clone()));
                let Some((c, v)) = hit else { break };
                row = row_axpy(&row, &(-&v), &done[&c]);
            }
            done.insert(lead, row);
        }
        let mut pivots: Vec<usize> = done.keys().copied().collect();
        pivots.sort_unstable();
        let rows = pivots.iter().map(|p| done.remove(p).unwrap()).collect();
        (Mat::from_sparse_rows(&self.field, self.ncols, rows), pivots)
    }
}

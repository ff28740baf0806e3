//! Exact equality checks that report a concrete counterexample.

use std::fmt;

use serde::Serialize;

use crate::linalg::Mat;

/// A column where two morphisms disagree, with the nonzero entries of `lhs - rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub context: String,
    pub column: Option<usize>,
    pub difference: Vec<(usize, String)>,
}

impl Witness {
    pub fn message(context: impl Into<String>) -> Self {
        Witness { context: context.into(), column: None, difference: Vec::new() }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.context)?;
        if let Some(c) = self.column {
            write!(f, " at basis vector {c}")?;
        }
        if !self.difference.is_empty() {
            let parts: Vec<String> = self.difference.iter().take(8).map(|(i, v)| format!("[{i}] {v}")).collect();
            write!(f, "; lhs-rhs = {}", parts.join(", "))?;
            if self.difference.len() > 8 {
                write!(f, ", ...")?;
            }
        }
        Ok(())
    }
}

/// `Ok` iff `lhs == rhs`; otherwise the first differing column.
pub fn mat_eq(lhs: &Mat, rhs: &Mat, context: &str) -> Result<(), Witness> {
    if lhs.shape() != rhs.shape() {
        return Err(Witness::message(format!("{context}: shapes {:?} vs {:?}", lhs.shape(), rhs.shape())));
    }
    if lhs == rhs {
        return Ok(());
    }
    let diff = lhs.try_sub(rhs).map_err(|e| Witness::message(format!("{context}: {e}")))?.transpose();
    let (col, row) = diff.sparse_rows().iter().enumerate().find(|(_, r)| !r.is_empty()).expect("matrices differ");
    Err(Witness {
        context: context.to_string(),
        column: Some(col),
        difference: row.iter().map(|(i, v)| (*i, v.format(lhs.field()))).collect(),
    })
}

/// `Ok` iff `m` is the zero matrix.
pub fn mat_zero(m: &Mat, context: &str) -> Result<(), Witness> {
    mat_eq(m, &Mat::zeros(m.field(), m.rows(), m.cols()), context)
}

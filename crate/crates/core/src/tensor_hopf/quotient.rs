use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::axioms::GradedBialgebra;
use crate::check::{mat_zero, Witness};
use crate::linalg::{Mat, Subspace};
use crate::scalars::FieldSpec;

#[derive(Debug, Clone, Error)]
pub enum QuotientError {
    #[error("not an ideal in degree {degree}: {witness}")]
    NotAnIdeal { degree: usize, witness: Witness },
    #[error("not a coideal in degree {degree}: {witness}")]
    NotACoideal { degree: usize, witness: Witness },
    #[error("antipode does not descend in degree {degree}: {witness}")]
    AntipodeDoesNotDescend { degree: usize, witness: Witness },
    #[error("braiding does not descend in degree {degree}: {witness}")]
    BraidingDoesNotDescend { degree: usize, witness: Witness },
    #[error("filtration step {from}->{to} does not descend: {witness}")]
    NotFiltered { from: usize, to: usize, witness: Witness },
    #[error("expected {expected} ideal components, got {got}")]
    WrongLength { expected: usize, got: usize },
}

/// A graded algebra modulo a graded ideal, with all structure maps in standard-monomial coordinates.
#[derive(Clone, Debug)]
pub struct GradedQuotient {
    field: FieldSpec,
    n_max: usize,
    ideals: Vec<Subspace>,
    sections: Vec<Mat>,
    projections: Vec<Mat>,
    unit: Mat,
    mul: BTreeMap<(usize, usize), (usize, Mat)>,
    comul: Vec<Vec<(usize, usize, Mat)>>,
    counit: Vec<Mat>,
    antipode: Vec<Option<Mat>>,
    braid: BTreeMap<(usize, usize), Mat>,
    embeds: Option<BTreeMap<(usize, usize), Mat>>,
}

/// Rows of `ideal_a ⊗ T_b` and `T_a ⊗ ideal_b` as columns of one matrix.
fn tensor_ideal_columns(ia: &Subspace, da: usize, ib: &Subspace, db: usize) -> Mat {
    let f = ia.field();
    let left = ia.basis().kron(&Mat::identity(f, db));
    let right = Mat::identity(f, da).kron(ib.basis());
    left.vstack(&right).expect("same width").transpose()
}

impl GradedQuotient {
    /// Quotients `amb` (components `0..=N`) by the given subspaces, checking every map descends.
    pub fn build<A: GradedBialgebra<Key = usize>>(amb: &A, ideals: Vec<Subspace>) -> Result<Self, QuotientError> {
        let ks = amb.components();
        let n_max = *ks.last().expect("nonempty");
        if ideals.len() != ks.len() {
            return Err(QuotientError::WrongLength { expected: ks.len(), got: ideals.len() });
        }
        let field = amb.field().clone();
        let (sections, projections): (Vec<Mat>, Vec<Mat>) = ideals.iter().map(|s| s.pivot_complement()).unzip();
        let dims: Vec<usize> = ks.iter().map(|k| amb.dim(k)).collect();
        let pairs: Vec<(usize, usize)> =
            ks.iter().flat_map(|&a| ks.iter().map(move |&b| (a, b))).filter(|(a, b)| amb.within(&[*a, *b])).collect();

        let muls: Vec<Result<((usize, usize), (usize, Mat)), QuotientError>> = pairs
            .par_iter()
            .map(|&(a, b)| {
                let (c, m) = amb.mul(&a, &b).expect("within truncation");
                let src = tensor_ideal_columns(&ideals[a], dims[a], &ideals[b], dims[b]);
                let img = projections[c].matmul(&m.matmul(&src).unwrap()).unwrap();
                mat_zero(&img, &format!("product {a}.{b}")).map_err(|witness| QuotientError::NotAnIdeal { degree: c, witness })?;
                let q = projections[c].matmul(&m).unwrap().matmul(&sections[a].kron(&sections[b])).unwrap();
                Ok(((a, b), (c, q)))
            })
            .collect();
        let mul = muls.into_iter().collect::<Result<BTreeMap<_, _>, _>>()?;

        let braids: Vec<Result<((usize, usize), Mat), QuotientError>> = pairs
            .par_iter()
            .map(|&(a, b)| {
                let m = amb.braid(&a, &b);
                let src = tensor_ideal_columns(&ideals[a], dims[a], &ideals[b], dims[b]);
                let proj = projections[b].kron(&projections[a]);
                mat_zero(&proj.matmul(&m.matmul(&src).unwrap()).unwrap(), &format!("crossing {a},{b}"))
                    .map_err(|witness| QuotientError::BraidingDoesNotDescend { degree: a + b, witness })?;
                Ok(((a, b), proj.matmul(&m).unwrap().matmul(&sections[a].kron(&sections[b])).unwrap()))
            })
            .collect();
        let braid = braids.into_iter().collect::<Result<BTreeMap<_, _>, _>>()?;

        let per_degree: Vec<Result<(Vec<(usize, usize, Mat)>, Mat, Option<Mat>), QuotientError>> = ks
            .par_iter()
            .map(|&a| {
                let ib = ideals[a].basis().transpose();
                let mut pieces = Vec::new();
                for (b, c, m) in amb.comul(&a) {
                    let proj = projections[b].kron(&projections[c]);
                    mat_zero(&proj.matmul(&m.matmul(&ib).unwrap()).unwrap(), &format!("coproduct piece {b}|{c}"))
                        .map_err(|witness| QuotientError::NotACoideal { degree: a, witness })?;
                    pieces.push((b, c, proj.matmul(&m).unwrap().matmul(&sections[a]).unwrap()));
                }
                let eps = amb.counit(&a);
                mat_zero(&eps.matmul(&ib).unwrap(), "counit").map_err(|witness| QuotientError::NotACoideal { degree: a, witness })?;
                let s = match amb.antipode(&a) {
                    None => None,
                    Some(s) => {
                        mat_zero(&projections[a].matmul(&s.matmul(&ib).unwrap()).unwrap(), "antipode")
                            .map_err(|witness| QuotientError::AntipodeDoesNotDescend { degree: a, witness })?;
                        Some(projections[a].matmul(&s).unwrap().matmul(&sections[a]).unwrap())
                    }
                };
                Ok((pieces, eps.matmul(&sections[a]).unwrap(), s))
            })
            .collect();
        let mut comul = Vec::new();
        let mut counit = Vec::new();
        let mut antipode = Vec::new();
        for r in per_degree {
            let (p, e, s) = r?;
            comul.push(p);
            counit.push(e);
            antipode.push(s);
        }
        let embeds = if amb.filtered() {
            let mut out = BTreeMap::new();
            for &a in &ks {
                for &b in ks.iter().filter(|&&b| b > a) {
                    let e = amb.embed(&a, &b);
                    let ib = ideals[a].basis().transpose();
                    mat_zero(&projections[b].matmul(&e.matmul(&ib).unwrap()).unwrap(), "inclusion")
                        .map_err(|witness| QuotientError::NotFiltered { from: a, to: b, witness })?;
                    out.insert((a, b), projections[b].matmul(&e).unwrap().matmul(&sections[a]).unwrap());
                }
            }
            Some(out)
        } else {
            None
        };
        let u = amb.unit_key();
        let unit = projections[u].matmul(&amb.unit()).unwrap();
        Ok(GradedQuotient { field, n_max, ideals, sections, projections, unit, mul, comul, counit, antipode, braid, embeds })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Quotient dimension per degree.
    pub fn dims(&self) -> Vec<usize> {
        self.sections.iter().map(Mat::cols).collect()
    }

    pub fn ideal(&self, n: usize) -> &Subspace {
        &self.ideals[n]
    }

    pub fn section(&self, n: usize) -> &Mat {
        &self.sections[n]
    }

    pub fn projection(&self, n: usize) -> &Mat {
        &self.projections[n]
    }

    /// Ambient coordinates of the standard monomials in degree `n`.
    pub fn standard_monomials(&self, n: usize) -> Vec<usize> {
        self.sections[n].transpose().sparse_rows().iter().map(|r| r[0].0).collect()
    }
}

impl GradedBialgebra for GradedQuotient {
    type Key = usize;

    fn field(&self) -> &FieldSpec {
        &self.field
    }

    fn components(&self) -> Vec<usize> {
        (0..=self.n_max).collect()
    }

    fn dim(&self, k: &usize) -> usize {
        self.sections[*k].cols()
    }

    fn unit_key(&self) -> usize {
        0
    }

    fn unit(&self) -> Mat {
        self.unit.clone()
    }

    fn mul(&self, a: &usize, b: &usize) -> Option<(usize, Mat)> {
        self.mul.get(&(*a, *b)).cloned()
    }

    fn comul(&self, a: &usize) -> Vec<(usize, usize, Mat)> {
        self.comul[*a].clone()
    }

    fn counit(&self, a: &usize) -> Mat {
        self.counit[*a].clone()
    }

    fn braid(&self, a: &usize, b: &usize) -> Mat {
        self.braid.get(&(*a, *b)).cloned().unwrap_or_else(|| panic!("crossing {a},{b} beyond truncation"))
    }

    fn antipode(&self, a: &usize) -> Option<Mat> {
        self.antipode[*a].clone()
    }

    fn filtered(&self) -> bool {
        self.embeds.is_some()
    }

    fn embed(&self, from: &usize, to: &usize) -> Mat {
        match (&self.embeds, from == to) {
            (_, true) => Mat::identity(&self.field, self.dim(from)),
            (Some(e), false) => e[&(*from, *to)].clone(),
            (None, false) => panic!("graded components do not embed: {from} -> {to}"),
        }
    }

    fn join(&self, a: &usize, b: &usize) -> usize {
        *a.max(b)
    }

    fn within(&self, keys: &[usize]) -> bool {
        keys.iter().sum::<usize>() <= self.n_max
    }
}

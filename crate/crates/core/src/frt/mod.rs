//! The FRT bialgebra `A(X) = {∨X^n ⊗ X^n}` and its quotients `A(X,R)`, `A(X;C)`, `A(X,R;C)`.
//!
//! A basis vector of `A_n` is `e^I ⊗ x_J`, stored at index `I·d^n + J`.
//! Printed as `t^I_J`. Bar variants replace `Ψ` by `Ψ⁻¹` and `R` by `R⁻¹`.

mod algebra;
mod filtered;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axioms::GradedBialgebra;
use crate::braided_cat::{dx_word, BraidedModel, Braiding, CatError, Letter};
use crate::linalg::{Mat, Subspace};
use crate::scalars::FieldSpec;
use crate::tensor_hopf::QuotientError;

pub use algebra::{build_frt, FrtAlgebra};
pub use filtered::{filtered_ideal, FilteredFrt};

#[derive(Debug, Error)]
pub enum FrtError {
    #[error("model has no pairing C")]
    MissingC,
    #[error("degree {degree} is outside the truncation {n_max}")]
    DegreeOutOfRange { degree: usize, n_max: usize },
    #[error("explicit FRT ideal differs from the generated one in degree {degree}")]
    IdealMismatch { degree: usize },
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Cat(#[from] CatError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    A,
    AR,
    AC,
    ARC,
}

impl Variant {
    pub fn uses_r(self) -> bool {
        matches!(self, Variant::AR | Variant::ARC)
    }

    pub fn uses_c(self) -> bool {
        matches!(self, Variant::AC | Variant::ARC)
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::A => "A",
            Variant::AR => "AR",
            Variant::AC => "AC",
            Variant::ARC => "ARC",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Straight,
    Bar,
}

impl Side {
    pub fn psi(self) -> Braiding {
        match self {
            Side::Straight => Braiding::Psi,
            Side::Bar => Braiding::PsiInv,
        }
    }

    pub fn r(self) -> Braiding {
        match self {
            Side::Straight => Braiding::R,
            Side::Bar => Braiding::RInv,
        }
    }
}

fn ids(model: &BraidedModel, n: usize) -> Mat {
    model.id(n)
}

/// `μ_{m,n} = Ψ_{∨X^m⊗X^m, ∨X^n} ⊗ X^n`.
pub fn a_mul(model: &BraidedModel, side: Side, m: usize, n: usize) -> Mat {
    model.crossing(side.psi(), &dx_word(m, m), &dx_word(n, 0)).kron(&ids(model, n))
}

/// `Δ_n = ∨X^n ⊗ ∩_n ⊗ X^n`.
pub fn a_comul(model: &BraidedModel, n: usize) -> Mat {
    ids(model, n).kron(&model.cap_n(n)).kron(&ids(model, n))
}

/// `ε_n = ∪_n`.
pub fn a_counit(model: &BraidedModel, n: usize) -> Mat {
    model.cup_n(n)
}

/// Right coaction `X^n -> X^n ⊗ A_n`, `∩_n ⊗ X^n`.
pub fn coaction_r(model: &BraidedModel, n: usize) -> Mat {
    model.cap_n(n).kron(&ids(model, n))
}

/// Free `A(X)` truncated at degree `N`.
pub struct FrtAmbient<'a> {
    model: &'a BraidedModel,
    side: Side,
    n_max: usize,
    muls: BTreeMap<(usize, usize), Mat>,
}

impl<'a> FrtAmbient<'a> {
    pub fn new(model: &'a BraidedModel, side: Side, n_max: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (0..=n_max).flat_map(|a| (0..=n_max - a).map(move |b| (a, b))).collect();
        let muls = pairs.into_par_iter().map(|(a, b)| ((a, b), a_mul(model, side, a, b))).collect();
        FrtAmbient { model, side, n_max, muls }
    }

    pub fn model(&self) -> &BraidedModel {
        self.model
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Cached `μ_{a,b}`.
    pub fn product(&self, a: usize, b: usize) -> &Mat {
        &self.muls[&(a, b)]
    }

    /// Columns spanning `A_a · g · A_b` over all `a + k + b = n`, for columns `g` in `A_k`.
    pub fn two_sided(&self, g: &Mat, k: usize, n: usize) -> Mat {
        let f = self.model.field();
        let blocks: Vec<Mat> = (0..=n - k)
            .into_par_iter()
            .map(|a| {
                let b = n - k - a;
                let inner = self.product(k, b).matmul(&g.kron(&ids(self.model, 2 * b))).expect("shape");
                self.product(a, k + b).matmul(&ids(self.model, 2 * a).kron(&inner)).expect("shape")
            })
            .collect();
        blocks.iter().fold(Mat::zeros(f, self.model.d().pow(2 * n as u32), 0), |acc, b| acc.hstack(b).expect("rows"))
    }
}

impl GradedBialgebra for FrtAmbient<'_> {
    type Key = usize;

    fn field(&self) -> &FieldSpec {
        self.model.field()
    }

    fn components(&self) -> Vec<usize> {
        (0..=self.n_max).collect()
    }

    fn dim(&self, k: &usize) -> usize {
        self.model.d().pow(2 * *k as u32)
    }

    fn unit_key(&self) -> usize {
        0
    }

    fn unit(&self) -> Mat {
        Mat::identity(self.field(), 1)
    }

    fn mul(&self, a: &usize, b: &usize) -> Option<(usize, Mat)> {
        self.muls.get(&(*a, *b)).map(|m| (a + b, m.clone()))
    }

    fn comul(&self, n: &usize) -> Vec<(usize, usize, Mat)> {
        vec![(*n, *n, a_comul(self.model, *n))]
    }

    fn counit(&self, n: &usize) -> Mat {
        a_counit(self.model, *n)
    }

    fn braid(&self, a: &usize, b: &usize) -> Mat {
        (*self.model.crossing(self.side.psi(), &dx_word(*a, *a), &dx_word(*b, *b))).clone()
    }

    fn within(&self, keys: &[usize]) -> bool {
        keys.iter().sum::<usize>() <= self.n_max
    }
}

/// `I_n = Σ_i image(∨X^{i-1}⊗∨R⊗∨X^{n-i-1}⊗X^n − ∨X^n⊗X^{n-i-1}⊗R⊗X^{i-1})`.
pub fn frt_ideal(model: &BraidedModel, side: Side, n: usize) -> Result<Subspace, CatError> {
    let f = model.field();
    let dim = model.d().pow(2 * n as u32);
    if n < 2 {
        return Ok(Subspace::zero(f, dim));
    }
    let r = model.letter_crossing(side.r(), Letter::X, Letter::X);
    let vr = model.dual_arrow(r, 2, 2)?;
    let mut cols = Mat::zeros(f, dim, 0);
    for i in 1..n {
        let left = Mat::kron_all(f, [&ids(model, i - 1), &vr, &ids(model, n - i - 1), &ids(model, n)]);
        let right = Mat::kron_all(f, [&ids(model, n), &ids(model, n - i - 1), r, &ids(model, i - 1)]);
        cols = cols.hstack(&left.try_sub(&right).expect("shape")).expect("rows");
    }
    Ok(Subspace::col_span(&cols))
}

/// The two-sided ideal generated by `I_2`, degree `n`.
pub fn frt_ideal_closure(amb: &FrtAmbient, n: usize) -> Result<Subspace, CatError> {
    let f = amb.model().field();
    if n < 2 {
        return Ok(Subspace::zero(f, amb.dim(&n)));
    }
    let i2 = frt_ideal(amb.model(), amb.side(), 2)?;
    Ok(Subspace::col_span(&amb.two_sided(&i2.basis().transpose(), 2, n)))
}

/// Generators of the `C`-relations as columns in `F_2 = A_0 ⊕ A_1 ⊕ A_2`.
///
/// First family `(C⊗id)(∩_2⊗X^2) − C`, second `(id⊗∨C)(∨X^2⊗∩_2) − ∨C`.
pub fn c_relation_generators(model: &BraidedModel) -> Result<Mat, FrtError> {
    let c = model.c().ok_or(FrtError::MissingC)?;
    let f = model.field();
    let d = model.d();
    let vc = model.vee_c(1)?;
    let first = c.kron(&ids(model, 4)).matmul(&model.cap_n(2).kron(&ids(model, 2))).expect("shape");
    let second = ids(model, 4).kron(&vc).matmul(&ids(model, 2).kron(&model.cap_n(2))).expect("shape");
    let top = 1 + d * d;
    let mut trip = Vec::new();
    for (k, (lhs, rhs)) in [(&first, c), (&second, &vc)].into_iter().enumerate() {
        for (i, j, v) in lhs.entries() {
            trip.push((top + i, k * d * d + j, v.clone()));
        }
        for (_, j, v) in rhs.entries() {
            trip.push((0, k * d * d + j, v.neg()));
        }
    }
    Ok(Mat::from_triplets(f, top + d.pow(4), 2 * d * d, trip))
}

/// Antipode composite on `A_n`:
/// `(C_n⊗id)(X^n⊗Ψ_{∨X^n,X^n}⊗X^n)(∩_n⊗Ψ_{X^n,X^n})(∪_n⊗id)(∨X^n⊗C'_n⊗X^n)`.
pub fn antipode_ac(model: &BraidedModel, side: Side, n: usize) -> Result<Mat, FrtError> {
    if model.c().is_none() {
        return Err(FrtError::MissingC);
    }
    let f = model.field();
    let xn = vec![Letter::X; n];
    let dn = vec![Letter::D; n];
    let steps = [
        Mat::kron_all(f, [&ids(model, n), &model.copairing(n)?, &ids(model, n)]),
        model.cup_n(n).kron(&ids(model, 2 * n)),
        model.cap_n(n).kron(&model.crossing(side.psi(), &xn, &xn)),
        Mat::kron_all(f, [&ids(model, n), &*model.crossing(side.psi(), &dn, &xn), &ids(model, n)]),
        model.extend_pairing(n)?.kron(&ids(model, 2 * n)),
    ];
    Ok(compose(steps))
}

/// Inverse antipode composite on `A_n`:
/// `(∪_n⊗id)(∨X^n⊗Ψ_{∨X^n,X^n}⊗X^n)(∨X^n⊗C_n⊗∨X^n⊗Ψ_{X^n,X^n})(∨X^n⊗X^n⊗∩_n⊗C'_n)`.
pub fn skew_antipode(model: &BraidedModel, side: Side, n: usize) -> Result<Mat, FrtError> {
    if model.c().is_none() {
        return Err(FrtError::MissingC);
    }
    let f = model.field();
    let xn = vec![Letter::X; n];
    let dn = vec![Letter::D; n];
    let steps = [
        Mat::kron_all(f, [&ids(model, 2 * n), &model.cap_n(n), &model.copairing(n)?]),
        Mat::kron_all(
            f,
            [&ids(model, n), &model.extend_pairing(n)?, &ids(model, n), &*model.crossing(side.psi(), &xn, &xn)],
        ),
        Mat::kron_all(f, [&ids(model, n), &*model.crossing(side.psi(), &dn, &xn), &ids(model, n)]),
        model.cup_n(n).kron(&ids(model, 2 * n)),
    ];
    Ok(compose(steps))
}

/// Applies maps in order, first one first.
fn compose<const K: usize>(steps: [Mat; K]) -> Mat {
    let mut it = steps.into_iter();
    let first = it.next().expect("nonempty");
    it.fold(first, |acc, m| m.matmul(&acc).expect("composable"))
}

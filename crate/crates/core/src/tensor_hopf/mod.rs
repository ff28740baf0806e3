//! The braided tensor Hopf algebra `T(X)`, its Nichols-type quotients and `P₋₁`.

mod quotient;

use rayon::prelude::*;

use crate::axioms::GradedBialgebra;
use crate::braided_cat::{build_model, BraidedModel, Braiding, CatError, Letter};
use crate::braids::{braided_binomial, braided_factorial, eval_sum, eval_word, garside};
use crate::linalg::{kernel, solve_linear, Mat, Subspace};
use crate::scalars::{FieldSpec, Scalar};

pub use quotient::{GradedQuotient, QuotientError};

fn x_word(n: usize) -> Vec<Letter> {
    vec![Letter::X; n]
}

/// `Δ_{m,n} : X^{m+n} -> X^m ⊗ X^n`, the evaluated braided binomial.
pub fn t_delta(m: usize, n: usize, model: &BraidedModel, braiding: Braiding) -> Mat {
    let b = braided_binomial(m + n, m).expect("m <= m+n");
    eval_sum(&b, &x_word(m + n), &model.strands(braiding)).expect("positive words")
}

/// `S` on `X^n`: `(-1)^n` times the Garside element.
pub fn t_antipode(n: usize, model: &BraidedModel, braiding: Braiding) -> Mat {
    let id = model.id(n);
    if n == 0 {
        return id;
    }
    let g = eval_word(&garside(n).expect("n >= 1"), &x_word(n), &model.strands(braiding)).expect("positive word");
    if n % 2 == 1 {
        g.neg()
    } else {
        g
    }
}

/// The evaluated braided factorial `[n;X]!`.
pub fn braided_factorial_matrix(n: usize, model: &BraidedModel, braiding: Braiding) -> Mat {
    if n == 0 {
        return model.id(0);
    }
    eval_sum(&braided_factorial(n), &x_word(n), &model.strands(braiding)).expect("positive words")
}

/// The evaluated braided integer `[n;X] := [n 1;X]`.
pub fn braided_integer_matrix(n: usize, model: &BraidedModel, braiding: Braiding) -> Mat {
    if n == 0 {
        return Mat::zeros(model.field(), 1, 1);
    }
    t_delta(1, n - 1, model, braiding)
}

/// `T(X)` truncated at degree `N`, braided by `Ψ` or `R`.
pub struct TensorAlgebra<'a> {
    model: &'a BraidedModel,
    braiding: Braiding,
    n_max: usize,
    deltas: Vec<Vec<Mat>>,
    antipodes: Vec<Mat>,
}

impl<'a> TensorAlgebra<'a> {
    pub fn new(model: &'a BraidedModel, braiding: Braiding, n_max: usize) -> Self {
        let deltas = (0..=n_max)
            .into_par_iter()
            .map(|n| (0..=n).map(|a| t_delta(a, n - a, model, braiding)).collect())
            .collect();
        let antipodes = (0..=n_max).into_par_iter().map(|n| t_antipode(n, model, braiding)).collect();
        TensorAlgebra { model, braiding, n_max, deltas, antipodes }
    }

    pub fn model(&self) -> &BraidedModel {
        self.model
    }

    pub fn braiding(&self) -> Braiding {
        self.braiding
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn delta(&self, a: usize, b: usize) -> &Mat {
        &self.deltas[a + b][a]
    }
}

impl GradedBialgebra for TensorAlgebra<'_> {
    type Key = usize;

    fn field(&self) -> &FieldSpec {
        self.model.field()
    }

    fn components(&self) -> Vec<usize> {
        (0..=self.n_max).collect()
    }

    fn dim(&self, k: &usize) -> usize {
        self.model.d().pow(*k as u32)
    }

    fn unit_key(&self) -> usize {
        0
    }

    fn unit(&self) -> Mat {
        Mat::identity(self.field(), 1)
    }

    fn mul(&self, a: &usize, b: &usize) -> Option<(usize, Mat)> {
        (a + b <= self.n_max).then(|| (a + b, self.model.id(a + b)))
    }

    fn comul(&self, n: &usize) -> Vec<(usize, usize, Mat)> {
        (0..=*n).map(|a| (a, n - a, self.deltas[*n][a].clone())).collect()
    }

    fn counit(&self, n: &usize) -> Mat {
        if *n == 0 {
            Mat::identity(self.field(), 1)
        } else {
            Mat::zeros(self.field(), 1, self.dim(n))
        }
    }

    fn braid(&self, a: &usize, b: &usize) -> Mat {
        (*self.model.crossing(self.braiding, &x_word(*a), &x_word(*b))).clone()
    }

    fn antipode(&self, n: &usize) -> Option<Mat> {
        Some(self.antipodes[*n].clone())
    }

    fn within(&self, keys: &[usize]) -> bool {
        keys.iter().sum::<usize>() <= self.n_max
    }
}

/// `I_n` for `n <= N`, generated by `I_2 = ker(Ψ + id)`.
pub fn quad_ideal(model: &BraidedModel, braiding: Braiding, n_max: usize) -> Vec<Subspace> {
    let f = model.field();
    let d = model.d();
    let x = model.letter_crossing(braiding, Letter::X, Letter::X);
    let i2 = kernel(&x.try_add(&model.id(2)).expect("square"));
    (0..=n_max)
        .map(|n| {
            if n < 2 {
                return Subspace::zero(f, d.pow(n as u32));
            }
            let mut rows = Mat::zeros(f, 0, d.pow(n as u32));
            for i in 0..=n - 2 {
                let block = Mat::identity(f, d.pow(i as u32)).kron(i2.basis()).kron(&Mat::identity(f, d.pow((n - 2 - i) as u32)));
                rows = rows.vstack(&block).expect("width");
            }
            Subspace::row_span(&rows)
        })
        .collect()
}

/// `I•_n = ker [n;X]!` for `n <= N`.
pub fn bullet_ideal(model: &BraidedModel, braiding: Braiding, n_max: usize) -> Vec<Subspace> {
    (0..=n_max).into_par_iter().map(|n| kernel(&braided_factorial_matrix(n, model, braiding))).collect()
}

/// `ker [n;X]` for `n <= N`.
pub fn braided_integer_kernel(model: &BraidedModel, braiding: Braiding, n_max: usize) -> Vec<Subspace> {
    (0..=n_max)
        .into_par_iter()
        .map(|n| if n == 0 { Subspace::zero(model.field(), 1) } else { kernel(&braided_integer_matrix(n, model, braiding)) })
        .collect()
}

/// Coefficients (low degree first) of the minimal polynomial of a square matrix.
pub fn minimal_polynomial(m: &Mat) -> Vec<Scalar> {
    let f = m.field();
    let n = m.rows();
    let flatten = |p: &Mat| {
        let trip = p.entries().map(|(i, j, v)| (i * n + j, 0, v.clone()));
        Mat::from_triplets(f, n * n, 1, trip.collect::<Vec<_>>())
    };
    let mut powers = vec![Mat::identity(f, n)];
    let mut cols = flatten(&powers[0]);
    loop {
        let next = powers.last().unwrap().matmul(m).expect("square");
        let v = flatten(&next);
        if let Some(sol) = solve_linear(&cols, &v).expect("shape") {
            let mut coeffs: Vec<Scalar> = (0..powers.len()).map(|k| sol.get(k, 0).neg()).collect();
            coeffs.push(f.one());
            return coeffs;
        }
        cols = cols.hstack(&v).expect("rows");
        powers.push(next);
    }
}

fn poly_eval_mat(coeffs: &[Scalar], m: &Mat) -> Mat {
    let f = m.field();
    coeffs.iter().rev().fold(Mat::zeros(f, m.rows(), m.cols()), |acc, c| {
        acc.matmul(m).unwrap().try_add(&Mat::identity(f, m.rows()).scale(c)).unwrap()
    })
}

fn poly_eval(coeffs: &[Scalar], x: &Scalar) -> Scalar {
    coeffs.iter().rev().fold(x.zero_like(), |acc, c| &(&acc * x) + c)
}

/// `P₋₁ = p₋₁(Ψ)/p₋₁(-1)` when `-1` is a simple root of the minimal polynomial of `Ψ_{X,X}`.
pub fn p_minus_one(model: &BraidedModel, braiding: Braiding) -> Option<Mat> {
    let psi = model.letter_crossing(braiding, Letter::X, Letter::X);
    let f = model.field();
    let p = minimal_polynomial(psi);
    let minus = f.from_int(-1);
    if !poly_eval(&p, &minus).is_zero() {
        return None;
    }
    // synthetic division by (t + 1)
    let deg = p.len() - 1;
    let mut q = vec![f.zero(); deg];
    q[deg - 1] = p[deg].clone();
    for k in (1..deg).rev() {
        q[k - 1] = &p[k] - &q[k];
    }
    let at = poly_eval(&q, &minus);
    if at.is_zero() {
        return None;
    }
    let pm = poly_eval_mat(&q, psi).scale(&at.inv().ok()?);
    let sq = pm.matmul(&pm).ok()?;
    let i2 = kernel(&psi.try_add(&model.id(2)).ok()?);
    (sq == pm && Subspace::col_span(&pm) == i2).then_some(pm)
}

/// Rebuilds the model with `Ψ` or `R` multiplied by `λ`.
pub fn rescale(model: &BraidedModel, braiding: Braiding, lambda: &Scalar) -> Result<BraidedModel, CatError> {
    let (psi, r) = match braiding {
        Braiding::Psi => (model.psi().scale(lambda), model.r().clone()),
        Braiding::R => (model.psi().clone(), model.r().scale(lambda)),
        other => return Err(CatError::ShapeMismatch(format!("cannot rescale {other:?}"))),
    };
    build_model(model.d(), model.field(), psi, r, model.c().cloned())
}

#[cfg(test)]
mod tests;

//! First-order bicovariant calculus on `A = A(X,R;C)`: the Hopf bimodule `Γ = ∨X ⊗ A ⊗ X`,
//! the bi-invariant element `ω` and the derivative `d = [ω, ·]`.
//!
//! Everything lives in quotient coordinates of the filtration `F_k`; `Γ_k = ∨X ⊗ F_k ⊗ X`.

use thiserror::Error;

use crate::axioms::GradedBialgebra;
use crate::braided_cat::{dx_word, BraidedModel, Braiding, Letter};
use crate::frt::{FrtAlgebra, Variant};
use crate::linalg::Mat;
use crate::qbg::{self, DualPair, PairingFamily, QbgError};
use crate::scalars::FieldSpec;

mod checks;
pub use checks::{check_calculus, check_derivation};

#[derive(Debug, Error)]
pub enum CalcError {
    #[error("calculus needs A(X,R;C), got {0}")]
    WrongVariant(&'static str),
    #[error("{0} form of ω is unavailable: {1}")]
    ModeUnavailable(&'static str, String),
    #[error(transparent)]
    Pairing(#[from] QbgError),
}

/// How `ω` is assembled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaMode {
    /// Coevaluation, coaction, skew antipode and inverse crossings.
    General,
    /// `(Ψ⁻¹_{∨X,∨X}∘∨C) ⊗ C` regrouped as `∨X ⊗ (∨X⊗X) ⊗ X`.
    Specialized,
}

/// A tensor factor: `∨X`, `X`, or the filtration level `F_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fac {
    D,
    X,
    A(usize),
}

pub struct GammaModule<'a> {
    pair: DualPair<'a>,
    rho: PairingFamily,
    /// `X -> X ⊗ F_1`.
    coact_x: Mat,
    /// `∨X -> F_1 ⊗ ∨X`.
    coact_d: Mat,
    /// `μ^X_r : X ⊗ F_k -> X`.
    act_x: Vec<Mat>,
    /// `μ^{∨X}_ℓ : F_k ⊗ ∨X -> ∨X`.
    act_d: Vec<Mat>,
}

fn chain(field: &FieldSpec, steps: impl IntoIterator<Item = Mat>) -> Mat {
    steps.into_iter().reduce(|acc, s| s.matmul(&acc).expect("shape")).unwrap_or_else(|| Mat::identity(field, 1))
}

impl<'a> GammaModule<'a> {
    pub fn model(&self) -> &BraidedModel {
        self.pair.model()
    }

    pub fn algebra(&self) -> &FrtAlgebra {
        self.pair.a()
    }

    pub fn field(&self) -> &FieldSpec {
        self.pair.field()
    }

    pub fn n_max(&self) -> usize {
        self.pair.n_max()
    }

    fn d(&self) -> usize {
        self.model().d()
    }

    fn id(&self, n: usize) -> Mat {
        Mat::identity(self.field(), n)
    }

    pub fn dim_a(&self, k: usize) -> usize {
        self.algebra().dim(&k)
    }

    pub fn dim_gamma(&self, k: usize) -> usize {
        self.d() * self.dim_a(k) * self.d()
    }

    pub fn fac_dim(&self, f: Fac) -> usize {
        match f {
            Fac::D | Fac::X => self.d(),
            Fac::A(k) => self.dim_a(k),
        }
    }

    fn dims(&self, fs: &[Fac]) -> usize {
        fs.iter().map(|&f| self.fac_dim(f)).product()
    }

    /// The crossing `u ⊗ v -> v ⊗ u` by `b`, descended to quotient coordinates block by block.
    pub fn cross(&self, b: Braiding, u: &[Fac], v: &[Fac]) -> Mat {
        let alg = self.algebra();
        let f = self.field();
        let all: Vec<Fac> = u.iter().chain(v).copied().collect();
        let choices: Vec<Vec<Option<usize>>> = all
            .iter()
            .map(|x| match x {
                Fac::A(k) => alg.blocks(*k).into_iter().map(Some).collect(),
                _ => vec![None],
            })
            .collect();
        let mut combos: Vec<Vec<Option<usize>>> = vec![vec![]];
        for c in &choices {
            combos = combos.into_iter().flat_map(|p| c.iter().map(move |x| [p.clone(), vec![*x]].concat())).collect();
        }
        let letters = |x: Fac, n: Option<usize>| match (x, n) {
            (Fac::D, _) => vec![Letter::D],
            (Fac::X, _) => vec![Letter::X],
            (Fac::A(_), Some(n)) => dx_word(n, n),
            (Fac::A(_), None) => unreachable!(),
        };
        let sec = |x: Fac, n: Option<usize>| match (x, n) {
            (Fac::A(k), Some(n)) => alg.quotient_to_block(k, n),
            _ => self.id(self.d()),
        };
        let proj = |x: Fac, n: Option<usize>| match (x, n) {
            (Fac::A(k), Some(n)) => alg.block_to_quotient(k, n),
            _ => self.id(self.d()),
        };
        let nu = u.len();
        let mut total = Mat::zeros(f, self.dims(v) * self.dims(u), self.dims(u) * self.dims(v));
        for combo in combos {
            let uw: Vec<Letter> = (0..nu).flat_map(|i| letters(all[i], combo[i])).collect();
            let vw: Vec<Letter> = (nu..all.len()).flat_map(|i| letters(all[i], combo[i])).collect();
            let amb = self.model().crossing(b, &uw, &vw);
            let s: Vec<Mat> = (0..all.len()).map(|i| sec(all[i], combo[i])).collect();
            let order: Vec<usize> = (nu..all.len()).chain(0..nu).collect();
            let p: Vec<Mat> = order.iter().map(|&i| proj(all[i], combo[i])).collect();
            let term = Mat::kron_all(f, &p).matmul(&amb).expect("shape").matmul(&Mat::kron_all(f, &s)).expect("shape");
            total = total.try_add(&term).expect("shape");
        }
        total
    }
}

/// Builds `Γ` over the pair `(A(X,R;C), Ā(X,R⁻¹;C))` through level `N`.
pub fn build_gamma<'a>(pair: DualPair<'a>) -> Result<GammaModule<'a>, CalcError> {
    if pair.a().variant() != Variant::ARC {
        return Err(CalcError::WrongVariant(pair.a().variant().name()));
    }
    let rho = qbg::rho(&pair)?;
    let coact_x = pair.coaction(1);
    let mut g = GammaModule { pair, rho, coact_x, coact_d: Mat::zeros(&FieldSpec::Rationals, 0, 0), act_x: Vec::new(), act_d: Vec::new() };
    let f = g.field().clone();
    let model = g.model();
    let id_d = g.id(g.d());
    // (id ⊗ Δ_ℓ)∘coev = (Δ_r ⊗ id)∘coev, solved by a snake
    let m = g.coact_x.kron(&id_d).matmul(&model.cap()).expect("shape");
    let coact_d = model.cup().kron(&g.id(g.dim_a(1) * g.d())).matmul(&id_d.kron(&m)).expect("shape");
    g.coact_d = coact_d;
    g.act_x = (0..=g.n_max()).map(|k| id_d.kron(g.rho.get(1, k)).matmul(&g.coact_x.kron(&g.id(g.dim_a(k)))).expect("shape")).collect();
    g.act_d = (0..=g.n_max())
        .map(|k| {
            let dk = g.dim_a(k);
            chain(
                &f,
                [
                    g.cross(Braiding::Psi, &[Fac::A(k)], &[Fac::D]),
                    g.coact_d.kron(&g.id(dk)),
                    g.cross(Braiding::PsiInv, &[Fac::A(1)], &[Fac::D]).kron(&g.id(dk)),
                    id_d.kron(g.rho.get(1, k)),
                ],
            )
        })
        .collect();
    Ok(g)
}

impl GammaModule<'_> {
    fn delta(&self, k: usize) -> Mat {
        self.algebra().comul(&k).pop().expect("one piece").2
    }

    fn mul(&self, j: usize, k: usize) -> Mat {
        self.algebra().mul(&j, &k).expect("within truncation").1
    }

    /// `X -> X ⊗ F_1`.
    pub fn coaction_x(&self) -> &Mat {
        &self.coact_x
    }

    /// `∨X -> F_1 ⊗ ∨X`.
    pub fn coaction_d(&self) -> &Mat {
        &self.coact_d
    }

    /// `μ^X_r : X ⊗ F_k -> X`.
    pub fn action_x(&self, k: usize) -> &Mat {
        &self.act_x[k]
    }

    /// `μ^{∨X}_ℓ : F_k ⊗ ∨X -> ∨X`.
    pub fn action_d(&self, k: usize) -> &Mat {
        &self.act_d[k]
    }

    /// `F_k -> F_l` for `k <= l`.
    pub fn embed_a(&self, k: usize, l: usize) -> Mat {
        if k == l {
            self.id(self.dim_a(k))
        } else {
            self.algebra().embed(&k, &l)
        }
    }

    /// `Γ_k -> Γ_l` for `k <= l`.
    pub fn embed_gamma(&self, k: usize, l: usize) -> Mat {
        let idd = self.id(self.d());
        Mat::kron_all(self.field(), [&idd, &self.embed_a(k, l), &idd])
    }

    /// `μ^Γ_ℓ : F_j ⊗ Γ_k -> Γ_{j+k}`.
    pub fn mu_l(&self, j: usize, k: usize) -> Mat {
        let (aj, ak, d) = (self.dim_a(j), self.dim_a(k), self.d());
        chain(
            self.field(),
            [
                self.delta(j).kron(&self.id(d * ak * d)),
                Mat::kron_all(self.field(), [&self.id(aj), &self.cross(Braiding::Psi, &[Fac::A(j)], &[Fac::D]), &self.id(ak * d)]),
                Mat::kron_all(self.field(), [&self.act_d[j], &self.mul(j, k), &self.id(d)]),
            ],
        )
    }

    /// `μ^Γ_r : Γ_k ⊗ F_j -> Γ_{k+j}`.
    pub fn mu_r(&self, k: usize, j: usize) -> Mat {
        let (aj, ak, d) = (self.dim_a(j), self.dim_a(k), self.d());
        chain(
            self.field(),
            [
                self.id(d * ak * d).kron(&self.delta(j)),
                Mat::kron_all(self.field(), [&self.id(d * ak), &self.cross(Braiding::Psi, &[Fac::X], &[Fac::A(j)]), &self.id(aj)]),
                Mat::kron_all(self.field(), [&self.id(d), &self.mul(k, j), &self.act_x[j]]),
            ],
        )
    }

    /// `Δ^Γ_ℓ : Γ_k -> F_{k+1} ⊗ Γ_k`.
    pub fn delta_l(&self, k: usize) -> Mat {
        let (a1, ak, d) = (self.dim_a(1), self.dim_a(k), self.d());
        chain(
            self.field(),
            [
                Mat::kron_all(self.field(), [&self.coact_d, &self.delta(k), &self.id(d)]),
                Mat::kron_all(self.field(), [&self.id(a1), &self.cross(Braiding::Psi, &[Fac::D], &[Fac::A(k)]), &self.id(ak * d)]),
                self.mul(1, k).kron(&self.id(d * ak * d)),
            ],
        )
    }

    /// `Δ^Γ_r : Γ_k -> Γ_k ⊗ F_{k+1}`.
    pub fn delta_r(&self, k: usize) -> Mat {
        let (a1, ak, d) = (self.dim_a(1), self.dim_a(k), self.d());
        chain(
            self.field(),
            [
                Mat::kron_all(self.field(), [&self.id(d), &self.delta(k), &self.coact_x]),
                Mat::kron_all(self.field(), [&self.id(d * ak), &self.cross(Braiding::Psi, &[Fac::A(k)], &[Fac::X]), &self.id(a1)]),
                self.id(d * ak * d).kron(&self.mul(k, 1)),
            ],
        )
    }
}

impl GammaModule<'_> {
    /// `ω : 1 -> Γ_1` as a column.
    pub fn omega(&self, mode: OmegaMode) -> Result<Mat, CalcError> {
        let model = self.model();
        let d = self.d();
        let idd = self.id(d);
        match mode {
            OmegaMode::General => {
                let s = self
                    .algebra()
                    .skew_antipode_matrix(1)
                    .ok_or_else(|| CalcError::ModeUnavailable("general", "no skew antipode".into()))?;
                Ok(chain(
                    self.field(),
                    [
                        model.cap(),
                        self.coact_x.kron(&idd),
                        self.cross(Braiding::PsiInv, &[Fac::X], &[Fac::A(1)]).kron(&idd),
                        s.kron(&self.cross(Braiding::PsiInv, &[Fac::X], &[Fac::D])),
                        self.cross(Braiding::PsiInv, &[Fac::A(1)], &[Fac::D]).kron(&idd),
                    ],
                ))
            }
            OmegaMode::Specialized => {
                let err = |e: crate::braided_cat::CatError| CalcError::ModeUnavailable("specialized", e.to_string());
                let c = model.c().ok_or_else(|| CalcError::ModeUnavailable("specialized", "model has no C".into()))?;
                let vee = model.dual_arrow(c, 2, 0).map_err(err)?;
                let co = model.copairing(1).map_err(err)?;
                let dd = model.crossing(Braiding::PsiInv, &[Letter::D], &[Letter::D]);
                let amb = dd.matmul(&vee).expect("shape").kron(&co);
                // ∨X ⊗ ∨X ⊗ X ⊗ X is ∨X ⊗ A_1 ⊗ X in the same coordinates
                let p = Mat::kron_all(self.field(), [&idd, &self.algebra().block_to_quotient(1, 1), &idd]);
                Ok(p.matmul(&amb).expect("shape"))
            }
        }
    }

    /// `d = μ^Γ_r∘(ω⊗id) − μ^Γ_ℓ∘(id⊗ω) : F_k -> Γ_{k+1}`.
    pub fn derivative(&self, omega: &Mat, k: usize) -> Mat {
        let ak = self.id(self.dim_a(k));
        let right = self.mu_r(1, k).matmul(&omega.kron(&ak)).expect("shape");
        let left = self.mu_l(k, 1).matmul(&ak.kron(omega)).expect("shape");
        right.try_sub(&left).expect("shape")
    }
}

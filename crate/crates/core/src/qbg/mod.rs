//! Pairings between `Ā(X,R⁻¹)^op` and `A(X,R)`: the coquasitriangular structure `ρ`,
//! its convolution inverses, and the braiding it induces on right comodules.

mod checks;
mod conv;

use thiserror::Error;

use crate::axioms::GradedBialgebra;
use rayon::prelude::*;

use crate::braided_cat::{dx_word, BraidedModel, Braiding, Letter};
use crate::check::{mat_zero, Witness};
use crate::frt::{coaction_r, FrtAlgebra, Side};
use crate::linalg::{invert, Mat};
use crate::scalars::FieldSpec;

pub use checks::{check_action, check_bialgebra_pairing, check_comodule_braiding, check_coquasi, check_inverse_braiding};
pub use conv::{conv_inverse, conv_product, conv_second, counit_pairing, Product};

#[derive(Debug, Error)]
pub enum QbgError {
    #[error("pairing does not descend at ({m},{n}): {witness}")]
    DoesNotDescend { m: usize, n: usize, witness: Witness },
    #[error("no convolution inverse at ({m},{n})")]
    NotInvertible { m: usize, n: usize },
    #[error("algebras do not form a pair: {0}")]
    NotAPair(String),
}

/// Components `ρ_{k,l}: Ā_k ⊗ A_l -> 1` on quotient coordinates, `k, l <= n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingFamily {
    comps: Vec<Vec<Mat>>,
}

impl PairingFamily {
    pub fn from_fn(n_max: usize, f: impl Fn(usize, usize) -> Mat) -> Self {
        PairingFamily { comps: (0..=n_max).map(|k| (0..=n_max).map(|l| f(k, l)).collect()).collect() }
    }

    pub fn n_max(&self) -> usize {
        self.comps.len() - 1
    }

    pub fn get(&self, k: usize, l: usize) -> &Mat {
        &self.comps[k][l]
    }
}

/// `A(X,R)` (or a quotient of it) together with its bar partner on the same coalgebra.
pub struct DualPair<'a> {
    model: &'a BraidedModel,
    a: &'a FrtAlgebra,
    abar: &'a FrtAlgebra,
    braids: Vec<Vec<Mat>>,
}

impl<'a> DualPair<'a> {
    pub fn new(model: &'a BraidedModel, a: &'a FrtAlgebra, abar: &'a FrtAlgebra) -> Result<Self, QbgError> {
        if a.side() != Side::Straight || abar.side() != Side::Bar {
            return Err(QbgError::NotAPair("expected a straight and a bar algebra".into()));
        }
        if a.variant() != abar.variant() || a.n_max() != abar.n_max() {
            return Err(QbgError::NotAPair("variants or truncations differ".into()));
        }
        if let Some(k) = (0..=a.n_max()).find(|&k| a.quotient().ideal(k) != abar.quotient().ideal(k)) {
            return Err(QbgError::NotAPair(format!("underlying coalgebras differ in component {k}")));
        }
        let n = a.n_max();
        let braids = (0..=n)
            .into_par_iter()
            .map(|k| (0..=n).map(|l| descended_crossing(model, a, k, l)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DualPair { model, a, abar, braids })
    }

    /// `Ψ: C_k ⊗ C_l -> C_l ⊗ C_k` on quotient coordinates, for all `k, l <= n_max`.
    pub fn braid(&self, k: usize, l: usize) -> &Mat {
        &self.braids[k][l]
    }

    pub fn model(&self) -> &BraidedModel {
        self.model
    }

    pub fn a(&self) -> &FrtAlgebra {
        self.a
    }

    pub fn abar(&self) -> &FrtAlgebra {
        self.abar
    }

    pub fn n_max(&self) -> usize {
        self.a.n_max()
    }

    pub fn field(&self) -> &FieldSpec {
        self.model.field()
    }

    pub fn dim(&self, k: usize) -> usize {
        self.a.dim(&k)
    }

    /// The single coproduct piece `C_k -> C_k ⊗ C_k`.
    pub(crate) fn delta(&self, k: usize) -> Mat {
        let mut pieces = self.a.comul(&k);
        assert!(pieces.len() == 1 && pieces[0].0 == k && pieces[0].1 == k, "coproduct of an FRT component");
        pieces.pop().unwrap().2
    }

    /// Right coaction `X^n -> X^n ⊗ C_n` on quotient coordinates.
    pub fn coaction(&self, n: usize) -> Mat {
        let p = self.a.block_to_quotient(n, n);
        self.model.id(n).kron(&p).matmul(&coaction_r(self.model, n)).expect("shape")
    }

    /// Assembles an ambient family `(m, n) ↦ ∨X^mX^m ⊗ ∨X^nX^n -> 1` on components `(k, l)`
    /// and projects it after checking that it kills both ideals.
    pub fn descend(&self, k: usize, l: usize, amb: impl Fn(usize, usize) -> Mat) -> Result<Mat, QbgError> {
        let f = self.field();
        let (sk, sl) = (self.abar.quotient().section(k), self.a.quotient().section(l));
        let (fk, fl) = (sk.rows(), sl.rows());
        let mut trip = Vec::new();
        for m in self.abar.blocks(k) {
            let om = self.abar.block_offset(m);
            for n in self.a.blocks(l) {
                let on = self.a.block_offset(n);
                let dn = self.model.d().pow(2 * n as u32);
                for (_, c, v) in amb(m, n).entries() {
                    trip.push((0, (om + c / dn) * fl + on + c % dn, v.clone()));
                }
            }
        }
        // the row as an fk x fl matrix: ρ(I ⊗ -) = Iᵀ P, ρ(- ⊗ I) = P I
        let p = Mat::from_triplets(f, fk, fl, trip.into_iter().map(|(_, c, v)| (c / fl, c % fl, v)));
        let wit = |w| QbgError::DoesNotDescend { m: k, n: l, witness: w };
        let ik = self.abar.quotient().ideal(k).basis();
        let il = self.a.quotient().ideal(l).basis().transpose();
        mat_zero(&ik.matmul(&p).expect("shape"), "pairing on the bar ideal").map_err(wit)?;
        mat_zero(&p.matmul(&il).expect("shape"), "pairing on the ideal").map_err(wit)?;
        Ok(flatten(&sk.transpose().matmul(&p).expect("shape").matmul(sl).expect("shape")))
    }
}

fn descended_crossing(model: &BraidedModel, a: &FrtAlgebra, k: usize, l: usize) -> Result<Mat, QbgError> {
    let f = model.field();
    let q = a.quotient();
    let (fk, fl) = (q.section(k).rows(), q.section(l).rows());
    let mut trip = Vec::new();
    for m in a.blocks(k) {
        let om = a.block_offset(m);
        let dm = model.d().pow(2 * m as u32);
        for n in a.blocks(l) {
            let on = a.block_offset(n);
            let dn = model.d().pow(2 * n as u32);
            let x = model.crossing(Braiding::Psi, &dx_word(m, m), &dx_word(n, n));
            for (r, c, v) in x.entries() {
                trip.push(((on + r / dm) * fk + om + r % dm, (om + c / dn) * fl + on + c % dn, v.clone()));
            }
        }
    }
    let x = Mat::from_triplets(f, fl * fk, fk * fl, trip);
    let proj = q.projection(l).kron(q.projection(k));
    let ik = q.ideal(k).basis().transpose().kron(&Mat::identity(f, fl));
    let il = Mat::identity(f, fk).kron(&q.ideal(l).basis().transpose());
    let moved = proj.matmul(&x).expect("shape");
    for i in [ik, il] {
        mat_zero(&moved.matmul(&i).expect("shape"), "crossing on the ideal")
            .map_err(|w| QbgError::NotAPair(format!("crossing ({k},{l}) does not descend: {w}")))?;
    }
    Ok(moved.matmul(&q.section(k).kron(q.section(l))).expect("shape"))
}

/// `fk x fl` matrix to the `1 x fk·fl` row, row-major.
fn flatten(p: &Mat) -> Mat {
    let c = p.cols();
    Mat::from_triplets(p.field(), 1, p.rows() * c, p.entries().map(|(i, j, v)| (0, i * c + j, v.clone())))
}

fn xs(n: usize) -> Vec<Letter> {
    vec![Letter::X; n]
}

fn ds(n: usize) -> Vec<Letter> {
    vec![Letter::D; n]
}

/// Nested evaluations after crossing `X^m` past `∨X^n` (by `over_dual`) and past `X^n` (by `over_x`).
fn crossed_evaluation(model: &BraidedModel, over_dual: Braiding, over_x: Braiding, m: usize, n: usize) -> Mat {
    let d = model.d();
    let (dm, dn) = (d.pow(m as u32), d.pow(n as u32));
    model
        .cup_n(m + n)
        .compose_local(dm * dn, &model.crossing(over_x, &xs(m), &xs(n)), 1)
        .and_then(|v| v.compose_local(dm, &model.crossing(over_dual, &xs(m), &ds(n)), dn))
        .expect("shape")
}

/// Ambient `ρ_{m,n}: ∨X^mX^m ⊗ ∨X^nX^n -> 1`: `Ψ_{X^m,∨X^n}`, then `R_{X^m,X^n}`, then `∪` nested twice.
pub fn rho_ambient(model: &BraidedModel, m: usize, n: usize) -> Mat {
    crossed_evaluation(model, Braiding::Psi, Braiding::R, m, n)
}

/// Ambient closed form of the second inverse: the crossings of `ρ` with their labels exchanged,
/// `X^m` past `∨X^n` by the `R`-crossing and past `X^n` by `Ψ`, then the same evaluations.
///
/// The two evaluations only type-check once `X^m ⊗ X^n` is crossed as well, so both crossings are
/// kept; this labelling is the one that reproduces the solved inverse.
pub fn rho_tilde_ambient(model: &BraidedModel, m: usize, n: usize) -> Mat {
    crossed_evaluation(model, Braiding::R, Braiding::Psi, m, n)
}

fn descend_all(pair: &DualPair, amb: impl Fn(usize, usize) -> Mat + Sync) -> Result<PairingFamily, QbgError> {
    let n = pair.n_max();
    let pieces: Vec<Vec<Mat>> = (0..=n).into_par_iter().map(|m| (0..=n).map(|k| amb(m, k)).collect()).collect();
    let comps = (0..=n)
        .into_par_iter()
        .map(|k| (0..=n).map(|l| pair.descend(k, l, |m, j| pieces[m][j].clone())).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PairingFamily { comps })
}

/// `ρ` on quotient coordinates, after checking descent.
pub fn rho(pair: &DualPair) -> Result<PairingFamily, QbgError> {
    descend_all(pair, |m, n| rho_ambient(pair.model(), m, n))
}

/// Closed-form second inverse on quotient coordinates.
pub fn rho_tilde_closed(pair: &DualPair) -> Result<PairingFamily, QbgError> {
    descend_all(pair, |m, n| rho_tilde_ambient(pair.model(), m, n))
}

/// `ρ̄ = ρ⁻∘Ψ⁻¹`; component `(l, k)` pairs `A_l` with `Ā_k`.
pub fn rho_bar(pair: &DualPair, rho_minus: &PairingFamily) -> PairingFamily {
    PairingFamily::from_fn(rho_minus.n_max(), |l, k| {
        let back = invert(pair.braid(k, l)).expect("crossings are invertible");
        rho_minus.get(k, l).matmul(&back).expect("shape")
    })
}

/// Right action `X^n ⊗ A_m -> X^n`: `(∪_m⊗X^n)(∨X^m⊗R_{X^n,X^m})(Ψ_{X^n,∨X^m}⊗X^m)`, ambient.
pub fn action_mu_r(model: &BraidedModel, n: usize, m: usize) -> Mat {
    let d = model.d();
    let dm = d.pow(m as u32);
    model
        .cup_n(m)
        .kron(&model.id(n))
        .compose_local(dm, &model.crossing(Braiding::R, &xs(n), &xs(m)), 1)
        .and_then(|v| v.compose_local(1, &model.crossing(Braiding::Psi, &xs(n), &ds(m)), dm))
        .expect("shape")
}

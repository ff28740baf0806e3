//! The cross product `A(X,R) ⋉ V(X,R)` on bidegrees `(m, n)`, i.e. `A_m ⊗ V_n`.
//!
//! Product `(a⊗v)(a'⊗v') = a·a'₁ ⊗ (v ◁ a'₂)·v'`, coproduct
//! `Δ(a⊗v) = (a₁ ⊗ v₁₀) ⊗ (a₂·v₁₁ ⊗ v₂)`, where `◁` is the right action induced by the
//! pairing and `v ↦ v₀ ⊗ v₁` the right coaction. Strands that pass each other cross by `Ψ`
//! (or `Ψ⁻¹` for [`Chirality::Left`]).

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::axioms::GradedBialgebra;
use crate::braided_cat::{dx_word, BraidedModel, Braiding, Letter};
use crate::check::{mat_zero, Witness};
use crate::frt::{build_frt, coaction_r, FrtAlgebra, FrtError, Side, Variant};
use crate::linalg::{invert, Mat};
use crate::qbg::QbgError;
use crate::scalars::FieldSpec;
use crate::tensor_hopf::{quad_ideal, GradedQuotient, QuotientError, TensorAlgebra};

mod checks;
pub use checks::{check_boson, coquasi_axiom, cross_pairing};

#[derive(Debug, Error)]
pub enum BosonError {
    #[error(transparent)]
    Frt(#[from] FrtError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Pairing(#[from] QbgError),
    #[error("{what} does not descend on ({m},{n}): {witness}")]
    DoesNotDescend { what: &'static str, m: usize, n: usize, witness: Witness },
}

/// Which way the cross structure's strands pass each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Chirality {
    /// Crossings by `Ψ` on the straight side.
    #[default]
    Right,
    /// Mirror image: crossings by `Ψ⁻¹` on the straight side.
    Left,
}

pub type Bidegree = (usize, usize);

fn xs(n: usize) -> Vec<Letter> {
    vec![Letter::X; n]
}

/// `A ⋉ V` on the straight side, or `Ā ⋉ V^op` on the bar side.
#[derive(Clone, Debug)]
pub struct CrossProduct {
    side: Side,
    chirality: Chirality,
    n_max: usize,
    field: FieldSpec,
    a: FrtAlgebra,
    v: GradedQuotient,
    /// `V_n -> V_n ⊗ A_n`.
    coaction: Vec<Mat>,
    /// `V_n ⊗ A_m -> V_n`, keyed `(n, m)`.
    action: BTreeMap<(usize, usize), Mat>,
    /// `V_n ⊗ A_m -> A_m ⊗ V_n`, keyed `(n, m)`.
    cross_va: BTreeMap<(usize, usize), Mat>,
    /// `A_m ⊗ V_n -> V_n ⊗ A_m`, keyed `(m, n)`.
    cross_av: BTreeMap<(usize, usize), Mat>,
    /// `V_n ⊗ V_l -> V_{n+l}` (opposite product on the bar side).
    vmul: BTreeMap<(usize, usize), Mat>,
    braids: BTreeMap<(Bidegree, Bidegree), Mat>,
}

/// One tensor factor of a component: projection, section and ideal columns on its ambient.
struct Factor<'a> {
    proj: &'a Mat,
    sec: &'a Mat,
    ideal: Mat,
}

impl Factor<'_> {
    fn amb(&self) -> usize {
        self.sec.rows()
    }
}

fn quotient_factor(q: &GradedQuotient, k: usize) -> Factor<'_> {
    Factor { proj: q.projection(k), sec: q.section(k), ideal: q.ideal(k).basis().transpose() }
}

/// Projects an ambient map between tensor products of factors after checking it kills the input ideals.
fn descend(what: &'static str, key: (usize, usize), f: &FieldSpec, outs: &[&Factor], amb: &Mat, ins: &[&Factor]) -> Result<Mat, BosonError> {
    let p = Mat::kron_all(f, outs.iter().map(|x| x.proj));
    let pa = p.matmul(amb).expect("shape");
    for i in 0..ins.len() {
        if ins[i].ideal.cols() == 0 {
            continue;
        }
        let left: usize = ins[..i].iter().map(|x| x.amb()).product();
        let right: usize = ins[i + 1..].iter().map(|x| x.amb()).product();
        let cols = Mat::identity(f, left).kron(&ins[i].ideal).kron(&Mat::identity(f, right));
        mat_zero(&pa.matmul(&cols).expect("shape"), what)
            .map_err(|witness| BosonError::DoesNotDescend { what, m: key.0, n: key.1, witness })?;
    }
    Ok(pa.matmul(&Mat::kron_all(f, ins.iter().map(|x| x.sec))).expect("shape"))
}

/// Right action `X^n ⊗ A_m -> X^n` built from the crossings `psi` (past `∨X^m`) and `r` (past `X^m`).
pub fn action_ambient(model: &BraidedModel, psi: Braiding, r: Braiding, n: usize, m: usize) -> Mat {
    let dm = model.d().pow(m as u32);
    model
        .cup_n(m)
        .kron(&model.id(n))
        .compose_local(dm, &model.crossing(r, &xs(n), &xs(m)), 1)
        .and_then(|x| x.compose_local(1, &model.crossing(psi, &xs(n), &vec![Letter::D; m]), dm))
        .expect("shape")
}

fn word(k: Bidegree) -> Vec<Letter> {
    let mut w = dx_word(k.0, k.0);
    w.extend(xs(k.1));
    w
}

fn pairs_up_to(n: usize) -> Vec<(usize, usize)> {
    (0..=n).flat_map(|a| (0..=n - a).map(move |b| (a, b))).collect()
}

/// Builds `A(X,R) ⋉ V(X,R)` (straight side) or `Ā(X,R⁻¹) ⋉ V(X,R)^op` (bar side) through total degree `n_max`.
pub fn build_cross(model: &BraidedModel, side: Side, chirality: Chirality, n_max: usize) -> Result<CrossProduct, BosonError> {
    let f = model.field();
    let a = build_frt(model, Variant::AR, side, n_max)?;
    let t = TensorAlgebra::new(model, Braiding::R, n_max);
    let v = GradedQuotient::build(&t, quad_ideal(model, Braiding::R, n_max))?;
    let psi = side.psi();
    let cross = match chirality {
        Chirality::Right => psi,
        Chirality::Left => psi.inverse(),
    };
    let fa: Vec<Factor> = (0..=n_max).map(|m| quotient_factor(a.quotient(), m)).collect();
    let fv: Vec<Factor> = (0..=n_max).map(|n| quotient_factor(&v, n)).collect();
    let ps = pairs_up_to(n_max);

    let coaction = (0..=n_max)
        .into_par_iter()
        .map(|n| descend("coaction", (n, n), f, &[&fv[n], &fa[n]], &coaction_r(model, n), &[&fv[n]]))
        .collect::<Result<Vec<_>, _>>()?;
    let collect = |g: &(dyn Fn(usize, usize) -> Result<Mat, BosonError> + Sync)| {
        ps.par_iter().map(|&(x, y)| g(x, y).map(|m| ((x, y), m))).collect::<Result<BTreeMap<_, _>, _>>()
    };
    let action = collect(&|n, m| {
        descend("action", (n, m), f, &[&fv[n]], &action_ambient(model, psi, side.r(), n, m), &[&fv[n], &fa[m]])
    })?;
    let cross_va = collect(&|n, m| {
        descend("crossing V|A", (n, m), f, &[&fa[m], &fv[n]], &model.crossing(cross, &xs(n), &dx_word(m, m)), &[&fv[n], &fa[m]])
    })?;
    let cross_av = collect(&|m, n| {
        descend("crossing A|V", (m, n), f, &[&fv[n], &fa[m]], &model.crossing(cross, &dx_word(m, m), &xs(n)), &[&fa[m], &fv[n]])
    })?;
    let vmul = collect(&|n, l| {
        Ok(match side {
            Side::Straight => v.mul(&n, &l).expect("within truncation").1,
            Side::Bar => {
                let back = invert(&v.braid(&l, &n)).expect("braiding is invertible");
                v.mul(&l, &n).expect("within truncation").1.matmul(&back).expect("shape")
            }
        })
    })?;
    let keys = ps.clone();
    let kpairs: Vec<(Bidegree, Bidegree)> = keys
        .iter()
        .flat_map(|&k1| keys.iter().map(move |&k2| (k1, k2)))
        .filter(|(k1, k2)| k1.0 + k1.1 + k2.0 + k2.1 <= n_max)
        .collect();
    let braids = kpairs
        .par_iter()
        .map(|&(k1, k2)| {
            let amb = model.crossing(psi, &word(k1), &word(k2));
            let outs = [&fa[k2.0], &fv[k2.1], &fa[k1.0], &fv[k1.1]];
            let ins = [&fa[k1.0], &fv[k1.1], &fa[k2.0], &fv[k2.1]];
            descend("braiding", (k1.0 + k1.1, k2.0 + k2.1), f, &outs, &amb, &ins).map(|m| ((k1, k2), m))
        })
        .collect::<Result<BTreeMap<_, _>, _>>()?;
    Ok(CrossProduct { side, chirality, n_max, field: f.clone(), a, v, coaction, action, cross_va, cross_av, vmul, braids })
}

impl CrossProduct {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn chirality(&self) -> Chirality {
        self.chirality
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn algebra_a(&self) -> &FrtAlgebra {
        &self.a
    }

    pub fn algebra_v(&self) -> &GradedQuotient {
        &self.v
    }

    fn id(&self, n: usize) -> Mat {
        Mat::identity(&self.field, n)
    }

    fn da(&self, m: usize) -> usize {
        self.a.dim(&m)
    }

    fn dv(&self, n: usize) -> usize {
        self.v.dim(&n)
    }

    fn a_mul(&self, m: usize, l: usize) -> Mat {
        self.a.mul(&m, &l).expect("within truncation").1
    }

    fn a_delta(&self, m: usize) -> Mat {
        self.a.comul(&m).pop().expect("one piece").2
    }

    /// Right action `V_n ⊗ A_m -> V_n` in quotient coordinates.
    pub fn action(&self, n: usize, m: usize) -> &Mat {
        &self.action[&(n, m)]
    }

    /// Right coaction `V_n -> V_n ⊗ A_n` in quotient coordinates.
    pub fn coaction(&self, n: usize) -> &Mat {
        &self.coaction[n]
    }

    /// `a ↦ a⊗1` from `A_m`.
    pub fn embed_a(&self, m: usize) -> Mat {
        self.id(self.da(m)).kron(&self.v.unit())
    }

    /// `v ↦ 1⊗v` from `V_n`.
    pub fn embed_v(&self, n: usize) -> Mat {
        self.a.unit().kron(&self.id(self.dv(n)))
    }

    /// Product `C_{(m,n)} ⊗ C_{(m',n')} -> C_{(m+m', n+n')}`.
    pub fn cross_mul(&self, x: Bidegree, y: Bidegree) -> Option<Mat> {
        let ((m, n), (m2, n2)) = (x, y);
        if m + n + m2 + n2 > self.n_max {
            return None;
        }
        let f = &self.field;
        let (a, v, a2, v2) = (self.da(m), self.dv(n), self.da(m2), self.dv(n2));
        let steps = [
            Mat::kron_all(f, [&self.id(a * v), &self.a_delta(m2), &self.id(v2)]),
            Mat::kron_all(f, [&self.id(a), &self.cross_va[&(n, m2)], &self.id(a2 * v2)]),
            Mat::kron_all(f, [&self.a_mul(m, m2), &self.action[&(n, m2)], &self.id(v2)]),
            self.id(self.da(m + m2)).kron(&self.vmul[&(n, n2)]),
        ];
        Some(steps.into_iter().reduce(|acc, s| s.matmul(&acc).expect("shape")).unwrap())
    }

    /// Coproduct pieces `C_{(m,n)} -> C_{(m,i)} ⊗ C_{(m+i, n-i)}`.
    pub fn cross_comul(&self, x: Bidegree) -> Vec<(Bidegree, Bidegree, Mat)> {
        let (m, n) = x;
        let f = &self.field;
        let a = self.da(m);
        let da = self.a_delta(m);
        self.v
            .comul(&n)
            .into_iter()
            .map(|(i, j, dv)| {
                let (vi, vj, ai) = (self.dv(i), self.dv(j), self.da(i));
                let steps = [
                    da.kron(&dv),
                    Mat::kron_all(f, [&self.id(a * a), &self.coaction[i], &self.id(vj)]),
                    Mat::kron_all(f, [&self.id(a), &self.cross_av[&(m, i)], &self.id(ai * vj)]),
                    Mat::kron_all(f, [&self.id(a * vi), &self.a_mul(m, i), &self.id(vj)]),
                ];
                let t = steps.into_iter().reduce(|acc, s| s.matmul(&acc).expect("shape")).unwrap();
                ((m, i), (m + i, j), t)
            })
            .collect()
    }
}

impl GradedBialgebra for CrossProduct {
    type Key = Bidegree;

    fn field(&self) -> &FieldSpec {
        &self.field
    }

    fn components(&self) -> Vec<Bidegree> {
        pairs_up_to(self.n_max)
    }

    fn dim(&self, k: &Bidegree) -> usize {
        self.da(k.0) * self.dv(k.1)
    }

    fn unit_key(&self) -> Bidegree {
        (0, 0)
    }

    fn unit(&self) -> Mat {
        self.a.unit().kron(&self.v.unit())
    }

    fn mul(&self, a: &Bidegree, b: &Bidegree) -> Option<(Bidegree, Mat)> {
        self.cross_mul(*a, *b).map(|m| ((a.0 + b.0, a.1 + b.1), m))
    }

    fn comul(&self, a: &Bidegree) -> Vec<(Bidegree, Bidegree, Mat)> {
        self.cross_comul(*a)
    }

    fn counit(&self, a: &Bidegree) -> Mat {
        self.a.counit(&a.0).kron(&self.v.counit(&a.1))
    }

    fn braid(&self, a: &Bidegree, b: &Bidegree) -> Mat {
        self.braids.get(&(*a, *b)).unwrap_or_else(|| panic!("crossing {a:?},{b:?} beyond truncation")).clone()
    }

    fn within(&self, keys: &[Bidegree]) -> bool {
        keys.iter().map(|k| k.0 + k.1).sum::<usize>() <= self.n_max
    }
}

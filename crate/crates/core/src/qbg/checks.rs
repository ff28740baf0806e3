use rayon::prelude::*;

use super::{action_mu_r, DualPair, PairingFamily};
use crate::axioms::{AxiomReport, GradedBialgebra, Outcome};
use crate::braided_cat::{BraidedModel, Braiding, Letter};
use crate::check::{mat_eq, mat_zero, Witness};
use crate::frt::{a_mul, FrtAlgebra, Side};
use crate::linalg::Mat;

fn first_err(rs: Vec<Result<(), Witness>>) -> Result<(), Witness> {
    rs.into_iter().collect()
}

fn triples(n: usize, max: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 0..=max {
        for b in 0..=max {
            for c in 0..=max {
                if a + b <= n && c <= n {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

/// `μ̄^op = μ̄∘Ψ` on `C_a ⊗ C_b`.
fn mul_bar_op(pair: &DualPair, a: usize, b: usize) -> (usize, Mat) {
    let (k, m) = pair.abar().mul(&b, &a).expect("within truncation");
    (k, m.matmul(pair.braid(a, b)).expect("shape"))
}

fn mul(pair: &DualPair, a: usize, b: usize) -> (usize, Mat) {
    pair.a().mul(&a, &b).expect("within truncation")
}

fn id(pair: &DualPair, k: usize) -> Mat {
    Mat::identity(pair.field(), pair.dim(k))
}

/// Multiplication of `Ā^op` against comultiplication of `A`.
fn mul_dual_to_comul(pair: &DualPair, rho: &PairingFamily, a: usize, b: usize, c: usize) -> Result<(), Witness> {
    let (k, mu) = mul_bar_op(pair, a, b);
    let lhs = rho.get(k, c).matmul(&mu.kron(&id(pair, c))).expect("shape");
    let split = Mat::identity(pair.field(), pair.dim(a) * pair.dim(b)).kron(&pair.delta(c));
    let inner = split.apply_local(pair.dim(a), rho.get(b, c), pair.dim(c)).expect("shape");
    let rhs = rho.get(a, c).matmul(&inner).expect("shape");
    mat_eq(&lhs, &rhs, &format!("product of Ā^op against coproduct, ({a},{b}) x {c}"))
}

/// Comultiplication of `Ā` against multiplication of `A`.
fn comul_dual_to_mul(pair: &DualPair, rho: &PairingFamily, a: usize, b: usize, c: usize) -> Result<(), Witness> {
    let (k, mu) = mul(pair, a, b);
    let lhs = rho.get(c, k).matmul(&id(pair, c).kron(&mu)).expect("shape");
    let split = pair.delta(c).kron(&Mat::identity(pair.field(), pair.dim(a) * pair.dim(b)));
    let inner = split.apply_local(pair.dim(c), rho.get(c, a), pair.dim(b)).expect("shape");
    let rhs = rho.get(c, b).matmul(&inner).expect("shape");
    mat_eq(&lhs, &rhs, &format!("coproduct against product of A, {c} x ({a},{b})"))
}

fn units(pair: &DualPair, rho: &PairingFamily) -> Result<(), Witness> {
    let eta = pair.a().unit();
    for k in 0..=rho.n_max() {
        mat_eq(&rho.get(0, k).matmul(&eta.kron(&id(pair, k))).expect("shape"), &pair.a().counit(&k), &format!("unit against {k}"))?;
        mat_eq(&rho.get(k, 0).matmul(&id(pair, k).kron(&eta)).expect("shape"), &pair.abar().counit(&k), &format!("{k} against unit"))?;
    }
    Ok(())
}

/// The duality identities of a bialgebra pairing `Ā^op ⊗ A -> 1`, components up to `max`.
pub fn check_bialgebra_pairing(pair: &DualPair, rho: &PairingFamily, max: usize) -> AxiomReport {
    let ts = triples(pair.n_max().min(rho.n_max()), max);
    let r1 = first_err(ts.par_iter().map(|&(a, b, c)| mul_dual_to_comul(pair, rho, a, b, c)).collect());
    let r2 = first_err(ts.par_iter().map(|&(a, b, c)| comul_dual_to_mul(pair, rho, a, b, c)).collect());
    AxiomReport {
        checks: vec![
            ("pairing: product vs coproduct".into(), Outcome::from_result(r1)),
            ("pairing: coproduct vs product".into(), Outcome::from_result(r2)),
            ("pairing: units".into(), Outcome::from_result(units(pair, rho))),
        ],
    }
}

/// `(μ̄^op ⊗ ρ)T = (ρ ⊗ μ)T` with `T = (id⊗Ψ⊗id)(Δ⊗Δ)`, on `C_a ⊗ C_b` for `a, b <= max`.
pub fn check_coquasi(pair: &DualPair, rho: &PairingFamily, max: usize) -> Result<(), Witness> {
    let n = pair.n_max().min(rho.n_max());
    let pairs: Vec<(usize, usize)> = (0..=max).flat_map(|a| (0..=max).map(move |b| (a, b))).filter(|(a, b)| a + b <= n).collect();
    first_err(
        pairs
            .par_iter()
            .map(|&(a, b)| {
                let dd = pair.delta(a).kron(&pair.delta(b));
                let t = dd.apply_local(pair.dim(a), pair.braid(a, b), pair.dim(b)).expect("shape");
                let (_, mbar) = mul_bar_op(pair, a, b);
                let (_, mu) = mul(pair, a, b);
                let lhs = mbar.kron(rho.get(a, b)).matmul(&t).expect("shape");
                let rhs = rho.get(a, b).kron(&mu).matmul(&t).expect("shape");
                mat_eq(&lhs, &rhs, &format!("coquasitriangular axiom on ({a},{b})"))
            })
            .collect(),
    )
}

/// Braiding of `X^m, X^n` induced by coactions, a crossing of type `psi`, and the pairing `p`.
fn induced_braiding(pair: &DualPair, p: &PairingFamily, psi: Braiding, m: usize, n: usize) -> Mat {
    let model = pair.model();
    let x = |k| vec![Letter::X; k];
    let (cm, cn) = (pair.coaction(m), pair.coaction(n));
    let steps = [
        model.id(m).kron(&cn),
        model.crossing(psi, &x(m), &x(n)).kron(&id(pair, n)),
        Mat::kron_all(pair.field(), [&model.id(n), &cm, &id(pair, n)]),
        model.id(m + n).kron(p.get(m, n)),
    ];
    steps.into_iter().reduce(|acc, s| s.matmul(&acc).expect("shape")).unwrap()
}

/// The comodule braiding built from `ρ` equals `R_{X^m,X^n}`.
pub fn check_comodule_braiding(pair: &DualPair, rho: &PairingFamily, m: usize, n: usize) -> Result<(), Witness> {
    let got = induced_braiding(pair, rho, Braiding::Psi, m, n);
    let want = pair.model().crossing(Braiding::R, &vec![Letter::X; m], &vec![Letter::X; n]);
    mat_eq(&got, &want, &format!("comodule braiding on ({m},{n})"))
}

/// The inverse braiding built from `ρ̄` undoes the comodule braiding on `X^n ⊗ X^m`.
pub fn check_inverse_braiding(pair: &DualPair, rho: &PairingFamily, rho_bar: &PairingFamily, m: usize, n: usize) -> Result<(), Witness> {
    let inv = induced_braiding(pair, rho_bar, Braiding::PsiInv, m, n);
    let fwd = induced_braiding(pair, rho, Braiding::Psi, n, m);
    let both = fwd.matmul(&inv).expect("shape");
    mat_eq(&both, &pair.model().id(m + n), &format!("inverse comodule braiding on ({m},{n})"))
}

/// Module axioms of `μ_r` on `X^n` against the ambient product through degree `max`,
/// and that it vanishes on the ideal of `alg`.
pub fn check_action(model: &BraidedModel, alg: &FrtAlgebra, n: usize, max: usize) -> Result<(), Witness> {
    mat_eq(&action_mu_r(model, n, 0), &model.id(n), "action of the unit")?;
    let dim = |k: usize| model.d().pow(2 * k as u32);
    for a in 0..=max {
        for b in 0..=max - a {
            let lhs = action_mu_r(model, n, a + b).matmul(&model.id(n).kron(&a_mul(model, Side::Straight, a, b))).expect("shape");
            let rhs = action_mu_r(model, n, b).matmul(&action_mu_r(model, n, a).kron(&Mat::identity(model.field(), dim(b)))).expect("shape");
            mat_eq(&lhs, &rhs, &format!("action associativity ({a},{b}) on X^{n}"))?;
        }
    }
    for k in 0..=max.min(alg.n_max()) {
        let fk = alg.quotient().section(k).rows();
        let mut trip = Vec::new();
        for m in alg.blocks(k) {
            let off = alg.block_offset(m);
            let dm = dim(m);
            for (r, c, v) in action_mu_r(model, n, m).entries() {
                trip.push((r, (c / dm) * fk + off + c % dm, v.clone()));
            }
        }
        let act = Mat::from_triplets(model.field(), model.d().pow(n as u32), model.d().pow(n as u32) * fk, trip);
        let ideal = alg.quotient().ideal(k).basis().transpose();
        mat_zero(&act.matmul(&model.id(n).kron(&ideal)).expect("shape"), &format!("action on the ideal in component {k}"))?;
    }
    Ok(())
}

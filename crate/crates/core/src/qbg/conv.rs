use rayon::prelude::*;

use super::{DualPair, PairingFamily, QbgError};
use crate::axioms::GradedBialgebra;
use crate::linalg::{solve_linear, Mat};

/// The two convolution products on pairings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Product {
    /// `ρ·ρ'(x, y) = ρ(x₁, y₁') ρ'(x₂', y₂)`, with `x₂` crossed past `y₁`.
    Convolution,
    /// `ρ~·ρ'(x, y) = ρ(x₁, y₂) ρ'(x₂, y₁)`, nested.
    Second,
}

/// `ε⊗ε`, the unit for both products.
pub fn counit_pairing(pair: &DualPair) -> PairingFamily {
    PairingFamily::from_fn(pair.n_max(), |k, l| pair.abar().counit(&k).kron(&pair.a().counit(&l)))
}

/// `(Δ_k ⊗ Δ_l)` followed by the crossing of the middle legs.
fn crossed_coproduct(pair: &DualPair, k: usize, l: usize) -> Mat {
    let dd = pair.delta(k).kron(&pair.delta(l));
    dd.apply_local(pair.dim(k), pair.braid(k, l), pair.dim(l)).expect("shape")
}

fn component(pair: &DualPair, p: Product, rho: &Mat, rho2: &Mat, k: usize, l: usize) -> Mat {
    let (dk, dl) = (pair.dim(k), pair.dim(l));
    match p {
        Product::Convolution => rho.kron(rho2).matmul(&crossed_coproduct(pair, k, l)).expect("shape"),
        Product::Second => {
            let inner = pair.delta(k).kron(&pair.delta(l)).apply_local(dk, rho2, dl).expect("shape");
            rho.matmul(&inner).expect("shape")
        }
    }
}

fn product(pair: &DualPair, p: Product, a: &PairingFamily, b: &PairingFamily) -> PairingFamily {
    let n = pair.n_max().min(a.n_max()).min(b.n_max());
    let comps = (0..=n)
        .into_par_iter()
        .map(|k| (0..=n).map(|l| component(pair, p, a.get(k, l), b.get(k, l), k, l)).collect())
        .collect();
    PairingFamily { comps }
}

pub fn conv_product(pair: &DualPair, a: &PairingFamily, b: &PairingFamily) -> PairingFamily {
    product(pair, Product::Convolution, a, b)
}

pub fn conv_second(pair: &DualPair, a: &PairingFamily, b: &PairingFamily) -> PairingFamily {
    product(pair, Product::Second, a, b)
}

/// Two-sided inverse for `p`, solved componentwise from `x ∗ ρ = ε⊗ε` and then checked on the other side.
pub fn conv_inverse(pair: &DualPair, rho: &PairingFamily, p: Product) -> Result<PairingFamily, QbgError> {
    let n = pair.n_max().min(rho.n_max());
    let unit = counit_pairing(pair);
    let comps = (0..=n)
        .into_par_iter()
        .map(|k| {
            (0..=n)
                .map(|l| {
                    let (dk, dl) = (pair.dim(k), pair.dim(l));
                    let r = rho.get(k, l);
                    // x ∗ ρ is linear in x: x ∘ op
                    let op = match p {
                        Product::Convolution => crossed_coproduct(pair, k, l).apply_local(dk * dl, r, 1),
                        Product::Second => pair.delta(k).kron(&pair.delta(l)).apply_local(dk, r, dl),
                    }
                    .expect("shape");
                    let e = unit.get(k, l);
                    let x = solve_linear(&op.transpose(), &e.transpose())
                        .expect("shape")
                        .ok_or(QbgError::NotInvertible { m: k, n: l })?
                        .transpose();
                    if &component(pair, p, r, &x, k, l) != e {
                        return Err(QbgError::NotInvertible { m: k, n: l });
                    }
                    Ok(x)
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PairingFamily { comps })
}

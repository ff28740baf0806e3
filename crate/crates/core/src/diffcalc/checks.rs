use super::{CalcError, Fac, GammaModule, OmegaMode};
use crate::axioms::{AxiomReport, GradedBialgebra, Outcome};
use crate::braided_cat::Braiding;
use crate::check::{mat_eq, mat_zero, Witness};
use crate::linalg::Mat;

fn m(a: Mat, b: &Mat) -> Mat {
    a.matmul(b).expect("shape")
}

fn gamma(k: usize) -> [Fac; 3] {
    [Fac::D, Fac::A(k), Fac::X]
}

impl GammaModule<'_> {
    fn ida(&self, k: usize) -> Mat {
        Mat::identity(self.field(), self.dim_a(k))
    }

    fn idg(&self, k: usize) -> Mat {
        Mat::identity(self.field(), self.dim_gamma(k))
    }
}

/// Unit and associativity of both actions, and that they commute.
fn check_bimodule(g: &GammaModule) -> Result<(), Witness> {
    let n = g.n_max();
    let alg = g.algebra();
    let eta = alg.unit();
    for k in 0..=n {
        mat_eq(&m(g.mu_l(0, k), &eta.kron(&g.idg(k))), &g.idg(k), &format!("left unit on Γ_{k}"))?;
        mat_eq(&m(g.mu_r(k, 0), &g.idg(k).kron(&eta)), &g.idg(k), &format!("right unit on Γ_{k}"))?;
    }
    for i in 0..=n {
        for j in 0..=n - i {
            for k in 0..=n - i - j {
                let mij = alg.mul(&i, &j).expect("within").1;
                let lhs = m(g.mu_l(i + j, k), &mij.kron(&g.idg(k)));
                let rhs = m(g.mu_l(i, j + k), &g.ida(i).kron(&g.mu_l(j, k)));
                mat_eq(&lhs, &rhs, &format!("left action associativity ({i},{j};{k})"))?;
                let mjk = alg.mul(&j, &k).expect("within").1;
                let lhs = m(g.mu_r(i, j + k), &g.idg(i).kron(&mjk));
                let rhs = m(g.mu_r(i + j, k), &g.mu_r(i, j).kron(&g.ida(k)));
                mat_eq(&lhs, &rhs, &format!("right action associativity ({i};{j},{k})"))?;
                let lhs = m(g.mu_r(i + j, k), &g.mu_l(i, j).kron(&g.ida(k)));
                let rhs = m(g.mu_l(i, j + k), &g.ida(i).kron(&g.mu_r(j, k)));
                mat_eq(&lhs, &rhs, &format!("actions commute ({i};{j};{k})"))?;
            }
        }
    }
    Ok(())
}

/// Counit and coassociativity of both coactions, and that they commute.
fn check_bicomodule(g: &GammaModule) -> Result<(), Witness> {
    let alg = g.algebra();
    for k in 0..g.n_max() {
        let (dl, dr) = (g.delta_l(k), g.delta_r(k));
        let eps = alg.counit(&(k + 1));
        let delta = alg.comul(&(k + 1)).pop().expect("one piece").2;
        mat_eq(&m(eps.kron(&g.idg(k)), &dl), &g.idg(k), &format!("left counit on Γ_{k}"))?;
        mat_eq(&m(g.idg(k).kron(&eps), &dr), &g.idg(k), &format!("right counit on Γ_{k}"))?;
        let lhs = m(delta.kron(&g.idg(k)), &dl);
        let rhs = m(g.ida(k + 1).kron(&dl), &dl);
        mat_eq(&lhs, &rhs, &format!("left coassociativity on Γ_{k}"))?;
        let lhs = m(g.idg(k).kron(&delta), &dr);
        let rhs = m(dr.kron(&g.ida(k + 1)), &dr);
        mat_eq(&lhs, &rhs, &format!("right coassociativity on Γ_{k}"))?;
        let lhs = m(g.ida(k + 1).kron(&dr), &dl);
        let rhs = m(dl.kron(&g.ida(k + 1)), &dr);
        mat_eq(&lhs, &rhs, &format!("coactions commute on Γ_{k}"))?;
    }
    Ok(())
}

/// Both coactions are bimodule maps, with the diagonal actions on `A ⊗ Γ` and `Γ ⊗ A`.
fn check_hopf_bimodule(g: &GammaModule) -> Result<(), Witness> {
    let alg = g.algebra();
    let f = g.field();
    let n = g.n_max();
    let mul = |a: usize, b: usize| alg.mul(&a, &b).expect("within").1;
    let delta = |a: usize| alg.comul(&a).pop().expect("one piece").2;
    for j in 0..=n {
        for k in 0..=n - j {
            if j + k + 1 > n {
                continue;
            }
            // Δ^Γ_ℓ(a·γ) = a₁γ₋₁ ⊗ a₂·γ₀
            let lhs = m(g.delta_l(j + k), &g.mu_l(j, k));
            let rhs = [
                delta(j).kron(&g.delta_l(k)),
                Mat::kron_all(f, [&g.ida(j), &g.cross(Braiding::Psi, &[Fac::A(j)], &[Fac::A(k + 1)]), &g.idg(k)]),
                mul(j, k + 1).kron(&g.mu_l(j, k)),
            ];
            mat_eq(&lhs, &super::chain(f, rhs), &format!("left coaction of left action ({j};{k})"))?;
            // Δ^Γ_ℓ(γ·a) = γ₋₁a₁ ⊗ γ₀·a₂
            let lhs = m(g.delta_l(k + j), &g.mu_r(k, j));
            let rhs = [
                g.delta_l(k).kron(&delta(j)),
                Mat::kron_all(f, [&g.ida(k + 1), &g.cross(Braiding::Psi, &gamma(k), &[Fac::A(j)]), &g.ida(j)]),
                mul(k + 1, j).kron(&g.mu_r(k, j)),
            ];
            mat_eq(&lhs, &super::chain(f, rhs), &format!("left coaction of right action ({k};{j})"))?;
            // Δ^Γ_r(a·γ) = a₁·γ₀ ⊗ a₂γ₁
            let lhs = m(g.delta_r(j + k), &g.mu_l(j, k));
            let rhs = [
                delta(j).kron(&g.delta_r(k)),
                Mat::kron_all(f, [&g.ida(j), &g.cross(Braiding::Psi, &[Fac::A(j)], &gamma(k)), &g.ida(k + 1)]),
                g.mu_l(j, k).kron(&mul(j, k + 1)),
            ];
            mat_eq(&lhs, &super::chain(f, rhs), &format!("right coaction of left action ({j};{k})"))?;
            // Δ^Γ_r(γ·a) = γ₀·a₁ ⊗ γ₁a₂
            let lhs = m(g.delta_r(k + j), &g.mu_r(k, j));
            let rhs = [
                g.delta_r(k).kron(&delta(j)),
                Mat::kron_all(f, [&g.idg(k), &g.cross(Braiding::Psi, &[Fac::A(k + 1)], &[Fac::A(j)]), &g.ida(j)]),
                g.mu_r(k, j).kron(&mul(k + 1, j)),
            ];
            mat_eq(&lhs, &super::chain(f, rhs), &format!("right coaction of right action ({k};{j})"))?;
        }
    }
    Ok(())
}

fn unit_at(g: &GammaModule, k: usize) -> Mat {
    g.embed_a(0, k).matmul(&g.algebra().unit()).expect("shape")
}

/// `Δ^Γ_ℓ(ω) = 1⊗ω` and `Δ^Γ_r(ω) = ω⊗1`.
fn check_omega(g: &GammaModule, omega: &Mat) -> Result<(), Witness> {
    let one = unit_at(g, 2);
    mat_eq(&m(g.delta_l(1), omega), &one.kron(omega), "left coinvariance of ω")?;
    mat_eq(&m(g.delta_r(1), omega), &omega.kron(&one), "right coinvariance of ω")
}

fn check_leibniz(g: &GammaModule, omega: &Mat) -> Result<(), Witness> {
    let n = g.n_max();
    for j in 0..n {
        for k in 0..n - j {
            let mjk = g.algebra().mul(&j, &k).expect("within").1;
            let lhs = m(g.derivative(omega, j + k), &mjk);
            let r1 = m(g.mu_r(j + 1, k), &g.derivative(omega, j).kron(&g.ida(k)));
            let r2 = m(g.mu_l(j, k + 1), &g.ida(j).kron(&g.derivative(omega, k)));
            mat_eq(&lhs, &r1.try_add(&r2).expect("shape"), &format!("Leibniz rule on F_{j} ⊗ F_{k}"))?;
        }
    }
    Ok(())
}

fn check_covariance(g: &GammaModule, omega: &Mat, left: bool) -> Result<(), Witness> {
    for k in 0..g.n_max() - 1 {
        let dk = g.derivative(omega, k);
        let delta = g.algebra().comul(&k).pop().expect("one piece").2;
        let up = g.embed_a(k, k + 2);
        let (lhs, rhs, side) = if left {
            (m(g.delta_l(k + 1), &dk), m(up.kron(&dk), &delta), "left")
        } else {
            (m(g.delta_r(k + 1), &dk), m(dk.kron(&up), &delta), "right")
        };
        mat_eq(&lhs, &rhs, &format!("{side} covariance of d on F_{k}"))?;
    }
    Ok(())
}

fn needs(g: &GammaModule, level: usize, r: impl FnOnce() -> Result<(), Witness>) -> Outcome {
    if g.n_max() < level {
        Outcome::Skipped { reason: format!("needs level {level}") }
    } else {
        Outcome::from_result(r())
    }
}

/// `d(1) = 0`, the Leibniz rule and bicovariance of the inner derivation `[ω, ·]`, for any `ω ∈ Γ_1`.
pub fn check_derivation(g: &GammaModule, omega: &Mat) -> AxiomReport {
    let checks = vec![
        ("d(1) = 0".to_string(), needs(g, 1, || mat_zero(&g.derivative(omega, 0), "d(1)"))),
        ("leibniz".to_string(), needs(g, 1, || check_leibniz(g, omega))),
        ("left covariance".to_string(), needs(g, 2, || check_covariance(g, omega, true))),
        ("right covariance".to_string(), needs(g, 2, || check_covariance(g, omega, false))),
    ];
    AxiomReport { checks }
}

/// Hopf-bimodule axioms of `Γ`, invariance of `ω`, and Leibniz rule and bicovariance of `d`.
pub fn check_calculus(g: &GammaModule, mode: OmegaMode) -> Result<AxiomReport, CalcError> {
    let omega = g.omega(mode)?;
    let other = match mode {
        OmegaMode::General => OmegaMode::Specialized,
        OmegaMode::Specialized => OmegaMode::General,
    };
    let agree = match g.omega(other) {
        Ok(w) => Outcome::from_result(mat_eq(&omega, &w, "general and specialized ω")),
        Err(e) => Outcome::Skipped { reason: e.to_string() },
    };
    let mut checks = vec![
        ("bimodule".to_string(), Outcome::from_result(check_bimodule(g))),
        ("bicomodule".to_string(), needs(g, 1, || check_bicomodule(g))),
        ("hopf bimodule".to_string(), needs(g, 1, || check_hopf_bimodule(g))),
        ("omega coinvariant".to_string(), needs(g, 2, || check_omega(g, &omega))),
        ("omega forms agree".to_string(), agree),
    ];
    checks.extend(check_derivation(g, &omega).checks);
    Ok(AxiomReport { checks })
}

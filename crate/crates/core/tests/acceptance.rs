//! End-to-end acceptance run: one line per criterion, exact arithmetic throughout.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_rational::BigRational;

use braidforge::axioms::{verify, Outcome};
use braidforge::boson::{check_boson, Chirality};
use braidforge::braided_cat::{build_model, BraidedModel, Braiding};
use braidforge::diffcalc::{build_gamma, check_calculus, OmegaMode};
use braidforge::frt::{build_frt, frt_ideal, frt_ideal_closure, FrtAmbient, Side, Variant};
use braidforge::linalg::Mat;
use braidforge::model_file::{fixture, ModelFile, FIXTURE_NAMES};
use braidforge::qbg::{
    check_bialgebra_pairing, check_comodule_braiding, check_coquasi, conv_inverse, conv_product, counit_pairing, rho,
    rho_tilde_closed, DualPair, Product,
};
use braidforge::scalars::{parse_scalar, FieldSpec};
use braidforge::suites::{run_suite, validate, Suite};
use braidforge::tensor_hopf::{
    braided_factorial_matrix, braided_integer_matrix, bullet_ideal, quad_ideal, GradedQuotient, TensorAlgebra,
};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn model(name: &str) -> BraidedModel {
    fixture(name).unwrap().to_model().unwrap()
}

fn q_line() -> BraidedModel {
    let f = FieldSpec::rational_function("q");
    let q = Mat::scalar(&f, f.generator().unwrap());
    build_model(1, &f, q.clone(), q, None).unwrap()
}

fn report_ok(what: &str, rep: &braidforge::axioms::AxiomReport) -> Result<(), String> {
    match rep.first_failure() {
        None => Ok(()),
        Some((name, w)) => Err(format!("{what}: {name}: {w}")),
    }
}

/// Every `q` in the file replaced by `1`, over the rationals.
fn at_q_equals_one(name: &str) -> BraidedModel {
    let file = fixture(name).unwrap();
    let one = BigRational::from_integer(1.into());
    let special = |rows: &Vec<Vec<String>>| -> Vec<Vec<String>> {
        rows.iter()
            .map(|r| r.iter().map(|t| parse_scalar(t, &file.field).unwrap().specialize(&one).unwrap().format(&FieldSpec::Rationals)).collect())
            .collect()
    };
    let flat = ModelFile {
        name: format!("{name}@1"),
        field: FieldSpec::Rationals,
        psi: special(&file.psi),
        r: special(&file.r),
        c: file.c.as_ref().map(special),
        options: Default::default(),
        ..file.clone()
    };
    flat.to_model().unwrap()
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn c1_braided_integers() -> Check {
    let m = q_line();
    let f = m.field();
    let q = f.generator().unwrap();
    let mut fact = f.one();
    for n in 1..=8 {
        let got = braided_integer_matrix(n, &m, Braiding::Psi).as_scalar().unwrap();
        let want = (0..n).fold(f.zero(), |acc, i| acc.try_add(&q.pow(i as i64).unwrap()).unwrap());
        ensure(got == want, format!("[{n}] = {}", got.format(f)))?;
        fact = fact.try_mul(&got).unwrap();
        let bf = braided_factorial_matrix(n, &m, Braiding::Psi).as_scalar().unwrap();
        // divide out [n]…[1] one factor at a time
        let mut rest = bf;
        for k in (1..=n).rev() {
            let qk = braided_integer_matrix(k, &m, Braiding::Psi).as_scalar().unwrap();
            rest = rest.try_div(&qk).unwrap();
        }
        ensure(rest == f.one(), format!("[{n}]! / Π[k] = {}", rest.format(f)))?;
    }
    let top = fact.format(f);
    Ok(format!("n ≤ 8; [8]! has leading term {}", top.split(" + ").next().unwrap_or(&top)))
}

fn c2_root_of_unity() -> Check {
    let m = model("anyon_zeta3");
    let i = quad_ideal(&m, Braiding::Psi, 5);
    ensure(i.iter().all(|s| s.dim() == 0), "I_n ≠ 0")?;
    let bullet = bullet_ideal(&m, Braiding::Psi, 5);
    let dims: Vec<usize> = bullet.iter().map(|s| s.codim()).collect();
    ensure(bullet[3].dim() == 1, "I•_3 is not all of X^3")?;
    ensure(dims[..5] == [1, 1, 1, 0, 0], format!("V• dims {dims:?}"))?;
    Ok(format!("V• dims {:?}", &dims[..5]))
}

fn c3_tensor_hopf() -> Check {
    for name in FIXTURE_NAMES {
        let m = model(name);
        for b in [Braiding::Psi, Braiding::R] {
            let rep = verify(&TensorAlgebra::new(&m, b, 4));
            report_ok(&format!("{name} {b:?}"), &rep)?;
            ensure(rep.get("antipode") == Some(&Outcome::Pass), format!("{name} {b:?}: antipode not checked"))?;
        }
    }
    Ok(format!("{} fixtures x 2 braidings through degree 4", FIXTURE_NAMES.len()))
}

fn c4_hopf_ideals() -> Check {
    let mut used = Vec::new();
    for name in FIXTURE_NAMES {
        let m = model(name);
        for b in [Braiding::Psi, Braiding::R] {
            let i = quad_ideal(&m, b, 4);
            if i.iter().all(|s| s.dim() == 0) {
                continue;
            }
            let bullet = bullet_ideal(&m, b, 4);
            for n in 0..=4 {
                ensure(bullet[n].contains(&i[n]).unwrap(), format!("{name} {b:?}: I_{n} ⊄ I•_{n}"))?;
            }
            let t = TensorAlgebra::new(&m, b, 4);
            // building the quotient checks Δ(I) ⊆ I⊗T + T⊗I, ε(I) = 0 and S(I) ⊆ I
            for (ideal, what) in [(i, "I"), (bullet, "I•")] {
                let v = GradedQuotient::build(&t, ideal).map_err(|e| format!("{name} {b:?} {what}: {e}"))?;
                report_ok(&format!("{name} {b:?} T/{what}"), &verify(&v))?;
            }
            used.push(format!("{name}/{b:?}"));
        }
    }
    ensure(!used.is_empty(), "no fixture has a nonzero ideal")?;
    Ok(used.join(", "))
}

fn c5_flat_dims() -> Check {
    let a = build_frt(&model("gl_q_2"), Variant::AR, Side::Straight, 3).map_err(|e| e.to_string())?;
    let classical = build_frt(&at_q_equals_one("gl_q_2"), Variant::AR, Side::Straight, 3).map_err(|e| e.to_string())?;
    let oracle: Vec<usize> = (0..=3).map(|n| binom(n + 3, 3)).collect();
    ensure(a.dims() == oracle, format!("A(X,R) dims {:?}", a.dims()))?;
    ensure(classical.dims() == oracle, format!("q=1 dims {:?}", classical.dims()))?;
    let v: Vec<usize> = quad_ideal(&model("gl_q_2_rescaled"), Braiding::R, 4).iter().map(|s| s.codim()).collect();
    let v1: Vec<usize> = quad_ideal(&at_q_equals_one("gl_q_2_rescaled"), Braiding::R, 4).iter().map(|s| s.codim()).collect();
    ensure(v == [1, 2, 3, 4, 5] && v1 == v, format!("V(X,R) dims {v:?}, at q=1 {v1:?}"))?;
    Ok(format!("A {:?}, V {v:?}", a.dims()))
}

fn c6_biideal() -> Check {
    let m = model("gl_q_2");
    // construction fails unless the ideal is killed by Δ and ε
    let a = build_frt(&m, Variant::AR, Side::Straight, 3).map_err(|e| e.to_string())?;
    report_ok("A(X,R)", &verify(&a))?;
    let amb = FrtAmbient::new(&m, Side::Straight, 4);
    for n in 0..=4 {
        let closed = frt_ideal(&m, Side::Straight, n).map_err(|e| e.to_string())?;
        let gen = frt_ideal_closure(&amb, n).map_err(|e| e.to_string())?;
        ensure(closed == gen, format!("degree {n}: closed form {} vs generated {}", closed.dim(), gen.dim()))?;
    }
    Ok("biideal through degree 3, I_n = ⟨I_2⟩ through degree 4".into())
}

fn c7_coquasitriangular() -> Check {
    let m = model("gl_q_2");
    let n = 4;
    let a = build_frt(&m, Variant::AR, Side::Straight, n).map_err(|e| e.to_string())?;
    let ab = build_frt(&m, Variant::AR, Side::Bar, n).map_err(|e| e.to_string())?;
    let pair = DualPair::new(&m, &a, &ab).map_err(|e| e.to_string())?;
    let rho = rho(&pair).map_err(|e| e.to_string())?;
    report_ok("pairing", &check_bialgebra_pairing(&pair, &rho, 2))?;
    let e = counit_pairing(&pair);
    let minus = conv_inverse(&pair, &rho, Product::Convolution).map_err(|e| e.to_string())?;
    ensure(conv_product(&pair, &minus, &rho) == e && conv_product(&pair, &rho, &minus) == e, "ρ⁻ is not a two-sided inverse")?;
    check_coquasi(&pair, &rho, 2).map_err(|w| w.to_string())?;
    let solved = conv_inverse(&pair, &rho, Product::Second).map_err(|e| e.to_string())?;
    ensure(rho_tilde_closed(&pair).map_err(|e| e.to_string())? == solved, "closed-form ρ~ differs from the solved one")?;
    for (p, q) in [(1, 1), (1, 2)] {
        check_comodule_braiding(&pair, &rho, p, q).map_err(|w| w.to_string())?;
    }
    Ok("gl_q_2 through bidegree (2,2)".into())
}

fn c8_c_quotient() -> Check {
    let m = model("scalar_c");
    let a = build_frt(&m, Variant::ARC, Side::Straight, 3).map_err(|e| e.to_string())?;
    ensure(a.dims() == [1, 2, 2, 2], format!("dims {:?}", a.dims()))?;
    let a2 = build_frt(&m, Variant::ARC, Side::Straight, 2).map_err(|e| e.to_string())?;
    let rep = verify(&a2);
    report_ok("A(X,R;C)", &rep)?;
    ensure(rep.get("antipode") == Some(&Outcome::Pass), "antipode axiom not checked")?;
    a2.check_skew().ok_or("no skew antipode")?.map_err(|w| w.to_string())?;
    Ok(format!("dims {:?}, S and S⁻ inverse, antipode axiom at level ≤ 2", a.dims()))
}

fn c9_bosonization() -> Check {
    let rep = check_boson(&model("gl_q_2"), Chirality::Right, 3).map_err(|e| e.to_string())?;
    report_ok("A⋉V", &rep)?;
    ensure(rep.checks.iter().all(|(_, o)| o.is_pass()), "a check was skipped")?;
    Ok(format!("{} checks through total degree 3", rep.checks.len()))
}

fn c10_calculus() -> Check {
    let mut notes = Vec::new();
    for (name, n) in [("scalar_c", 3), ("sl_q_2", 3)] {
        let m = model(name);
        let a = build_frt(&m, Variant::ARC, Side::Straight, n).map_err(|e| e.to_string())?;
        let ab = build_frt(&m, Variant::ARC, Side::Bar, n).map_err(|e| e.to_string())?;
        let g = build_gamma(DualPair::new(&m, &a, &ab).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let rep = check_calculus(&g, OmegaMode::General).map_err(|e| e.to_string())?;
        report_ok(name, &rep)?;
        ensure(rep.checks.iter().all(|(_, o)| o.is_pass()), format!("{name}: a check was skipped"))?;
        let w = g.omega(OmegaMode::General).map_err(|e| e.to_string())?;
        let zero = (0..n).all(|k| g.derivative(&w, k).is_zero());
        notes.push(format!("{name} level {n}{}", if zero { " (d vanishes identically)" } else { "" }));
    }
    Ok(notes.join(", "))
}

fn c11_negative_controls() -> Check {
    let mut file = fixture("gl_q_2").unwrap();
    file.r[2][2] = "q".into();
    ensure(file.to_model().is_err(), "perturbed model was accepted by the checked loader")?;
    let m = file.to_model_unchecked().map_err(|e| e.to_string())?;
    let v = validate(&m, "perturbed");
    let bad = v.failures().next().ok_or("validate passed")?;
    ensure(bad.id == "r braid equation", format!("first failure is {}", bad.id))?;
    let located = |o: &Outcome| matches!(o, Outcome::Fail { witness } if witness.column.is_some());
    ensure(located(&bad.outcome), "braid-equation failure has no witness column")?;
    let mut downstream = Vec::new();
    for s in [Suite::Hopf, Suite::Frt, Suite::Qbg] {
        let rep = run_suite(&m, "perturbed", s, 3);
        downstream.extend(rep.checks.into_iter().filter(|c| located(&c.outcome)).map(|c| format!("{}:{}", c.suite, c.id)));
    }
    ensure(!downstream.is_empty(), "no downstream suite failed with a located witness")?;
    Ok(format!("{} located downstream failures, e.g. {}", downstream.len(), downstream[0]))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("braided integers are q-integers", c1_braided_integers),
        ("root-of-unity line", c2_root_of_unity),
        ("tensor Hopf algebra suite", c3_tensor_hopf),
        ("Hopf ideal suite", c4_hopf_ideals),
        ("FRT flat dimensions", c5_flat_dims),
        ("FRT biideal suite", c6_biideal),
        ("coquasitriangular suite", c7_coquasitriangular),
        ("C-quotient suite", c8_c_quotient),
        ("bosonization suite", c9_bosonization),
        ("calculus suite", c10_calculus),
        ("negative controls", c11_negative_controls),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if only.is_some_and(|k| k != i + 1) {
            continue;
        }
        let t = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

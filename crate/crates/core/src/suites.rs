//! Named verification suites over one model, collected into a timed report.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::axioms::{verify, AxiomReport, Outcome};
use crate::boson::{check_boson, Chirality};
use crate::braided_cat::{check_braid_eq, BraidedModel, Braiding};
use crate::check::Witness;
use crate::diffcalc::{build_gamma, check_calculus, OmegaMode};
use crate::frt::{build_frt, frt_ideal, frt_ideal_closure, FrtAmbient, Side, Variant};
use crate::qbg::{
    check_action, check_bialgebra_pairing, check_comodule_braiding, check_coquasi, check_inverse_braiding, conv_inverse,
    conv_product, counit_pairing, rho, rho_bar, rho_tilde_closed, DualPair, Product,
};
use crate::tensor_hopf::{bullet_ideal, quad_ideal, GradedQuotient, TensorAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Validate,
    Hopf,
    Frt,
    Qbg,
    Boson,
    Calculus,
}

impl Suite {
    /// Everything `verify --suite all` runs, in order.
    pub const ALL: [Suite; 5] = [Suite::Hopf, Suite::Frt, Suite::Qbg, Suite::Boson, Suite::Calculus];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Validate => "validate",
            Suite::Hopf => "hopf",
            Suite::Frt => "frt",
            Suite::Qbg => "qbg",
            Suite::Boson => "boson",
            Suite::Calculus => "calculus",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [Suite::Validate].into_iter().chain(Suite::ALL).find(|x| x.name() == s).ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub suite: Suite,
    pub id: String,
    pub property: String,
    #[serde(flatten)]
    pub outcome: Outcome,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub model: String,
    pub max_degree: usize,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(model: &str, max_degree: usize) -> Self {
        Report { model: model.to_string(), max_degree, checks: Vec::new() }
    }

    /// No check failed; skipped checks do not count against the report.
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(|c| matches!(c.outcome, Outcome::Fail { .. }))
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| matches!(c.outcome, Outcome::Fail { .. }))
    }

    pub fn extend(&mut self, other: Report) {
        self.max_degree = self.max_degree.max(other.max_degree);
        self.checks.extend(other.checks);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable")
    }

    pub fn to_text(&self) -> String {
        let mut out = match self.max_degree {
            0 => format!("model {}\n", self.model),
            n => format!("model {} (max degree {n})\n", self.model),
        };
        for c in &self.checks {
            let status = match &c.outcome {
                Outcome::Pass => "pass".to_string(),
                Outcome::Fail { witness } => format!("FAIL  {witness}"),
                Outcome::Skipped { reason } => format!("skip  {reason}"),
            };
            out.push_str(&format!("[{}] {:<44} {:>7}ms  {status}\n", c.suite, c.id, c.millis));
        }
        let fails = self.failures().count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), fails));
        out
    }
}

struct Recorder<'r> {
    suite: Suite,
    report: &'r mut Report,
}

impl Recorder<'_> {
    fn run(&mut self, id: &str, property: &str, f: impl FnOnce() -> Outcome) {
        let t = Instant::now();
        let outcome = f();
        let millis = t.elapsed().as_millis();
        self.report.checks.push(CheckRecord { suite: self.suite, id: id.into(), property: property.into(), outcome, millis });
    }

    fn result(&mut self, id: &str, property: &str, f: impl FnOnce() -> Result<(), Witness>) {
        self.run(id, property, || Outcome::from_result(f()));
    }

    /// One record per entry of an axiom report, sharing the elapsed time of `f`.
    fn axioms(&mut self, prefix: &str, property: &str, f: impl FnOnce() -> Result<AxiomReport, String>) {
        let t = Instant::now();
        let rep = f();
        let millis = t.elapsed().as_millis();
        match rep {
            Err(e) => self.report.checks.push(CheckRecord {
                suite: self.suite,
                id: format!("{prefix} construction"),
                property: property.into(),
                outcome: Outcome::Fail { witness: Witness::message(e) },
                millis,
            }),
            Ok(rep) => {
                for (name, outcome) in rep.checks {
                    let id = format!("{prefix} {name}");
                    self.report.checks.push(CheckRecord { suite: self.suite, id, property: property.into(), outcome, millis });
                }
            }
        }
    }

    fn skip(&mut self, id: &str, property: &str, reason: &str) {
        self.run(id, property, || Outcome::Skipped { reason: reason.into() });
    }
}

fn from_bool(ok: bool, context: &str) -> Result<(), Witness> {
    if ok {
        Ok(())
    } else {
        Err(Witness::message(context))
    }
}

/// Braid equations for `Ψ` and `R`, naturality of `R` under `Ψ`, and of `C` when present.
pub fn validate(model: &BraidedModel, name: &str) -> Report {
    let mut report = Report::new(name, 0);
    let mut r = Recorder { suite: Suite::Validate, report: &mut report };
    r.result("psi braid equation", "Ψ solves the braid equation", || check_braid_eq(model.psi(), model.d()));
    r.result("r braid equation", "R solves the braid equation", || check_braid_eq(model.r(), model.d()));
    r.result("r morphism", "R commutes with Ψ-crossings", || model.check_r_morphism());
    if model.c().is_some() {
        r.result("c morphism", "C commutes with crossings", || model.check_c_morphism());
    } else {
        r.skip("c morphism", "C commutes with crossings", "model has no C");
    }
    report
}

fn hopf(r: &mut Recorder, model: &BraidedModel, n: usize) {
    for (b, tag) in [(Braiding::Psi, "Ψ"), (Braiding::R, "R")] {
        let t = TensorAlgebra::new(model, b, n);
        r.axioms(&format!("T(X,{tag})"), "tensor algebra is a braided Hopf algebra", || Ok(verify(&t)));
        let i = quad_ideal(model, b, n);
        let bullet = bullet_ideal(model, b, n);
        r.result(&format!("I ⊆ I• ({tag})"), "quadratic ideal lies in the braided-integer ideal", || {
            (0..=n).try_for_each(|k| from_bool(bullet[k].contains(&i[k]).expect("same ambient"), &format!("degree {k}")))
        });
        for (ideal, what) in [(i, "V"), (bullet, "V•")] {
            r.axioms(&format!("{what}(X,{tag})"), "quotient by a Hopf ideal", || {
                let v = GradedQuotient::build(&t, ideal).map_err(|e| e.to_string())?;
                Ok(verify(&v))
            });
        }
    }
}

fn frt(r: &mut Recorder, model: &BraidedModel, n: usize) {
    r.axioms("A(X,R)", "FRT ideal is a biideal", || {
        let a = build_frt(model, Variant::AR, Side::Straight, n).map_err(|e| e.to_string())?;
        Ok(verify(&a))
    });
    r.result("explicit ideal", "closed-form I_n equals the ideal generated by I_2", || {
        let amb = FrtAmbient::new(model, Side::Straight, n);
        (0..=n).try_for_each(|k| {
            let a = frt_ideal(model, Side::Straight, k).map_err(|e| Witness::message(e.to_string()))?;
            let b = frt_ideal_closure(&amb, k).map_err(|e| Witness::message(e.to_string()))?;
            from_bool(a == b, &format!("degree {k}"))
        })
    });
    if model.c().is_none() {
        r.skip("A(X,R;C)", "C-relations give a Hopf quotient", "model has no C");
        return;
    }
    r.axioms("A(X,R;C)", "C-relations give a Hopf quotient", || {
        let a = build_frt(model, Variant::ARC, Side::Straight, n).map_err(|e| e.to_string())?;
        let mut rep = verify(&a);
        let skew = a.check_skew().map(Outcome::from_result).unwrap_or(Outcome::Skipped { reason: "no skew antipode".into() });
        rep.checks.push(("skew antipode".into(), skew));
        Ok(rep)
    });
}

fn qbg(r: &mut Recorder, model: &BraidedModel, n: usize) {
    let variant = if model.c().is_some() { Variant::ARC } else { Variant::AR };
    let built = build_frt(model, variant, Side::Straight, n).and_then(|a| Ok((a, build_frt(model, variant, Side::Bar, n)?)));
    let (a, ab) = match built {
        Ok(x) => x,
        Err(e) => {
            r.run("algebras", "A and Ā", || Outcome::Fail { witness: Witness::message(e.to_string()) });
            return;
        }
    };
    r.run("action", "X is a right A-module", || {
        Outcome::from_result((1..=n.min(2)).try_for_each(|k| check_action(model, &a, k, n)))
    });
    let pair = match DualPair::new(model, &a, &ab) {
        Ok(p) => p,
        Err(e) => {
            r.run("pair", "A and Ā share a coalgebra", || Outcome::Fail { witness: Witness::message(e.to_string()) });
            return;
        }
    };
    let mut rho_ok = None;
    r.run("rho descends", "ρ vanishes on both ideals", || match rho(&pair) {
        Ok(x) => {
            rho_ok = Some(x);
            Outcome::Pass
        }
        Err(e) => Outcome::Fail { witness: Witness::message(e.to_string()) },
    });
    let Some(rho) = rho_ok else { return };
    r.axioms("rho", "ρ is a bialgebra pairing", || Ok(check_bialgebra_pairing(&pair, &rho, n)));
    let e = counit_pairing(&pair);
    let mut minus = None;
    r.result("rho invertible", "ρ is convolution invertible", || {
        let m = conv_inverse(&pair, &rho, Product::Convolution).map_err(|e| Witness::message(e.to_string()))?;
        from_bool(conv_product(&pair, &m, &rho) == e, "ρ⁻·ρ")?;
        from_bool(conv_product(&pair, &rho, &m) == e, "ρ·ρ⁻")?;
        minus = Some(m);
        Ok(())
    });
    r.result("coquasitriangular", "the axiom linking Ā^op and A through ρ", || check_coquasi(&pair, &rho, n));
    r.result("rho tilde", "closed-form second inverse", || {
        let solved = conv_inverse(&pair, &rho, Product::Second).map_err(|e| Witness::message(e.to_string()))?;
        let closed = rho_tilde_closed(&pair).map_err(|e| Witness::message(e.to_string()))?;
        from_bool(solved == closed, "solved and closed forms differ")
    });
    let shapes: Vec<(usize, usize)> = [(1, 1), (1, 2), (2, 1)].into_iter().filter(|(p, q)| p + q <= n).collect();
    r.result("comodule braiding", "induced braiding equals R", || {
        shapes.iter().try_for_each(|&(p, q)| check_comodule_braiding(&pair, &rho, p, q))
    });
    match minus {
        None => r.skip("inverse braiding", "ρ̄ inverts the induced braiding", "ρ has no convolution inverse"),
        Some(m) => {
            let bar = rho_bar(&pair, &m);
            r.result("inverse braiding", "ρ̄ inverts the induced braiding", || {
                shapes.iter().try_for_each(|&(p, q)| check_inverse_braiding(&pair, &rho, &bar, p, q))
            });
        }
    }
}

fn boson(r: &mut Recorder, model: &BraidedModel, n: usize) {
    r.axioms("A⋉V", "bosonization is a bialgebra", || check_boson(model, Chirality::Right, n).map_err(|e| e.to_string()));
}

fn calculus(r: &mut Recorder, model: &BraidedModel, n: usize) {
    if model.c().is_none() {
        r.skip("Γ", "bicovariant calculus", "model has no C");
        return;
    }
    r.axioms("Γ", "bicovariant calculus", || {
        let a = build_frt(model, Variant::ARC, Side::Straight, n).map_err(|e| e.to_string())?;
        let ab = build_frt(model, Variant::ARC, Side::Bar, n).map_err(|e| e.to_string())?;
        let pair = DualPair::new(model, &a, &ab).map_err(|e| e.to_string())?;
        let g = build_gamma(pair).map_err(|e| e.to_string())?;
        check_calculus(&g, OmegaMode::General).map_err(|e| e.to_string())
    });
}

/// Runs one suite through degree `n`.
pub fn run_suite(model: &BraidedModel, name: &str, suite: Suite, n: usize) -> Report {
    if suite == Suite::Validate {
        return validate(model, name);
    }
    let mut report = Report::new(name, n);
    let mut r = Recorder { suite, report: &mut report };
    match suite {
        Suite::Validate => unreachable!(),
        Suite::Hopf => hopf(&mut r, model, n),
        Suite::Frt => frt(&mut r, model, n),
        Suite::Qbg => qbg(&mut r, model, n),
        Suite::Boson => boson(&mut r, model, n),
        Suite::Calculus => calculus(&mut r, model, n),
    }
    report
}

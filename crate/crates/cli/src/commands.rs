use std::path::Path;

use serde_json::json;

use braidforge::braided_cat::{digits, BraidedModel, Braiding, Letter};
use braidforge::braids::braided_binomial;
use braidforge::diffcalc::{build_gamma, OmegaMode};
use braidforge::frt::{build_frt, FrtAlgebra, Side, Variant};
use braidforge::linalg::Mat;
use braidforge::model_file::{fixture, ModelFile, FIXTURE_NAMES};
use braidforge::qbg::DualPair;
use braidforge::scalars::{FieldSpec, Scalar};
use braidforge::suites::{run_suite, validate as validate_model, Report, Suite};
use braidforge::tensor_hopf::{bullet_ideal, quad_ideal};

use crate::{AlgebraArg, BraidingArg, Format};

pub struct Ctx {
    pub format: Format,
    pub max_degree: Option<usize>,
}

pub enum Status {
    Pass,
    Fail,
}

type Res = Result<Status, String>;

const DEFAULT_DEGREE: usize = 3;

/// A path to a model file, or the name of a bundled fixture.
fn load(source: &str) -> Result<ModelFile, String> {
    if Path::new(source).exists() {
        return ModelFile::load(source).map_err(|e| format!("{source}: {e}"));
    }
    if FIXTURE_NAMES.contains(&source) {
        return fixture(source).map_err(|e| e.to_string());
    }
    Err(format!("{source}: no such file or bundled fixture (fixtures: {})", FIXTURE_NAMES.join(", ")))
}

fn checked(file: &ModelFile) -> Result<BraidedModel, String> {
    file.to_model().map_err(|e| format!("{}: {e}", file.name))
}

fn degree(ctx: &Ctx, file: &ModelFile) -> usize {
    ctx.max_degree.or(file.max_degree()).unwrap_or(DEFAULT_DEGREE)
}

fn braiding(b: BraidingArg) -> Braiding {
    match b {
        BraidingArg::Psi => Braiding::Psi,
        BraidingArg::R => Braiding::R,
    }
}

fn variant(a: AlgebraArg) -> Option<Variant> {
    match a {
        AlgebraArg::A => Some(Variant::A),
        AlgebraArg::Ar => Some(Variant::AR),
        AlgebraArg::Ac => Some(Variant::AC),
        AlgebraArg::Arc => Some(Variant::ARC),
        AlgebraArg::T | AlgebraArg::V | AlgebraArg::Vbullet => None,
    }
}

fn algebra_name(a: AlgebraArg) -> &'static str {
    match a {
        AlgebraArg::T => "T",
        AlgebraArg::V => "V",
        AlgebraArg::Vbullet => "Vbullet",
        AlgebraArg::A => "A",
        AlgebraArg::Ar => "AR",
        AlgebraArg::Ac => "AC",
        AlgebraArg::Arc => "ARC",
    }
}

fn emit_report(ctx: &Ctx, report: &Report) -> Res {
    match ctx.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    Ok(if report.passed() { Status::Pass } else { Status::Fail })
}

pub fn validate(ctx: &Ctx, source: &str) -> Res {
    let file = load(source)?;
    let model = file.to_model_unchecked().map_err(|e| format!("{}: {e}", file.name))?;
    emit_report(ctx, &validate_model(&model, &file.name))
}

/// Runs `validate` first, then each suite, on the model as given.
pub fn verify(ctx: &Ctx, source: &str, suites: &[Suite]) -> Res {
    let file = load(source)?;
    let model = file.to_model_unchecked().map_err(|e| format!("{}: {e}", file.name))?;
    let n = degree(ctx, &file);
    let mut report = validate_model(&model, &file.name);
    for &s in suites {
        report.extend(run_suite(&model, &file.name, s, n));
    }
    emit_report(ctx, &report)
}

fn frt(model: &BraidedModel, v: Variant, n: usize) -> Result<FrtAlgebra, String> {
    build_frt(model, v, Side::Straight, n).map_err(|e| e.to_string())
}

pub fn dims(ctx: &Ctx, source: &str, alg: AlgebraArg, b: BraidingArg) -> Res {
    let file = load(source)?;
    let model = checked(&file)?;
    let n = degree(ctx, &file);
    let d = model.d();
    let full = |k: usize| d.pow(k as u32);
    let dims: Vec<usize> = match alg {
        AlgebraArg::T => (0..=n).map(full).collect(),
        AlgebraArg::V => quad_ideal(&model, braiding(b), n).iter().enumerate().map(|(k, i)| full(k) - i.dim()).collect(),
        AlgebraArg::Vbullet => bullet_ideal(&model, braiding(b), n).iter().enumerate().map(|(k, i)| full(k) - i.dim()).collect(),
        _ => frt(&model, variant(alg).expect("FRT variant"), n)?.dims(),
    };
    let filtered = matches!(alg, AlgebraArg::Ac | AlgebraArg::Arc);
    match ctx.format {
        Format::Json => println!("{}", json!({"model": file.name, "algebra": algebra_name(alg), "filtered": filtered, "dims": dims})),
        Format::Text => {
            let what = if filtered { "filtration level" } else { "degree" };
            println!("{} of {}, by {what}", algebra_name(alg), file.name);
            for (k, v) in dims.iter().enumerate() {
                println!("{k}: {v}");
            }
        }
    }
    Ok(Status::Pass)
}

fn x_monomial(idx: usize, d: usize, n: usize) -> String {
    if n == 0 {
        return "1".into();
    }
    digits(idx, d, n).iter().map(|i| format!("x{}", i + 1)).collect::<Vec<_>>().join(" ")
}

/// `t^I_J` for basis vector `e^I ⊗ x_J` of `A_n`, indices from 1.
fn t_monomial(idx: usize, d: usize, n: usize) -> String {
    if n == 0 {
        return "1".into();
    }
    let dn = d.pow(n as u32);
    let word = |k: usize| digits(k, d, n).iter().map(|i| (i + 1).to_string()).collect::<String>();
    format!("t^{}_{}", word(idx / dn), word(idx % dn))
}

/// Label of an ambient coordinate of component `k` of an FRT algebra.
fn frt_label(a: &FrtAlgebra, k: usize, idx: usize) -> String {
    let m = a.blocks(k).into_iter().filter(|&m| a.block_offset(m) <= idx).max().expect("block 0 starts at 0");
    t_monomial(idx - a.block_offset(m), a.d(), m)
}

/// Sign and body of `c·label`.
fn term(c: &Scalar, f: &FieldSpec, label: &str) -> (bool, String) {
    let text = c.format(f);
    let (neg, mag) = match text.strip_prefix('-') {
        Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
        _ => (false, text),
    };
    let body = if mag == "1" { label.to_string() } else if mag.contains(['+', '-', '/']) { format!("({mag}) {label}") } else { format!("{mag} {label}") };
    (neg, body)
}

fn combination(row: &[(usize, Scalar)], f: &FieldSpec, label: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    for (k, (i, c)) in row.iter().enumerate() {
        let (neg, body) = term(c, f, &label(*i));
        match (k, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn relations(ctx: &Ctx, source: &str, alg: AlgebraArg, k: usize, b: BraidingArg) -> Res {
    let file = load(source)?;
    let model = checked(&file)?;
    let f = model.field();
    let d = model.d();
    let lines: Vec<String> = match alg {
        AlgebraArg::T => Vec::new(),
        AlgebraArg::V | AlgebraArg::Vbullet => {
            let ideals = if alg == AlgebraArg::V { quad_ideal(&model, braiding(b), k) } else { bullet_ideal(&model, braiding(b), k) };
            ideals[k].basis().sparse_rows().iter().map(|r| combination(r, f, |i| x_monomial(i, d, k))).collect()
        }
        _ => {
            let a = frt(&model, variant(alg).expect("FRT variant"), k)?;
            a.quotient().ideal(k).basis().sparse_rows().iter().map(|r| combination(r, f, |i| frt_label(&a, k, i))).collect()
        }
    };
    match ctx.format {
        Format::Json => println!("{}", json!({"model": file.name, "algebra": algebra_name(alg), "degree": k, "relations": lines})),
        Format::Text => {
            println!("{} relations of {} in degree {k}: {}", algebra_name(alg), file.name, lines.len());
            for l in &lines {
                println!("{l} = 0");
            }
        }
    }
    Ok(Status::Pass)
}

fn vector(m: &Mat, f: &FieldSpec, label: impl Fn(usize) -> String) -> String {
    let row: Vec<(usize, Scalar)> = m.entries().map(|(i, _, v)| (i, v.clone())).collect();
    combination(&row, f, label)
}

pub fn calc(ctx: &Ctx, source: &str) -> Res {
    let file = load(source)?;
    let model = checked(&file)?;
    if model.c().is_none() {
        return Err(format!("{}: calc needs a model with C", file.name));
    }
    let n = ctx.max_degree.unwrap_or(2).max(2);
    let a = frt(&model, Variant::ARC, n)?;
    let ab = build_frt(&model, Variant::ARC, Side::Bar, n).map_err(|e| e.to_string())?;
    let pair = DualPair::new(&model, &a, &ab).map_err(|e| e.to_string())?;
    let g = build_gamma(pair).map_err(|e| e.to_string())?;
    let omega = g.omega(OmegaMode::General).map_err(|e| e.to_string())?;
    let f = model.field();
    let d = model.d();
    // Γ_k coordinate (e^p, F_k coordinate, x_q)
    let gamma_label = |k: usize, idx: usize| {
        let fk = g.dim_a(k);
        let (p, rest) = (idx / (fk * d), idx % (fk * d));
        let (c, q) = (rest / d, rest % d);
        let mono = a.quotient().standard_monomials(k)[c];
        format!("e{}⊗{}⊗x{}", p + 1, frt_label(&a, k, mono), q + 1)
    };
    let w = vector(&omega, f, |i| gamma_label(1, i));
    let dmat = g.derivative(&omega, 1);
    let to_f1 = a.block_to_quotient(1, 1);
    let mut rows = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let gen = to_f1.column(i * d + j);
            let dg = dmat.matmul(&gen).expect("shape");
            rows.push((t_monomial(i * d + j, d, 1), vector(&dg, f, |x| gamma_label(2, x))));
        }
    }
    match ctx.format {
        Format::Json => {
            let ds: Vec<_> = rows.iter().map(|(t, v)| json!({"generator": t, "d": v})).collect();
            println!("{}", json!({"model": file.name, "level": n, "omega": w, "derivatives": ds}));
        }
        Format::Text => {
            println!("ω = {w}");
            for (t, v) in &rows {
                println!("d({t}) = {v}");
            }
        }
    }
    Ok(Status::Pass)
}

pub fn binomial(ctx: &Ctx, n: usize, k: usize, source: Option<&str>, b: BraidingArg) -> Res {
    let sum = braided_binomial(n, k).map_err(|e| e.to_string())?;
    let value = match source {
        None => None,
        Some(source) => {
            let file = load(source)?;
            let model = checked(&file)?;
            let f = model.field();
            let objs = vec![Letter::X; n];
            let mut acc = Mat::zeros(f, model.d().pow(n as u32), model.d().pow(n as u32));
            for (w, c) in sum.terms() {
                let m = model.eval(braiding(b), w, &objs).map_err(|e| e.to_string())?;
                acc = acc.try_add(&m.scale(&f.from_int(c))).map_err(|e| e.to_string())?;
            }
            let text = match acc.as_scalar() {
                Ok(s) => s.format(f),
                Err(_) => {
                    let e: Vec<String> = acc.entries().map(|(i, j, v)| format!("[{i},{j}] {}", v.format(f))).collect();
                    e.join("; ")
                }
            };
            Some((file.name, text))
        }
    };
    match ctx.format {
        Format::Json => {
            let terms: Vec<_> = sum.terms().map(|(w, c)| json!({"coefficient": c, "word": w.to_string()})).collect();
            let mut out = json!({"n": n, "k": k, "terms": terms});
            if let Some((m, v)) = &value {
                out["model"] = json!(m);
                out["value"] = json!(v);
            }
            println!("{out}");
        }
        Format::Text => {
            println!("[{n} {k}] = {sum}");
            println!("{} terms", sum.len());
            if let Some((m, v)) = &value {
                println!("on {m}: {v}");
            }
        }
    }
    Ok(Status::Pass)
}

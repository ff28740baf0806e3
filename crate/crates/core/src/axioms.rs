//! Componentwise verification of (braided) bialgebra and Hopf algebra axioms.
//!
//! An algebra is presented by finitely many components with structure maps
//! between tensor products of components. Both sides of each axiom are
//! expanded into terms keyed by their target components and compared
//! exactly. In filtered mode every term is first pushed into the largest
//! level that occurs before summing.

use std::collections::BTreeMap;
use std::fmt::Debug;

use rayon::prelude::*;
use serde::Serialize;

use crate::check::{mat_eq, Witness};
use crate::linalg::Mat;
use crate::scalars::FieldSpec;

pub trait GradedBialgebra: Sync {
    type Key: Clone + Ord + Debug + Send + Sync;

    fn field(&self) -> &FieldSpec;

    /// Components within the truncation, in a fixed order.
    fn components(&self) -> Vec<Self::Key>;

    fn dim(&self, k: &Self::Key) -> usize;

    fn unit_key(&self) -> Self::Key;

    /// `1 -> A_{unit_key}`.
    fn unit(&self) -> Mat;

    /// Product `A_a ⊗ A_b -> A_c`, or `None` beyond the truncation.
    fn mul(&self, a: &Self::Key, b: &Self::Key) -> Option<(Self::Key, Mat)>;

    /// All pieces `A_a -> A_b ⊗ A_c` of the coproduct.
    fn comul(&self, a: &Self::Key) -> Vec<(Self::Key, Self::Key, Mat)>;

    /// `A_a -> 1`.
    fn counit(&self, a: &Self::Key) -> Mat;

    /// Crossing `A_a ⊗ A_b -> A_b ⊗ A_a` of the ambient braided category.
    fn braid(&self, a: &Self::Key, b: &Self::Key) -> Mat;

    /// `A_a -> A_a`, if an antipode is available.
    fn antipode(&self, _a: &Self::Key) -> Option<Mat> {
        None
    }

    /// Whether components form an increasing filtration rather than a grading.
    fn filtered(&self) -> bool {
        false
    }

    /// Inclusion `A_from -> A_to` (filtered mode only).
    fn embed(&self, from: &Self::Key, to: &Self::Key) -> Mat {
        assert!(from == to, "graded components do not embed: {from:?} -> {to:?}");
        Mat::identity(self.field(), self.dim(from))
    }

    /// Least component containing both (filtered mode only).
    fn join(&self, a: &Self::Key, _b: &Self::Key) -> Self::Key {
        a.clone()
    }

    /// Whether the product of all of `keys` stays inside the truncation.
    fn within(&self, keys: &[Self::Key]) -> bool;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail { witness: Witness },
    Skipped { reason: String },
}

impl Outcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Pass)
    }

    pub fn from_result(r: Result<(), Witness>) -> Self {
        match r {
            Ok(()) => Outcome::Pass,
            Err(witness) => Outcome::Fail { witness },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<(String, Outcome)>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, o)| !matches!(o, Outcome::Fail { .. }))
    }

    pub fn get(&self, name: &str) -> Option<&Outcome> {
        self.checks.iter().find(|(n, _)| n == name).map(|(_, o)| o)
    }

    pub fn first_failure(&self) -> Option<(&str, &Witness)> {
        self.checks.iter().find_map(|(n, o)| match o {
            Outcome::Fail { witness } => Some((n.as_str(), witness)),
            _ => None,
        })
    }
}

type Terms<K> = Vec<(Vec<K>, Mat)>;

fn kron_all(field: &FieldSpec, mats: &[Mat]) -> Mat {
    Mat::kron_all(field, mats.iter())
}

/// Compares two expansions of maps out of a common source.
fn compare<A: GradedBialgebra + ?Sized>(alg: &A, lhs: Terms<A::Key>, rhs: Terms<A::Key>, ctx: &str) -> Result<(), Witness> {
    let field = alg.field();
    if alg.filtered() {
        let all: Vec<&Vec<A::Key>> = lhs.iter().chain(rhs.iter()).map(|(k, _)| k).collect();
        let Some(first) = all.first() else { return Ok(()) };
        let arity = first.len();
        if all.iter().any(|k| k.len() != arity) {
            return Err(Witness::message(format!("{ctx}: terms of different arity")));
        }
        let target: Vec<A::Key> =
            (0..arity).map(|i| all.iter().skip(1).fold(first[i].clone(), |acc, k| alg.join(&acc, &k[i]))).collect();
        let push = |terms: Terms<A::Key>, src: usize| -> Mat {
            let rows: usize = target.iter().map(|k| alg.dim(k)).product();
            let mut acc = Mat::zeros(field, rows, src);
            for (keys, m) in terms {
                let e: Vec<Mat> = keys.iter().zip(&target).map(|(k, t)| alg.embed(k, t)).collect();
                acc = acc.try_add(&kron_all(field, &e).matmul(&m).expect("embed shape")).expect("sum shape");
            }
            acc
        };
        let src = lhs.first().or(rhs.first()).map(|(_, m)| m.cols()).unwrap_or(0);
        return mat_eq(&push(lhs, src), &push(rhs, src), &format!("{ctx} into {target:?}"));
    }
    let mut map: BTreeMap<Vec<A::Key>, (Option<Mat>, Option<Mat>)> = BTreeMap::new();
    let add = |slot: &mut Option<Mat>, m: Mat| {
        *slot = Some(match slot.take() {
            None => m,
            Some(prev) => prev.try_add(&m).expect("term shape"),
        })
    };
    for (k, m) in lhs {
        add(&mut map.entry(k).or_default().0, m);
    }
    for (k, m) in rhs {
        add(&mut map.entry(k).or_default().1, m);
    }
    for (k, (l, r)) in map {
        let (l, r) = match (l, r) {
            (Some(l), Some(r)) => (l, r),
            (Some(l), None) => {
                let z = Mat::zeros(field, l.rows(), l.cols());
                (l, z)
            }
            (None, Some(r)) => (Mat::zeros(field, r.rows(), r.cols()), r),
            (None, None) => continue,
        };
        mat_eq(&l, &r, &format!("{ctx} component {k:?}"))?;
    }
    Ok(())
}

fn triples<K: Clone>(ks: &[K]) -> Vec<(K, K, K)> {
    let mut out = Vec::new();
    for a in ks {
        for b in ks {
            for c in ks {
                out.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    out
}

fn first_err(results: Vec<Result<(), Witness>>) -> Result<(), Witness> {
    results.into_iter().collect()
}

pub fn check_associativity<A: GradedBialgebra + ?Sized>(alg: &A) -> Result<(), Witness> {
    let ks = alg.components();
    let res = triples(&ks)
        .into_par_iter()
        .filter(|(a, b, c)| alg.within(&[a.clone(), b.clone(), c.clone()]))
        .map(|(a, b, c)| {
            let (Some((ab, mab)), Some((bc, mbc))) = (alg.mul(&a, &b), alg.mul(&b, &c)) else { return Ok(()) };
            let (Some((abc1, m1)), Some((abc2, m2))) = (alg.mul(&ab, &c), alg.mul(&a, &bc)) else { return Ok(()) };
            let f = alg.field();
            let lhs = m1.matmul(&mab.kron(&Mat::identity(f, alg.dim(&c)))).expect("shape");
            let rhs = m2.matmul(&Mat::identity(f, alg.dim(&a)).kron(&mbc)).expect("shape");
            compare(alg, vec![(vec![abc1], lhs)], vec![(vec![abc2], rhs)], &format!("associativity {a:?}.{b:?}.{c:?}"))
        })
        .collect();
    first_err(res)
}

pub fn check_unit<A: GradedBialgebra + ?Sized>(alg: &A) -> Result<(), Witness> {
    let u = alg.unit_key();
    let eta = alg.unit();
    for a in alg.components() {
        let id = Mat::identity(alg.field(), alg.dim(&a));
        for left in [true, false] {
            let prod = if left { alg.mul(&u, &a) } else { alg.mul(&a, &u) };
            let Some((k, m)) = prod else { continue };
            let src = if left { eta.kron(&id) } else { id.kron(&eta) };
            compare(alg, vec![(vec![k], m.matmul(&src).expect("shape"))], vec![(vec![a.clone()], id.clone())], &format!("unit {a:?}"))?;
        }
    }
    Ok(())
}

pub fn check_coassociativity<A: GradedBialgebra + ?Sized>(alg: &A) -> Result<(), Witness> {
    let f = alg.field();
    let res = alg
        .components()
        .into_par_iter()
        .map(|a| {
            let mut lhs = Vec::new();
            let mut rhs = Vec::new();
            for (b, c, m) in alg.comul(&a) {
                for (d, e, mb) in alg.comul(&b) {
                    let t = mb.kron(&Mat::identity(f, alg.dim(&c))).matmul(&m).expect("shape");
                    lhs.push((vec![d, e, c.clone()], t));
                }
                for (g, h, mc) in alg.comul(&c) {
                    let t = Mat::identity(f, alg.dim(&b)).kron(&mc).matmul(&m).expect("shape");
                    rhs.push((vec![b.clone(), g, h], t));
                }
            }
            compare(alg, lhs, rhs, &format!("coassociativity {a:?}"))
        })
        .collect();
    first_err(res)
}

pub fn check_counit<A: GradedBialgebra + ?Sized>(alg: &A) -> Result<(), Witness> {
    let f = alg.field();
    for a in alg.components() {
        let id = Mat::identity(f, alg.dim(&a));
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (b, c, m) in alg.comul(&a) {
            left.push((vec![c.clone()], alg.counit(&b).kron(&Mat::identity(f, alg.dim(&c))).matmul(&m).expect("shape")));
            right.push((vec![b.clone()], Mat::identity(f, alg.dim(&b)).kron(&alg.counit(&c)).matmul(&m).expect("shape")));
        }
        compare(alg, left, vec![(vec![a.clone()], id.clone())], &format!("left counit {a:?}"))?;
        compare(alg, right, vec![(vec![a.clone()], id)], &format!("right counit {a:?}"))?;
    }
    Ok(())
}

/// `Δ∘μ = (μ⊗μ)(id⊗Ψ⊗id)(Δ⊗Δ)`, multiplicativity of `ε`, and `Δ(1) = 1⊗1`, `ε(1) = 1`.
pub fn check_bialgebra<A: GradedBialgebra + ?Sized>(alg: &A) -> Result<(), Witness> {
    let f = alg.field();
    let ks = alg.components();
    let u = alg.unit_key();
    let eta = alg.unit();
    mat_eq(&alg.counit(&u).matmul(&eta).expect("shape"), &Mat::identity(f, 1), "counit of unit")?;
    let dunit: Terms<A::Key> = alg.comul(&u).into_iter().map(|(b, c, m)| (vec![b, c], m.matmul(&eta).expect("shape"))).collect();
    compare(alg, dunit, vec![(vec![u.clone(), u.clone()], eta.kron(&eta))], "coproduct of unit")?;
    let pairs: Vec<(A::Key, A::Key)> = ks.iter().flat_map(|a| ks.iter().map(move |b| (a.clone(), b.clone()))).collect();
    let res = pairs
        .into_par_iter()
        .filter(|(a, b)| alg.within(&[a.clone(), b.clone()]))
        .map(|(a, b)| {
            let Some((ab, mab)) = alg.mul(&a, &b) else { return Ok(()) };
            let eps = alg.counit(&ab).matmul(&mab).expect("shape");
            let eps2 = alg.counit(&a).kron(&alg.counit(&b));
            compare(alg, vec![(vec![], eps)], vec![(vec![], eps2)], &format!("counit multiplicative {a:?}.{b:?}"))?;
            let lhs: Terms<A::Key> =
                alg.comul(&ab).into_iter().map(|(c, d, m)| (vec![c, d], m.matmul(&mab).expect("shape"))).collect();
            let mut rhs = Vec::new();
            let da = alg.comul(&a);
            let db = alg.comul(&b);
            for (a1, a2, ma) in &da {
                for (b1, b2, mb) in &db {
                    let (Some((k1, m1)), Some((k2, m2))) = (alg.mul(a1, b1), alg.mul(a2, b2)) else {
                        return Err(Witness::message(format!("bialgebra {a:?}.{b:?}: product {a1:?}.{b1:?} or {a2:?}.{b2:?} outside truncation")));
                    };
                    let mid = kron_all(f, &[Mat::identity(f, alg.dim(a1)), alg.braid(a2, b1), Mat::identity(f, alg.dim(b2))]);
                    let t = m1.kron(&m2).matmul(&mid).expect("shape").matmul(&ma.kron(mb)).expect("shape");
                    rhs.push((vec![k1, k2], t));
                }
            }
            compare(alg, lhs, rhs, &format!("bialgebra {a:?}.{b:?}"))
        })
        .collect();
    first_err(res)
}

/// `μ(S⊗id)Δ = ηε = μ(id⊗S)Δ` on each component (filtered: on each `F_a` with `F_{2a}` built).
pub fn check_antipode<A: GradedBialgebra + ?Sized>(alg: &A) -> Option<Result<(), Witness>> {
    let f = alg.field();
    let ks = alg.components();
    if ks.iter().any(|k| alg.antipode(k).is_none()) {
        return None;
    }
    let u = alg.unit_key();
    let eta = alg.unit();
    // a filtered component F_a needs F_{2a} for the products
    let res: Vec<Result<(), Witness>> = ks
        .par_iter()
        .filter(|a| !alg.filtered() || alg.within(&[(*a).clone(), (*a).clone()]))
        .map(|a| {
            let target = vec![(vec![u.clone()], eta.matmul(&alg.counit(a)).expect("shape"))];
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (b, c, m) in alg.comul(a) {
                let Some((k, mu)) = alg.mul(&b, &c) else {
                    return Err(Witness::message(format!("antipode {a:?}: product {b:?}.{c:?} outside truncation")));
                };
                let sb = alg.antipode(&b).unwrap();
                let sc = alg.antipode(&c).unwrap();
                let idb = Mat::identity(f, alg.dim(&b));
                let idc = Mat::identity(f, alg.dim(&c));
                left.push((vec![k.clone()], mu.matmul(&sb.kron(&idc)).expect("shape").matmul(&m).expect("shape")));
                right.push((vec![k], mu.matmul(&idb.kron(&sc)).expect("shape").matmul(&m).expect("shape")));
            }
            compare(alg, left, target.clone(), &format!("left antipode {a:?}"))?;
            compare(alg, right, target, &format!("right antipode {a:?}"))
        })
        .collect();
    Some(first_err(res))
}

/// Runs every axiom and collects the outcomes.
pub fn verify<A: GradedBialgebra + ?Sized>(alg: &A) -> AxiomReport {
    let mut checks = vec![
        ("associativity".to_string(), Outcome::from_result(check_associativity(alg))),
        ("unit".to_string(), Outcome::from_result(check_unit(alg))),
        ("coassociativity".to_string(), Outcome::from_result(check_coassociativity(alg))),
        ("counit".to_string(), Outcome::from_result(check_counit(alg))),
        ("bialgebra".to_string(), Outcome::from_result(check_bialgebra(alg))),
    ];
    let anti = match check_antipode(alg) {
        Some(r) => Outcome::from_result(r),
        None => Outcome::Skipped { reason: "no antipode".into() },
    };
    checks.push(("antipode".to_string(), anti));
    AxiomReport { checks }
}

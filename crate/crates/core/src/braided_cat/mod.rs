//! The braided category generated by `X` and its left dual `∨X`.
//!
//! `∨X` carries the dual basis `e^i`. Evaluation `∪ : ∨X⊗X -> 1` pairs
//! `e^i ⊗ x_j` to `δ_ij`, coevaluation `∩ : 1 -> X⊗∨X` is `Σ x_i ⊗ e^i`.
//! Higher cups pair `e^I ⊗ x_J` innermost first, so the dual basis vector
//! of `x_J` in `∨X^n` is `e^{rev J}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braids::{BraidError, BraidWord, CrossingProvider};
use crate::check::{mat_eq, Witness};
use crate::linalg::{invert, LinalgError, Mat};
use crate::scalars::FieldSpec;

#[derive(Debug, Clone, Error)]
pub enum CatError {
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("{which} fails the braid equation: {witness}")]
    BraidEquationFails { which: String, witness: Witness },
    #[error("the partial-transpose composite for {0} is singular, so the crossing of X over its dual does not exist")]
    DualCrossingSingular(String),
    #[error("the pairing C is degenerate")]
    DegeneratePairing,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    X,
    D,
}

pub type ObjectWord = Vec<Letter>;

/// `∨X^m ⊗ X^n`.
pub fn dx_word(m: usize, n: usize) -> ObjectWord {
    let mut w = vec![Letter::D; m];
    w.extend(std::iter::repeat_n(Letter::X, n));
    w
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Braiding {
    Psi,
    PsiInv,
    R,
    RInv,
}

impl Braiding {
    /// The mirror braiding, whose positive crossing `a⊗b -> b⊗a` inverts the original `b⊗a -> a⊗b`.
    pub fn inverse(self) -> Self {
        match self {
            Braiding::Psi => Braiding::PsiInv,
            Braiding::PsiInv => Braiding::Psi,
            Braiding::R => Braiding::RInv,
            Braiding::RInv => Braiding::R,
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Debug)]
struct LetterCrossings {
    xx: Mat,
    xd: Mat,
    dx: Mat,
    dd: Mat,
}

impl LetterCrossings {
    fn get(&self, a: Letter, b: Letter) -> &Mat {
        match (a, b) {
            (Letter::X, Letter::X) => &self.xx,
            (Letter::X, Letter::D) => &self.xd,
            (Letter::D, Letter::X) => &self.dx,
            (Letter::D, Letter::D) => &self.dd,
        }
    }
}

type CrossingKey = (Braiding, ObjectWord, ObjectWord);

/// `X` of dimension `d` with ambient braiding `Ψ`, a second braiding `R` and an optional pairing `C`.
pub struct BraidedModel {
    d: usize,
    field: FieldSpec,
    psi: Mat,
    r: Mat,
    c: Option<Mat>,
    c_inv: Option<Mat>,
    letters: [LetterCrossings; 4],
    warnings: Vec<String>,
    cache: Mutex<HashMap<CrossingKey, Arc<Mat>>>,
}

impl Clone for BraidedModel {
    fn clone(&self) -> Self {
        BraidedModel {
            d: self.d,
            field: self.field.clone(),
            psi: self.psi.clone(),
            r: self.r.clone(),
            c: self.c.clone(),
            c_inv: self.c_inv.clone(),
            letters: self.letters.clone(),
            warnings: self.warnings.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for BraidedModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BraidedModel")
            .field("d", &self.d)
            .field("field", &self.field)
            .field("has_c", &self.c.is_some())
            .finish()
    }
}

/// Digits of `idx` in base `d`, most significant first.
pub fn digits(mut idx: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for k in (0..n).rev() {
        out[k] = idx % d;
        idx /= d;
    }
    out
}

pub fn undigits(ds: impl IntoIterator<Item = usize>, d: usize) -> usize {
    ds.into_iter().fold(0, |acc, x| acc * d + x)
}

/// Index of the reversed multi-index.
pub fn rev_index(idx: usize, d: usize, n: usize) -> usize {
    undigits(digits(idx, d, n).into_iter().rev(), d)
}

/// `(M⊗1)(1⊗M)(M⊗1) = (1⊗M)(M⊗1)(1⊗M)` on `X^3`.
pub fn check_braid_eq(m: &Mat, d: usize) -> Result<(), Witness> {
    let id = Mat::identity(m.field(), d * d * d);
    let step = |acc: Mat, left: usize, right: usize| acc.apply_local(left, m, right).expect("shape");
    let lhs = step(step(step(id.clone(), 1, d), d, 1), 1, d);
    let rhs = step(step(step(id, d, 1), 1, d), d, 1);
    mat_eq(&lhs, &rhs, "braid equation")
}

fn dual_dd(m: &Mat, d: usize) -> Mat {
    Mat::from_triplets(
        m.field(),
        d * d,
        d * d,
        m.entries().map(|(row, col, v)| {
            let (a, b) = (row / d, row % d);
            let (g, h) = (col / d, col % d);
            (h * d + g, b * d + a, v.clone())
        }),
    )
}

/// `∨X⊗X -> X⊗∨X`, `(∪⊗X⊗∨X)(∨X⊗m⊗∨X)(∨X⊗X⊗∩)`.
fn partial_transpose(m: &Mat, d: usize) -> Mat {
    Mat::from_triplets(
        m.field(),
        d * d,
        d * d,
        m.entries().map(|(row, col, v)| {
            let (a, dd) = (row / d, row % d);
            let (b, k) = (col / d, col % d);
            (dd * d + k, a * d + b, v.clone())
        }),
    )
}

fn derive_letters(m: &Mat, m_inv: &Mat, d: usize, name: &str) -> Result<LetterCrossings, CatError> {
    let pt = partial_transpose(m, d);
    let xd = invert(&pt).map_err(|_| CatError::DualCrossingSingular(name.to_string()))?;
    Ok(LetterCrossings { xx: m.clone(), xd, dx: partial_transpose(m_inv, d), dd: dual_dd(m, d) })
}

fn mirror_letters(orig: &LetterCrossings, m_inv: &Mat, d: usize, name: &str) -> Result<LetterCrossings, CatError> {
    let singular = |_| CatError::DualCrossingSingular(format!("inverse of {name}"));
    Ok(LetterCrossings {
        xx: m_inv.clone(),
        xd: invert(&orig.dx).map_err(singular)?,
        dx: partial_transpose(&orig.xx, d),
        dd: invert(&orig.dd).map_err(singular)?,
    })
}

/// Builds the model and all derived letter crossings.
pub fn build_model(d: usize, field: &FieldSpec, psi: Mat, r: Mat, c: Option<Mat>) -> Result<BraidedModel, CatError> {
    let d2 = d * d;
    for (name, m) in [("psi", &psi), ("r", &r)] {
        if m.shape() != (d2, d2) {
            return Err(CatError::ShapeMismatch(format!("{name} is {:?}, expected {d2}x{d2}", m.shape())));
        }
        if m.field() != field {
            return Err(CatError::Linalg(LinalgError::FieldMismatch));
        }
    }
    let psi_inv = invert(&psi).map_err(|_| CatError::NotInvertible("psi".into()))?;
    let r_inv = invert(&r).map_err(|_| CatError::NotInvertible("r".into()))?;
    for (name, m) in [("psi", &psi), ("r", &r)] {
        check_braid_eq(m, d).map_err(|witness| CatError::BraidEquationFails { which: name.into(), witness })?;
    }
    assemble(d, field, psi, r, c, psi_inv, r_inv)
}

/// As [`build_model`] but a failing braid equation becomes a warning.
/// Lets downstream checks run on deliberately broken data.
pub fn build_model_unchecked(d: usize, field: &FieldSpec, psi: Mat, r: Mat, c: Option<Mat>) -> Result<BraidedModel, CatError> {
    let d2 = d * d;
    for (name, m) in [("psi", &psi), ("r", &r)] {
        if m.shape() != (d2, d2) {
            return Err(CatError::ShapeMismatch(format!("{name} is {:?}, expected {d2}x{d2}", m.shape())));
        }
    }
    let psi_inv = invert(&psi).map_err(|_| CatError::NotInvertible("psi".into()))?;
    let r_inv = invert(&r).map_err(|_| CatError::NotInvertible("r".into()))?;
    let mut broken = Vec::new();
    for (name, m) in [("psi", &psi), ("r", &r)] {
        if let Err(w) = check_braid_eq(m, d) {
            broken.push(format!("{name} fails the braid equation: {w}"));
        }
    }
    let mut model = assemble(d, field, psi, r, c, psi_inv, r_inv)?;
    model.warnings.extend(broken);
    Ok(model)
}

fn assemble(d: usize, field: &FieldSpec, psi: Mat, r: Mat, c: Option<Mat>, psi_inv: Mat, r_inv: Mat) -> Result<BraidedModel, CatError> {
    let d2 = d * d;
    let lp = derive_letters(&psi, &psi_inv, d, "psi")?;
    let lr = derive_letters(&r, &r_inv, d, "r")?;
    let lpi = mirror_letters(&lp, &psi_inv, d, "psi")?;
    let lri = mirror_letters(&lr, &r_inv, d, "r")?;
    let c_inv = match &c {
        None => None,
        Some(cm) => {
            if cm.shape() != (1, d2) {
                return Err(CatError::ShapeMismatch(format!("c is {:?}, expected 1x{d2}", cm.shape())));
            }
            let square = Mat::from_triplets(field, d, d, cm.entries().map(|(_, j, v)| (j / d, j % d, v.clone())));
            Some(invert(&square).map_err(|_| CatError::DegeneratePairing)?)
        }
    };
    let mut model = BraidedModel {
        d,
        field: field.clone(),
        psi,
        r,
        c,
        c_inv,
        letters: [lp, lpi, lr, lri],
        warnings: Vec::new(),
        cache: Mutex::new(HashMap::new()),
    };
    if model.c.is_some() {
        if let Err(w) = model.check_c_natural(Braiding::Psi) {
            model.warnings.push(format!("C is not natural with respect to psi: {w}"));
        }
    }
    Ok(model)
}

/// Crossing provider for strands labelled by letters.
pub struct Strands<'a> {
    pub model: &'a BraidedModel,
    pub braiding: Braiding,
}

impl CrossingProvider for Strands<'_> {
    type Obj = Letter;

    fn field(&self) -> &FieldSpec {
        &self.model.field
    }

    fn dim(&self, _: &Letter) -> usize {
        self.model.d
    }

    fn crossing(&self, a: &Letter, b: &Letter, positive: bool) -> Result<Mat, BraidError> {
        let br = if positive { self.braiding } else { self.braiding.inverse() };
        Ok(self.model.letters[br.slot()].get(*a, *b).clone())
    }
}

/// Each letter of `v` in turn moves left across all of `u`.
pub fn hexagon_word(p: usize, q: usize) -> BraidWord {
    let mut time = Vec::new();
    for j in 0..q {
        for g in (j + 1..=p + j).rev() {
            time.push((g, true));
        }
    }
    time.reverse();
    BraidWord::new(p + q, time).expect("in range")
}

/// Each letter of `u`, last first, moves right across all of `v`.
pub fn alt_hexagon_word(p: usize, q: usize) -> BraidWord {
    let mut time = Vec::new();
    for i in (0..p).rev() {
        for g in i + 1..=i + q {
            time.push((g, true));
        }
    }
    time.reverse();
    BraidWord::new(p + q, time).expect("in range")
}

impl BraidedModel {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn psi(&self) -> &Mat {
        &self.psi
    }

    pub fn r(&self) -> &Mat {
        &self.r
    }

    pub fn c(&self) -> Option<&Mat> {
        self.c.as_ref()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn dim(&self, w: &[Letter]) -> usize {
        self.d.pow(w.len() as u32)
    }

    pub fn strands(&self, braiding: Braiding) -> Strands<'_> {
        Strands { model: self, braiding }
    }

    pub fn letter_crossing(&self, braiding: Braiding, a: Letter, b: Letter) -> &Mat {
        self.letters[braiding.slot()].get(a, b)
    }

    /// The crossing `u⊗v -> v⊗u` assembled from letter crossings.
    pub fn crossing(&self, braiding: Braiding, u: &[Letter], v: &[Letter]) -> Arc<Mat> {
        let key = (braiding, u.to_vec(), v.to_vec());
        if let Some(m) = self.cache.lock().unwrap().get(&key) {
            return m.clone();
        }
        let mut objs = u.to_vec();
        objs.extend_from_slice(v);
        let m = crate::braids::eval_word(&hexagon_word(u.len(), v.len()), &objs, &self.strands(braiding))
            .expect("letter crossings are total");
        let m = Arc::new(m);
        self.cache.lock().unwrap().entry(key).or_insert(m).clone()
    }

    pub fn eval(&self, braiding: Braiding, w: &BraidWord, objs: &[Letter]) -> Result<Mat, CatError> {
        Ok(crate::braids::eval_word(w, objs, &self.strands(braiding))?)
    }

    pub fn id(&self, n: usize) -> Mat {
        Mat::identity(&self.field, self.d.pow(n as u32))
    }

    pub fn cup(&self) -> Mat {
        self.cup_n(1)
    }

    pub fn cap(&self) -> Mat {
        self.cap_n(1)
    }

    /// Nested evaluation `∨X^n ⊗ X^n -> 1`.
    pub fn cup_n(&self, n: usize) -> Mat {
        let dn = self.d.pow(n as u32);
        let one = self.field.one();
        Mat::from_triplets(&self.field, 1, dn * dn, (0..dn).map(|i| (0, i * dn + rev_index(i, self.d, n), one.clone())))
    }

    /// Nested coevaluation `1 -> X^n ⊗ ∨X^n`.
    pub fn cap_n(&self, n: usize) -> Mat {
        let dn = self.d.pow(n as u32);
        let one = self.field.one();
        Mat::from_triplets(&self.field, dn * dn, 1, (0..dn).map(|j| (j * dn + rev_index(j, self.d, n), 0, one.clone())))
    }

    /// Dual arrow of `f : X^k -> X^l`, a map `∨X^l -> ∨X^k`.
    pub fn dual_arrow(&self, f: &Mat, k: usize, l: usize) -> Result<Mat, CatError> {
        let (dk, dl) = (self.d.pow(k as u32), self.d.pow(l as u32));
        if f.shape() != (dl, dk) {
            return Err(CatError::ShapeMismatch(format!("dual_arrow of {:?} as X^{k}->X^{l}", f.shape())));
        }
        Ok(Mat::from_triplets(
            &self.field,
            dk,
            dl,
            f.entries().map(|(b, a, v)| (rev_index(a, self.d, k), rev_index(b, self.d, l), v.clone())),
        ))
    }

    fn require_c(&self) -> Result<(&Mat, &Mat), CatError> {
        match (&self.c, &self.c_inv) {
            (Some(c), Some(ci)) => Ok((c, ci)),
            _ => Err(CatError::ShapeMismatch("model has no pairing C".into())),
        }
    }

    /// `c_{ij}` as a `d x d` matrix.
    fn c_square(&self) -> Result<Mat, CatError> {
        let (c, _) = self.require_c()?;
        let d = self.d;
        Ok(Mat::from_triplets(&self.field, d, d, c.entries().map(|(_, j, v)| (j / d, j % d, v.clone()))))
    }

    fn nested_form(&self, m: &Mat, n: usize, transpose_first: bool) -> Mat {
        let d = self.d;
        let dn = d.pow(n as u32);
        let dense = m.to_dense();
        let mut trip = Vec::new();
        for a in 0..dn {
            let ra = digits(rev_index(a, d, n), d, n);
            for b in 0..dn {
                let bd = digits(b, d, n);
                let mut v = self.field.one();
                for s in 0..n {
                    let e = if transpose_first { &dense[bd[s]][ra[s]] } else { &dense[ra[s]][bd[s]] };
                    v = &v * e;
                    if v.is_zero() {
                        break;
                    }
                }
                if !v.is_zero() {
                    trip.push((0, a * dn + b, v));
                }
            }
        }
        Mat::from_triplets(&self.field, 1, dn * dn, trip)
    }

    /// Nested pairing `C_n : X^n ⊗ X^n -> 1`, `x_I ⊗ x_J ↦ Π c(i_{n+1-s}, j_s)`.
    pub fn extend_pairing(&self, n: usize) -> Result<Mat, CatError> {
        let sq = self.c_square()?;
        Ok(self.nested_form(&sq, n, false))
    }

    /// Copairing `1 -> X^n ⊗ X^n` inverse to `C_n` under the snake identities.
    pub fn copairing(&self, n: usize) -> Result<Mat, CatError> {
        let (_, ci) = self.require_c()?;
        let d = self.d;
        let dn = d.pow(n as u32);
        let dense = ci.to_dense();
        let trip = (0..dn).flat_map(|k| {
            let kd = digits(k, d, n);
            let dense = &dense;
            (0..dn).filter_map(move |l| {
                let rl = digits(rev_index(l, d, n), d, n);
                let v = (0..n).fold(self.field.one(), |acc, s| &acc * &dense[kd[s]][rl[s]]);
                (!v.is_zero()).then_some((k * dn + l, 0, v))
            })
        });
        Ok(Mat::from_triplets(&self.field, dn * dn, 1, trip.collect::<Vec<_>>()))
    }

    /// `∨C : ∨X^n ⊗ ∨X^n -> 1`, `e^A ⊗ e^B ↦ Π c'(b_s, a_{n+1-s})`.
    pub fn vee_c(&self, n: usize) -> Result<Mat, CatError> {
        let (_, ci) = self.require_c()?;
        Ok(self.nested_form(ci, n, true))
    }

    /// Copairing `1 -> ∨X^n ⊗ ∨X^n` inverse to [`Self::vee_c`]; for `n = 1` it is `Σ c_ab e^b ⊗ e^a`.
    pub fn vee_copairing(&self, n: usize) -> Result<Mat, CatError> {
        let sq = self.c_square()?;
        let d = self.d;
        let dn = d.pow(n as u32);
        let dense = sq.to_dense();
        let mut trip = Vec::new();
        for b in 0..dn {
            let bd = digits(b, d, n);
            for l in 0..dn {
                let rl = digits(rev_index(l, d, n), d, n);
                let v = (0..n).fold(self.field.one(), |acc, s| &acc * &dense[rl[s]][bd[s]]);
                if !v.is_zero() {
                    trip.push((b * dn + l, 0, v));
                }
            }
        }
        Ok(Mat::from_triplets(&self.field, dn * dn, 1, trip))
    }

    /// `C` slides across single-letter spectators under the given braiding.
    pub fn check_c_natural(&self, braiding: Braiding) -> Result<(), Witness> {
        let c = self.c.as_ref().ok_or_else(|| Witness::message("model has no pairing C"))?;
        let id = self.id(1);
        let xx = [Letter::X, Letter::X];
        for y in [Letter::X, Letter::D] {
            let across = self.crossing(braiding, &xx, &[y]);
            let lhs = id.kron(c).matmul(&across).expect("shape");
            mat_eq(&lhs, &c.kron(&id), &format!("C crossing under {y:?} ({braiding:?})"))?;
            let back = self.crossing(braiding, &[y], &xx);
            let lhs = c.kron(&id).matmul(&back).expect("shape");
            mat_eq(&lhs, &id.kron(c), &format!("C crossing over {y:?} ({braiding:?})"))?;
        }
        Ok(())
    }

    /// `C` is a morphism of the category braided by `R`.
    pub fn check_c_morphism(&self) -> Result<(), Witness> {
        self.check_c_natural(Braiding::R)
    }

    /// `R` commutes with `Ψ`-crossings of one-letter spectators.
    pub fn check_r_morphism(&self) -> Result<(), Witness> {
        let xx = [Letter::X, Letter::X];
        let id = self.id(1);
        let ry = self.r.kron(&id);
        let yr = id.kron(&self.r);
        for y in [Letter::X, Letter::D] {
            let over = self.crossing(Braiding::Psi, &[y], &xx);
            mat_eq(
                &over.matmul(&yr).expect("shape"),
                &ry.matmul(&over).expect("shape"),
                &format!("R under a {y:?} spectator"),
            )?;
            let under = self.crossing(Braiding::Psi, &xx, &[y]);
            mat_eq(
                &under.matmul(&ry).expect("shape"),
                &yr.matmul(&under).expect("shape"),
                &format!("R over a {y:?} spectator"),
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;

//! Permutations, braid words and braided binomials.
//!
//! Permutations are 0-based internally. A braid letter `σᵢ` (1-based `i`)
//! exchanges strands `i` and `i+1`; the word `g₁…g_k` evaluates to
//! `M(g₁)···M(g_k)`, so the rightmost letter acts first.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{LinalgError, Mat};
use crate::scalars::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("range error: {0}")]
    Range(String),
    #[error("crossing {0} is not invertible")]
    NonInvertibleCrossing(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n).collect() }
    }

    /// From 0-based images; `None` unless bijective.
    pub fn new(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Perm { images })
    }

    /// From 1-based images, as in one-line notation `(2 1)`.
    pub fn from_one_based(images: &[usize]) -> Option<Self> {
        if images.contains(&0) {
            return None;
        }
        Perm::new(images.iter().map(|i| i - 1).collect())
    }

    /// Transposition of the 0-based positions `i` and `i+1`.
    pub fn adjacent(n: usize, i: usize) -> Self {
        let mut p = Perm::identity(n);
        p.images.swap(i, i + 1);
        p
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, k: usize) -> usize {
        self.images[k]
    }

    /// `(self ∘ other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm { images: other.images.iter().map(|&k| self.images[k]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.n()];
        for (k, &v) in self.images.iter().enumerate() {
            inv[v] = k;
        }
        Perm { images: inv }
    }

    /// Inversion count, the Coxeter length.
    pub fn length(&self) -> usize {
        let a = &self.images;
        (0..a.len()).map(|i| (i + 1..a.len()).filter(|&j| a[i] > a[j]).count()).sum()
    }

    /// Reduced positive lift, by bubble sort on the leftmost descent.
    pub fn lift(&self) -> BraidWord {
        let mut a = self.images.clone();
        let mut swaps = Vec::new();
        while let Some(i) = (0..a.len().saturating_sub(1)).find(|&i| a[i] > a[i + 1]) {
            a.swap(i, i + 1);
            swaps.push(i + 1);
        }
        swaps.reverse();
        BraidWord { strands: self.n(), letters: swaps.into_iter().map(|g| (g, true)).collect() }
    }

    /// All permutations of `n` points in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if cur.len() == n {
                out.push(Perm { images: cur.clone() });
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.images.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "({})", s.join(" "))
    }
}

/// A word in the braid generators; letters are `(i, positive)` with `1 <= i < strands`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<(usize, bool)>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(usize, bool)>) -> Result<Self, BraidError> {
        if let Some(&(g, _)) = letters.iter().find(|(g, _)| *g == 0 || *g >= strands) {
            return Err(BraidError::Range(format!("generator {g} on {strands} strands")));
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn empty(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(usize, bool)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.1)
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands, letters }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|&(g, s)| (g, !s)).collect() }
    }

    /// The same word with every generator index shifted right by `k` inside `strands` strands.
    pub fn shifted(&self, k: usize, strands: usize) -> BraidWord {
        assert!(self.strands + k <= strands);
        BraidWord { strands, letters: self.letters.iter().map(|&(g, s)| (g + k, s)).collect() }
    }

    pub fn permutation(&self) -> Perm {
        self.letters
            .iter()
            .fold(Perm::identity(self.strands), |acc, &(g, _)| acc.compose(&Perm::adjacent(self.strands, g - 1)))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.letters.iter().map(|&(g, s)| if s { format!("s{g}") } else { format!("s{g}^-1") }).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Integer combination of literal braid words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalBraidSum {
    strands: usize,
    terms: BTreeMap<BraidWord, i64>,
}

impl FormalBraidSum {
    pub fn zero(strands: usize) -> Self {
        FormalBraidSum { strands, terms: BTreeMap::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn add_term(&mut self, w: BraidWord, c: i64) {
        assert_eq!(w.strands, self.strands);
        let e = self.terms.entry(w).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BraidWord, i64)> {
        self.terms.iter().map(|(w, c)| (w, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for FormalBraidSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            let (sign, a) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            match (first, sign) {
                (true, "-") => write!(f, "-")?,
                (true, _) => {}
                (false, s) => write!(f, " {s} ")?,
            }
            if a == 1 {
                write!(f, "{w}")?;
            } else {
                write!(f, "{a}*{w}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Permutations fixing the relative order of `0..k` and of `k..n`.
pub fn shuffles(n: usize, k: usize) -> Result<Vec<Perm>, BraidError> {
    if k > n {
        return Err(BraidError::Range(format!("shuffles({n},{k})")));
    }
    Ok(Perm::all(n)
        .into_iter()
        .filter(|p| (1..k).all(|i| p.apply(i - 1) < p.apply(i)) && (k + 1..n).all(|i| p.apply(i - 1) < p.apply(i)))
        .collect())
}

/// Positive lift of the order reversal on `n` strands.
pub fn garside(n: usize) -> Result<BraidWord, BraidError> {
    if n == 0 {
        return Err(BraidError::Range("garside(0)".into()));
    }
    Ok(Perm::new((0..n).rev().collect()).unwrap().lift())
}

/// `Σ σ̂` over the permutations whose inverse is a `(k, n-k)` shuffle.
pub fn braided_binomial(n: usize, k: usize) -> Result<FormalBraidSum, BraidError> {
    let mut s = FormalBraidSum::zero(n);
    for p in shuffles(n, k)? {
        s.add_term(p.inverse().lift(), 1);
    }
    Ok(s)
}

/// `Σ σ̂` over all of `S_n`.
pub fn braided_factorial(n: usize) -> FormalBraidSum {
    let mut s = FormalBraidSum::zero(n);
    for p in Perm::all(n) {
        s.add_term(p.lift(), 1);
    }
    s
}

/// Supplies crossing matrices for adjacent strands carrying objects.
pub trait CrossingProvider: Sync {
    type Obj: Clone + Send + Sync;

    fn field(&self) -> &FieldSpec;

    fn dim(&self, o: &Self::Obj) -> usize;

    /// The positive crossing `a ⊗ b -> b ⊗ a`, or for `positive = false`
    /// the inverse of the positive crossing `b ⊗ a -> a ⊗ b`.
    fn crossing(&self, a: &Self::Obj, b: &Self::Obj, positive: bool) -> Result<Mat, BraidError>;
}

/// Every strand carries the same space with one fixed crossing.
pub struct UniformCrossing {
    field: FieldSpec,
    dim: usize,
    pos: Mat,
    neg: Option<Mat>,
}

impl UniformCrossing {
    pub fn new(crossing: Mat) -> Self {
        let d2 = crossing.rows();
        let dim = (d2 as f64).sqrt().round() as usize;
        assert_eq!(dim * dim, d2, "crossing must act on a square tensor");
        let neg = crate::linalg::invert(&crossing).ok();
        UniformCrossing { field: crossing.field().clone(), dim, pos: crossing, neg }
    }
}

impl CrossingProvider for UniformCrossing {
    type Obj = ();

    fn field(&self) -> &FieldSpec {
        &self.field
    }

    fn dim(&self, _: &()) -> usize {
        self.dim
    }

    fn crossing(&self, _: &(), _: &(), positive: bool) -> Result<Mat, BraidError> {
        if positive {
            Ok(self.pos.clone())
        } else {
            self.neg.clone().ok_or_else(|| BraidError::NonInvertibleCrossing("uniform".into()))
        }
    }
}

/// Matrix of a braid word on the object word `objs` (the source).
pub fn eval_word<P: CrossingProvider>(w: &BraidWord, objs: &[P::Obj], p: &P) -> Result<Mat, BraidError> {
    if objs.len() != w.strands {
        return Err(BraidError::Range(format!("word on {} strands applied to {} objects", w.strands, objs.len())));
    }
    let dims: Vec<usize> = objs.iter().map(|o| p.dim(o)).collect();
    let total: usize = dims.iter().product();
    let mut cur: Vec<P::Obj> = objs.to_vec();
    let mut cur_dims = dims;
    let mut m = Mat::identity(p.field(), total);
    for &(g, positive) in w.letters.iter().rev() {
        let i = g - 1;
        let c = p.crossing(&cur[i], &cur[i + 1], positive)?;
        let left: usize = cur_dims[..i].iter().product();
        let right: usize = cur_dims[i + 2..].iter().product();
        m = m.apply_local(left, &c, right)?;
        cur.swap(i, i + 1);
        cur_dims.swap(i, i + 1);
    }
    Ok(m)
}

/// Linear extension of [`eval_word`]; all terms must share source and target.
pub fn eval_sum<P: CrossingProvider>(s: &FormalBraidSum, objs: &[P::Obj], p: &P) -> Result<Mat, BraidError> {
    let total: usize = objs.iter().map(|o| p.dim(o)).product();
    let parts: Vec<Result<Mat, BraidError>> = s
        .terms
        .par_iter()
        .map(|(w, c)| Ok(eval_word(w, objs, p)?.scale(&p.field().from_int(*c))))
        .collect();
    let mut acc = Mat::zeros(p.field(), total, total);
    for m in parts {
        let m = m?;
        if m.shape() != acc.shape() {
            return Err(BraidError::Range("terms of the sum have different targets".into()));
        }
        acc = acc.try_add(&m)?;
    }
    Ok(acc)
}

/// Matrix moving the tensor factor at position `k` to position `perm(k)`.
pub fn tensor_permutation(field: &FieldSpec, dims: &[usize], perm: &Perm) -> Mat {
    let n = dims.len();
    assert_eq!(perm.n(), n);
    let inv = perm.inverse();
    let out_dims: Vec<usize> = (0..n).map(|j| dims[inv.apply(j)]).collect();
    let total: usize = dims.iter().product();
    let one = field.one();
    let mut trip = Vec::with_capacity(total);
    let mut idx = vec![0usize; n];
    for col in 0..total {
        let mut rem = col;
        for k in (0..n).rev() {
            idx[k] = rem % dims[k];
            rem /= dims[k];
        }
        let mut row = 0;
        for j in 0..n {
            row = row * out_dims[j] + idx[inv.apply(j)];
        }
        trip.push((row, col, one.clone()));
    }
    Mat::from_triplets(field, total, total, trip)
}

#[cfg(test)]
mod tests;

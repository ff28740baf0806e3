use rayon::prelude::*;

use super::{a_comul, a_counit, FrtAmbient};
use crate::axioms::GradedBialgebra;
use crate::braided_cat::dx_word;
use crate::linalg::{Mat, Subspace};
use crate::scalars::{FieldSpec, Scalar};

/// `(i, None)` is `A_i` inside some `F`; `(i, Some((j, b)))` is `A_i ⊗ A_j` inside `F_? ⊗ F_b`.
type Slot = (usize, Option<(usize, usize)>);

/// `F_k = A_0 ⊕ … ⊕ A_k` for `k <= level`, as a filtered bialgebra.
pub struct FilteredFrt<'a> {
    amb: &'a FrtAmbient<'a>,
    level: usize,
    offsets: Vec<usize>,
    antipodes: Option<Vec<Mat>>,
}

fn offsets(d: usize, level: usize) -> Vec<usize> {
    let mut out = vec![0];
    for n in 0..=level {
        out.push(out[n] + d.pow(2 * n as u32));
    }
    out
}

impl<'a> FilteredFrt<'a> {
    /// `antipodes[n]` acts on `A_n`, `n <= level`.
    pub fn new(amb: &'a FrtAmbient<'a>, level: usize, antipodes: Option<Vec<Mat>>) -> Self {
        assert!(level <= amb.n_max(), "level beyond the ambient truncation");
        FilteredFrt { amb, level, offsets: offsets(amb.model().d(), level), antipodes }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Start of `A_n` inside every `F_k`, `k >= n`.
    pub fn offset(&self, n: usize) -> usize {
        self.offsets[n]
    }

    fn adim(&self, n: usize) -> usize {
        self.amb.model().d().pow(2 * n as u32)
    }

    fn fdim(&self, k: usize) -> usize {
        self.offsets[k + 1]
    }

    /// Places a block `m` between slots of filtered components.
    fn place(&self, out: &mut Vec<(usize, usize, Scalar)>, m: &Mat, src: Slot, dst: Slot) {
        let map = |idx: usize, (i, rest): (usize, Option<(usize, usize)>), fb: usize| match rest {
            None => self.offsets[i] + idx,
            Some((j, _)) => {
                let dj = self.adim(j);
                (self.offsets[i] + idx / dj) * fb + self.offsets[j] + idx % dj
            }
        };
        let fs = src.1.map(|(_, b)| self.fdim(b)).unwrap_or(0);
        let fd = dst.1.map(|(_, b)| self.fdim(b)).unwrap_or(0);
        for (r, c, v) in m.entries() {
            out.push((map(r, dst, fd), map(c, src, fs), v.clone()));
        }
    }
}

impl GradedBialgebra for FilteredFrt<'_> {
    type Key = usize;

    fn field(&self) -> &FieldSpec {
        self.amb.model().field()
    }

    fn components(&self) -> Vec<usize> {
        (0..=self.level).collect()
    }

    fn dim(&self, k: &usize) -> usize {
        self.fdim(*k)
    }

    fn unit_key(&self) -> usize {
        0
    }

    fn unit(&self) -> Mat {
        Mat::identity(self.field(), 1)
    }

    fn mul(&self, a: &usize, b: &usize) -> Option<(usize, Mat)> {
        let (a, b) = (*a, *b);
        if a + b > self.level {
            return None;
        }
        let mut trip = Vec::new();
        for i in 0..=a {
            for j in 0..=b {
                self.place(&mut trip, self.amb.product(i, j), (i, Some((j, b))), (i + j, None));
            }
        }
        Some((a + b, Mat::from_triplets(self.field(), self.fdim(a + b), self.fdim(a) * self.fdim(b), trip)))
    }

    fn comul(&self, a: &usize) -> Vec<(usize, usize, Mat)> {
        let a = *a;
        let mut trip = Vec::new();
        for n in 0..=a {
            self.place(&mut trip, &a_comul(self.amb.model(), n), (n, None), (n, Some((n, a))));
        }
        let fa = self.fdim(a);
        vec![(a, a, Mat::from_triplets(self.field(), fa * fa, fa, trip))]
    }

    fn counit(&self, a: &usize) -> Mat {
        let mut trip = Vec::new();
        for n in 0..=*a {
            for (_, c, v) in a_counit(self.amb.model(), n).entries() {
                trip.push((0, self.offsets[n] + c, v.clone()));
            }
        }
        Mat::from_triplets(self.field(), 1, self.fdim(*a), trip)
    }

    fn braid(&self, a: &usize, b: &usize) -> Mat {
        let (a, b) = (*a, *b);
        let model = self.amb.model();
        let mut trip = Vec::new();
        for i in 0..=a {
            for j in 0..=b {
                let x = model.crossing(self.amb.side().psi(), &dx_word(i, i), &dx_word(j, j));
                self.place(&mut trip, &x, (i, Some((j, b))), (j, Some((i, a))));
            }
        }
        let n = self.fdim(a) * self.fdim(b);
        Mat::from_triplets(self.field(), n, n, trip)
    }

    fn antipode(&self, a: &usize) -> Option<Mat> {
        let s = self.antipodes.as_ref()?;
        let mut trip = Vec::new();
        for n in 0..=*a {
            self.place(&mut trip, &s[n], (n, None), (n, None));
        }
        Some(Mat::from_triplets(self.field(), self.fdim(*a), self.fdim(*a), trip))
    }

    fn filtered(&self) -> bool {
        true
    }

    fn embed(&self, from: &usize, to: &usize) -> Mat {
        let f = self.field();
        let one = f.one();
        Mat::from_triplets(f, self.fdim(*to), self.fdim(*from), (0..self.fdim(*from)).map(|i| (i, i, one.clone())))
    }

    fn join(&self, a: &usize, b: &usize) -> usize {
        *a.max(b)
    }

    fn within(&self, keys: &[usize]) -> bool {
        keys.iter().sum::<usize>() <= self.level
    }
}

/// `I ∩ F_m` for `m <= n_max`, where `I` is the two-sided ideal generated by the columns of `gens`
/// (vectors in `F_k`), computed inside `F_L` with `L` the ambient truncation.
pub fn filtered_ideal(amb: &FrtAmbient, gens: &Mat, k: usize, n_max: usize) -> Vec<Subspace> {
    let model = amb.model();
    let f = model.field();
    let d = model.d();
    let big = amb.n_max();
    assert!(n_max <= big && k <= big);
    let offs = offsets(d, big);
    let total = offs[big + 1];
    let adim = |n: usize| d.pow(2 * n as u32);
    // homogeneous parts g_j of the generators
    let parts: Vec<Mat> = (0..=k).map(|j| gens.select_rows(&(offs[j]..offs[j + 1]).collect::<Vec<_>>())).collect();
    let pairs: Vec<(usize, usize)> = (0..=big - k).flat_map(|a| (0..=big - k - a).map(move |b| (a, b))).collect();
    let blocks: Vec<Mat> = pairs
        .into_par_iter()
        .map(|(a, b)| {
            let ncols = adim(a) * gens.cols() * adim(b);
            let mut trip = Vec::new();
            for (j, g) in parts.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                let inner = amb.product(j, b).matmul(&g.kron(&model.id(2 * b))).expect("shape");
                let full = amb.product(a, j + b).matmul(&model.id(2 * a).kron(&inner)).expect("shape");
                let off = offs[a + j + b];
                trip.extend(full.entries().map(|(r, c, v)| (off + r, c, v.clone())));
            }
            Mat::from_triplets(f, total, ncols, trip)
        })
        .collect();
    // reversed coordinates put high degrees first, so echelon rows with late pivots live in low levels
    let rev: Vec<usize> = (0..total).map(|i| total - 1 - i).collect();
    let rows = blocks.iter().fold(Mat::zeros(f, 0, total), |acc, b| acc.vstack(&b.transpose()).expect("width"));
    let span = Subspace::row_span(&rows.permute_cols(&rev));
    let basis = span.basis().permute_cols(&rev);
    (0..=n_max)
        .map(|m| {
            let keep: Vec<usize> = span.pivots().iter().enumerate().filter(|(_, &p)| p >= total - offs[m + 1]).map(|(i, _)| i).collect();
            let cols: Vec<usize> = (0..offs[m + 1]).collect();
            Subspace::row_span(&basis.select_rows(&keep).select_cols(&cols))
        })
        .collect()
}

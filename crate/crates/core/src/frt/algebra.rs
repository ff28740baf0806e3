use rayon::prelude::*;

use super::{antipode_ac, c_relation_generators, filtered_ideal, frt_ideal, frt_ideal_closure, skew_antipode, FilteredFrt, FrtAmbient, FrtError, Side, Variant};
use crate::axioms::GradedBialgebra;
use crate::braided_cat::BraidedModel;
use crate::check::{mat_eq, mat_zero, Witness};
use crate::linalg::{Mat, Subspace};
use crate::scalars::FieldSpec;
use crate::tensor_hopf::{GradedQuotient, QuotientError};

/// Filtration levels computed beyond `N` before intersecting the `C`-ideal with `F_N`.
pub const FILTERED_MARGIN: usize = 2;

/// Highest degree at which the explicit FRT ideal is compared with the generated one.
const CLOSURE_CHECK_DEGREE: usize = 4;

/// A built variant of `A(X)`: structure maps on standard-monomial coordinates.
#[derive(Clone, Debug)]
pub struct FrtAlgebra {
    variant: Variant,
    side: Side,
    d: usize,
    quotient: GradedQuotient,
    skew: Option<Vec<Mat>>,
    offsets: Option<Vec<usize>>,
}

fn block_diag_all(f: &FieldSpec, blocks: &[Mat]) -> Mat {
    blocks.iter().fold(Mat::zeros(f, 0, 0), |acc, b| acc.block_diag(b))
}

/// Builds `variant` of `A(X)` (or of `Ā(X)`) up to degree, resp. filtration level, `n_max`.
pub fn build_frt(model: &BraidedModel, variant: Variant, side: Side, n_max: usize) -> Result<FrtAlgebra, FrtError> {
    build_frt_with_margin(model, variant, side, n_max, FILTERED_MARGIN)
}

pub(crate) fn build_frt_with_margin(
    model: &BraidedModel,
    variant: Variant,
    side: Side,
    n_max: usize,
    margin: usize,
) -> Result<FrtAlgebra, FrtError> {
    let f = model.field();
    if variant.uses_c() && model.c().is_none() {
        return Err(FrtError::MissingC);
    }
    let (quotient, skew, offsets) = if !variant.uses_c() {
        let amb = FrtAmbient::new(model, side, n_max);
        let ideals: Vec<Subspace> = if variant.uses_r() {
            let explicit = (0..=n_max).into_par_iter().map(|n| frt_ideal(model, side, n)).collect::<Result<Vec<_>, _>>()?;
            for n in 3..=n_max.min(CLOSURE_CHECK_DEGREE) {
                if frt_ideal_closure(&amb, n)? != explicit[n] {
                    return Err(FrtError::IdealMismatch { degree: n });
                }
            }
            explicit
        } else {
            (0..=n_max).map(|n| Subspace::zero(f, amb.dim(&n))).collect()
        };
        (GradedQuotient::build(&amb, ideals)?, None, None)
    } else {
        let amb = FrtAmbient::new(model, side, n_max + margin);
        let mut gens = c_relation_generators(model)?;
        if variant.uses_r() {
            let i2 = frt_ideal(model, side, 2)?.basis().transpose();
            let top = gens.rows() - i2.rows();
            let lifted = Mat::zeros(f, top, i2.cols()).vstack(&i2).expect("cols");
            gens = gens.hstack(&lifted).expect("rows");
        }
        let ideals = filtered_ideal(&amb, &gens, 2, n_max);
        let s: Vec<Mat> = (0..=n_max).map(|n| antipode_ac(model, side, n)).collect::<Result<_, _>>()?;
        let sk: Vec<Mat> = (0..=n_max).map(|n| skew_antipode(model, side, n)).collect::<Result<_, _>>()?;
        let filt = FilteredFrt::new(&amb, n_max, Some(s));
        let q = GradedQuotient::build(&filt, ideals)?;
        let skew = (0..=n_max)
            .map(|k| {
                let amb_map = block_diag_all(f, &sk[..=k]);
                descend(&q, k, &amb_map).map_err(|witness| QuotientError::AntipodeDoesNotDescend { degree: k, witness })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let offsets = (0..=n_max).map(|n| filt.offset(n)).collect();
        (q, Some(skew), Some(offsets))
    };
    Ok(FrtAlgebra { variant, side, d: model.d(), quotient, skew, offsets })
}

/// `proj∘m∘section` after checking `m` preserves the ideal in component `k`.
fn descend(q: &GradedQuotient, k: usize, m: &Mat) -> Result<Mat, Witness> {
    let ib = q.ideal(k).basis().transpose();
    mat_zero(&q.projection(k).matmul(&m.matmul(&ib).expect("shape")).expect("shape"), "endomorphism on the ideal")?;
    Ok(q.projection(k).matmul(m).expect("shape").matmul(q.section(k)).expect("shape"))
}

impl FrtAlgebra {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n_max(&self) -> usize {
        self.quotient.n_max()
    }

    pub fn is_filtered(&self) -> bool {
        self.variant.uses_c()
    }

    /// Quotient dimensions per degree (graded) or per filtration level (filtered).
    pub fn dims(&self) -> Vec<usize> {
        self.quotient.dims()
    }

    pub fn quotient(&self) -> &GradedQuotient {
        &self.quotient
    }

    /// Antipode on component `k`, quotient coordinates.
    pub fn antipode_matrix(&self, k: usize) -> Option<Mat> {
        self.quotient.antipode(&k)
    }

    /// Inverse antipode on component `k`, quotient coordinates.
    pub fn skew_antipode_matrix(&self, k: usize) -> Option<&Mat> {
        self.skew.as_ref().map(|s| &s[k])
    }

    /// Degrees `n` whose ambient block `A_n` lies in component `k`.
    pub fn blocks(&self, k: usize) -> Vec<usize> {
        if self.offsets.is_some() {
            (0..=k).collect()
        } else {
            vec![k]
        }
    }

    /// Start of `A_n` inside the ambient of any component containing it.
    pub fn block_offset(&self, n: usize) -> usize {
        self.offsets.as_ref().map_or(0, |o| o[n])
    }

    /// `A_n -> component k`, ambient block followed by the projection to quotient coordinates.
    pub fn block_to_quotient(&self, k: usize, n: usize) -> Mat {
        let p = self.quotient.projection(k);
        match &self.offsets {
            None => {
                assert_eq!(k, n, "graded component {k} has no block {n}");
                p.clone()
            }
            Some(off) => {
                let cols: Vec<usize> = (off[n]..off[n] + self.d.pow(2 * n as u32)).collect();
                p.select_cols(&cols)
            }
        }
    }

    /// Component `k` in quotient coordinates -> `A_n`, the block of the section.
    pub fn quotient_to_block(&self, k: usize, n: usize) -> Mat {
        let s = self.quotient.section(k);
        match &self.offsets {
            None => {
                assert_eq!(k, n, "graded component {k} has no block {n}");
                s.clone()
            }
            Some(off) => s.select_rows(&(off[n]..off[n] + self.d.pow(2 * n as u32)).collect::<Vec<_>>()),
        }
    }

    /// `S∘S⁻ = id = S⁻∘S` on every component.
    pub fn check_skew(&self) -> Option<Result<(), Witness>> {
        let skew = self.skew.as_ref()?;
        let res = (0..=self.n_max()).try_for_each(|k| {
            let s = self.antipode_matrix(k).expect("antipode with skew antipode");
            let id = Mat::identity(self.field(), s.rows());
            mat_eq(&s.matmul(&skew[k]).expect("shape"), &id, &format!("S after S- on {k}"))?;
            mat_eq(&skew[k].matmul(&s).expect("shape"), &id, &format!("S- after S on {k}"))
        });
        Some(res)
    }
}

impl GradedBialgebra for FrtAlgebra {
    type Key = usize;

    fn field(&self) -> &FieldSpec {
        self.quotient.field()
    }

    fn components(&self) -> Vec<usize> {
        self.quotient.components()
    }

    fn dim(&self, k: &usize) -> usize {
        self.quotient.dim(k)
    }

    fn unit_key(&self) -> usize {
        0
    }

    fn unit(&self) -> Mat {
        self.quotient.unit()
    }

    fn mul(&self, a: &usize, b: &usize) -> Option<(usize, Mat)> {
        self.quotient.mul(a, b)
    }

    fn comul(&self, a: &usize) -> Vec<(usize, usize, Mat)> {
        self.quotient.comul(a)
    }

    fn counit(&self, a: &usize) -> Mat {
        self.quotient.counit(a)
    }

    fn braid(&self, a: &usize, b: &usize) -> Mat {
        self.quotient.braid(a, b)
    }

    fn antipode(&self, a: &usize) -> Option<Mat> {
        self.quotient.antipode(a)
    }

    fn filtered(&self) -> bool {
        self.quotient.filtered()
    }

    fn embed(&self, from: &usize, to: &usize) -> Mat {
        self.quotient.embed(from, to)
    }

    fn join(&self, a: &usize, b: &usize) -> usize {
        self.quotient.join(a, b)
    }

    fn within(&self, keys: &[usize]) -> bool {
        self.quotient.within(keys)
    }
}

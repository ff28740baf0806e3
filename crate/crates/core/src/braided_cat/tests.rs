use super::*;
use crate::braids::{tensor_permutation, Perm};
use crate::scalars::parse_scalar;
use proptest::prelude::*;

fn flip(f: &FieldSpec, d: usize) -> Mat {
    tensor_permutation(f, &[d, d], &Perm::adjacent(2, 0))
}

fn glq2(f: &FieldSpec) -> Mat {
    let e = |s: &str| parse_scalar(s, f).unwrap();
    let z = e("0");
    Mat::from_dense(
        f,
        vec![
            vec![e("q"), z.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), e("1"), z.clone()],
            vec![z.clone(), e("1"), e("q-1/q"), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), e("q")],
        ],
    )
    .unwrap()
}

fn qf() -> FieldSpec {
    FieldSpec::rational_function("q")
}

fn gl_model() -> BraidedModel {
    let f = qf();
    build_model(2, &f, flip(&f, 2), glq2(&f), None).unwrap()
}

fn r_model() -> BraidedModel {
    let f = qf();
    build_model(2, &f, glq2(&f), glq2(&f), None).unwrap()
}

const ALL: [Braiding; 4] = [Braiding::Psi, Braiding::PsiInv, Braiding::R, Braiding::RInv];

#[test]
fn symmetric_case_gives_flips_everywhere() {
    let f = FieldSpec::Rationals;
    let m = build_model(2, &f, flip(&f, 2), flip(&f, 2), None).unwrap();
    for b in ALL {
        for x in [Letter::X, Letter::D] {
            for y in [Letter::X, Letter::D] {
                assert_eq!(m.letter_crossing(b, x, y), &flip(&f, 2));
            }
        }
    }
}

#[test]
fn one_dimensional_dual_crossing() {
    let f = qf();
    let q = f.generator().unwrap();
    let m = build_model(1, &f, Mat::scalar(&f, q.clone()), Mat::scalar(&f, q.clone()), None).unwrap();
    let want = Mat::scalar(&f, q.inv().unwrap());
    assert_eq!(m.letter_crossing(Braiding::Psi, Letter::X, Letter::D), &want);
    assert_eq!(m.letter_crossing(Braiding::Psi, Letter::D, Letter::X), &want);
    assert_eq!(m.letter_crossing(Braiding::Psi, Letter::D, Letter::D), &Mat::scalar(&f, q));
}

#[test]
fn gl_q_builds_and_satisfies_the_braid_equation() {
    let m = gl_model();
    assert!(check_braid_eq(m.r(), 2).is_ok());
    assert!(check_braid_eq(&flip(&qf(), 2), 2).is_ok());
    assert!(m.check_r_morphism().is_ok());
    assert!(r_model().check_r_morphism().is_ok());
}

#[test]
fn build_errors() {
    let f = FieldSpec::Rationals;
    let z = Mat::zeros(&f, 4, 4);
    assert!(matches!(build_model(2, &f, z, flip(&f, 2), None), Err(CatError::NotInvertible(_))));
    let id = Mat::identity(&f, 4);
    // the identity solves the braid equation, but its partial transpose has rank one
    assert!(matches!(build_model(2, &f, id, flip(&f, 2), None), Err(CatError::DualCrossingSingular(_))));
    let bad = Mat::from_triplets(&f, 4, 4, [(0, 0, f.from_int(1)), (1, 1, f.from_int(1)), (2, 2, f.from_int(1)), (3, 3, f.from_int(1)), (0, 1, f.from_int(1))]);
    assert!(matches!(build_model(2, &f, flip(&f, 2), bad, None), Err(CatError::BraidEquationFails { .. })));
    let c = Mat::zeros(&f, 1, 4);
    assert!(matches!(build_model(2, &f, flip(&f, 2), flip(&f, 2), Some(c)), Err(CatError::DegeneratePairing)));
}

#[test]
fn crossings_of_short_words() {
    let m = gl_model();
    let x = Letter::X;
    assert_eq!(&*m.crossing(Braiding::R, &[x], &[x]), m.r());
    assert!(m.crossing(Braiding::R, &[], &[x, Letter::D]).is_identity());
    let r = m.r();
    let id = m.id(1);
    let manual = r.kron(&id).matmul(&id.kron(r)).unwrap();
    assert_eq!(&*m.crossing(Braiding::R, &[x, x], &[x]), &manual);
    let alt = m.eval(Braiding::R, &alt_hexagon_word(2, 1), &[x, x, x]).unwrap();
    assert_eq!(alt, manual);
}

#[test]
fn snake_identities() {
    let m = gl_model();
    for n in 1..=2 {
        let idx = m.id(n);
        let z = idx.kron(&m.cup_n(n)).matmul(&m.cap_n(n).kron(&idx)).unwrap();
        assert!(z.is_identity());
        let w = m.cup_n(n).kron(&idx).matmul(&idx.kron(&m.cap_n(n))).unwrap();
        assert!(w.is_identity());
    }
}

#[test]
fn partial_transpose_inverts_the_dual_crossing() {
    let m = gl_model();
    for b in [Braiding::Psi, Braiding::R] {
        let base = if b == Braiding::Psi { m.psi() } else { m.r() };
        let pt = super::partial_transpose(base, 2);
        assert!(pt.matmul(m.letter_crossing(b, Letter::X, Letter::D)).unwrap().is_identity());
    }
}

/// Cups and caps slide through every crossing: the defining property of the derived letters.
fn check_duality_naturality(m: &BraidedModel) {
    let dxw = [Letter::D, Letter::X];
    let xdw = [Letter::X, Letter::D];
    let id = m.id(1);
    for b in ALL {
        for y in [Letter::X, Letter::D] {
            let c1 = m.crossing(b, &dxw, &[y]);
            assert_eq!(id.kron(&m.cup()).matmul(&c1).unwrap(), m.cup().kron(&id), "{b:?} cup under {y:?}");
            let c2 = m.crossing(b, &[y], &dxw);
            assert_eq!(m.cup().kron(&id).matmul(&c2).unwrap(), id.kron(&m.cup()), "{b:?} cup over {y:?}");
            let c3 = m.crossing(b, &xdw, &[y]);
            assert_eq!(c3.matmul(&m.cap().kron(&id)).unwrap(), id.kron(&m.cap()), "{b:?} cap under {y:?}");
            let c4 = m.crossing(b, &[y], &xdw);
            assert_eq!(c4.matmul(&id.kron(&m.cap())).unwrap(), m.cap().kron(&id), "{b:?} cap over {y:?}");
        }
    }
}

#[test]
fn duality_naturality_gl_q() {
    check_duality_naturality(&gl_model());
    check_duality_naturality(&r_model());
}

#[test]
fn duality_naturality_anyonic() {
    let f = FieldSpec::cyclotomic(3, "z");
    let z = f.generator().unwrap();
    let m = build_model(1, &f, Mat::scalar(&f, z.clone()), Mat::scalar(&f, z), None).unwrap();
    check_duality_naturality(&m);
}

#[test]
fn dual_arrows() {
    let m = gl_model();
    assert!(m.dual_arrow(&m.id(2), 2, 2).unwrap().is_identity());
    let f = m.r().clone();
    let vf = m.dual_arrow(&f, 2, 2).unwrap();
    assert_eq!(m.dual_arrow(&vf, 2, 2).unwrap(), f);
    assert_eq!(&vf, m.letter_crossing(Braiding::R, Letter::D, Letter::D));
    // pairing identity: ∪_2 ∘ (∨f ⊗ id) = ∪_2 ∘ (id ⊗ f)
    let lhs = m.cup_n(2).matmul(&vf.kron(&m.id(2))).unwrap();
    let rhs = m.cup_n(2).matmul(&m.id(2).kron(&f)).unwrap();
    assert_eq!(lhs, rhs);
    assert!(m.dual_arrow(&m.id(1), 2, 2).is_err());
}

fn pairing(f: &FieldSpec, vals: &[i64]) -> Mat {
    Mat::from_triplets(f, 1, vals.len(), vals.iter().enumerate().map(|(j, &v)| (0, j, f.from_int(v))))
}

#[test]
fn pairings_and_copairings() {
    let f = FieldSpec::Rationals;
    let c = pairing(&f, &[1, 2, 0, 3]);
    let m = build_model(2, &f, flip(&f, 2), flip(&f, 2), Some(c.clone())).unwrap();
    assert_eq!(m.extend_pairing(1).unwrap(), c);
    for n in 1..=2 {
        let id = m.id(n);
        let snake = m.extend_pairing(n).unwrap().kron(&id).matmul(&id.kron(&m.copairing(n).unwrap())).unwrap();
        assert!(snake.is_identity());
        let snake2 = id.kron(&m.extend_pairing(n).unwrap()).matmul(&m.copairing(n).unwrap().kron(&id)).unwrap();
        assert!(snake2.is_identity());
        let vs = m.vee_c(n).unwrap().kron(&id).matmul(&id.kron(&m.vee_copairing(n).unwrap())).unwrap();
        assert!(vs.is_identity());
    }
    // ∨C(e^a⊗e^b) = c'^{ba} with c' the inverse of (c_ij)
    let vc = m.vee_c(1).unwrap();
    let ci = invert(&Mat::from_triplets(&f, 2, 2, c.entries().map(|(_, j, v)| (j / 2, j % 2, v.clone())))).unwrap();
    for a in 0..2 {
        for b in 0..2 {
            assert_eq!(vc.get(0, a * 2 + b), ci.get(b, a));
        }
    }
    assert_eq!(m.vee_copairing(1).unwrap().get(2, 0), f.from_int(2));
}

#[test]
fn one_dimensional_c_morphism_requires_r_squared_one() {
    let f = qf();
    for (r, expect) in [("-1", true), ("1", true), ("2", false), ("q", false)] {
        let rm = Mat::scalar(&f, parse_scalar(r, &f).unwrap());
        let c = Mat::scalar(&f, f.from_int(2));
        let m = build_model(1, &f, Mat::scalar(&f, f.generator().unwrap()), rm, Some(c)).unwrap();
        assert_eq!(m.check_c_morphism().is_ok(), expect, "r = {r}");
        assert_eq!(m.warnings().len(), 1);
    }
}

#[test]
fn orthogonal_form_is_a_morphism_for_flip() {
    let f = FieldSpec::Rationals;
    let m = build_model(2, &f, flip(&f, 2), flip(&f, 2), Some(pairing(&f, &[1, 0, 0, 1]))).unwrap();
    assert!(m.check_c_morphism().is_ok());
    assert!(m.warnings().is_empty());
}

fn word_strategy(max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(prop_oneof![Just(Letter::X), Just(Letter::D)], 0..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hexagon_coherence(u in word_strategy(2), u2 in word_strategy(1), v in word_strategy(2), bi in 0usize..4) {
        let m = gl_model();
        let b = ALL[bi];
        let mut uu = u.clone();
        uu.extend_from_slice(&u2);
        let whole = m.crossing(b, &uu, &v);
        let left = m.crossing(b, &u, &v).kron(&Mat::identity(m.field(), m.dim(&u2)));
        let right = Mat::identity(m.field(), m.dim(&u)).kron(&m.crossing(b, &u2, &v));
        prop_assert_eq!(&*whole, &left.matmul(&right).unwrap());
        let mut objs = u.clone();
        objs.extend_from_slice(&v);
        let alt = m.eval(b, &alt_hexagon_word(u.len(), v.len()), &objs).unwrap();
        prop_assert_eq!(&*m.crossing(b, &u, &v), &alt);
    }

    #[test]
    fn mixed_yang_baxter(w in prop::collection::vec(prop_oneof![Just(Letter::X), Just(Letter::D)], 3), bi in 0usize..4) {
        let m = gl_model();
        let b = ALL[bi];
        let w1 = BraidWord::new(3, vec![(1, true), (2, true), (1, true)]).unwrap();
        let w2 = BraidWord::new(3, vec![(2, true), (1, true), (2, true)]).unwrap();
        prop_assert_eq!(m.eval(b, &w1, &w).unwrap(), m.eval(b, &w2, &w).unwrap());
    }
}

use super::*;
use crate::axioms::verify;
use crate::model_file::{fixture, FIXTURE_NAMES};
use crate::scalars::parse_scalar;

fn q_line() -> BraidedModel {
    let f = FieldSpec::rational_function("q");
    let q = Mat::scalar(&f, f.generator().unwrap());
    build_model(1, &f, q.clone(), q, None).unwrap()
}

fn scalar_line(field: FieldSpec, value: &str) -> BraidedModel {
    let s = Mat::scalar(&field, parse_scalar(value, &field).unwrap());
    build_model(1, &field, s.clone(), s, None).unwrap()
}

/// Gaussian binomial by the q-Pascal recursion.
fn gaussian(n: usize, k: usize, q: &Scalar) -> Scalar {
    if k == 0 || k == n {
        return q.zero_like() + q.pow(0).unwrap();
    }
    &gaussian(n - 1, k - 1, q) + &(&q.pow(k as i64).unwrap() * &gaussian(n - 1, k, q))
}

#[test]
fn low_degree_coproducts() {
    let m = fixture("gl_q_2").unwrap().to_model().unwrap();
    let d11 = t_delta(1, 1, &m, Braiding::R);
    assert_eq!(d11, m.id(2).try_add(m.r()).unwrap());
    assert!(t_delta(3, 0, &m, Braiding::R).is_identity());
    assert!(t_delta(0, 2, &m, Braiding::R).is_identity());
}

#[test]
fn q_binomials_on_a_line() {
    let m = q_line();
    let q = m.field().generator().unwrap();
    for n in 0..=6 {
        for k in 0..=n {
            assert_eq!(t_delta(k, n - k, &m, Braiding::Psi).as_scalar().unwrap(), gaussian(n, k, &q), "[{n} {k}]");
        }
    }
}

#[test]
fn antipodes_in_low_degree() {
    let m = fixture("gl_q_2").unwrap().to_model().unwrap();
    assert_eq!(t_antipode(1, &m, Braiding::R), m.id(1).neg());
    assert_eq!(&t_antipode(2, &m, Braiding::R), m.r());
    let line = q_line();
    let q = line.field().generator().unwrap();
    assert_eq!(t_antipode(3, &line, Braiding::Psi).as_scalar().unwrap(), q.pow(3).unwrap().neg());
}

fn symmetric_count(d: usize, n: usize) -> usize {
    // C(n+d-1, n)
    (1..=n).fold(1, |acc, i| acc * (d - 1 + i) / i)
}

#[test]
fn exterior_relations_for_the_flip() {
    let m = fixture("flip_classical").unwrap().to_model().unwrap();
    let ideal = quad_ideal(&m, Braiding::Psi, 4);
    for (n, s) in ideal.iter().enumerate() {
        assert_eq!(s.dim(), 2usize.pow(n as u32) - symmetric_count(2, n), "degree {n}");
    }
    assert_eq!(ideal[2].dim(), 1);
    assert_eq!(ideal[3].dim(), 4);
}

#[test]
fn generic_line_has_no_relations() {
    let m = q_line();
    assert!(quad_ideal(&m, Braiding::Psi, 5).iter().all(|s| s.dim() == 0));
    assert!(bullet_ideal(&m, Braiding::Psi, 5).iter().all(|s| s.dim() == 0));
}

#[test]
fn cube_root_of_unity_line() {
    let m = scalar_line(FieldSpec::cyclotomic(3, "z"), "z");
    assert!(quad_ideal(&m, Braiding::Psi, 5).iter().all(|s| s.dim() == 0));
    let bullet = bullet_ideal(&m, Braiding::Psi, 5);
    let dims: Vec<usize> = bullet.iter().map(Subspace::dim).collect();
    assert_eq!(dims, vec![0, 0, 0, 1, 1, 1]);
    let ints: Vec<usize> = braided_integer_kernel(&m, Braiding::Psi, 5).iter().map(Subspace::dim).collect();
    assert_eq!(ints, vec![0, 0, 0, 1, 0, 0]);
    let t = TensorAlgebra::new(&m, Braiding::Psi, 4);
    let v = GradedQuotient::build(&t, bullet[..=4].to_vec()).unwrap();
    assert_eq!(v.dims(), vec![1, 1, 1, 0, 0]);
}

#[test]
fn braided_integer_kernel_misses_the_cubic_relations_of_the_flip() {
    let m = fixture("flip_classical").unwrap().to_model().unwrap();
    let i = quad_ideal(&m, Braiding::Psi, 3);
    let k = braided_integer_kernel(&m, Braiding::Psi, 3);
    let b = bullet_ideal(&m, Braiding::Psi, 3);
    assert!(!k[3].contains(&i[3]).unwrap());
    assert!(b[3].contains(&i[3]).unwrap());
}

#[test]
fn projector_for_the_flip() {
    let m = fixture("flip_classical").unwrap().to_model().unwrap();
    let p = p_minus_one(&m, Braiding::Psi).unwrap();
    let half = m.field().one() / m.field().from_int(2);
    let want = m.id(2).try_sub(m.psi()).unwrap().scale(&half);
    assert_eq!(p, want);
    let f = FieldSpec::Rationals;
    let id = build_model(1, &f, Mat::identity(&f, 1), Mat::identity(&f, 1), None).unwrap();
    assert!(p_minus_one(&id, Braiding::Psi).is_none());
    let minus = scalar_line(FieldSpec::Rationals, "-1");
    assert!(p_minus_one(&minus, Braiding::Psi).unwrap().is_identity());
    let resc = fixture("gl_q_2_rescaled").unwrap().to_model().unwrap();
    assert!(p_minus_one(&resc, Braiding::R).is_some());
    assert!(p_minus_one(&resc, Braiding::Psi).is_some());
}

#[test]
fn minimal_polynomial_of_hecke_matrix() {
    let m = fixture("gl_q_2").unwrap().to_model().unwrap();
    let f = m.field();
    let p = minimal_polynomial(m.r());
    // (t - q)(t + 1/q) = t^2 - (q - 1/q) t - 1
    let want: Vec<Scalar> = ["-1", "-(q - 1/q)", "1"].iter().map(|s| parse_scalar(s, f).unwrap()).collect();
    assert_eq!(p, want);
}

#[test]
fn zero_ideal_quotient_is_the_ambient() {
    let m = fixture("gl_q_2").unwrap().to_model().unwrap();
    let t = TensorAlgebra::new(&m, Braiding::R, 3);
    let zeros: Vec<Subspace> = (0..=3).map(|n| Subspace::zero(m.field(), 2usize.pow(n))).collect();
    let v = GradedQuotient::build(&t, zeros).unwrap();
    assert_eq!(v.dims(), vec![1, 2, 4, 8]);
    for n in 0..=3usize {
        for (a, (_, _, mq)) in v.comul(&n).into_iter().enumerate() {
            assert_eq!(&mq, t.delta(a, n - a));
        }
    }
}

#[test]
fn quantum_plane_matches_the_classical_count() {
    let m = fixture("gl_q_2_rescaled").unwrap().to_model().unwrap();
    let t = TensorAlgebra::new(&m, Braiding::R, 4);
    let v = GradedQuotient::build(&t, quad_ideal(&m, Braiding::R, 4)).unwrap();
    // oracle: the same construction at q = 1 over the rationals
    let f = FieldSpec::Rationals;
    let one = num_rational::BigRational::from_integer(1.into());
    let special = |x: &Mat| {
        Mat::from_triplets(&f, x.rows(), x.cols(), x.entries().map(|(i, j, s)| (i, j, s.specialize(&one).unwrap())))
    };
    let classical = build_model(2, &f, special(m.psi()), special(m.r()), None).unwrap();
    let ct = TensorAlgebra::new(&classical, Braiding::R, 4);
    let cv = GradedQuotient::build(&ct, quad_ideal(&classical, Braiding::R, 4)).unwrap();
    assert_eq!(cv.dims(), (0..=4).map(|n| n + 1).collect::<Vec<_>>());
    assert_eq!(v.dims(), cv.dims());
    assert!(verify(&v).all_pass());
}

#[test]
fn tensor_algebra_axioms_for_every_fixture() {
    for name in FIXTURE_NAMES {
        let m = fixture(name).unwrap().to_model().unwrap();
        for b in [Braiding::Psi, Braiding::R] {
            let t = TensorAlgebra::new(&m, b, 4);
            let rep = verify(&t);
            assert!(rep.all_pass(), "{name} {b:?}: {:?}", rep.first_failure());
            assert!(rep.checks.iter().all(|(_, o)| o.is_pass()));
        }
    }
}

#[test]
fn coassociativity_through_degree_five() {
    let m = fixture("gl_q_2").unwrap().to_model().unwrap();
    let t = TensorAlgebra::new(&m, Braiding::R, 5);
    assert!(crate::axioms::check_coassociativity(&t).is_ok());
}

#[test]
fn hopf_ideals_and_containment_in_the_bullet_ideal() {
    for name in ["flip_classical", "gl_q_2_rescaled"] {
        let m = fixture(name).unwrap().to_model().unwrap();
        for b in [Braiding::Psi, Braiding::R] {
            let i = quad_ideal(&m, b, 5);
            let bullet = bullet_ideal(&m, b, 5);
            for n in 0..=5 {
                assert!(bullet[n].contains(&i[n]).unwrap(), "{name} {b:?} degree {n}");
            }
            let t = TensorAlgebra::new(&m, b, 4);
            let v = GradedQuotient::build(&t, i[..=4].to_vec()).unwrap();
            assert!(verify(&v).all_pass());
            let vb = GradedQuotient::build(&t, bullet[..=4].to_vec()).unwrap();
            assert!(verify(&vb).all_pass());
        }
    }
}

#[test]
fn non_ideal_is_rejected_with_a_witness() {
    let m = fixture("flip_classical").unwrap().to_model().unwrap();
    let t = TensorAlgebra::new(&m, Braiding::Psi, 3);
    let f = m.field();
    // x_1 alone in degree 1 is not a Hopf ideal: x_1 x_2 survives in degree 2
    let mut ideals: Vec<Subspace> = (0..=3).map(|n| Subspace::zero(f, 2usize.pow(n))).collect();
    ideals[1] = Subspace::row_span(&Mat::from_triplets(f, 1, 2, [(0, 0, f.one())]));
    match GradedQuotient::build(&t, ideals) {
        Err(QuotientError::NotAnIdeal { degree, witness }) => {
            assert_eq!(degree, 2);
            assert!(witness.column.is_some());
        }
        other => panic!("unexpected {other:?}"),
    }
}

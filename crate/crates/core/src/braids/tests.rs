use super::*;
use crate::scalars::parse_scalar;

fn count_binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

#[test]
fn lift_basics() {
    assert!(Perm::identity(3).lift().is_empty());
    let t = Perm::from_one_based(&[2, 1]).unwrap();
    assert_eq!(t.lift(), BraidWord::new(2, vec![(1, true)]).unwrap());
}

#[test]
fn lift_is_reduced_and_sections_the_projection() {
    for n in 1..=5 {
        for p in Perm::all(n) {
            let w = p.lift();
            assert!(w.is_positive());
            assert_eq!(w.len(), p.length());
            assert_eq!(w.permutation(), p);
        }
    }
}

#[test]
fn lift_multiplicative_exactly_when_lengths_add() {
    // compared as braids through a faithful-enough Yang-Baxter representation
    let p = UniformCrossing::new(glq2());
    let objs = [(), (), (), ()];
    let all = Perm::all(4);
    for a in &all {
        for b in &all {
            let ab = a.compose(b);
            let glued = a.lift().concat(&b.lift());
            assert_eq!(glued.permutation(), ab);
            if ab.length() == a.length() + b.length() {
                assert_eq!(eval_word(&glued, &objs, &p).unwrap(), eval_word(&ab.lift(), &objs, &p).unwrap());
            } else {
                assert_ne!(glued.len(), ab.lift().len());
            }
        }
    }
}

#[test]
fn shuffles_counts_and_order() {
    assert_eq!(shuffles(4, 2).unwrap().len(), 6);
    assert_eq!(shuffles(5, 0).unwrap(), vec![Perm::identity(5)]);
    let s = shuffles(3, 1).unwrap();
    assert_eq!(s.len(), 3);
    let oracle: Vec<Perm> = Perm::all(3).into_iter().filter(|p| p.apply(1) < p.apply(2)).collect();
    assert_eq!(s, oracle);
    assert!(shuffles(2, 3).is_err());
}

#[test]
fn garside_elements() {
    assert_eq!(garside(2).unwrap(), BraidWord::new(2, vec![(1, true)]).unwrap());
    assert_eq!(garside(3).unwrap().len(), 3);
    assert_eq!(garside(4).unwrap().permutation(), Perm::from_one_based(&[4, 3, 2, 1]).unwrap());
}

#[test]
fn binomial_and_factorial_sizes() {
    for n in 0..=7u64 {
        for k in 0..=n {
            let b = braided_binomial(n as usize, k as usize).unwrap();
            assert_eq!(b.len() as u64, count_binomial(n, k));
            assert!(b.terms().all(|(_, c)| c == 1));
        }
    }
    assert_eq!(braided_factorial(3).len(), 6);
    assert_eq!(braided_factorial(2), braided_binomial(2, 1).unwrap());
    assert_eq!(braided_binomial(2, 1).unwrap().to_string(), "1 + s1");
}

#[test]
fn q_factorial_on_a_line() {
    let f = FieldSpec::rational_function("q");
    let q = f.generator().unwrap();
    let p = UniformCrossing::new(Mat::scalar(&f, q.clone()));
    let m = eval_sum(&braided_factorial(3), &[(), (), ()], &p).unwrap();
    // oracle: Σ_σ q^{ℓ(σ)} by direct enumeration
    let oracle = Perm::all(3).iter().fold(f.zero(), |acc, s| &acc + &q.pow(s.length() as i64).unwrap());
    assert_eq!(m.as_scalar().unwrap(), oracle);
    assert_eq!(oracle, parse_scalar("(1+q)*(1+q+q^2)", &f).unwrap());
}

fn glq2() -> Mat {
    let f = FieldSpec::rational_function("q");
    let e = |s: &str| parse_scalar(s, &f).unwrap();
    Mat::from_dense(
        &f,
        vec![
            vec![e("q"), e("0"), e("0"), e("0")],
            vec![e("0"), e("0"), e("1"), e("0")],
            vec![e("0"), e("1"), e("q-1/q"), e("0")],
            vec![e("0"), e("0"), e("0"), e("q")],
        ],
    )
    .unwrap()
}

#[test]
fn braid_relation_and_inverses() {
    let p = UniformCrossing::new(glq2());
    let w1 = BraidWord::new(3, vec![(1, true), (2, true), (1, true)]).unwrap();
    let w2 = BraidWord::new(3, vec![(2, true), (1, true), (2, true)]).unwrap();
    let objs = [(), (), ()];
    assert_eq!(eval_word(&w1, &objs, &p).unwrap(), eval_word(&w2, &objs, &p).unwrap());
    let mixed = BraidWord::new(3, vec![(1, true), (2, false), (1, true)]).unwrap();
    let prod = eval_word(&mixed.concat(&mixed.inverse()), &objs, &p).unwrap();
    assert!(prod.is_identity());
    assert!(eval_word(&BraidWord::empty(3), &objs, &p).unwrap().is_identity());
}

#[test]
fn singular_crossing_rejects_negative_letters() {
    let f = FieldSpec::Rationals;
    let p = UniformCrossing::new(Mat::zeros(&f, 1, 1));
    let w = BraidWord::new(2, vec![(1, false)]).unwrap();
    assert!(matches!(eval_word(&w, &[(), ()], &p), Err(BraidError::NonInvertibleCrossing(_))));
}

#[test]
fn flip_evaluation_is_the_permutation_matrix() {
    let f = FieldSpec::Rationals;
    let flip = tensor_permutation(&f, &[3, 3], &Perm::adjacent(2, 0));
    let p = UniformCrossing::new(flip);
    for s in Perm::all(4) {
        let m = eval_word(&s.lift(), &[(), (), (), ()], &p).unwrap();
        assert_eq!(m, tensor_permutation(&f, &[3; 4], &s));
    }
    let a = Perm::from_one_based(&[3, 1, 2]).unwrap();
    let b = Perm::from_one_based(&[2, 3, 1]).unwrap();
    let pa = tensor_permutation(&f, &[2, 3, 4], &a);
    let pb = tensor_permutation(&f, &[2, 3, 4], &b);
    // factor order after b is (dims[b^-1(j)]) = (4, 2, 3)
    let pa_after = tensor_permutation(&f, &[4, 2, 3], &a);
    assert_eq!(pa_after.matmul(&pb).unwrap(), tensor_permutation(&f, &[2, 3, 4], &a.compose(&b)));
    assert_eq!(pa.rows(), 24);
}

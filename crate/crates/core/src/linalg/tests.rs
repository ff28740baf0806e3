use super::*;
use proptest::prelude::*;

fn qq() -> FieldSpec {
    FieldSpec::Rationals
}

fn int_mat(rows: &[&[i64]]) -> Mat {
    let f = qq();
    Mat::from_dense(&f, rows.iter().map(|r| r.iter().map(|&v| f.from_int(v)).collect()).collect()).unwrap()
}

fn flip2() -> Mat {
    int_mat(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]])
}

#[test]
fn kron_identities() {
    let f = qq();
    assert!(Mat::identity(&f, 2).kron(&Mat::identity(&f, 2)).is_identity());
    let p = flip2().kron(&flip2());
    assert!(p.matmul(&p).unwrap().is_identity());
    assert!(!p.is_identity());
}

#[test]
fn kron_index_convention() {
    let a = int_mat(&[&[1, 2], &[3, 4]]);
    let b = int_mat(&[&[0, 5], &[6, 7]]);
    let k = a.kron(&b);
    let f = qq();
    for i in 0..2 {
        for j in 0..2 {
            for r in 0..2 {
                for s in 0..2 {
                    assert_eq!(k.get(i * 2 + r, j * 2 + s), &a.get(i, j) * &b.get(r, s));
                }
            }
        }
    }
    assert_eq!(k.get(1, 1), f.from_int(7));
}

#[test]
fn explicit_inverse() {
    let p = int_mat(&[&[2, 1, 0, 0], &[1, 1, 0, 3], &[0, 0, 1, -1], &[5, 0, 2, 1]]);
    let inv = invert(&p).unwrap();
    assert!(p.matmul(&inv).unwrap().is_identity());
    assert!(inv.matmul(&p).unwrap().is_identity());
    assert_eq!(invert(&int_mat(&[&[1, 2], &[2, 4]])), Err(LinalgError::Singular));
}

#[test]
fn kernel_of_flip_plus_identity() {
    let f = qq();
    let a = flip2().try_add(&Mat::identity(&f, 4)).unwrap();
    let k = kernel(&a);
    assert_eq!(k.dim(), 1);
    // e2⊗e1 - e1⊗e2 sits at coordinates 2 and 1
    let v = Mat::from_triplets(&f, 4, 1, [(2, 0, f.from_int(1)), (1, 0, f.from_int(-1))]);
    assert!(k.contains_columns(&v).unwrap());
    assert!(a.matmul(&v).unwrap().is_zero());
}

#[test]
fn trivial_subspaces() {
    let f = qq();
    assert_eq!(kernel(&Mat::identity(&f, 3)).dim(), 0);
    assert_eq!(image(&Mat::zeros(&f, 3, 2)).dim(), 0);
    let u = Subspace::row_span(&int_mat(&[&[1, 2, 3], &[2, 4, 6]]));
    assert_eq!(u.sum(&u).unwrap(), u);
    assert!(Subspace::full(&f, 3).contains(&u).unwrap());
}

#[test]
fn kernel_containment_under_squaring() {
    let f = qq();
    let a = flip2().try_add(&Mat::identity(&f, 4)).unwrap();
    let k1 = kernel(&a);
    let k2 = kernel(&a.matmul(&a).unwrap());
    assert!(k2.contains(&k1).unwrap());
}

#[test]
fn quantum_plane_quotient() {
    let f = FieldSpec::rational_function("q");
    let q = f.generator().unwrap();
    // x2 x1 - q x1 x2
    let rel = Mat::from_triplets(&f, 1, 4, [(0, 2, f.one()), (0, 1, -&q)]);
    let s = Subspace::row_span(&rel);
    let (sec, proj) = s.pivot_complement();
    assert_eq!(sec.cols(), 3);
    assert!(proj.matmul(&sec).unwrap().is_identity());
    assert!(proj.matmul(&s.basis().transpose()).unwrap().is_zero());
}

#[test]
fn pivot_complement_extremes() {
    let f = qq();
    let (sec, proj) = Subspace::zero(&f, 3).pivot_complement();
    assert!(sec.is_identity() && proj.is_identity());
    let (sec, proj) = Subspace::full(&f, 3).pivot_complement();
    assert_eq!((sec.cols(), proj.rows()), (0, 0));
}

#[test]
fn solve_and_inconsistency() {
    let a = int_mat(&[&[1, 1], &[1, -1], &[2, 0]]);
    let b = int_mat(&[&[3], &[1], &[4]]);
    let x = solve_linear(&a, &b).unwrap().unwrap();
    assert_eq!(a.matmul(&x).unwrap(), b);
    let bad = int_mat(&[&[3], &[1], &[5]]);
    assert!(solve_linear(&a, &bad).unwrap().is_none());
}

#[test]
fn intersection_dimension() {
    let u = Subspace::row_span(&int_mat(&[&[1, 0, 0], &[0, 1, 0]]));
    let v = Subspace::row_span(&int_mat(&[&[0, 1, 0], &[0, 0, 1]]));
    let w = u.intersect(&v).unwrap();
    assert_eq!(w, Subspace::row_span(&int_mat(&[&[0, 1, 0]])));
}

#[test]
fn local_application_matches_kron() {
    let f = qq();
    let c = int_mat(&[&[1, 2], &[0, -1], &[3, 1]]);
    let m = Mat::from_triplets(&f, 12, 5, (0..12).map(|i| (i, (i * 7) % 5, f.from_int(i as i64 - 4))));
    let full = Mat::kron_all(&f, [&Mat::identity(&f, 3), &c, &Mat::identity(&f, 2)]);
    assert_eq!(m.apply_local(3, &c, 2).unwrap(), full.matmul(&m).unwrap());
    let m2 = Mat::from_triplets(&f, 4, 18, (0..18).map(|j| (j % 4, j, f.from_int(j as i64 + 1))));
    assert_eq!(m2.compose_local(3, &c, 2).unwrap(), m2.matmul(&full).unwrap());
}

#[test]
fn shape_errors() {
    let a = int_mat(&[&[1, 2]]);
    assert!(matches!(a.matmul(&a), Err(LinalgError::ShapeMismatch(_))));
    assert!(matches!(a.try_add(&a.transpose()), Err(LinalgError::ShapeMismatch(_))));
}

fn small_mat(r: usize, c: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(-2i64..3, r * c).prop_map(move |v| {
        let f = qq();
        Mat::from_triplets(&f, r, c, v.into_iter().enumerate().map(|(k, x)| (k / c, k % c, f.from_int(x))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn rank_nullity(a in small_mat(4, 6)) {
        prop_assert_eq!(rank(&a) + kernel(&a).dim(), 6);
        prop_assert!(a.matmul(&kernel(&a).basis().transpose()).unwrap().is_zero());
    }

    #[test]
    fn mixed_product(a in small_mat(2, 3), b in small_mat(2, 2), c in small_mat(3, 2), d in small_mat(2, 3)) {
        let lhs = a.kron(&b).matmul(&c.kron(&d)).unwrap();
        let rhs = a.matmul(&c).unwrap().kron(&b.matmul(&d).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kron_associative(a in small_mat(2, 2), b in small_mat(1, 3), c in small_mat(2, 1)) {
        prop_assert_eq!(a.kron(&b).kron(&c), a.kron(&b.kron(&c)));
    }

    #[test]
    fn pivot_complement_roundtrip(a in small_mat(3, 5)) {
        let s = Subspace::row_span(&a);
        let (sec, proj) = s.pivot_complement();
        prop_assert!(proj.matmul(&sec).unwrap().is_identity());
        let f = qq();
        let back = sec.matmul(&proj).unwrap().try_sub(&Mat::identity(&f, 5)).unwrap();
        prop_assert!(s.contains_columns(&back).unwrap());
        prop_assert_eq!(kernel(&proj), s);
    }

    #[test]
    fn rref_is_canonical(a in small_mat(3, 4), seed in 0usize..6) {
        let s = Subspace::row_span(&a);
        let perm = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]][seed];
        let f = qq();
        let mixed = a.permute_rows(&perm).try_add(&Mat::zeros(&f, 3, 4)).unwrap();
        let extra = a.select_rows(&[0]).scale(&f.from_int(3)).try_add(&a.select_rows(&[1])).unwrap();
        prop_assert_eq!(Subspace::row_span(&mixed.vstack(&extra).unwrap()), s);
    }
}

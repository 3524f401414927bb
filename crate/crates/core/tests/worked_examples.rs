//! Small worked examples, one per operation, through the public API.

mod common;

use common::e;
use endok_core::completion::{
    apply_alpha, crt_decompose, digit_reps, kernel_points, orbit_product_check, same_orbit, OrbitVerdict,
    ProfiniteElement, RationalTorusPoint,
};
use endok_core::endo::{crt_check, independent, validate_standard};
use endok_core::harness::{build_s, build_u, check_rel, Image, Window};
use endok_core::ktheory::{
    b_map, b_product_check, classify, colim_eq, eventual_image, exterior_power, k_b, k_endo, k_poly, lambda_functor,
    poincare_check, ColimElement, ColimitGroup, Label,
};
use endok_core::lattice::{hnf, ivec, ker_coker, lattice_intersect, lattice_sum, mat, snf, FgAbGroup, IntMatrix, Sublattice};
use endok_core::{Error, LatticeEndo};
use num_bigint::BigInt;

fn pt(s: &str) -> RationalTorusPoint {
    s.parse().unwrap()
}

fn lat(rows: &[&[i64]]) -> Sublattice {
    hnf(&mat(rows))
}

#[test]
fn hermite_forms() {
    assert_eq!(*lat(&[&[1, 0], &[0, 1]]).basis(), IntMatrix::identity(2));
    assert_eq!(*lat(&[&[1, 1], &[1, -1]]).basis(), mat(&[&[1, 0], &[1, 2]]));
    assert_eq!(*lat(&[&[2, 0, 1], &[0, 2, 1]]).basis(), mat(&[&[1, 0], &[1, 2]]));
}

#[test]
fn smith_forms() {
    let inv = |rows: &[&[i64]]| {
        let d = snf(&mat(rows)).d;
        (0..d.rows()).map(|i| d.row(i)[i].clone()).collect::<Vec<_>>()
    };
    assert_eq!(snf(&IntMatrix::identity(3)).d, IntMatrix::identity(3));
    assert_eq!(inv(&[&[2, 0], &[0, 3]]), ivec(&[1, 6]));
    assert_eq!(inv(&[&[2, 4], &[0, 6]]), ivec(&[2, 6]));
}

#[test]
fn sums_intersections_quotients() {
    let full = Sublattice::full(1);
    assert_eq!(lattice_sum(&lat(&[&[2]]), &lat(&[&[3]])).unwrap(), full);
    assert_eq!(lattice_sum(&lat(&[&[2, 0], &[0, 2]]), &lat(&[&[3, 0], &[0, 3]])).unwrap(), Sublattice::full(2));
    let g = lat(&[&[1, 1], &[-1, 1]]);
    let three = lat(&[&[3, 0], &[0, 3]]);
    assert_eq!(lattice_sum(&g, &three).unwrap(), Sublattice::full(2));
    assert_eq!(lattice_intersect(&lat(&[&[2]]), &lat(&[&[3]])).unwrap(), lat(&[&[6]]));
    assert_eq!(lattice_intersect(&g, &g).unwrap(), g);
    assert_eq!(lattice_intersect(&g, &three).unwrap().index(), Some(BigInt::from(18)));

    assert_eq!(lat(&[&[2, 0], &[0, 2]]).quotient_structure(), FgAbGroup::from_orders(ivec(&[2, 2]), 0));
    assert_eq!(lat(&[&[2, 0], &[0, 3]]).quotient_structure(), FgAbGroup::cyclic(6));
    assert_eq!(Sublattice::zero(1).quotient_structure(), FgAbGroup::free(1));

    let (k, c) = ker_coker(&mat(&[&[0]]));
    assert_eq!((k, c), (Sublattice::full(1), FgAbGroup::free(1)));
    let (k, c) = ker_coker(&mat(&[&[-1, 0], &[0, 0]]));
    assert_eq!((k, c), (lat(&[&[0], &[1]]), FgAbGroup::free(1)));
    let (k, c) = ker_coker(&mat(&[&[2, 0], &[0, 3]]));
    assert_eq!((k, c), (Sublattice::zero(2), FgAbGroup::cyclic(6)));
}

#[test]
fn standard_endomorphisms() {
    let r = validate_standard(&e(&[&[2]]));
    assert!(r.injective && r.exact && r.index == BigInt::from(2));
    assert_eq!(r.cokernel.to_string(), "Z/2");
    let r = validate_standard(&e(&[&[2, 0], &[0, 1]]));
    assert!(!r.exact);
    assert_eq!(r.exactness_witness.unwrap().to_string(), "x - 1");
    let r = validate_standard(&e(&[&[1, 1], &[-1, 1]]));
    assert!(r.exact && r.index == BigInt::from(2));
    assert_eq!(r.charpoly.to_string(), "x^2 - 2x + 2");
    assert_eq!(e(&[&[3, 7], &[1, 3]]).index(), BigInt::from(2));
    assert_eq!(LatticeEndo::scalar(3, 4).unwrap().index(), BigInt::from(64));
    assert!(matches!(LatticeEndo::new(mat(&[&[1, 2], &[2, 4]])), Err(Error::NotInjective)));
}

#[test]
fn independence_and_crt() {
    assert!(independent(&e(&[&[2]]), &e(&[&[3]])).unwrap().verdict);
    let r = independent(&e(&[&[2]]), &e(&[&[2]])).unwrap();
    assert!(!r.cond_a && !r.verdict);
    let c = crt_check(&e(&[&[2]]), &e(&[&[3]])).unwrap();
    assert!(c.ok && c.lhs == FgAbGroup::cyclic(6));
    assert!(matches!(crt_check(&e(&[&[2]]), &e(&[&[2]])), Err(Error::NotIndependent(_))));
    let c = crt_check(&e(&[&[1, 1], &[-1, 1]]), &e(&[&[3, 0], &[0, 3]])).unwrap();
    assert!(c.ok);
    assert_eq!(c.lhs.labels(), ["Z/3", "Z/6"]);
}

#[test]
fn exterior_powers() {
    let d = mat(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]);
    assert_eq!(exterior_power(&d, 0).unwrap(), mat(&[&[1]]));
    assert_eq!(exterior_power(&d, 3).unwrap(), mat(&[&[30]]));
    assert_eq!(exterior_power(&d, 2).unwrap(), IntMatrix::diagonal(&[6, 10, 15]));
    assert_eq!(exterior_power(&d, 1).unwrap(), d);
    let b = mat(&[&[1, -2, 4], &[0, 3, 1], &[7, 1, -1]]);
    assert_eq!(
        exterior_power(&d.mul(&b), 2).unwrap(),
        exterior_power(&d, 2).unwrap().mul(&exterior_power(&b, 2).unwrap())
    );
    let id = lambda_functor(&IntMatrix::identity(3)).unwrap();
    assert!(id.blocks().iter().all(IntMatrix::is_identity));
}

#[test]
fn transfer_maps() {
    let b = b_map(&e(&[&[2, 0], &[0, 3]])).unwrap();
    assert_eq!(*b.block(0), mat(&[&[6]]));
    assert_eq!(*b.block(1), IntMatrix::diagonal(&[3, 2]));
    assert_eq!(*b.block(2), mat(&[&[1]]));
    let b = b_map(&e(&[&[-1, 0], &[0, 2]])).unwrap();
    assert_eq!(*b.block(1), IntMatrix::diagonal(&[-2, 1]));
    for m in [LatticeEndo::scalar(3, 4).unwrap(), e(&[&[2, 0], &[0, 3]]), e(&[&[-1, 0], &[0, 2]])] {
        assert!(poincare_check(&m).unwrap());
    }
    assert!(b_product_check(&e(&[&[2]]), &e(&[&[3]])).unwrap());
    assert!(b_product_check(&LatticeEndo::scalar(2, 2).unwrap(), &LatticeEndo::scalar(2, 3).unwrap()).unwrap());
    assert!(b_product_check(&e(&[&[3, 7], &[1, 3]]), &e(&[&[3, -7], &[-1, 3]])).unwrap());
}

#[test]
fn k_theory_of_single_endomorphisms() {
    let k = |m: LatticeEndo| {
        let r = k_endo(&m).unwrap();
        (r.k0.label_strings(), r.k1.label_strings())
    };
    assert_eq!(k(e(&[&[2]])), (vec!["Z".to_string()], vec!["Z".to_string()]));
    assert_eq!(k(LatticeEndo::scalar(2, 2).unwrap()), (vec!["Z/3".into(), "Z".into()], vec!["Z".into()]));
    assert_eq!(k(e(&[&[2, 0], &[0, 3]])), (vec!["Z/5".into(), "Z".into()], vec!["Z/2".into(), "Z".into()]));
    let kb = k_b(&e(&[&[5]])).unwrap();
    assert_eq!(kb[0].labels().unwrap(), ["Z[1/5]"]);
    assert_eq!(kb[1].labels().unwrap(), ["Z"]);
    assert_eq!(k_b(&e(&[&[2, 0], &[0, 3]])).unwrap()[0].labels().unwrap(), ["Z[1/6]"]);
    let r = k_endo(&e(&[&[2, 0], &[0, 3]])).unwrap();
    assert_eq!(r.k_b.unwrap().k0, [Label::Name("Z".into()), Label::Name("Z[1/6]".into())]);
}

#[test]
fn colimits() {
    let two = ColimitGroup::new(mat(&[&[2]])).unwrap();
    let el = |l, v: &[i64]| ColimElement::new(l, ivec(v));
    assert!(colim_eq(&two, &el(0, &[1]), &el(1, &[2])).unwrap());
    assert!(!colim_eq(&two, &el(0, &[1]), &el(1, &[1])).unwrap());
    let s7 = ColimitGroup::new(mat(&[&[3, 7], &[1, 3]])).unwrap();
    assert!(colim_eq(&s7, &el(0, &[1, 0]), &el(1, &[3, 1])).unwrap());

    assert!(eventual_image(&FgAbGroup::cyclic(4), &mat(&[&[2]])).unwrap().is_trivial());
    assert_eq!(eventual_image(&FgAbGroup::cyclic(2), &mat(&[&[15]])).unwrap(), FgAbGroup::cyclic(2));
    assert_eq!(eventual_image(&FgAbGroup::cyclic(6), &mat(&[&[2]])).unwrap(), FgAbGroup::cyclic(3));
}

#[test]
fn polymorphisms() {
    let r = k_poly(&LatticeEndo::scalar(2, 2).unwrap(), &LatticeEndo::scalar(2, 3).unwrap()).unwrap();
    assert_eq!(r.k0.label_strings(), ["Z/5", "Z"]);
    assert!(r.k1.sub.is_empty());
    assert_eq!(r.k1.label_strings(), ["Z"]);
    let f = classify(&e(&[&[2]]), None).unwrap();
    assert!(f.simple && f.purely_infinite);
    let f = classify(&e(&[&[5]]), Some(&e(&[&[3]]))).unwrap();
    assert!(f.purely_infinite && !f.unique_trace);
    let f = classify(&e(&[&[2, -1], &[1, 2]]), Some(&e(&[&[2, 1], &[-1, 2]]))).unwrap();
    assert!(f.unique_trace && !f.purely_infinite);
}

#[test]
fn digits_and_odometer() {
    let d = digit_reps(&e(&[&[2]])).unwrap();
    assert_eq!(d.digits(), [ivec(&[0]), ivec(&[1])]);
    let d = digit_reps(&e(&[&[2, 0], &[0, 3]])).unwrap();
    assert_eq!(d.len(), 6);
    assert!(d.digits().contains(&ivec(&[1, 2])));
    assert_eq!(digit_reps(&e(&[&[1, 1], &[-1, 1]])).unwrap().digits(), [ivec(&[0, 0]), ivec(&[0, 1])]);

    let two = e(&[&[2]]);
    let x = ProfiniteElement::of(&two, &ivec(&[7]), 3).unwrap();
    assert_eq!(x.digit_indices(), [1, 1, 1]);
    assert_eq!(x.translate(&ivec(&[1])).unwrap().digit_indices(), [0, 0, 0]);
    let z = ProfiniteElement::zero(x.system(), 3);
    assert_eq!(z.translate(&ivec(&[3])).unwrap().digit_indices(), [1, 1, 0]);
    assert_eq!(x.translate(&ivec(&[0])).unwrap(), x);
    let one = ProfiniteElement::from_vector(x.system(), &ivec(&[1]), 3).unwrap();
    assert_eq!(one.phi_shift().digit_indices(), [0, 1, 0]);
    assert_eq!(one.phi_shift().value(), ivec(&[2]));
    assert_eq!(z.phi_shift(), z);
    let d23 = e(&[&[2, 0], &[0, 3]]);
    let y = ProfiniteElement::of(&d23, &ivec(&[1, 1]), 2).unwrap();
    assert_eq!(y.phi_shift(), ProfiniteElement::from_vector(y.system(), &ivec(&[2, 3]), 2).unwrap());
}

#[test]
fn crt_examples() {
    let (two, three) = (e(&[&[2]]), e(&[&[3]]));
    let six = e(&[&[6]]);
    let split = |v: i64, k| {
        let (a, b) = crt_decompose(&ProfiniteElement::of(&six, &ivec(&[v]), k).unwrap(), &two, &three).unwrap();
        (a.value(), b.value())
    };
    assert_eq!(split(5, 1), (ivec(&[1]), ivec(&[2])));
    assert_eq!(split(17, 2), (ivec(&[1]), ivec(&[8])));
    assert_eq!(split(0, 2), (ivec(&[0]), ivec(&[0])));
}

#[test]
fn torus_examples() {
    let d = e(&[&[2]]);
    assert_eq!(apply_alpha(&d, &pt("1/3")).unwrap(), pt("2/3"));
    assert_eq!(apply_alpha(&d, &pt("2/3")).unwrap(), pt("1/3"));
    assert_eq!(apply_alpha(&e(&[&[1, 1], &[-1, 1]]), &pt("(1/2, 0)")).unwrap(), pt("(1/2, 1/2)"));
    assert_eq!(kernel_points(&d, 2).unwrap(), ["0", "1/4", "1/2", "3/4"].map(pt));
    assert_eq!(kernel_points(&e(&[&[1, 1], &[-1, 1]]), 0).unwrap(), [pt("(0, 0)")]);
    assert_eq!(kernel_points(&e(&[&[2, 0], &[0, 3]]), 1).unwrap().len(), 6);

    match same_orbit(&d, &pt("1/3"), &pt("5/12"), 4).unwrap() {
        OrbitVerdict::Found { n, m, point } => assert_eq!((n, m, point), (2, 1, pt("2/3"))),
        v => panic!("{v:?}"),
    }
    assert_eq!(same_orbit(&d, &pt("1/3"), &pt("1/5"), 6).unwrap(), OrbitVerdict::NotFoundWithin { depth: 6 });
    assert!(matches!(
        same_orbit(&d, &pt("3/7"), &pt("3/7"), 2).unwrap(),
        OrbitVerdict::Found { n: 0, m: 0, .. }
    ));
    let r = orbit_product_check(&d, &e(&[&[3]]), &pt("1/5"), 3).unwrap();
    assert!(r.verdict && r.kernel_intersection_trivial && r.max_coset_intersection <= 1);
    assert!(orbit_product_check(&d, &d, &pt("1/5"), 3).is_err());
}

#[test]
fn window_operators() {
    let w = Window::new(1, 4).unwrap();
    let u0 = build_u(&ivec(&[0]), w).unwrap();
    assert!(w.points().all(|x| u0.apply(&x) == Image::Point(x.clone())));
    let s = build_s(&e(&[&[2]]), w).unwrap();
    assert_eq!(s.apply(&[1]), Image::Point(vec![2]));
    assert_eq!(s.apply(&[3]), Image::Escaped);
    assert_eq!(s.adjoint().apply(&[3]), Image::Zero);
    let s2 = build_s(&e(&[&[1, 1], &[-1, 1]]), Window::new(2, 3).unwrap()).unwrap();
    assert_eq!(s2.apply(&[1, 0]), Image::Point(vec![1, -1]));
    let u1 = build_u(&ivec(&[1]), w).unwrap();
    let u2 = build_u(&ivec(&[2]), w).unwrap();
    assert_eq!(s.compose(&u1).apply(&[0]), u2.compose(&s).apply(&[0]));
    for r in check_rel(&e(&[&[2]]), Window::new(1, 32).unwrap(), 10).unwrap() {
        assert!(r.passed(), "{r}");
    }
}

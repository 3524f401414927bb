mod common;

use common::{matrix_from, polynomial_in};
use endok_core::endo::{crt_check, independent};
use endok_core::ktheory::{
    b_map, b_product_check, colim_eq, lambda_functor, norm_identity, poincare_check, ColimElement, ColimitGroup,
};
use endok_core::lattice::{hnf, kernel, snf, IntMatrix};
use endok_core::LatticeEndo;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn endo_strategy(max_n: usize, bound: i64) -> impl Strategy<Value = LatticeEndo> {
    (1..=max_n)
        .prop_flat_map(move |n| (Just(n), prop::collection::vec(-bound..=bound, n * n)))
        .prop_filter_map("singular", |(n, v)| LatticeEndo::new(matrix_from(n, &v)).ok())
}

fn pair_strategy() -> impl Strategy<Value = (LatticeEndo, LatticeEndo)> {
    (endo_strategy(4, 9), -4i64..=4, -2i64..=2, -1i64..=1)
        .prop_filter_map("singular", |(f, a, b, c)| polynomial_in(&f, a, b, c).map(|g| (f, g)))
}

fn square_pair(bound: i64) -> impl Strategy<Value = (IntMatrix, IntMatrix)> {
    (1..=4usize).prop_flat_map(move |n| {
        (
            prop::collection::vec(-bound..=bound, n * n),
            prop::collection::vec(-bound..=bound, n * n),
        )
            .prop_map(move |(a, b)| (matrix_from(n, &a), matrix_from(n, &b)))
    })
}

/// All roots of `p` (constant term first) lie strictly inside the unit disc.
fn schur_stable(p: &[BigInt]) -> bool {
    let mut a: Vec<BigInt> = p.to_vec();
    while a.len() > 1 {
        let n = a.len() - 1;
        if a[n].abs() <= a[0].abs() {
            return false;
        }
        // a_n p(z) - a_0 p*(z), divided by z
        let next: Vec<BigInt> = (1..=n).map(|k| &a[n] * &a[k] - &a[0] * &a[n - k]).collect();
        a = next;
    }
    true
}

/// Every eigenvalue has modulus > 1.
fn expansive(e: &LatticeEndo) -> bool {
    let mut rev = e.charpoly().coeffs().to_vec();
    rev.reverse();
    schur_stable(&rev)
}

#[test]
fn schur_cohn_oracle() {
    let ex = |rows: &[&[i64]]| expansive(&LatticeEndo::from_rows(rows).unwrap());
    assert!(ex(&[&[2]]) && ex(&[&[-3]]) && ex(&[&[1, 1], &[-1, 1]]) && ex(&[&[2, 1], &[0, 2]]));
    assert!(!ex(&[&[1]]) && !ex(&[&[2, 1], &[1, 1]]) && !ex(&[&[2, 0], &[0, 1]]) && !ex(&[&[0, 1], &[1, 0]]));
    // roots of x^2 - x + 2 have modulus sqrt 2
    assert!(ex(&[&[0, -2], &[1, 1]]));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn snf_decomposes((a, _) in square_pair(9)) {
        let s = snf(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert!(s.u.det().abs().is_one() && s.v.det().abs().is_one());
        prop_assert!(s.d.is_diagonal());
        let diag: Vec<BigInt> = (0..a.rows()).map(|i| s.d.row(i)[i].clone()).collect();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        prop_assert_eq!(diag.iter().product::<BigInt>().abs(), a.det().abs());
    }

    #[test]
    fn hnf_is_canonical((a, u) in square_pair(5)) {
        let l = hnf(&a);
        if u.det().abs().is_one() {
            prop_assert_eq!(hnf(&a.mul(&u)), l.clone());
        }
        if !a.det().is_zero() {
            prop_assert_eq!(l.index(), Some(a.det().abs()));
            prop_assert_eq!(l.quotient_structure().order(), Some(a.det().abs()));
        }
        let k = kernel(&a);
        prop_assert!(a.mul(k.basis()).is_zero());
    }

    #[test]
    fn b_map_identities(f in endo_strategy(4, 9)) {
        let b = b_map(&f).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let lam = lambda_functor(f.matrix()).unwrap();
        let id = norm_identity(&f);
        prop_assert_eq!(b.compose(&lam).unwrap(), id.clone());
        prop_assert_eq!(lam.compose(&b).unwrap(), id);
        prop_assert!(poincare_check(&f).unwrap());
        prop_assert!(b.block(0).is_square() && b.block(0).row(0)[0] == f.index());
    }

    #[test]
    fn lambda_is_functorial((a, b) in square_pair(9)) {
        let lab = lambda_functor(&a.mul(&b)).unwrap();
        prop_assert_eq!(lab, lambda_functor(&a).unwrap().compose(&lambda_functor(&b).unwrap()).unwrap());
    }

    #[test]
    fn b_is_multiplicative((f, g) in pair_strategy()) {
        prop_assert!(b_product_check(&f, &g).unwrap());
        prop_assert!(b_product_check(&g, &f).unwrap());
    }

    #[test]
    fn independence_forms_agree((f, g) in pair_strategy()) {
        let r = independent(&f, &g).unwrap();
        prop_assert!(r.commute);
        prop_assert_eq!(r.cond_a, r.cond_b);
        prop_assert_eq!(r.cond_b, r.cond_c);
        prop_assert_eq!(r.verdict, r.cond_a);
        if r.verdict {
            let c = crt_check(&f, &g).unwrap();
            prop_assert!(c.ok, "{} vs {}", c.lhs, c.rhs);
        } else {
            prop_assert!(crt_check(&f, &g).is_err());
        }
    }

    #[test]
    fn scalar_independence_is_coprimality(n in 1usize..=3, a in 2i64..=30, b in 2i64..=30) {
        let f = LatticeEndo::scalar(n, a).unwrap();
        let g = LatticeEndo::scalar(n, b).unwrap();
        prop_assert_eq!(independent(&f, &g).unwrap().verdict, a.gcd(&b) == 1);
    }

    #[test]
    fn expansive_kernel_of_one_minus_b(f in endo_strategy(3, 6)) {
        prop_assume!(expansive(&f));
        let n = f.rank();
        let b = b_map(&f).unwrap();
        for p in 0..=n {
            let blk = b.block(p);
            let one_minus = IntMatrix::identity(blk.rows()).sub(blk);
            let k = kernel(&one_minus).basis().cols();
            let want = if p == n && f.det().is_positive() { 1 } else { 0 };
            prop_assert_eq!(k, want, "degree {}", p);
        }
    }

    #[test]
    fn colim_eq_is_an_equivalence(
        f in endo_strategy(3, 4),
        v in prop::collection::vec(-20i64..=20, 3),
        w in prop::collection::vec(-20i64..=20, 3),
        l1 in 0u32..3, l2 in 0u32..3, up in 0u32..3,
    ) {
        let n = f.rank();
        let g = ColimitGroup::new(f.matrix().clone()).unwrap();
        let vec = |x: &[i64]| x[..n].iter().map(|&t| BigInt::from(t)).collect::<Vec<_>>();
        let a = ColimElement::new(l1, vec(&v));
        let b = ColimElement::new(l2, vec(&w));
        prop_assert!(colim_eq(&g, &a, &a).unwrap());
        prop_assert_eq!(colim_eq(&g, &a, &b).unwrap(), colim_eq(&g, &b, &a).unwrap());
        let a_up = g.raise(&a, l1 + up).unwrap();
        prop_assert!(colim_eq(&g, &a, &a_up).unwrap());
        prop_assert_eq!(colim_eq(&g, &a_up, &b).unwrap(), colim_eq(&g, &a, &b).unwrap());
        let a_up2 = g.raise(&a_up, l1 + up + 1).unwrap();
        prop_assert!(colim_eq(&g, &a_up, &a_up2).unwrap() && colim_eq(&g, &a, &a_up2).unwrap());
        let sum = g.add(&a, &g.neg(&a)).unwrap();
        prop_assert!(colim_eq(&g, &sum, &g.zero()).unwrap());
    }
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::group::FgAbGroup;
use super::hnf::{hnf, Sublattice};
use super::matrix::IntMatrix;

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal, its nonzero
/// entries `d_1 | d_2 | … | d_r` positive and followed by zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        let r = self.d.rows().min(self.d.cols());
        (0..r).take_while(|&i| !self.d[(i, i)].is_zero()).count()
    }

    /// The nonzero diagonal entries, including any leading 1s.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank()).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Smallest nonzero absolute value in the trailing submatrix, lowest
/// row-major index on ties.
fn find_pivot(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().map_or(true, |(_, b)| &ax < b) {
                best = Some(((i, j), ax));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// Smith normal form by elementary row and column operations.
pub fn snf(a: &IntMatrix) -> SmithDecomposition {
    let m = a.rows();
    let n = a.cols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for k in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = find_pivot(&d, k) else {
                return SmithDecomposition { d, u, v };
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let mut clean = true;
            for i in k + 1..m {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let q = &d[(i, k)] / &d[(k, k)];
                d.add_row_multiple(i, k, &-&q);
                u.add_row_multiple(i, k, &-&q);
                clean &= d[(i, k)].is_zero();
            }
            for j in k + 1..n {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let q = &d[(k, j)] / &d[(k, k)];
                d.add_col_multiple(j, k, &-&q);
                v.add_col_multiple(j, k, &-&q);
                clean &= d[(k, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = d[(k, k)].clone();
            let offender = (k + 1..m).find(|&i| (k + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(k, i, &one);
                    u.add_row_multiple(k, i, &one);
                }
                None => break,
            }
        }
        if d[(k, k)].is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
    }
    SmithDecomposition { d, u, v }
}

/// Kernel of `A : Z^cols → Z^rows` as a sublattice of `Z^cols`.
pub fn kernel(a: &IntMatrix) -> Sublattice {
    let s = snf(a);
    let r = s.rank();
    let rows: Vec<usize> = (0..a.cols()).collect();
    let cols: Vec<usize> = (r..a.cols()).collect();
    hnf(&s.v.select(&rows, &cols))
}

/// Kernel and cokernel of `A : Z^cols → Z^rows`.
pub fn ker_coker(a: &IntMatrix) -> (Sublattice, FgAbGroup) {
    let s = snf(a);
    let r = s.rank();
    let rows: Vec<usize> = (0..a.cols()).collect();
    let cols: Vec<usize> = (r..a.cols()).collect();
    let ker = hnf(&s.v.select(&rows, &cols));
    let coker = FgAbGroup::from_orders(s.invariant_factors(), a.rows() - r);
    (ker, coker)
}

/// An integer solution of `A x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len());
    let s = snf(a);
    let r = s.rank();
    let y = s.u.mul_vec(b);
    if y[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut z = vec![BigInt::zero(); a.cols()];
    for i in 0..r {
        let (q, rem) = y[i].div_rem(&s.d[(i, i)]);
        if !rem.is_zero() {
            return None;
        }
        z[i] = q;
    }
    Some(s.v.mul_vec(&z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::{ivec, mat};
    use num_traits::One;

    fn check_decomposition(a: &IntMatrix) -> SmithDecomposition {
        let s = snf(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(s.u.det().abs().is_one());
        assert!(s.v.det().abs().is_one());
        assert!(s.d.is_diagonal());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn identity() {
        let s = check_decomposition(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
    }

    #[test]
    fn diag_two_three() {
        // oracle: d1 = gcd of entries = 1, d1*d2 = |det| = 6
        let s = check_decomposition(&mat(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariant_factors(), ivec(&[1, 6]));
    }

    #[test]
    fn upper_triangular() {
        // oracle: gcd = 2, product = |det| = 12
        let s = check_decomposition(&mat(&[&[2, 4], &[0, 6]]));
        assert_eq!(s.invariant_factors(), ivec(&[2, 6]));
    }

    #[test]
    fn rectangular_and_zero() {
        let s = check_decomposition(&mat(&[&[2, 4, 6], &[4, 8, 12]]));
        assert_eq!(s.invariant_factors(), ivec(&[2]));
        let s = check_decomposition(&IntMatrix::zeros(2, 3));
        assert_eq!(s.rank(), 0);
        check_decomposition(&IntMatrix::zeros(0, 2));
    }

    #[test]
    fn deterministic() {
        let a = mat(&[&[6, 10, 4], &[-3, 7, 2], &[9, 1, 15]]);
        assert_eq!(snf(&a), snf(&a));
        check_decomposition(&a);
    }

    #[test]
    fn ker_coker_examples() {
        let (k, c) = ker_coker(&mat(&[&[0]]));
        assert_eq!(k, Sublattice::full(1));
        assert_eq!(c, FgAbGroup::free(1));

        let (k, c) = ker_coker(&mat(&[&[-1, 0], &[0, 0]]));
        assert_eq!(k.basis(), &mat(&[&[0], &[1]]));
        assert_eq!(c, FgAbGroup::free(1));

        let (k, c) = ker_coker(&mat(&[&[2, 0], &[0, 3]]));
        assert_eq!(k.rank(), 0);
        assert_eq!(c, FgAbGroup::cyclic(6));
    }

    #[test]
    fn integer_solve() {
        let a = mat(&[&[2, 3]]);
        let x = solve_integer(&a, &ivec(&[1])).unwrap();
        assert_eq!(a.mul_vec(&x), ivec(&[1]));
        assert!(solve_integer(&mat(&[&[2, 4]]), &ivec(&[1])).is_none());
        assert!(solve_integer(&mat(&[&[1], &[1]]), &ivec(&[1, 2])).is_none());
    }
}

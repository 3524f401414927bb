use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::group::FgAbGroup;
use super::matrix::IntMatrix;
use super::snf::{kernel, snf};
use crate::error::{Error, Result};

/// A sublattice of `Z^n`, stored by its canonical column Hermite basis.
///
/// The basis is lower triangular in echelon form: column `j` has its first
/// nonzero entry (the pivot, always positive) in row `pivots[j]`, pivot rows
/// strictly increase, and the entries of earlier columns in a pivot row lie
/// in `[0, pivot)`. Two sublattices are equal iff their stored bases are.
///
/// Deserialization re-runs the normal form on the stored basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "SublatticeRepr", from = "SublatticeRepr")]
pub struct Sublattice {
    ambient: usize,
    basis: IntMatrix,
    pivots: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SublatticeRepr {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl From<Sublattice> for SublatticeRepr {
    fn from(l: Sublattice) -> Self {
        SublatticeRepr {
            ambient_rank: l.ambient,
            basis: l.basis,
        }
    }
}

impl From<SublatticeRepr> for Sublattice {
    fn from(r: SublatticeRepr) -> Self {
        if r.basis.cols() == 0 {
            Sublattice::zero(r.ambient_rank)
        } else {
            hnf(&r.basis)
        }
    }
}

/// Canonical column HNF of the integer span of the columns of `generators`.
pub fn hnf(generators: &IntMatrix) -> Sublattice {
    let n = generators.rows();
    let k = generators.cols();
    let mut a = generators.clone();
    let mut pivots = Vec::new();
    let mut c = 0;
    for i in 0..n {
        if c == k {
            break;
        }
        for j in c + 1..k {
            if a[(i, j)].is_zero() {
                continue;
            }
            let eg = a[(i, c)].extended_gcd(&a[(i, j)]);
            let p = &a[(i, c)] / &eg.gcd;
            let q = &a[(i, j)] / &eg.gcd;
            a.combine_cols(c, j, (&eg.x, &eg.y, &-q, &p));
        }
        if a[(i, c)].is_zero() {
            continue;
        }
        if a[(i, c)].is_negative() {
            a.negate_col(c);
        }
        let pivot = a[(i, c)].clone();
        for j in 0..c {
            let q = a[(i, j)].div_floor(&pivot);
            a.add_col_multiple(j, c, &-q);
        }
        pivots.push(i);
        c += 1;
    }
    let cols: Vec<usize> = (0..c).collect();
    let rows: Vec<usize> = (0..n).collect();
    Sublattice {
        ambient: n,
        basis: a.select(&rows, &cols),
        pivots,
    }
}

impl Sublattice {
    pub fn zero(n: usize) -> Self {
        Sublattice {
            ambient: n,
            basis: IntMatrix::zeros(n, 0),
            pivots: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        hnf(&IntMatrix::identity(n))
    }

    /// Image `M(Z^n)` of an integer matrix.
    pub fn image_of(m: &IntMatrix) -> Self {
        hnf(m)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient
    }

    /// `[Z^n : L]` for a full-rank lattice; `None` when the index is infinite.
    pub fn index(&self) -> Option<BigInt> {
        if !self.is_full_rank() {
            return None;
        }
        Some(
            self.pivots
                .iter()
                .enumerate()
                .fold(BigInt::one(), |acc, (j, &i)| acc * &self.basis[(i, j)]),
        )
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is not in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient);
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (j, &i) in self.pivots.iter().enumerate() {
            // rows above the pivot row must already be cleared
            let pivot = &self.basis[(i, j)];
            let (q, r) = rest[i].div_rem(pivot);
            if !r.is_zero() {
                return None;
            }
            for (row, x) in rest.iter_mut().enumerate().skip(i) {
                *x -= &q * &self.basis[(row, j)];
            }
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Canonical representative of `v` modulo a full-rank lattice: the unique
    /// `x ≡ v` with `0 ≤ x[pivot_j] < pivot_j` for all j.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ambient);
        let mut x = v.to_vec();
        for (j, &i) in self.pivots.iter().enumerate() {
            let q = x[i].div_floor(&self.basis[(i, j)]);
            if q.is_zero() {
                continue;
            }
            for (row, xr) in x.iter_mut().enumerate().skip(i) {
                *xr -= &q * &self.basis[(row, j)];
            }
        }
        x
    }

    /// Pivot values, one per basis column.
    pub fn pivot_values(&self) -> Vec<BigInt> {
        self.pivots
            .iter()
            .enumerate()
            .map(|(j, &i)| self.basis[(i, j)].clone())
            .collect()
    }

    pub fn contains_lattice(&self, other: &Sublattice) -> bool {
        (0..other.rank()).all(|j| self.contains(&other.basis.column(j)))
    }

    /// Image of this lattice under `m`.
    pub fn map(&self, m: &IntMatrix) -> Sublattice {
        hnf(&m.mul(&self.basis))
    }

    pub fn sum(&self, other: &Sublattice) -> Result<Sublattice> {
        self.check_rank(other)?;
        Ok(hnf(&self.basis.hstack(&other.basis)))
    }

    /// Exact intersection, from the kernel of `(x, y) ↦ A x − B y`.
    pub fn intersect(&self, other: &Sublattice) -> Result<Sublattice> {
        self.check_rank(other)?;
        let ra = self.rank();
        if ra == 0 || other.rank() == 0 {
            return Ok(Sublattice::zero(self.ambient));
        }
        let stacked = self.basis.hstack(&other.basis.neg());
        let ker = kernel(&stacked);
        let xs = ker.basis();
        let rows: Vec<usize> = (0..ra).collect();
        let cols: Vec<usize> = (0..xs.cols()).collect();
        let x_part = xs.select(&rows, &cols);
        Ok(hnf(&self.basis.mul(&x_part)))
    }

    /// `Z^n / L` in invariant-factor form.
    pub fn quotient_structure(&self) -> FgAbGroup {
        let d = snf(&self.basis);
        FgAbGroup::from_orders(
            d.invariant_factors().iter().cloned(),
            self.ambient - self.rank(),
        )
    }

    fn check_rank(&self, other: &Sublattice) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::RankMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }
}

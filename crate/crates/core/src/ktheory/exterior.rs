//! Exterior powers of integer matrices and the transfer maps `b(φ)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::endo::LatticeEndo;
use crate::error::{Error, Result};
use crate::lattice::IntMatrix;

/// The `p`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if p > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..p).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..p).rev().find(|&i| cur[i] < n - p + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..p {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, p: usize) -> usize {
    if p > n {
        return 0;
    }
    let p = p.min(n - p);
    (0..p).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `Λ^p A` in the lexicographic basis `e_I = e_{i_1} ∧ … ∧ e_{i_p}`;
/// the `(I, J)` entry is the minor `det A[I, J]`.
pub fn exterior_power(a: &IntMatrix, p: usize) -> Result<IntMatrix> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "exterior power of a non-square {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    if p > n {
        return Err(Error::Parameter(format!("degree {p} out of range 0..={n}")));
    }
    let idx = subsets(n, p);
    let mut out = IntMatrix::zeros(idx.len(), idx.len());
    for (r, rows) in idx.iter().enumerate() {
        for (c, cols) in idx.iter().enumerate() {
            out[(r, c)] = a.select(rows, cols).det();
        }
    }
    Ok(out)
}

/// One integer matrix per exterior degree `p = 0..=n`, block `p` acting on
/// `Λ^p Z^n ≅ Z^{C(n,p)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedIntMap {
    n: usize,
    blocks: Vec<IntMatrix>,
}

impl GradedIntMap {
    pub fn new(n: usize, blocks: Vec<IntMatrix>) -> Result<Self> {
        if blocks.len() != n + 1 {
            return Err(Error::Shape(format!(
                "expected {} blocks, got {}",
                n + 1,
                blocks.len()
            )));
        }
        for (p, b) in blocks.iter().enumerate() {
            let d = binomial(n, p);
            if b.rows() != d || b.cols() != d {
                return Err(Error::Shape(format!(
                    "block {p} is {}x{}, expected {d}x{d}",
                    b.rows(),
                    b.cols()
                )));
            }
        }
        Ok(GradedIntMap { n, blocks })
    }

    pub fn identity(n: usize) -> Self {
        let blocks = (0..=n).map(|p| IntMatrix::identity(binomial(n, p))).collect();
        GradedIntMap { n, blocks }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[IntMatrix] {
        &self.blocks
    }

    pub fn block(&self, p: usize) -> &IntMatrix {
        &self.blocks[p]
    }

    fn zip(&self, other: &GradedIntMap, f: impl Fn(&IntMatrix, &IntMatrix) -> IntMatrix) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| f(a, b)).collect();
        Ok(GradedIntMap { n: self.n, blocks })
    }

    /// Blockwise `self · other`.
    pub fn compose(&self, other: &GradedIntMap) -> Result<Self> {
        self.zip(other, IntMatrix::mul)
    }

    pub fn sub(&self, other: &GradedIntMap) -> Result<Self> {
        self.zip(other, IntMatrix::sub)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        GradedIntMap {
            n: self.n,
            blocks: self.blocks.iter().map(|b| b.scale(k)).collect(),
        }
    }
}

/// `Λφ` in every degree.
pub fn lambda_functor(a: &IntMatrix) -> Result<GradedIntMap> {
    if !a.is_square() {
        return Err(Error::Shape("lambda_functor needs a square matrix".into()));
    }
    let n = a.rows();
    let blocks = (0..=n).map(|p| exterior_power(a, p)).collect::<Result<_>>()?;
    Ok(GradedIntMap { n, blocks })
}

/// The transfer `b(φ)`, determined by `b(φ) · Λφ = N(φ) · id`.
///
/// Fails with an invariant violation if some block is not integral.
pub fn b_map(e: &LatticeEndo) -> Result<GradedIntMap> {
    let n = e.rank();
    let norm = BigRational::from_integer(e.index());
    let mut blocks = Vec::with_capacity(n + 1);
    for p in 0..=n {
        let l = exterior_power(e.matrix(), p)?;
        let inv = l
            .rational_inverse()
            .ok_or_else(|| Error::Invariant(format!("Λ^{p} of {e} is singular")))?;
        let d = l.rows();
        let mut b = IntMatrix::zeros(d, d);
        for (i, row) in inv.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let v = x * &norm;
                if !v.is_integer() {
                    return Err(Error::Invariant(format!(
                        "b-map of {e} has non-integral entry {v} in degree {p}"
                    )));
                }
                b[(i, j)] = v.to_integer();
            }
        }
        blocks.push(b);
    }
    Ok(GradedIntMap { n, blocks })
}

/// The Hodge-type duality `D_p : Λ^p → Λ^{n-p}`, `e_I ↦ sgn(I, I^c) e_{I^c}`.
pub fn duality_matrix(n: usize, p: usize) -> IntMatrix {
    let src = subsets(n, p);
    let dst = subsets(n, n - p);
    let mut d = IntMatrix::zeros(dst.len(), src.len());
    for (c, i) in src.iter().enumerate() {
        let comp: Vec<usize> = (0..n).filter(|x| !i.contains(x)).collect();
        let r = dst.iter().position(|j| *j == comp).expect("complement is a subset");
        // sign of the shuffle listing I then I^c
        let inversions: usize = i
            .iter()
            .map(|&a| comp.iter().filter(|&&b| b < a).count())
            .sum();
        d[(r, c)] = if inversions % 2 == 0 { 1.into() } else { (-1).into() };
    }
    d
}

/// Checks `b(φ)_p = ε · D_p^{-1} · Λ^{n-p}(φᵀ) · D_p` in every degree,
/// with `ε = sgn det φ`.
pub fn poincare_check(e: &LatticeEndo) -> Result<bool> {
    let n = e.rank();
    let b = b_map(e)?;
    let eps = BigInt::from(e.sign());
    let lt = lambda_functor(&e.matrix().transpose())?;
    for p in 0..=n {
        let d = duality_matrix(n, p);
        // D_p is a signed permutation, so its inverse is its transpose
        let rhs = d.transpose().mul(lt.block(n - p)).mul(&d).scale(&eps);
        if &rhs != b.block(p) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks `b(fg) = b(f) b(g) = b(g) b(f)` for commuting `f`, `g`.
pub fn b_product_check(f: &LatticeEndo, g: &LatticeEndo) -> Result<bool> {
    if f.rank() != g.rank() {
        return Err(Error::RankMismatch(f.rank(), g.rank()));
    }
    if !f.commutes_with(g) {
        return Err(Error::NotCommuting);
    }
    let bf = b_map(f)?;
    let bg = b_map(g)?;
    let bfg = b_map(&f.compose(g)?)?;
    Ok(bfg == bf.compose(&bg)? && bfg == bg.compose(&bf)?)
}

/// `N(φ) · id` in every degree; the right-hand side of `b(φ) Λφ = N(φ) id`.
pub fn norm_identity(e: &LatticeEndo) -> GradedIntMap {
    GradedIntMap::identity(e.rank()).scale(&e.index())
}

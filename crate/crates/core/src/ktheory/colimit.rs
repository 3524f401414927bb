//! Direct limits `lim→ (Z^m, B)` and the finite-group limits that arise
//! from cokernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{hnf, snf, FgAbGroup, IntMatrix, Sublattice};

/// `lim→ (Z^m, B)` for an injective `B`.
///
/// Elements are pairs `(level k, v)` with `(k, v) ≡ (k+1, Bv)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColimitGroup {
    rank: usize,
    map: IntMatrix,
    /// Names of cyclic-type summands when the group is recognized.
    labels: Option<Vec<String>>,
}

/// An element `(level, vector)` of a [`ColimitGroup`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColimElement {
    pub level: u32,
    #[serde(with = "crate::serde_int::bigint_vec")]
    pub vector: Vec<BigInt>,
}

impl ColimElement {
    pub fn new(level: u32, vector: Vec<BigInt>) -> Self {
        ColimElement { level, vector }
    }
}

impl ColimitGroup {
    pub fn new(map: IntMatrix) -> Result<Self> {
        if !map.is_square() {
            return Err(Error::Shape("colimit map must be square".into()));
        }
        if map.det().is_zero() {
            return Err(Error::NotInjective);
        }
        let labels = recognize(&map);
        Ok(ColimitGroup {
            rank: map.rows(),
            map,
            labels,
        })
    }

    /// `lim→ (Z^m, T)` for any square `T`, reduced to the stable image of
    /// `T` on which `T` is injective.
    pub fn of_endomorphism(t: &IntMatrix) -> Result<Self> {
        let (_, r) = stable_image(t)?;
        Self::new(r)
    }

    pub fn trivial() -> Self {
        ColimitGroup {
            rank: 0,
            map: IntMatrix::zeros(0, 0),
            labels: Some(Vec::new()),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn map(&self) -> &IntMatrix {
        &self.map
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// True iff the group is finitely generated (then it is `Z^rank`).
    pub fn is_finitely_generated(&self) -> bool {
        self.map.det().abs().is_one() || self.rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0
    }

    fn check(&self, a: &ColimElement) -> Result<()> {
        if a.vector.len() != self.rank {
            return Err(Error::Shape(format!(
                "element has {} coordinates, group rank is {}",
                a.vector.len(),
                self.rank
            )));
        }
        Ok(())
    }

    /// The representative of `a` at level `level ≥ a.level`.
    pub fn raise(&self, a: &ColimElement, level: u32) -> Result<ColimElement> {
        self.check(a)?;
        if level < a.level {
            return Err(Error::Parameter(format!(
                "cannot lower an element from level {} to {level}",
                a.level
            )));
        }
        let mut v = a.vector.clone();
        for _ in a.level..level {
            v = self.map.mul_vec(&v);
        }
        Ok(ColimElement::new(level, v))
    }

    pub fn add(&self, a: &ColimElement, b: &ColimElement) -> Result<ColimElement> {
        let l = a.level.max(b.level);
        let (x, y) = (self.raise(a, l)?, self.raise(b, l)?);
        let v = x.vector.iter().zip(&y.vector).map(|(p, q)| p + q).collect();
        Ok(ColimElement::new(l, v))
    }

    pub fn neg(&self, a: &ColimElement) -> ColimElement {
        ColimElement::new(a.level, a.vector.iter().map(|x| -x).collect())
    }

    pub fn zero(&self) -> ColimElement {
        ColimElement::new(0, vec![BigInt::zero(); self.rank])
    }

    /// Equality in the limit: compare both at the common level.
    pub fn eq(&self, a: &ColimElement, b: &ColimElement) -> Result<bool> {
        let l = a.level.max(b.level);
        Ok(self.raise(a, l)?.vector == self.raise(b, l)?.vector)
    }
}

pub fn colim_eq(g: &ColimitGroup, a: &ColimElement, b: &ColimElement) -> Result<bool> {
    g.eq(a, b)
}

fn unit_label(k: &BigInt) -> String {
    if k.abs().is_one() {
        "Z".to_string()
    } else {
        format!("Z[1/{}]", k.abs())
    }
}

fn recognize(map: &IntMatrix) -> Option<Vec<String>> {
    let m = map.rows();
    if m == 0 {
        return Some(Vec::new());
    }
    if map.det().abs().is_one() {
        return Some(vec!["Z".to_string(); m]);
    }
    if map.is_diagonal() {
        return Some((0..m).map(|i| unit_label(&map[(i, i)])).collect());
    }
    None
}

/// The eventual image `L = T^k Z^m` at which the rank stops dropping,
/// together with the matrix of `T|_L` in the basis of `L`.
///
/// `T|_L` is injective and `lim→ (Z^m, T) ≅ lim→ (L, T|_L)`.
pub fn stable_image(t: &IntMatrix) -> Result<(Sublattice, IntMatrix)> {
    if !t.is_square() {
        return Err(Error::Shape("stable_image needs a square matrix".into()));
    }
    let m = t.rows();
    let mut l = Sublattice::full(m);
    loop {
        let next = l.map(t);
        if next.rank() == l.rank() {
            break;
        }
        l = next;
    }
    let basis = l.basis();
    let image = t.mul(basis);
    let mut r = IntMatrix::zeros(l.rank(), l.rank());
    for j in 0..l.rank() {
        let c = l.coordinates(&image.column(j)).ok_or_else(|| {
            Error::Invariant("stable image is not invariant under its map".into())
        })?;
        for (i, x) in c.into_iter().enumerate() {
            r[(i, j)] = x;
        }
    }
    Ok((l, r))
}

/// Relations of `⊕ Z/d_i` as a lattice in `Z^k`.
fn relation_lattice(orders: &[BigInt]) -> Sublattice {
    hnf(&IntMatrix::diagonal(orders))
}

/// `(L + R)/R ⊂ Z^k/R` in canonical form, for `R ⊂ L` of full rank.
fn subquotient(l: &Sublattice, r: &Sublattice) -> FgAbGroup {
    let k = l.rank();
    let rb = r.basis();
    let mut coords = IntMatrix::zeros(k, rb.cols());
    for j in 0..rb.cols() {
        let c = l.coordinates(&rb.column(j)).expect("relations lie in the subgroup");
        for (i, x) in c.into_iter().enumerate() {
            coords[(i, j)] = x;
        }
    }
    hnf(&coords).quotient_structure()
}

/// The stable image `f^k(T)` of a finite group `T` under an endomorphism;
/// it is the direct limit of `(T, f)`, on which `f` acts bijectively.
///
/// `f` is given on the canonical generators of `T`: column `j` is the image
/// of the generator of order `T.torsion()[j]`.
pub fn eventual_image(t: &FgAbGroup, f: &IntMatrix) -> Result<FgAbGroup> {
    if !t.is_finite() {
        return Err(Error::Parameter("eventual_image needs a finite group".into()));
    }
    let k = t.torsion().len();
    if f.rows() != k || f.cols() != k {
        return Err(Error::Shape(format!(
            "map is {}x{}, group has {k} generators",
            f.rows(),
            f.cols()
        )));
    }
    if k == 0 {
        return Ok(FgAbGroup::trivial());
    }
    let rel = relation_lattice(t.torsion());
    if !rel.contains_lattice(&rel.map(f)) {
        return Err(Error::Invariant("map does not preserve the group relations".into()));
    }
    let mut cur = Sublattice::full(k);
    loop {
        let next = cur.map(f).sum(&rel)?;
        if next == cur {
            break;
        }
        cur = next;
    }
    Ok(subquotient(&cur, &rel))
}

/// `Z^N / im D` as `⊕ Z/d_i ⊕ Z^r`, with an endomorphism `C` of `Z^N`
/// preserving `im D` pushed to the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelModule {
    pub torsion: FgAbGroup,
    /// Induced map on the torsion generators, entries reduced mod the row order.
    pub torsion_map: IntMatrix,
    pub free_rank: usize,
    /// Induced map on the free quotient.
    pub free_map: IntMatrix,
}

pub fn cokernel_module(d: &IntMatrix, c: &IntMatrix) -> Result<CokernelModule> {
    let n = d.rows();
    if !c.is_square() || c.rows() != n {
        return Err(Error::Shape("induced map must act on the target of D".into()));
    }
    let s = snf(d);
    let u = &s.u;
    let u_inv = unimodular_inverse(u)?;
    let t = u.mul(c).mul(&u_inv);
    let diag: Vec<BigInt> = (0..n)
        .map(|i| if i < d.cols() { s.d[(i, i)].clone() } else { BigInt::zero() })
        .collect();
    let tors: Vec<usize> = (0..n).filter(|&i| diag[i].abs() > BigInt::one()).collect();
    let free: Vec<usize> = (0..n).filter(|&i| diag[i].is_zero()).collect();
    // well defined: C maps relations into relations
    for j in 0..n {
        if diag[j].is_zero() || diag[j].is_one() {
            continue;
        }
        for i in 0..n {
            let x = &t[(i, j)] * &diag[j];
            let ok = if diag[i].is_zero() {
                x.is_zero()
            } else {
                x.mod_floor(&diag[i]).is_zero()
            };
            if !ok {
                return Err(Error::Invariant("induced map does not preserve the image of D".into()));
            }
        }
    }
    let mut tm = t.select(&tors, &tors);
    for (a, &i) in tors.iter().enumerate() {
        for b in 0..tors.len() {
            tm[(a, b)] = tm[(a, b)].mod_floor(&diag[i]);
        }
    }
    let torsion_orders: Vec<BigInt> = tors.iter().map(|&i| diag[i].abs()).collect();
    let torsion = FgAbGroup::from_orders(torsion_orders.clone(), 0);
    // generators must line up with the canonical factors
    if torsion.torsion() != torsion_orders.as_slice() {
        return Err(Error::Invariant("Smith diagonal is not in canonical order".into()));
    }
    Ok(CokernelModule {
        torsion,
        torsion_map: tm,
        free_rank: free.len(),
        free_map: t.select(&free, &free),
    })
}

impl CokernelModule {
    /// `(lim→ torsion, lim→ free quotient)`.
    pub fn colimit(&self) -> Result<(FgAbGroup, ColimitGroup)> {
        let t = eventual_image(&self.torsion, &self.torsion_map)?;
        let f = ColimitGroup::of_endomorphism(&self.free_map)?;
        Ok((t, f))
    }
}

/// `Ker D` with the restriction of `C`, as a direct limit.
pub fn kernel_colimit(d: &IntMatrix, c: &IntMatrix) -> Result<ColimitGroup> {
    let k = crate::lattice::kernel(d);
    let r = k.rank();
    if r == 0 {
        return Ok(ColimitGroup::trivial());
    }
    let image = c.mul(k.basis());
    let mut m = IntMatrix::zeros(r, r);
    for j in 0..r {
        let v = k
            .coordinates(&image.column(j))
            .ok_or_else(|| Error::Invariant("kernel is not invariant under the induced map".into()))?;
        for (i, x) in v.into_iter().enumerate() {
            m[(i, j)] = x;
        }
    }
    ColimitGroup::of_endomorphism(&m)
}

fn unimodular_inverse(u: &IntMatrix) -> Result<IntMatrix> {
    let det = u.det();
    if !det.abs().is_one() {
        return Err(Error::Invariant("Smith transform is not unimodular".into()));
    }
    Ok(u.adjugate().scale(&det))
}

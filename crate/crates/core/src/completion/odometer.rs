use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::endo::{require_independent, LatticeEndo};
use crate::error::{Error, Result};
use crate::lattice::{solve_integer, IntMatrix, Sublattice};

/// Canonical coset representatives of `Z^n / φZ^n`.
///
/// The representatives are the reduced residues `0 ≤ x_i < H_ii` modulo the
/// triangular Hermite basis `H` of `φZ^n`, listed lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitSystem {
    endo: LatticeEndo,
    image: Sublattice,
    digits: Vec<Vec<BigInt>>,
    adjugate: IntMatrix,
}

/// Largest digit alphabet a [`DigitSystem`] will enumerate.
pub const MAX_DIGITS: u64 = 1 << 20;

pub fn digit_reps(e: &LatticeEndo) -> Result<DigitSystem> {
    DigitSystem::new(e.clone())
}

impl DigitSystem {
    pub fn new(endo: LatticeEndo) -> Result<Self> {
        let count = endo
            .index()
            .to_u64()
            .filter(|&c| c <= MAX_DIGITS)
            .ok_or_else(|| Error::Cap(format!("{} digits exceed the cap {MAX_DIGITS}", endo.index())))?;
        let image = endo.image();
        let radix = image.pivot_values();
        let mut digits = Vec::with_capacity(count as usize);
        let mut cur = vec![BigInt::zero(); radix.len()];
        'outer: loop {
            digits.push(cur.clone());
            for i in (0..cur.len()).rev() {
                cur[i] += 1;
                if cur[i] < radix[i] {
                    continue 'outer;
                }
                cur[i] = BigInt::zero();
            }
            break;
        }
        debug_assert_eq!(digits.len() as u64, count);
        let adjugate = endo.matrix().adjugate();
        Ok(DigitSystem {
            endo,
            image,
            digits,
            adjugate,
        })
    }

    pub fn endo(&self) -> &LatticeEndo {
        &self.endo
    }

    pub fn rank(&self) -> usize {
        self.endo.rank()
    }

    pub fn digits(&self) -> &[Vec<BigInt>] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Index of the digit congruent to `v` modulo `φZ^n`.
    pub fn digit_index(&self, v: &[BigInt]) -> usize {
        let r = self.image.reduce(v);
        let radix = self.image.pivot_values();
        let mut idx = 0usize;
        for (x, m) in r.iter().zip(&radix) {
            idx = idx * m.to_usize().expect("radix fits") + x.to_usize().expect("reduced residue");
        }
        idx
    }

    /// `φ^{-1}(v)` when `v ∈ φZ^n`.
    fn preimage(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let det = self.endo.det();
        self.adjugate
            .mul_vec(v)
            .into_iter()
            .map(|x| {
                let (q, r) = x.div_rem(det);
                r.is_zero().then_some(q)
            })
            .collect()
    }
}

/// A point of the completion `G_φ = lim← G/φ^k G`, known to depth `k`:
/// the class of `Σ_{i<k} φ^i(digit d_i)` modulo `φ^k Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfiniteElement {
    system: Arc<DigitSystem>,
    digits: Vec<usize>,
}

impl ProfiniteElement {
    /// Expands `v` to `depth` digits by repeated division with remainder:
    /// `d_i ≡ v_i mod φ`, `v_{i+1} = φ^{-1}(v_i − d_i)`.
    pub fn from_vector(system: &Arc<DigitSystem>, v: &[BigInt], depth: usize) -> Result<Self> {
        if v.len() != system.rank() {
            return Err(Error::Shape(format!(
                "vector has length {}, system has rank {}",
                v.len(),
                system.rank()
            )));
        }
        let mut cur = v.to_vec();
        let mut digits = Vec::with_capacity(depth);
        for _ in 0..depth {
            let d = system.digit_index(&cur);
            digits.push(d);
            let rest: Vec<BigInt> = cur.iter().zip(&system.digits[d]).map(|(a, b)| a - b).collect();
            cur = system
                .preimage(&rest)
                .ok_or_else(|| Error::Invariant("digit residue not in the image".into()))?;
        }
        Ok(ProfiniteElement {
            system: Arc::clone(system),
            digits,
        })
    }

    /// Depth-`k` element represented by `v`, in a fresh digit system for `e`.
    pub fn of(e: &LatticeEndo, v: &[BigInt], depth: usize) -> Result<Self> {
        Self::from_vector(&Arc::new(DigitSystem::new(e.clone())?), v, depth)
    }

    pub fn zero(system: &Arc<DigitSystem>, depth: usize) -> Self {
        ProfiniteElement {
            system: Arc::clone(system),
            digits: vec![0; depth],
        }
    }

    pub fn from_digits(system: &Arc<DigitSystem>, digits: Vec<usize>) -> Result<Self> {
        if let Some(&d) = digits.iter().find(|&&d| d >= system.len()) {
            return Err(Error::Parameter(format!("digit index {d} out of range")));
        }
        Ok(ProfiniteElement {
            system: Arc::clone(system),
            digits,
        })
    }

    pub fn system(&self) -> &Arc<DigitSystem> {
        &self.system
    }

    pub fn depth(&self) -> usize {
        self.digits.len()
    }

    pub fn digit_indices(&self) -> &[usize] {
        &self.digits
    }

    /// `Σ φ^i(d_i)`, the canonical integer representative.
    pub fn value(&self) -> Vec<BigInt> {
        let m = self.system.endo.matrix();
        let mut acc = vec![BigInt::zero(); self.system.rank()];
        for &d in self.digits.iter().rev() {
            acc = m.mul_vec(&acc);
            for (a, x) in acc.iter_mut().zip(&self.system.digits[d]) {
                *a += x;
            }
        }
        acc
    }

    /// Odometer addition of `g ∈ Z^n`.
    pub fn translate(&self, g: &[BigInt]) -> Result<Self> {
        if g.len() != self.system.rank() {
            return Err(Error::Shape("translation vector has the wrong length".into()));
        }
        let v: Vec<BigInt> = self.value().iter().zip(g).map(|(a, b)| a + b).collect();
        Self::from_vector(&self.system, &v, self.depth())
    }

    /// The map induced by φ: digits move up one place, digit 0 enters at
    /// the bottom and the top digit is dropped.
    pub fn phi_shift(&self) -> Self {
        let mut digits = Vec::with_capacity(self.depth());
        if self.depth() > 0 {
            digits.push(0);
            digits.extend_from_slice(&self.digits[..self.depth() - 1]);
        }
        ProfiniteElement {
            system: Arc::clone(&self.system),
            digits,
        }
    }

    /// Image in `G/φ^k G` for `k ≤ depth`.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        if k > self.depth() {
            return Err(Error::Parameter(format!("cannot truncate depth {} to {k}", self.depth())));
        }
        Ok(ProfiniteElement {
            system: Arc::clone(&self.system),
            digits: self.digits[..k].to_vec(),
        })
    }
}

/// Every element of `G/φ^k G`, in digit order.
pub fn all_elements(system: &Arc<DigitSystem>, depth: usize) -> Vec<ProfiniteElement> {
    let base = system.len();
    let total = base.pow(depth as u32);
    (0..total)
        .map(|mut i| {
            let digits = (0..depth)
                .map(|_| {
                    let d = i % base;
                    i /= base;
                    d
                })
                .collect();
            ProfiniteElement {
                system: Arc::clone(system),
                digits,
            }
        })
        .collect()
}

/// The product decomposition `G_ψφ ≅ G_φ × G_ψ` for an independent pair.
#[derive(Clone, Debug)]
pub struct CrtSystem {
    pub phi: Arc<DigitSystem>,
    pub psi: Arc<DigitSystem>,
    pub product: Arc<DigitSystem>,
}

impl CrtSystem {
    pub fn new(phi: &LatticeEndo, psi: &LatticeEndo) -> Result<Self> {
        require_independent(phi, psi)?;
        Ok(CrtSystem {
            phi: Arc::new(DigitSystem::new(phi.clone())?),
            psi: Arc::new(DigitSystem::new(psi.clone())?),
            product: Arc::new(DigitSystem::new(psi.compose(phi)?)?),
        })
    }

    /// Reduces `x ∈ G/(ψφ)^k` to its images in `G/φ^k` and `G/ψ^k`.
    pub fn decompose(&self, x: &ProfiniteElement) -> Result<(ProfiniteElement, ProfiniteElement)> {
        if x.system.endo != self.product.endo {
            return Err(Error::Parameter("element is not over the product system".into()));
        }
        let v = x.value();
        let k = x.depth();
        Ok((
            ProfiniteElement::from_vector(&self.phi, &v, k)?,
            ProfiniteElement::from_vector(&self.psi, &v, k)?,
        ))
    }

    /// The unique `x` with the given components: solve
    /// `a + φ^k s = b + ψ^k t` over the integers.
    pub fn compose(&self, a: &ProfiniteElement, b: &ProfiniteElement) -> Result<ProfiniteElement> {
        if a.depth() != b.depth() {
            return Err(Error::Parameter("components have different depths".into()));
        }
        let k = a.depth() as u32;
        let fk = self.phi.endo.matrix().pow(k);
        let gk = self.psi.endo.matrix().pow(k);
        let (va, vb) = (a.value(), b.value());
        let rhs: Vec<BigInt> = vb.iter().zip(&va).map(|(x, y)| x - y).collect();
        let sys = fk.hstack(&gk.neg());
        let st = solve_integer(&sys, &rhs)
            .ok_or_else(|| Error::Invariant("no simultaneous solution despite independence".into()))?;
        let s = &st[..self.phi.rank()];
        let v: Vec<BigInt> = va.iter().zip(fk.mul_vec(s)).map(|(x, y)| x + y).collect();
        ProfiniteElement::from_vector(&self.product, &v, a.depth())
    }
}

pub fn crt_decompose(
    x: &ProfiniteElement,
    phi: &LatticeEndo,
    psi: &LatticeEndo,
) -> Result<(ProfiniteElement, ProfiniteElement)> {
    let crt = CrtSystem::new(phi, psi)?;
    if x.system.endo != *crt.product.endo() {
        return Err(Error::Parameter("element is not over the ψφ system".into()));
    }
    let x = ProfiniteElement::from_digits(&crt.product, x.digit_indices().to_vec())?;
    crt.decompose(&x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ivec;

    fn sys(rows: &[&[i64]]) -> Arc<DigitSystem> {
        Arc::new(digit_reps(&LatticeEndo::from_rows(rows).unwrap()).unwrap())
    }

    #[test]
    fn digit_examples() {
        assert_eq!(sys(&[&[2]]).digits(), &[ivec(&[0]), ivec(&[1])]);
        let d = sys(&[&[2, 0], &[0, 3]]);
        let want: Vec<_> = (0..2).flat_map(|a| (0..3).map(move |b| ivec(&[a, b]))).collect();
        assert_eq!(d.digits(), want.as_slice());
        // lower-triangular basis [[1,0],[1,2]] leaves (0,1) as the second residue
        assert_eq!(sys(&[&[1, 1], &[-1, 1]]).digits(), &[ivec(&[0, 0]), ivec(&[0, 1])]);
    }

    #[test]
    fn translate_examples() {
        let s = sys(&[&[2]]);
        let x = ProfiniteElement::from_digits(&s, vec![1, 1, 1]).unwrap();
        assert_eq!(x.translate(&ivec(&[1])).unwrap().digit_indices(), &[0, 0, 0]);
        let z = ProfiniteElement::zero(&s, 3);
        assert_eq!(z.translate(&ivec(&[3])).unwrap().digit_indices(), &[1, 1, 0]);
        assert_eq!(x.translate(&ivec(&[0])).unwrap(), x);
        // negative values wrap around
        assert_eq!(z.translate(&ivec(&[-1])).unwrap().digit_indices(), &[1, 1, 1]);
    }

    #[test]
    fn phi_shift_examples() {
        let s = sys(&[&[2]]);
        let one = ProfiniteElement::from_vector(&s, &ivec(&[1]), 3).unwrap();
        let two = one.phi_shift();
        assert_eq!(two.digit_indices(), &[0, 1, 0]);
        assert_eq!(two.value(), ivec(&[2]));
        assert_eq!(ProfiniteElement::zero(&s, 3).phi_shift(), ProfiniteElement::zero(&s, 3));
        let s = sys(&[&[2, 0], &[0, 3]]);
        let x = ProfiniteElement::from_vector(&s, &ivec(&[1, 1]), 2).unwrap();
        assert_eq!(x.phi_shift(), ProfiniteElement::from_vector(&s, &ivec(&[2, 3]), 2).unwrap());
    }

    #[test]
    fn crt_examples() {
        let (f, g) = (LatticeEndo::from_rows(&[&[2]]).unwrap(), LatticeEndo::from_rows(&[&[3]]).unwrap());
        let crt = CrtSystem::new(&f, &g).unwrap();
        let x = ProfiniteElement::from_vector(&crt.product, &ivec(&[5]), 1).unwrap();
        let (a, b) = crt.decompose(&x).unwrap();
        assert_eq!((a.value(), b.value()), (ivec(&[1]), ivec(&[2])));
        let x = ProfiniteElement::from_vector(&crt.product, &ivec(&[17]), 2).unwrap();
        let (a, b) = crt.decompose(&x).unwrap();
        assert_eq!((a.value(), b.value()), (ivec(&[1]), ivec(&[8])));
        assert_eq!(crt.compose(&a, &b).unwrap(), x);
        let z = ProfiniteElement::zero(&crt.product, 2);
        let (a, b) = crt.decompose(&z).unwrap();
        assert!(a.value().iter().chain(&b.value()).all(Zero::is_zero));
        assert!(CrtSystem::new(&f, &f).is_err());
    }
}

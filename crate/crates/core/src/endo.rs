//! Endomorphisms of `Z^n` (duals of finite-kernel endomorphisms of `T^n`),
//! the standing hypotheses they must satisfy, and independence of pairs.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{FgAbGroup, IntMatrix, Sublattice};
use crate::poly::{charpoly, irreducible_factors, IntPoly};

/// An injective endomorphism of `Z^n`, given by a nonsingular integer matrix.
///
/// Serialized as its matrix; deserialization re-validates.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "IntMatrix", try_from = "IntMatrix")]
pub struct LatticeEndo {
    matrix: IntMatrix,
    det: BigInt,
}

impl LatticeEndo {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Shape(format!(
                "endomorphism matrix must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.rows() == 0 {
            return Err(Error::Shape("rank must be at least 1".into()));
        }
        let det = matrix.det();
        if det.is_zero() {
            return Err(Error::NotInjective);
        }
        Ok(LatticeEndo { matrix, det })
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(crate::lattice::mat(rows))
    }

    pub fn scalar(n: usize, k: i64) -> Result<Self> {
        Self::new(IntMatrix::scalar(n, k))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    /// `N(φ) = |G/φG| = |det φ|`.
    pub fn index(&self) -> BigInt {
        self.det.abs()
    }

    /// Sign of the determinant, ±1.
    pub fn sign(&self) -> i32 {
        if self.det.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &LatticeEndo) -> Result<LatticeEndo> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        Ok(LatticeEndo {
            matrix: self.matrix.mul(&other.matrix),
            det: &self.det * &other.det,
        })
    }

    pub fn power(&self, k: u32) -> LatticeEndo {
        LatticeEndo {
            matrix: self.matrix.pow(k),
            det: self.det.pow(k),
        }
    }

    pub fn commutes_with(&self, other: &LatticeEndo) -> bool {
        self.rank() == other.rank()
            && self.matrix.mul(&other.matrix) == other.matrix.mul(&self.matrix)
    }

    /// The image `φ(Z^n)`.
    pub fn image(&self) -> Sublattice {
        Sublattice::image_of(&self.matrix)
    }

    /// `φ^{-1}(v)` when `v ∈ φ(Z^n)`.
    pub fn preimage(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let w = self.matrix.adjugate().mul_vec(v);
        w.iter()
            .map(|x| {
                let (q, r) = x.div_rem(&self.det);
                r.is_zero().then_some(q)
            })
            .collect()
    }

    pub fn charpoly(&self) -> IntPoly {
        charpoly(&self.matrix)
    }
}

impl From<LatticeEndo> for IntMatrix {
    fn from(e: LatticeEndo) -> Self {
        e.matrix
    }
}

impl TryFrom<IntMatrix> for LatticeEndo {
    type Error = Error;

    fn try_from(m: IntMatrix) -> Result<Self> {
        LatticeEndo::new(m)
    }
}

impl fmt::Debug for LatticeEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticeEndo({})", self.matrix)
    }
}

impl fmt::Display for LatticeEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

/// The supported dual groups `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupFamily {
    /// `G = Z^n`, endomorphisms given by matrices.
    Lattice { n: usize },
    /// `G = ⊕ Z/n`, dual of the one-sided shift on `∏ Z/n`.
    Shift { n: u64 },
    /// `G = Z[1/p]` with multiplication by `q`.
    Solenoid { p: u64, q: u64 },
}

impl GroupFamily {
    pub fn validate(&self) -> Result<()> {
        match *self {
            GroupFamily::Lattice { n } if n == 0 => {
                Err(Error::Parameter("lattice rank must be at least 1".into()))
            }
            GroupFamily::Shift { n } if n < 2 => {
                Err(Error::Parameter(format!("shift needs n >= 2, got {n}")))
            }
            GroupFamily::Solenoid { p, q } => {
                if p < 2 || q < 2 {
                    Err(Error::Parameter(format!("solenoid needs p, q >= 2, got ({p}, {q})")))
                } else if p.gcd(&q) != 1 {
                    Err(Error::Parameter(format!("solenoid needs coprime p, q, got ({p}, {q})")))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Parses `shift:N`, `solenoid:P,Q` or `lattice:N`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("family '{s}': expected shift:N, solenoid:P,Q or lattice:N"));
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
        let fam = match kind.trim() {
            "shift" => GroupFamily::Shift { n: num(args)? },
            "solenoid" => {
                let (p, q) = args.split_once(',').ok_or_else(bad)?;
                GroupFamily::Solenoid {
                    p: num(p)?,
                    q: num(q)?,
                }
            }
            "lattice" => GroupFamily::Lattice {
                n: num(args)? as usize,
            },
            _ => return Err(bad()),
        };
        fam.validate()?;
        Ok(fam)
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFamily::Lattice { n } => write!(f, "lattice:{n}"),
            GroupFamily::Shift { n } => write!(f, "shift:{n}"),
            GroupFamily::Solenoid { p, q } => write!(f, "solenoid:{p},{q}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardEndoReport {
    pub injective: bool,
    pub cokernel: FgAbGroup,
    #[serde(with = "crate::serde_int::bigint")]
    pub index: BigInt,
    pub charpoly: IntPoly,
    pub exact: bool,
    /// A monic irreducible factor of the characteristic polynomial with
    /// constant term ±1; present iff `exact` is false.
    pub exactness_witness: Option<IntPoly>,
}

/// Checks injectivity (by construction), the cokernel `G/φG`, its order
/// `N(φ)`, and exactness `∩ φ^k Z^n = 0`.
///
/// `∩ φ^k Z^n` is the largest φ-invariant sublattice on which φ restricts to
/// an automorphism; it is nonzero iff the characteristic polynomial has a
/// monic irreducible factor with constant term ±1.
pub fn validate_standard(e: &LatticeEndo) -> StandardEndoReport {
    let cp = e.charpoly();
    let witness = irreducible_factors(&cp)
        .into_iter()
        .find(|g| g.constant().abs() == BigInt::from(1));
    StandardEndoReport {
        injective: true,
        cokernel: e.image().quotient_structure(),
        index: e.index(),
        charpoly: cp,
        exact: witness.is_none(),
        exactness_witness: witness,
    }
}

/// Fails with the witness factor unless `e` is exact.
pub fn require_exact(e: &LatticeEndo) -> Result<StandardEndoReport> {
    let r = validate_standard(e);
    match &r.exactness_witness {
        Some(w) => Err(Error::NotExact(w.to_string())),
        None => Ok(r),
    }
}

pub fn index(e: &LatticeEndo) -> BigInt {
    e.index()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub commute: bool,
    /// `φG + ψG = G`
    pub cond_a: bool,
    /// `|φG / (φG ∩ ψG)| = |G/ψG|`
    pub cond_b: bool,
    /// `φG ∩ ψG = φψG`
    pub cond_c: bool,
    pub verdict: bool,
}

/// Evaluates the three equivalent forms of independence separately.
pub fn independent(f: &LatticeEndo, g: &LatticeEndo) -> Result<IndependenceReport> {
    if f.rank() != g.rank() {
        return Err(Error::RankMismatch(f.rank(), g.rank()));
    }
    let n = f.rank();
    let fg = f.image();
    let gg = g.image();
    let sum = fg.sum(&gg)?;
    let meet = fg.intersect(&gg)?;
    let cond_a = sum == Sublattice::full(n);
    let meet_index = meet.index().expect("intersection of full-rank lattices is full rank");
    let cond_b = &meet_index / f.index() == g.index() && (&meet_index % f.index()).is_zero();
    let cond_c = meet == f.compose(g)?.image();
    let commute = f.commutes_with(g);
    Ok(IndependenceReport {
        commute,
        cond_a,
        cond_b,
        cond_c,
        verdict: commute && cond_a,
    })
}

/// Fails unless `f`, `g` commute and are independent.
pub fn require_independent(f: &LatticeEndo, g: &LatticeEndo) -> Result<IndependenceReport> {
    let r = independent(f, g)?;
    if !r.commute {
        return Err(Error::NotCommuting);
    }
    if !r.cond_a {
        return Err(Error::NotIndependent("φG + ψG ≠ G".into()));
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrtReport {
    pub ok: bool,
    /// `G / ψφ(G)`
    pub lhs: FgAbGroup,
    /// `G/ψ(G) ⊕ G/φ(G)`
    pub rhs: FgAbGroup,
}

/// Compares `G/ψφG` with `G/ψG ⊕ G/φG` by invariant factors.
pub fn crt_check(f: &LatticeEndo, g: &LatticeEndo) -> Result<CrtReport> {
    require_independent(f, g)?;
    let lhs = g.compose(f)?.image().quotient_structure();
    let rhs = g
        .image()
        .quotient_structure()
        .direct_sum(&f.image().quotient_structure());
    Ok(CrtReport {
        ok: lhs == rhs,
        lhs,
        rhs,
    })
}

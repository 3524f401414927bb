use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::endo::{require_independent, LatticeEndo};
use crate::error::{Error, Result};
use crate::lattice::IntMatrix;

use super::odometer::DigitSystem;

/// A rational point of `T^n = R^n/Z^n`, coordinates reduced into `[0, 1)`.
///
/// Serialized as a list of fraction strings such as `"1/3"`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct RationalTorusPoint {
    coords: Vec<BigRational>,
}

fn frac_mod1(x: &BigRational) -> BigRational {
    x - x.floor()
}

impl RationalTorusPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RationalTorusPoint {
            coords: coords.iter().map(frac_mod1).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        RationalTorusPoint {
            coords: vec![BigRational::zero(); n],
        }
    }

    /// From `(numerator, denominator)` pairs.
    pub fn from_ratios(r: &[(i64, i64)]) -> Result<Self> {
        if r.iter().any(|&(_, d)| d == 0) {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Self::new(
            r.iter()
                .map(|&(a, b)| BigRational::new(a.into(), b.into()))
                .collect(),
        ))
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &RationalTorusPoint) -> Self {
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalTorusPoint) -> Self {
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    /// `M x mod 1`.
    pub fn transform(&self, m: &IntMatrix) -> Self {
        let coords = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .zip(&self.coords)
                    .fold(BigRational::zero(), |acc, (a, x)| acc + x * BigRational::from_integer(a.clone()))
            })
            .collect();
        Self::new(coords)
    }
}

impl fmt::Display for RationalTorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        if parts.len() == 1 {
            f.write_str(&parts[0])
        } else {
            write!(f, "({})", parts.join(", "))
        }
    }
}

impl FromStr for RationalTorusPoint {
    type Err = Error;

    /// Accepts `1/3`, `(1/2, 0)` or `[1/2, 0]`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let coords = t
            .split(',')
            .map(|c| {
                let c = c.trim().trim_matches('"');
                BigRational::from_str(c).map_err(|_| Error::Parse(format!("bad coordinate '{c}' in '{s}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coords))
    }
}

impl From<RationalTorusPoint> for Vec<String> {
    fn from(p: RationalTorusPoint) -> Self {
        p.coords.iter().map(ToString::to_string).collect()
    }
}

impl TryFrom<Vec<String>> for RationalTorusPoint {
    type Error = Error;

    fn try_from(v: Vec<String>) -> Result<Self> {
        v.join(",").parse()
    }
}

fn check_rank(e: &LatticeEndo, x: &RationalTorusPoint) -> Result<()> {
    if e.rank() != x.rank() {
        return Err(Error::RankMismatch(e.rank(), x.rank()));
    }
    Ok(())
}

/// The dual endomorphism `α` of `T^n`: `x ↦ Aᵀ x mod 1`.
pub fn apply_alpha(e: &LatticeEndo, x: &RationalTorusPoint) -> Result<RationalTorusPoint> {
    check_rank(e, x)?;
    Ok(x.transform(&e.matrix().transpose()))
}

/// `Ker α^k`, sorted; it has `|det|^k` points.
pub fn kernel_points(e: &LatticeEndo, k: usize) -> Result<Vec<RationalTorusPoint>> {
    let m = e.matrix().transpose().pow(k as u32);
    let mk = LatticeEndo::new(m.clone())?;
    // y ↦ M^{-1} y is a bijection Z^n/MZ^n → Ker α^k
    let digits = DigitSystem::new(mk.clone())?;
    let det = mk.det().clone();
    let adj = m.adjugate();
    let mut pts: Vec<RationalTorusPoint> = digits
        .digits()
        .iter()
        .map(|y| {
            let w = adj.mul_vec(y);
            RationalTorusPoint::new(w.into_iter().map(|a| BigRational::new(a, det.clone())).collect())
        })
        .collect();
    pts.sort();
    Ok(pts)
}

/// Outcome of a bounded orbit search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum OrbitVerdict {
    /// `α^n(y) = α^m(x) = point`.
    Found { n: usize, m: usize, point: RationalTorusPoint },
    /// No `n, m ≤ depth` works; says nothing about larger exponents.
    NotFoundWithin { depth: usize },
}

impl OrbitVerdict {
    pub fn found(&self) -> bool {
        matches!(self, OrbitVerdict::Found { .. })
    }
}

/// Searches `0 ≤ n, m ≤ depth` for `α^n(y) = α^m(x)`; the witness minimizes
/// `n + m`, then `n`.
pub fn same_orbit(
    e: &LatticeEndo,
    x: &RationalTorusPoint,
    y: &RationalTorusPoint,
    depth: usize,
) -> Result<OrbitVerdict> {
    check_rank(e, x)?;
    check_rank(e, y)?;
    let xs = orbit_segment(e, x, depth);
    let ys = orbit_segment(e, y, depth);
    for s in 0..=2 * depth {
        for n in s.saturating_sub(depth)..=s.min(depth) {
            let m = s - n;
            if ys[n] == xs[m] {
                return Ok(OrbitVerdict::Found {
                    n,
                    m,
                    point: ys[n].clone(),
                });
            }
        }
    }
    Ok(OrbitVerdict::NotFoundWithin { depth })
}

/// `x, α(x), …, α^depth(x)`.
pub fn orbit_segment(e: &LatticeEndo, x: &RationalTorusPoint, depth: usize) -> Vec<RationalTorusPoint> {
    let a = e.matrix().transpose();
    let mut out = Vec::with_capacity(depth + 1);
    let mut cur = x.clone();
    for _ in 0..=depth {
        let next = cur.transform(&a);
        out.push(cur);
        cur = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitProductReport {
    pub depth: usize,
    /// Depth used for the kernels `Ker α^d`, `Ker β^d`.
    pub kernel_depth: usize,
    pub kernel_intersection: Vec<RationalTorusPoint>,
    pub kernel_intersection_trivial: bool,
    pub pairs_checked: usize,
    /// Max over sampled `(y, z)` of `|(y + Ker α^d) ∩ (z + Ker β^d)|`.
    pub max_coset_intersection: usize,
    /// `|{α^i x} ∩ {β^j x}|` over `i, j ≤ depth`, reported for reference:
    /// periodic points make this exceed 1.
    pub orbit_segment_intersection: usize,
    pub verdict: bool,
}

/// Largest kernel the product check enumerates.
const KERNEL_POINT_CAP: u64 = 4096;

fn kernel_depth(f: &LatticeEndo, g: &LatticeEndo, depth: usize) -> usize {
    let fits = |e: &LatticeEndo, d: usize| {
        e.index().pow(d as u32).to_u64().is_some_and(|c| c <= KERNEL_POINT_CAP)
    };
    (0..=depth).rev().find(|&d| fits(f, d) && fits(g, d)).unwrap_or(0)
}

/// Checks the product structure of the joint orbit partition near `x`:
/// pieces `y + Ker α^d` of α-orbits meet pieces `z + Ker β^d` of β-orbits
/// in at most one point, because `Ker α^d ∩ Ker β^d = {0}`.
pub fn orbit_product_check(
    f: &LatticeEndo,
    g: &LatticeEndo,
    x: &RationalTorusPoint,
    depth: usize,
) -> Result<OrbitProductReport> {
    check_rank(f, x)?;
    require_independent(f, g)?;
    let d = kernel_depth(f, g, depth);
    let kf = kernel_points(f, d)?;
    let kg: BTreeSet<RationalTorusPoint> = kernel_points(g, d)?.into_iter().collect();
    let kernel_intersection: Vec<RationalTorusPoint> = kf.iter().filter(|p| kg.contains(*p)).cloned().collect();
    let kernel_intersection_trivial = kernel_intersection.len() == 1 && kernel_intersection[0].is_zero();

    let af = orbit_segment(f, x, depth);
    let bg = orbit_segment(g, x, depth);
    let mut max_coset = 0;
    let mut pairs = 0;
    for y in &af {
        for z in &bg {
            pairs += 1;
            let count = kf.iter().filter(|k| kg.contains(&y.add(k).sub(z))).count();
            max_coset = max_coset.max(count);
        }
    }
    let aset: BTreeSet<&RationalTorusPoint> = af.iter().collect();
    let seg = bg.iter().collect::<BTreeSet<_>>().intersection(&aset).count();
    Ok(OrbitProductReport {
        depth,
        kernel_depth: d,
        kernel_intersection,
        kernel_intersection_trivial,
        pairs_checked: pairs,
        max_coset_intersection: max_coset,
        orbit_segment_intersection: seg,
        verdict: kernel_intersection_trivial && max_coset <= 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> RationalTorusPoint {
        s.parse().unwrap()
    }

    fn e(rows: &[&[i64]]) -> LatticeEndo {
        LatticeEndo::from_rows(rows).unwrap()
    }

    #[test]
    fn alpha_examples() {
        let d = e(&[&[2]]);
        assert_eq!(apply_alpha(&d, &pt("1/3")).unwrap(), pt("2/3"));
        assert_eq!(apply_alpha(&d, &pt("2/3")).unwrap(), pt("1/3"));
        assert_eq!(apply_alpha(&e(&[&[1, 1], &[-1, 1]]), &pt("(1/2, 0)")).unwrap(), pt("(1/2, 1/2)"));
        assert_eq!(pt("(-1/3, 5/2)"), pt("(2/3, 1/2)"));
    }

    #[test]
    fn kernel_examples() {
        let d = e(&[&[2]]);
        let want: Vec<_> = ["0", "1/4", "1/2", "3/4"].iter().map(|s| pt(s)).collect();
        assert_eq!(kernel_points(&d, 2).unwrap(), want);
        assert_eq!(kernel_points(&e(&[&[3, 1], &[1, 2]]), 0).unwrap(), vec![RationalTorusPoint::zero(2)]);
        let k = kernel_points(&e(&[&[2, 0], &[0, 3]]), 1).unwrap();
        let mut want: Vec<_> = (0..2)
            .flat_map(|i| (0..3).map(move |j| RationalTorusPoint::from_ratios(&[(i, 2), (j, 3)]).unwrap()))
            .collect();
        want.sort();
        assert_eq!(k, want);
    }

    #[test]
    fn orbit_examples() {
        let d = e(&[&[2]]);
        let v = same_orbit(&d, &pt("1/3"), &pt("5/12"), 4).unwrap();
        assert_eq!(v, OrbitVerdict::Found { n: 2, m: 1, point: pt("2/3") });
        assert_eq!(
            same_orbit(&d, &pt("1/3"), &pt("1/5"), 6).unwrap(),
            OrbitVerdict::NotFoundWithin { depth: 6 }
        );
        assert_eq!(
            same_orbit(&d, &pt("3/7"), &pt("3/7"), 3).unwrap(),
            OrbitVerdict::Found { n: 0, m: 0, point: pt("3/7") }
        );
    }

    #[test]
    fn product_examples() {
        let (two, three) = (e(&[&[2]]), e(&[&[3]]));
        let r = orbit_product_check(&two, &three, &pt("1/5"), 3).unwrap();
        assert_eq!(r.kernel_intersection, vec![pt("0")]);
        assert!(r.verdict && r.max_coset_intersection <= 1);
        // 1/5 is periodic under both maps
        assert_eq!(r.orbit_segment_intersection, 4);
        assert!(orbit_product_check(&two, &two, &pt("1/5"), 3).is_err());
    }
}

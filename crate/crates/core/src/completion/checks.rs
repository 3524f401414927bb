use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::odometer::{all_elements, CrtSystem, DigitSystem};
use super::torus::kernel_points;
use crate::endo::LatticeEndo;
use crate::error::{Error, Result};
use crate::harness::RelationReport;

/// Largest `|G/φ^k G|` enumerated by the exhaustive checks.
pub const ELEMENT_CAP: u64 = 1 << 16;

fn count_at(e: &LatticeEndo, depth: usize) -> Result<u64> {
    e.index()
        .pow(depth as u32)
        .to_u64()
        .filter(|&c| c <= ELEMENT_CAP)
        .ok_or_else(|| Error::Cap(format!("|G/phi^{depth} G| exceeds {ELEMENT_CAP}")))
}

fn report(name: &str, compared: usize, bad: usize) -> RelationReport {
    RelationReport::from_counts(name, compared, bad, 1)
}

fn translations(e: &LatticeEndo, sys: &DigitSystem) -> Vec<Vec<BigInt>> {
    let n = e.rank();
    let mut out: Vec<Vec<BigInt>> = sys.digits().to_vec();
    for i in 0..n {
        let mut v = vec![BigInt::zero(); n];
        v[i] = (-1).into();
        out.push(v);
    }
    out
}

fn sum(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Exhaustive odometer checks on `G/φ^k G` for every `k ≤ depth`: the group
/// law of translation, triviality of translation by `φ^k G`, compatibility
/// of truncation with translate and `phi_shift`, covariance
/// `φ(x + g) = φ(x) + φ(g)`, and `|Ker α^k| = |det|^k`.
pub fn odometer_checks(e: &LatticeEndo, depth: usize) -> Result<Vec<RelationReport>> {
    count_at(e, depth + 1)?;
    let sys = Arc::new(DigitSystem::new(e.clone())?);
    let gs = translations(e, &sys);
    let (mut law, mut law_bad) = (0, 0);
    let (mut fix, mut fix_bad) = (0, 0);
    let (mut tr, mut tr_bad) = (0, 0);
    let (mut cov, mut cov_bad) = (0, 0);
    let (mut ker, mut ker_bad) = (0, 0);
    for k in 1..=depth {
        let elems = all_elements(&sys, k);
        let phik = e.power(k as u32);
        for x in &elems {
            for g in &gs {
                let xg = x.translate(g)?;
                for h in &gs {
                    law += 1;
                    law_bad += usize::from(xg.translate(h)? != x.translate(&sum(g, h))?);
                }
                fix += 1;
                fix_bad += usize::from(x.translate(&phik.apply(g))? != *x);
                cov += 1;
                cov_bad += usize::from(xg.phi_shift() != x.phi_shift().translate(&e.apply(g))?);
            }
        }
        for x in &all_elements(&sys, k + 1) {
            let low = x.truncate(k)?;
            tr += 1;
            tr_bad += usize::from(x.phi_shift().truncate(k)? != low.phi_shift());
            for g in &gs {
                tr += 1;
                tr_bad += usize::from(x.translate(g)?.truncate(k)? != low.translate(g)?);
            }
        }
        let pts = kernel_points(e, k)?;
        ker += 1;
        let distinct: BTreeSet<_> = pts.iter().collect();
        let want = e.index().pow(k as u32);
        ker_bad += usize::from(BigInt::from(distinct.len()) != want || distinct.len() != pts.len());
    }
    Ok(vec![
        report("odometer: (x + g) + h = x + (g + h)", law, law_bad),
        report("odometer: x + phi^k(g) = x at depth k", fix, fix_bad),
        report("odometer: truncation commutes with translate and phi_shift", tr, tr_bad),
        report("odometer: phi(x + g) = phi(x) + phi(g)", cov, cov_bad),
        report("completion: |Ker alpha^k| = |det|^k", ker, ker_bad),
    ])
}

/// `G/(ψφ)^k → G/φ^k × G/ψ^k` is a bijection for every `k ≤ depth`, and
/// composing with the inverse gives the identity.
pub fn crt_bijectivity(f: &LatticeEndo, g: &LatticeEndo, depth: usize) -> Result<RelationReport> {
    let crt = CrtSystem::new(f, g)?;
    count_at(crt.product.endo(), depth)?;
    let (mut compared, mut bad) = (0, 0);
    for k in 0..=depth {
        let mut seen = BTreeSet::new();
        for x in all_elements(&crt.product, k) {
            let (a, b) = crt.decompose(&x)?;
            compared += 1;
            let back = crt.compose(&a, &b)?;
            bad += usize::from(back != x);
            seen.insert((a.digit_indices().to_vec(), b.digit_indices().to_vec()));
        }
        let total = crt.phi.len().pow(k as u32) * crt.psi.len().pow(k as u32);
        bad += usize::from(seen.len() != total);
    }
    Ok(report("completion: G_(psi phi) = G_phi x G_psi (CRT bijection)", compared, bad))
}

/// `Ker α^k ∩ Ker β^k = {0}`.
pub fn kernel_intersection_check(f: &LatticeEndo, g: &LatticeEndo, k: usize) -> Result<RelationReport> {
    crate::endo::require_independent(f, g)?;
    let a: BTreeSet<_> = kernel_points(f, k)?.into_iter().collect();
    let b: BTreeSet<_> = kernel_points(g, k)?.into_iter().collect();
    let meet: Vec<_> = a.intersection(&b).collect();
    let ok = meet.len() == 1 && meet[0].is_zero();
    Ok(report(
        &format!("completion: Ker alpha^{k} meets Ker beta^{k} only in 0"),
        a.len() + b.len(),
        usize::from(!ok),
    ))
}

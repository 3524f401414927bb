use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::operators::{build_s, build_u, Image, PartialInjection, Window};
use crate::completion::DigitSystem;
use crate::endo::{independent, require_independent, LatticeEndo};
use crate::error::{Error, Result};

/// Default minimum number of compared points for a conclusive verdict.
pub const DEFAULT_MIN_COMPARED: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub relation: String,
    pub points_compared: usize,
    pub mismatches: usize,
    pub min_compared: usize,
    pub verdict: Verdict,
    /// Set when the relation was only checked on sampled group elements.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl RelationReport {
    fn new(relation: impl Into<String>, compared: usize, mismatches: usize, min: usize) -> Self {
        let verdict = if mismatches > 0 {
            Verdict::Fail
        } else if compared < min {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        };
        RelationReport {
            relation: relation.into(),
            points_compared: compared,
            mismatches,
            min_compared: min,
            verdict,
            note: None,
        }
    }

    /// A report from raw counts, for checks outside the operator window.
    pub fn from_counts(relation: impl Into<String>, compared: usize, mismatches: usize, min: usize) -> Self {
        Self::new(relation, compared, mismatches, min)
    }

    fn sampled(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Merges reports of the same relation over several samples.
    fn merge(relation: impl Into<String>, parts: &[RelationReport], min: usize) -> Self {
        let compared = parts.iter().map(|r| r.points_compared).min().unwrap_or(0);
        let mismatches = parts.iter().map(|r| r.mismatches).sum();
        RelationReport::new(relation, compared, mismatches, min)
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} compared, {} mismatches)",
            self.relation, self.verdict, self.points_compared, self.mismatches
        )?;
        if let Some(n) = &self.note {
            write!(f, " [{n}]")?;
        }
        Ok(())
    }
}

/// Counts `(compared, mismatches)` of `a = b` over the safe region.
fn compare(a: &PartialInjection, b: &PartialInjection) -> (usize, usize) {
    let mut compared = 0;
    let mut bad = 0;
    for x in a.window().points() {
        let (l, r) = (a.apply(&x), b.apply(&x));
        if l == Image::Escaped || r == Image::Escaped {
            continue;
        }
        compared += 1;
        if l != r {
            bad += 1;
        }
    }
    (compared, bad)
}

fn check_eq(name: &str, a: &PartialInjection, b: &PartialInjection, min: usize) -> RelationReport {
    let (c, m) = compare(a, b);
    RelationReport::new(name, c, m, min)
}

/// `Σ_j p_j = 1` for projections `p_j`: at every safe point exactly one
/// term returns `ξ_x` and the others vanish.
fn check_partition(name: &str, terms: &[PartialInjection], w: Window, min: usize) -> RelationReport {
    let mut compared = 0;
    let mut bad = 0;
    'points: for x in w.points() {
        let mut hits = 0;
        let mut ok = true;
        for t in terms {
            match t.apply(&x) {
                Image::Escaped => continue 'points,
                Image::Zero => {}
                Image::Point(y) => {
                    hits += 1;
                    ok &= y == x;
                }
            }
        }
        compared += 1;
        if hits != 1 || !ok {
            bad += 1;
        }
    }
    RelationReport::new(name, compared, bad, min)
}

/// Small group elements used where the relations quantify over all of `G`:
/// zero, `±e_i`, `e_i + e_j`.
fn sample_elements(n: usize) -> Vec<Vec<BigInt>> {
    let unit = |i: usize, s: i64| {
        let mut v = vec![BigInt::zero(); n];
        v[i] = s.into();
        v
    };
    let mut out = vec![vec![BigInt::zero(); n]];
    for i in 0..n {
        out.push(unit(i, 1));
        out.push(unit(i, -1));
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut v = unit(i, 1);
            v[j] = 1.into();
            out.push(v);
        }
    }
    out
}

fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg(a: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|x| -x).collect()
}

fn coset_terms(reps: &[Vec<BigInt>], p: &PartialInjection, w: Window) -> Result<Vec<PartialInjection>> {
    reps.iter()
        .map(|g| Ok(build_u(g, w)?.compose(p).compose(&build_u(&neg(g), w)?)))
        .collect()
}

/// Checks `u_g u_h = u_{g+h}`, `s u_g = u_{φ(g)} s`, `s*s = 1`, and
/// `Σ_{g ∈ G/φ^k G} u_g s^k s^{k*} u_g* = 1` for `k = 1, 2`.
pub fn check_rel(e: &LatticeEndo, w: Window, min: usize) -> Result<Vec<RelationReport>> {
    let n = e.rank();
    let s = build_s(e, w)?;
    let samples = sample_elements(n);
    let mut out = Vec::new();

    let mut parts = Vec::new();
    for g in &samples {
        for h in &samples {
            let lhs = build_u(g, w)?.compose(&build_u(h, w)?);
            parts.push(check_eq("", &lhs, &build_u(&add(g, h), w)?, min));
        }
    }
    out.push(RelationReport::merge("u_g u_h = u_(g+h)", &parts, min).sampled("sampled g, h"));

    let digits = DigitSystem::new(e.clone())?;
    let mut parts = Vec::new();
    for g in samples.iter().chain(digits.digits()) {
        let lhs = s.compose(&build_u(g, w)?);
        let rhs = build_u(&e.apply(g), w)?.compose(&s);
        parts.push(check_eq("", &lhs, &rhs, min));
    }
    out.push(RelationReport::merge("s u_g = u_phi(g) s", &parts, min).sampled("sampled g and digits"));

    out.push(check_eq("s* s = 1", &s.adjoint().compose(&s), &PartialInjection::identity(w), min));

    for k in 1..=2 {
        let sk = s.pow(k);
        let proj = sk.compose(&sk.adjoint());
        let reps = DigitSystem::new(e.power(k as u32))?;
        let terms = coset_terms(reps.digits(), &proj, w)?;
        let name = if k == 1 {
            "sum_(G/phi G) u_g s s* u_g* = 1".to_string()
        } else {
            format!("sum_(G/phi^{k} G) u_g s^{k} s^{k}* u_g* = 1")
        };
        out.push(check_partition(&name, &terms, w, min));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiReport {
    /// `s_f* s_g = s_g s_f*` on the safe region.
    pub equal: bool,
    /// The independence verdict of the pair.
    pub expected: bool,
    pub agree: bool,
    pub commutation: RelationReport,
    /// `e_f e_g = e_(fg)` for the range projections `e = s s*`.
    pub e_product: RelationReport,
    /// `s_f s_g = s_g s_f`, which must hold whenever `equal` does.
    pub isometries_commute: RelationReport,
    pub verdict: Verdict,
}

/// Compares the operator identity `s_f* s_g = s_g s_f*` with the lattice
/// independence test; the two must agree.
pub fn check_pi(f: &LatticeEndo, g: &LatticeEndo, w: Window, min: usize) -> Result<PiReport> {
    if !f.commutes_with(g) {
        return Err(Error::NotCommuting);
    }
    let sf = build_s(f, w)?;
    let sg = build_s(g, w)?;
    let commutation = check_eq("s_f* s_g = s_g s_f*", &sf.adjoint().compose(&sg), &sg.compose(&sf.adjoint()), min);
    let ef = sf.compose(&sf.adjoint());
    let eg = sg.compose(&sg.adjoint());
    let sfg = build_s(&f.compose(g)?, w)?;
    let e_product = check_eq("e_f e_g = e_fg", &ef.compose(&eg), &sfg.compose(&sfg.adjoint()), min);
    let isometries_commute = check_eq("s_f s_g = s_g s_f", &sf.compose(&sg), &sg.compose(&sf), min);

    let expected = independent(f, g)?.verdict;
    let conclusive = |r: &RelationReport| r.verdict != Verdict::Inconclusive;
    let equal = commutation.passed();
    let agree = equal == expected && e_product.passed() == expected;
    let verdict = if !conclusive(&commutation) || !conclusive(&e_product) || (equal && !conclusive(&isometries_commute)) {
        Verdict::Inconclusive
    } else if agree && (!equal || isometries_commute.passed()) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(PiReport {
        equal,
        expected,
        agree,
        commutation,
        e_product,
        isometries_commute,
        verdict,
    })
}

/// `s = s_f s_g*` for an independent pair.
pub fn build_pair_s(f: &LatticeEndo, g: &LatticeEndo, w: Window) -> Result<PartialInjection> {
    Ok(build_s(f, w)?.compose(&build_s(g, w)?.adjoint()))
}

/// The relations P1–P4 for `s = s_f s_g*`, plus `s ξ_0 = ξ_0` and
/// `s_f s_g* = s_g* s_f`.
pub fn check_p1_p4(f: &LatticeEndo, g: &LatticeEndo, w: Window, min: usize) -> Result<Vec<RelationReport>> {
    require_independent(f, g)?;
    let n = f.rank();
    let sf = build_s(f, w)?;
    let sg = build_s(g, w)?;
    let s = sf.compose(&sg.adjoint());
    let id = PartialInjection::identity(w);
    let mut out = Vec::new();

    out.push(check_eq("s_f s_g* = s_g* s_f", &s, &sg.adjoint().compose(&sf), min));

    for k in 1..=3 {
        // s^k* s^k is a projection: every safe ξ_x goes to ξ_x or 0
        let sk = s.pow(k);
        let p = sk.adjoint().compose(&sk);
        let mut compared = 0;
        let mut bad = 0;
        for x in w.points() {
            match p.apply(&x) {
                Image::Escaped => {}
                Image::Zero => compared += 1,
                Image::Point(y) => {
                    compared += 1;
                    if y != x {
                        bad += 1;
                    }
                }
            }
        }
        let mut r = RelationReport::new(format!("P1: s^{k} is a partial isometry"), compared, bad, min);
        // and s^k s^k* s^k = s^k
        let (c2, b2) = compare(&sk.compose(&sk.adjoint()).compose(&sk), &sk);
        r = RelationReport::new(r.relation, compared.min(c2), bad + b2, min);
        out.push(r);
    }

    let samples = sample_elements(n);
    let mut parts = Vec::new();
    for a in &samples {
        let ua = build_u(a, w)?;
        parts.push(check_eq("", &ua.adjoint().compose(&ua), &id, min));
        for b in &samples {
            let lhs = ua.compose(&build_u(b, w)?);
            parts.push(check_eq("", &lhs, &build_u(&add(a, b), w)?, min));
        }
    }
    out.push(RelationReport::merge("P2: g -> u_g is a unitary representation", &parts, min).sampled("sampled g"));

    let df = DigitSystem::new(f.clone())?;
    let dg = DigitSystem::new(g.clone())?;
    let mut parts = Vec::new();
    for h in samples.iter().chain(df.digits()).chain(dg.digits()) {
        let lhs = s.compose(&build_u(&g.apply(h), w)?);
        let rhs = build_u(&f.apply(h), w)?.compose(&s);
        parts.push(check_eq("", &lhs, &rhs, min));
    }
    out.push(RelationReport::merge("P3: s u_psi(g) = u_phi(g) s", &parts, min).sampled("sampled g and digits"));

    let range = s.compose(&s.adjoint());
    let support = s.adjoint().compose(&s);
    out.push(check_partition(
        "P4: sum_(G/phi G) u_g s s* u_-g = 1",
        &coset_terms(df.digits(), &range, w)?,
        w,
        min,
    ));
    out.push(check_partition(
        "P4: sum_(G/psi G) u_g s* s u_-g = 1",
        &coset_terms(dg.digits(), &support, w)?,
        w,
        min,
    ));

    let origin = vec![0i64; n];
    let fixed = s.apply(&origin) == Image::Point(origin.clone());
    out.push(RelationReport::new("s xi_0 = xi_0", 1, usize::from(!fixed), 1));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityEntry {
    pub quantity: String,
    /// Exact fraction of window points, as `"p/q"`.
    pub measured: String,
    pub predicted: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceDensityReport {
    pub radius: i64,
    pub entries: Vec<DensityEntry>,
    pub verdict: Verdict,
}

fn density(e: &LatticeEndo, w: Window) -> Result<BigRational> {
    let s = build_s(e, w)?;
    let range = s.compose(&s.adjoint());
    let hits = w.points().filter(|x| range.apply(x) != Image::Zero).count();
    Ok(BigRational::new(hits.into(), w.len().into()))
}

fn entry(quantity: &str, measured: BigRational, predicted: BigRational, tol: f64) -> DensityEntry {
    let dev = (&measured - &predicted).abs().to_f64().unwrap_or(f64::INFINITY);
    DensityEntry {
        quantity: quantity.into(),
        measured: measured.to_string(),
        predicted: predicted.to_string(),
        deviation: dev,
        tolerance: tol,
        ok: dev <= tol,
    }
}

/// Lattice-point densities of the range `fG` of `s` and its support `gG`,
/// against `1/N(f)` and `1/N(g)`; tolerance `n/M`.
///
/// Membership is decided without leaving the window, since `x ∈ φZ^n` is
/// a divisibility test on `adj(φ) x`.
pub fn trace_density(f: &LatticeEndo, g: Option<&LatticeEndo>, w: Window) -> Result<TraceDensityReport> {
    if let Some(g) = g {
        require_independent(f, g)?;
    }
    let tol = w.rank() as f64 / w.radius() as f64;
    let inv = |e: &LatticeEndo| BigRational::new(1.into(), e.index());
    let mut entries = Vec::new();
    match g {
        Some(g) => {
            entries.push(entry("tau(s s*)", density(f, w)?, inv(f), tol));
            entries.push(entry("tau(s* s)", density(g, w)?, inv(g), tol));
        }
        None => entries.push(entry("tau(s s*)", density(f, w)?, inv(f), tol)),
    }
    let u = build_u(&vec![BigInt::from(1); w.rank()], w)?;
    let unitary = u.adjoint().compose(&u);
    let safe = w.points().filter(|x| unitary.apply(x) != Image::Escaped).count();
    let full = BigRational::new(safe.into(), safe.max(1).into());
    entries.push(entry("tau(u_g* u_g)", full, BigRational::from_integer(1.into()), tol));
    let verdict = if entries.iter().all(|e| e.ok) { Verdict::Pass } else { Verdict::Fail };
    Ok(TraceDensityReport {
        radius: w.radius(),
        entries,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(rows: &[&[i64]]) -> LatticeEndo {
        LatticeEndo::from_rows(rows).unwrap()
    }

    #[test]
    fn doubling_relations() {
        let w = Window::new(1, 32).unwrap();
        let reps = check_rel(&e(&[&[2]]), w, DEFAULT_MIN_COMPARED).unwrap();
        assert_eq!(reps.len(), 5);
        for r in &reps {
            assert!(r.passed(), "{r}");
        }
        // s u_1 ξ_0 = ξ_2 = u_2 s ξ_0
        let s = build_s(&e(&[&[2]]), w).unwrap();
        let lhs = s.compose(&build_u(&[BigInt::from(1)], w).unwrap());
        let rhs = build_u(&[BigInt::from(2)], w).unwrap().compose(&s);
        assert_eq!(lhs.apply(&[0]), Image::Point(vec![2]));
        assert_eq!(rhs.apply(&[0]), Image::Point(vec![2]));
    }

    #[test]
    fn broken_relation_is_caught() {
        let w = Window::new(1, 16).unwrap();
        let s = build_s(&e(&[&[2]]), w).unwrap();
        // sum over a single coset does not cover the odd points
        let r = check_partition("partial", &[s.compose(&s.adjoint())], w, 10);
        assert_eq!(r.verdict, Verdict::Fail);
        let r = check_eq("tiny", &s, &s, 1000);
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn pi_examples() {
        let w = Window::new(1, 64).unwrap();
        let r = check_pi(&e(&[&[2]]), &e(&[&[3]]), w, 10).unwrap();
        assert!(r.equal && r.expected && r.agree && r.verdict == Verdict::Pass);
        let r = check_pi(&e(&[&[2]]), &e(&[&[2]]), w, 10).unwrap();
        assert!(!r.equal && !r.expected && r.agree && r.verdict == Verdict::Pass);
        let w2 = Window::new(2, 16).unwrap();
        let r = check_pi(&e(&[&[3, 7], &[1, 3]]), &e(&[&[3, -7], &[-1, 3]]), w2, 10).unwrap();
        assert!(!r.equal && !r.expected && r.agree);
    }

    #[test]
    fn p1_p4_examples() {
        let w = Window::new(1, 64).unwrap();
        for r in check_p1_p4(&e(&[&[2]]), &e(&[&[3]]), w, 10).unwrap() {
            assert!(r.passed(), "{r}");
        }
        let w2 = Window::new(2, 24).unwrap();
        for r in check_p1_p4(&e(&[&[2, -1], &[1, 2]]), &e(&[&[2, 1], &[-1, 2]]), w2, 10).unwrap() {
            assert!(r.passed(), "{r}");
        }
        assert!(check_p1_p4(&e(&[&[2]]), &e(&[&[2]]), w, 10).is_err());
    }

    #[test]
    fn densities() {
        let w = Window::new(1, 300).unwrap();
        let r = trace_density(&e(&[&[2]]), Some(&e(&[&[3]])), w).unwrap();
        assert_eq!(r.entries[0].measured, "301/601");
        assert_eq!(r.entries[1].measured, "201/601");
        assert!(r.entries.iter().all(|x| x.ok));
        let r = trace_density(&e(&[&[2, 1], &[0, 3]]), None, Window::new(2, 60).unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
    }
}

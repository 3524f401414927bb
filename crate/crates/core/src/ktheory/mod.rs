//! K-theory of `A_φ` and `A_{φ,ψ}` from the Pimsner–Voiculescu type exact
//! sequences, evaluated with exact integer arithmetic.
//!
//! Degree convention: even exterior degrees make up `K_0(C*(Z^n))`, odd
//! degrees `K_1`. Each K-group is reported as an extension whose sub piece
//! comes from cokernels and whose quotient piece comes from kernels.

mod colimit;
mod exterior;
mod report;

pub use colimit::{
    cokernel_module, colim_eq, eventual_image, kernel_colimit, stable_image, ColimElement,
    ColimitGroup, CokernelModule,
};
pub use exterior::{
    b_map, b_product_check, binomial, duality_matrix, exterior_power, lambda_functor,
    norm_identity, poincare_check, subsets, GradedIntMap,
};
pub use report::{ClassificationFlags, KGroup, KReport, KLabels, Label, Piece};

use num_bigint::BigInt;

use crate::endo::{require_exact, require_independent, GroupFamily, LatticeEndo};
use crate::error::{Error, Result};
use crate::lattice::{hnf, IntMatrix, Sublattice};
use report::normalize;

/// Largest matrix dimension used by the shift model.
pub const SHIFT_DIM_CAP: usize = 1024;
const SHIFT_AUTO_DIM: usize = 64;
const SHIFT_DEFAULT_LEVEL: usize = 6;

/// Evaluates the sequence for `1 − b` style maps: per degree `p`, the
/// cokernel and kernel of `d[p]`, each carried to the direct limit along
/// `c[p]` (which must commute with `d[p]`).
fn assemble(d: &[IntMatrix], c: &[IntMatrix]) -> Result<(KGroup, KGroup)> {
    let mut coker_t = [Vec::new(), Vec::new()];
    let mut coker_f = [Vec::new(), Vec::new()];
    let mut kers = [Vec::new(), Vec::new()];
    for (p, (dp, cp)) in d.iter().zip(c).enumerate() {
        if dp.mul(cp) != cp.mul(dp) {
            return Err(Error::Invariant(format!("degree {p}: map does not commute with b")));
        }
        let (t, f) = cokernel_module(dp, cp)?.colimit()?;
        coker_t[p % 2].push(t);
        coker_f[p % 2].push(f);
        kers[p % 2].push(kernel_colimit(dp, cp)?);
    }
    let [t0, t1] = coker_t;
    let [f0, f1] = coker_f;
    let [k0, k1] = kers;
    let g0 = KGroup::new(normalize(t0, f0), normalize(Vec::new(), k1));
    let g1 = KGroup::new(normalize(t1, f1), normalize(Vec::new(), k0));
    Ok((g0, g1))
}

fn kb_labels(blocks: &[ColimitGroup]) -> KLabels {
    let side = |parity: usize| {
        let cs = blocks.iter().enumerate().filter(|(p, _)| p % 2 == parity).map(|(_, c)| c.clone());
        normalize(Vec::new(), cs.collect()).iter().flat_map(Piece::labels).collect()
    };
    KLabels { k0: side(0), k1: side(1) }
}

/// Per exterior degree, `lim→ (Λ^p Z^n, b(φ)_p)`.
pub fn k_b(e: &LatticeEndo) -> Result<Vec<ColimitGroup>> {
    require_exact(e)?;
    b_map(e)?.blocks().iter().map(|b| ColimitGroup::new(b.clone())).collect()
}

/// `K_*(A_φ)` for an exact endomorphism of `Z^n`.
pub fn k_endo(e: &LatticeEndo) -> Result<KReport> {
    require_exact(e)?;
    let b = b_map(e)?;
    let d: Vec<IntMatrix> = b
        .blocks()
        .iter()
        .map(|bp| IntMatrix::identity(bp.rows()).sub(bp))
        .collect();
    let (k0, k1) = assemble(&d, b.blocks())?;
    let mut r = KReport::new(format!("A_phi, phi = {e}"), k0, k1);
    r.k_b = Some(kb_labels(&k_b(e)?));
    Ok(r)
}

/// `K_*(A_{φ,ψ})` for commuting, independent, exact `φ = f`, `ψ = g`.
pub fn k_poly(f: &LatticeEndo, g: &LatticeEndo) -> Result<KReport> {
    require_exact(f)?;
    require_exact(g)?;
    require_independent(f, g)?;
    let bf = b_map(f)?;
    let bg = b_map(g)?;
    let bfg = b_map(&f.compose(g)?)?;
    let d = bg.sub(&bf)?;
    let (k0, k1) = assemble(d.blocks(), bfg.blocks())?;
    let mut r = KReport::new(format!("A_(phi,psi), phi = {f}, psi = {g}"), k0, k1);
    let blocks: Vec<ColimitGroup> = bfg
        .blocks()
        .iter()
        .map(|b| ColimitGroup::new(b.clone()))
        .collect::<Result<_>>()?;
    r.k_b = Some(kb_labels(&blocks));
    Ok(r)
}

/// The transfer on level-`m` functions `{0..n-1}^m → Z` for the one-sided
/// shift: `b(f)(x_0, x_1, …) = Σ_k f(k, x_0, x_1, …)`.
///
/// Words are indexed by `Σ w_i n^i`. `b(δ_w)` is the indicator of the
/// cylinder `(w_1, …, w_{m-1}, *)`.
pub fn shift_transfer(n: usize, m: usize) -> IntMatrix {
    let dim = n.pow(m as u32);
    let mut b = IntMatrix::zeros(dim, dim);
    let top = n.pow(m.saturating_sub(1) as u32);
    for w in 0..dim {
        let tail = w / n;
        if m == 0 {
            b[(0, 0)] = (n as i64).into();
            continue;
        }
        for a in 0..n {
            b[(tail + a * top, w)] += 1;
        }
    }
    b
}

/// Pullback along the shift, from level `m` to level `m + 1`:
/// `δ_w ∘ σ = Σ_a δ_{(a, w)}`.
pub fn shift_pullback(n: usize, m: usize) -> IntMatrix {
    let dim = n.pow(m as u32);
    let mut p = IntMatrix::zeros(dim * n, dim);
    for w in 0..dim {
        for a in 0..n {
            p[(a + n * w, w)] = 1.into();
        }
    }
    p
}

/// Inclusion of level-`m` functions into level `m + 1`.
pub fn shift_inclusion(n: usize, m: usize) -> IntMatrix {
    let dim = n.pow(m as u32);
    let mut p = IntMatrix::zeros(dim * n, dim);
    for w in 0..dim {
        for a in 0..n {
            p[(w + dim * a, w)] = 1.into();
        }
    }
    p
}

fn shift_level(n: usize, level: Option<usize>) -> Result<usize> {
    let dim = |m: usize| n.checked_pow(m as u32 + 1).unwrap_or(usize::MAX);
    match level {
        Some(0) => Err(Error::Parameter("shift level must be at least 1".into())),
        Some(m) if dim(m) > SHIFT_DIM_CAP => Err(Error::Cap(format!(
            "shift level {m} for n = {n} needs dimension {}, cap is {SHIFT_DIM_CAP}",
            n as u128 * n.pow(m as u32) as u128
        ))),
        Some(m) => Ok(m),
        None => (1..=SHIFT_DEFAULT_LEVEL)
            .rev()
            .find(|&m| dim(m) <= SHIFT_AUTO_DIM)
            .or((dim(1) <= SHIFT_DIM_CAP).then_some(1))
            .ok_or_else(|| Error::Cap(format!("shift model for n = {n} exceeds dimension {SHIFT_DIM_CAP}"))),
    }
}

/// `K_*(A)` and `K_*(B)` for the one-sided shift on `∏ Z/n` (the Cuntz
/// algebra `O_n`), computed on level-`m` locally constant functions and
/// checked against level `m + 1`.
pub fn k_shift(n: u64, level: Option<usize>) -> Result<KReport> {
    GroupFamily::Shift { n }.validate()?;
    let nn = usize::try_from(n).map_err(|_| Error::Cap(format!("n = {n}")))?;
    let m = shift_level(nn, level)?;
    let at = |m: usize| -> Result<(KGroup, KGroup, KLabels, IntMatrix)> {
        let b = shift_transfer(nn, m);
        let d = IntMatrix::identity(b.rows()).sub(&b);
        let (k0, k1) = assemble(std::slice::from_ref(&d), std::slice::from_ref(&b))?;
        let kb = kb_labels(&[ColimitGroup::of_endomorphism(&b)?]);
        Ok((k0, k1, kb, d))
    };
    let (k0, k1, kb, d_lo) = at(m)?;
    let (k0_hi, k1_hi, kb_hi, d_hi) = at(m + 1)?;
    if (&k0, &k1, &kb) != (&k0_hi, &k1_hi, &kb_hi) {
        return Err(Error::Invariant(format!(
            "shift invariants differ between levels {m} and {}",
            m + 1
        )));
    }
    // inclusion must induce an isomorphism on Coker(1 − b)
    let incl = shift_inclusion(nn, m);
    let span = hnf(&incl.hstack(&d_hi));
    let coker_lo = Sublattice::image_of(&d_lo).quotient_structure();
    if span != Sublattice::full(d_hi.rows()) || !coker_lo.is_finite() {
        return Err(Error::Invariant(format!(
            "level {m} cokernel does not map onto level {}",
            m + 1
        )));
    }
    let mut r = KReport::new(format!("A_phi, phi = shift on prod Z/{n}"), k0, k1);
    r.k_b = Some(kb);
    r.level = Some(m);
    Ok(r)
}

/// `K_*(A_φ)` for multiplication by `q` on `Z[1/p]`.
///
/// `K_0(C*G) = Z` with `b = q`; `K_1(C*G) = Z[1/p] = lim→ (Z, ×p)` with
/// `b = id`, so on the `K_1` side the limit along `b` and the limit defining
/// `Z[1/p]` merge into a single limit along `×p`.
pub fn k_solenoid(p: u64, q: u64) -> Result<KReport> {
    GroupFamily::Solenoid { p, q }.validate()?;
    let (pb, qb) = (BigInt::from(p), BigInt::from(q));
    let one = BigInt::from(1);
    let d = [
        IntMatrix::scalar(1, &one - &qb),
        IntMatrix::scalar(1, 0),
    ];
    let c = [IntMatrix::scalar(1, qb.clone()), IntMatrix::scalar(1, pb.clone())];
    let (k0, k1) = assemble(&d, &c)?;
    let mut r = KReport::new(format!("A_phi, phi = x{q} on Z[1/{p}]"), k0, k1);
    r.k_b = Some(kb_labels(&[
        ColimitGroup::new(IntMatrix::scalar(1, qb))?,
        ColimitGroup::new(IntMatrix::scalar(1, pb))?,
    ]));
    r.b_values = Some([format!("x{q} on K0(C*G)"), "id on K1(C*G)".to_string()]);
    Ok(r)
}

/// Structural flags: a single exact endomorphism gives a simple purely
/// infinite algebra; an independent pair is purely infinite iff the indices
/// differ and has a unique trace iff they agree.
pub fn classify(f: &LatticeEndo, g: Option<&LatticeEndo>) -> Result<ClassificationFlags> {
    require_exact(f)?;
    let Some(g) = g else {
        return Ok(ClassificationFlags {
            simple: true,
            purely_infinite: true,
            unique_trace: false,
        });
    };
    require_exact(g)?;
    require_independent(f, g)?;
    let equal = f.index() == g.index();
    Ok(ClassificationFlags {
        simple: true,
        purely_infinite: !equal,
        unique_trace: equal,
    })
}

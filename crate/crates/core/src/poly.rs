//! Integer polynomials: characteristic polynomials and factorization over Z.
//!
//! Factorization follows the classical Zassenhaus route: squarefree part,
//! factorization modulo a small prime (distinct-degree then Cantor–Zassenhaus
//! splitting), linear Hensel lifting past a coefficient bound, and
//! recombination of lifted factors by increasing subset size. Degrees stay
//! small here (at most the lattice rank), so subset recombination is cheap.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::lattice::IntMatrix;

/// A polynomial with integer coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPoly {
    #[serde(with = "crate::serde_int::bigint_vec")]
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x - a`
    pub fn linear(a: impl Into<BigInt>) -> Self {
        Self::new(vec![-a.into(), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        IntPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Division by a monic polynomial: `(quotient, remainder)`.
    pub fn divrem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.degree();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (IntPoly::new(Vec::new()), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = rem[k + d].clone();
            if c.is_zero() {
                continue;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    pub fn divides(&self, other: &IntPoly) -> bool {
        other.divrem_monic(self).1.is_zero()
    }

    fn norm2_bound(&self) -> BigInt {
        let sq: BigInt = self.coeffs.iter().map(|c| c * c).sum();
        sq.sqrt() + BigInt::one()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// `det(x·I − A)`, by the Faddeev–LeVerrier recurrence (all divisions exact).
pub fn charpoly(a: &IntMatrix) -> IntPoly {
    assert!(a.is_square());
    let n = a.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = IntMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a.mul(&m);
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        m = next;
        let am = a.mul(&m);
        let trace: BigInt = (0..n).map(|i| am[(i, i)].clone()).sum();
        let kk = BigInt::from(k);
        debug_assert!((&trace % &kk).is_zero());
        coeffs[n - k] = -(trace / kk);
    }
    IntPoly::new(coeffs)
}

fn rat_trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db {
        let c = r.last().unwrap() / &lead;
        let shift = r.len() - 1 - db;
        for (i, bc) in b.iter().enumerate() {
            let delta = &c * bc;
            r[shift + i] -= delta;
        }
        r.pop();
        rat_trim(&mut r);
    }
    r
}

/// Monic gcd over Q of two monic integer polynomials; integral by Gauss's lemma.
fn monic_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let to_rat = |p: &IntPoly| -> Vec<BigRational> {
        p.coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    };
    let mut x = to_rat(a);
    let mut y = to_rat(b);
    while !y.is_empty() {
        let r = rat_rem(&x, &y);
        x = y;
        y = r;
    }
    let lead = x.last().cloned().unwrap_or_else(BigRational::one);
    IntPoly::new(
        x.iter()
            .map(|c| {
                let v = c / &lead;
                debug_assert!(v.is_integer());
                v.to_integer()
            })
            .collect(),
    )
}

/// Product of the distinct irreducible factors of a monic polynomial.
pub fn squarefree_part(f: &IntPoly) -> IntPoly {
    assert!(f.is_monic());
    if f.degree() <= 1 {
        return f.clone();
    }
    let g = monic_gcd(f, &f.derivative());
    f.divrem_monic(&g).0
}

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x], p < 2^31.

type Fp = Vec<u64>;

fn fp_trim(mut v: Fp) -> Fp {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fp_from_int(f: &IntPoly, p: u64) -> Fp {
    let pb = BigInt::from(p);
    fp_trim(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

fn fp_inv(a: u64, p: u64) -> u64 {
    fp_pow_scalar(a, p - 2, p)
}

fn fp_pow_scalar(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    fp_trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(out)
}

fn fp_divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    let inv = fp_inv(b[db], p);
    let mut r = a.clone();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * inv % p;
        q[k] = c;
        if c == 0 {
            continue;
        }
        for (i, &bc) in b.iter().enumerate() {
            r[k + i] = (r[k + i] + p - c * bc % p) % p;
        }
    }
    (fp_trim(q), fp_trim(r))
}

fn fp_rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    fp_divrem(a, b, p).1
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = fp_inv(l, p);
            a.iter().map(|&c| c * inv % p).collect()
        }
    }
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let r = fp_rem(&x, &y, p);
        x = y;
        y = r;
    }
    fp_monic(&x, p)
}

/// `(g, s, t)` with `s·a + t·b = g`, g monic.
fn fp_ext_gcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let inv = fp_inv(*r0.last().expect("nonzero gcd"), p);
    let scale = |v: &Fp| -> Fp { fp_trim(v.iter().map(|&c| c * inv % p).collect()) };
    (scale(&r0), scale(&s0), scale(&t0))
}

fn fp_derivative(a: &Fp, p: u64) -> Fp {
    fp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

fn fp_powmod(base: &Fp, exp: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut acc: Fp = vec![1];
    let b = fp_rem(base, m, p);
    for i in (0..exp.bits()).rev() {
        acc = fp_rem(&fp_mul(&acc, &acc, p), m, p);
        if exp.bit(i) {
            acc = fp_rem(&fp_mul(&acc, &b, p), m, p);
        }
    }
    acc
}

/// Distinct-degree factorization of a squarefree monic polynomial.
fn fp_ddf(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 1;
    while rest.len() - 1 >= 2 * d {
        h = fp_powmod(&h, &BigUint::from(p), &rest, p);
        let g = fp_gcd(&rest, &fp_sub(&h, &x, p), p);
        if g.len() > 1 {
            rest = fp_divrem(&rest, &g, p).0;
            h = fp_rem(&h, &rest, p);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.len() > 1 {
        let deg = rest.len() - 1;
        out.push((rest, deg));
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting (p odd).
fn fp_edf(f: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Fp>) {
    let n = f.len() - 1;
    if n == d {
        out.push(f.clone());
        return;
    }
    let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let a: Fp = fp_trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() <= 1 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, &exp, f, p), &vec![1], p);
        let g = fp_gcd(f, &b, p);
        if g.len() > 1 && g.len() < f.len() {
            let other = fp_divrem(f, &g, p).0;
            fp_edf(&g, d, p, rng, out);
            fp_edf(&fp_monic(&other, p), d, p, rng, out);
            return;
        }
    }
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

// ---------------------------------------------------------------------------
// Hensel lifting and recombination.

fn int_from_fp(a: &Fp) -> IntPoly {
    IntPoly::new(a.iter().map(|&c| BigInt::from(c)).collect())
}

fn int_mod(a: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(a.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn balanced(a: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m / 2;
    IntPoly::new(
        a.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Lifts `f ≡ g·h (mod p)` to the unique monic lift of `g` modulo `p^k`, where
/// `p^k` is the first power exceeding `bound`.
fn hensel_lift(f: &IntPoly, g: &Fp, h: &Fp, p: u64, bound: &BigInt) -> (IntPoly, BigInt) {
    let (one, s, t) = fp_ext_gcd(g, h, p);
    debug_assert_eq!(one, vec![1]);
    let pb = BigInt::from(p);
    let mut gi = int_from_fp(g);
    let mut hi = int_from_fp(h);
    let mut modulus = pb.clone();
    while &modulus <= bound {
        let err = f.sub(&gi.mul(&hi));
        let e = IntPoly::new(
            err.coeffs()
                .iter()
                .map(|c| {
                    debug_assert!((c % &modulus).is_zero());
                    c / &modulus
                })
                .collect(),
        );
        let ep = fp_from_int(&e, p);
        let tau = fp_rem(&fp_mul(&t, &ep, p), g, p);
        let sigma = fp_rem(&fp_mul(&s, &ep, p), h, p);
        let step = |base: &IntPoly, delta: &Fp| -> IntPoly {
            let n = base.coeffs().len().max(delta.len());
            IntPoly::new(
                (0..n)
                    .map(|i| {
                        base.coeffs().get(i).cloned().unwrap_or_default()
                            + &modulus * BigInt::from(delta.get(i).copied().unwrap_or(0))
                    })
                    .collect(),
            )
        };
        gi = step(&gi, &tau);
        hi = step(&hi, &sigma);
        modulus *= &pb;
    }
    (int_mod(&gi, &modulus), modulus)
}

fn sort_factors(v: &mut [IntPoly]) {
    v.sort_by(|a, b| match a.degree().cmp(&b.degree()) {
        Ordering::Equal => a.coeffs().cmp(b.coeffs()),
        o => o,
    });
}

/// Irreducible factors of a squarefree monic polynomial, sorted by degree.
fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.degree();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![f.clone()];
    }
    let p = small_primes()
        .find(|&p| {
            let fp = fp_from_int(f, p);
            fp.len() == n + 1 && fp_gcd(&fp, &fp_derivative(&fp, p), p) == vec![1]
        })
        .expect("some prime keeps a squarefree polynomial squarefree");
    let fp = fp_from_int(f, p);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut modular = Vec::new();
    for (g, d) in fp_ddf(&fp, p) {
        fp_edf(&g, d, p, &mut rng, &mut modular);
    }
    modular.sort();
    if modular.len() == 1 {
        return vec![f.clone()];
    }

    let bound = BigInt::from(2) * (BigInt::one() << n) * f.norm2_bound();
    let mut lifted = Vec::with_capacity(modular.len());
    let mut modulus = BigInt::one();
    for (i, g) in modular.iter().enumerate() {
        let h = modular
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(vec![1u64], |acc, (_, q)| fp_mul(&acc, q, p));
        let (gl, m) = hensel_lift(f, g, &h, p, &bound);
        lifted.push(gl);
        modulus = m;
    }

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for subset in combinations(remaining.len(), size) {
            let cand = subset
                .iter()
                .fold(IntPoly::one(), |acc, &k| acc.mul(&lifted[remaining[k]]));
            let cand = balanced(&int_mod(&cand, &modulus), &modulus);
            if cand.divides(&rest) {
                hit = Some((subset, cand));
                break;
            }
        }
        match hit {
            Some((subset, cand)) => {
                rest = rest.divrem_monic(&cand).0;
                found.push(cand);
                remaining = remaining
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| !subset.contains(k))
                    .map(|(_, &r)| r)
                    .collect();
            }
            None => size += 1,
        }
    }
    if rest.degree() > 0 {
        found.push(rest);
    }
    sort_factors(&mut found);
    found
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Distinct monic irreducible factors of a monic integer polynomial, sorted
/// by degree then coefficients.
pub fn irreducible_factors(f: &IntPoly) -> Vec<IntPoly> {
    assert!(f.is_monic(), "only monic polynomials are supported");
    factor_squarefree(&squarefree_part(f))
}

/// The lowest-degree monic irreducible factor with constant term ±1, if any.
pub fn unit_constant_factor(f: &IntPoly) -> Option<IntPoly> {
    irreducible_factors(f)
        .into_iter()
        .find(|g| g.constant().abs().is_one())
}

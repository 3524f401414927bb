#![allow(dead_code)]

use endok_core::lattice::IntMatrix;
use endok_core::LatticeEndo;
use num_bigint::BigInt;
use rand::Rng;

pub fn e(rows: &[&[i64]]) -> LatticeEndo {
    LatticeEndo::from_rows(rows).unwrap()
}

pub fn matrix_from(n: usize, entries: &[i64]) -> IntMatrix {
    IntMatrix::from_vec(n, n, entries.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
}

/// Random nonsingular `n × n` matrix with entries in `[-bound, bound]`.
pub fn random_endo<R: Rng>(rng: &mut R, n: usize, bound: i64) -> LatticeEndo {
    loop {
        let entries: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-bound..=bound)).collect();
        if let Ok(e) = LatticeEndo::new(matrix_from(n, &entries)) {
            return e;
        }
    }
}

/// `a + b φ + c φ²`, commuting with `φ` by construction.
pub fn polynomial_in(f: &LatticeEndo, a: i64, b: i64, c: i64) -> Option<LatticeEndo> {
    let m = f.matrix();
    let n = m.rows();
    let p = IntMatrix::scalar(n, a)
        .add(&m.scale(&b.into()))
        .add(&m.mul(m).scale(&c.into()));
    LatticeEndo::new(p).ok()
}

/// A random pair `(φ, ψ)` with `ψ` a small polynomial in `φ`.
pub fn random_commuting_pair<R: Rng>(rng: &mut R, n: usize, bound: i64) -> (LatticeEndo, LatticeEndo) {
    let f = random_endo(rng, n, bound);
    loop {
        let (a, b, c) = (rng.gen_range(-4..=4), rng.gen_range(-2..=2), rng.gen_range(-1..=1));
        if let Some(g) = polynomial_in(&f, a, b, c) {
            return (f, g);
        }
    }
}

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::endo::LatticeEndo;
use crate::error::{Error, Result};

/// Largest number of lattice points a window may hold.
pub const WINDOW_POINT_CAP: u64 = 1 << 21;

/// The box `[−M, M]^n` of lattice points, a finite stand-in for `ℓ²(Z^n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    n: usize,
    radius: i64,
}

impl Window {
    pub fn new(n: usize, radius: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("window rank must be at least 1".into()));
        }
        if radius < 1 {
            return Err(Error::Parameter(format!("window radius must be at least 1, got {radius}")));
        }
        let side = (2 * radius + 1) as u64;
        let points = side.checked_pow(n as u32).unwrap_or(u64::MAX);
        if points > WINDOW_POINT_CAP {
            return Err(Error::Cap(format!(
                "window of radius {radius} in rank {n} has {side}^{n} points, cap is {WINDOW_POINT_CAP}"
            )));
        }
        Ok(Window { n, radius })
    }

    /// 64 for rank 1–2, 16 for rank 3–4, and the largest radius under the
    /// point cap beyond that.
    pub fn default_for(n: usize) -> Result<Self> {
        let radius = match n {
            1 | 2 => 64,
            3 | 4 => 16,
            _ => (1..=16)
                .rev()
                .find(|&r| ((2 * r + 1) as u64).checked_pow(n as u32).is_some_and(|p| p <= WINDOW_POINT_CAP))
                .unwrap_or(1),
        };
        Window::new(n, radius)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn len(&self) -> usize {
        ((2 * self.radius + 1) as usize).pow(self.n as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.iter().all(|c| c.abs() <= self.radius)
    }

    /// All window points, last coordinate varying fastest.
    pub fn points(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        let side = 2 * self.radius + 1;
        (0..self.len()).map(move |mut i| {
            let mut p = vec![0i64; self.n];
            for c in p.iter_mut().rev() {
                *c = (i as i64 % side) - self.radius;
                i /= side as usize;
            }
            p
        })
    }
}

/// The image of a basis vector `ξ_x` under an operator word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Image {
    Point(Vec<i64>),
    /// The operator sends `ξ_x` to 0.
    Zero,
    /// Some intermediate image left the window; the value is unknown.
    Escaped,
}

/// An integer matrix with `i64` entries and its adjugate, for pointwise maps.
#[derive(Clone, Debug, PartialEq, Eq)]
struct SmallEndo {
    n: usize,
    m: Vec<i64>,
    adj: Vec<i64>,
    det: i64,
}

fn small(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Cap(format!("entry {x} too large for the operator model")))
}

impl SmallEndo {
    fn new(e: &LatticeEndo) -> Result<Self> {
        let m = e.matrix();
        let adj = m.adjugate();
        Ok(SmallEndo {
            n: e.rank(),
            m: m.entries().iter().map(small).collect::<Result<_>>()?,
            adj: adj.entries().iter().map(small).collect::<Result<_>>()?,
            det: small(e.det())?,
        })
    }

    fn mul(mat: &[i64], n: usize, x: &[i64]) -> Option<Vec<i64>> {
        (0..n)
            .map(|i| {
                (0..n).try_fold(0i64, |acc, j| acc.checked_add(mat[i * n + j].checked_mul(x[j])?))
            })
            .collect()
    }

    fn apply(&self, x: &[i64]) -> Option<Vec<i64>> {
        Self::mul(&self.m, self.n, x)
    }

    /// `Some(Some(y))` for the preimage, `Some(None)` when `x ∉ φZ^n`.
    fn preimage(&self, x: &[i64]) -> Option<Option<Vec<i64>>> {
        let w = Self::mul(&self.adj, self.n, x)?;
        if w.iter().any(|c| c % self.det != 0) {
            return Some(None);
        }
        Some(Some(w.iter().map(|c| c / self.det).collect()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Letter {
    U { g: Vec<i64>, adjoint: bool },
    S { e: SmallEndo, adjoint: bool },
}

/// A product of generators `u_g`, `s_φ` and their adjoints, evaluated on
/// basis vectors of the window.
///
/// Every generator sends basis vectors to basis vectors or to zero, so a
/// word is a partial injection and its adjoint is the inverse partial map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialInjection {
    window: Window,
    /// Leftmost factor first; evaluation runs right to left.
    word: Vec<Letter>,
}

impl PartialInjection {
    pub fn identity(window: Window) -> Self {
        PartialInjection { window, word: Vec::new() }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// `self · other`
    pub fn compose(&self, other: &PartialInjection) -> Self {
        let mut word = self.word.clone();
        word.extend(other.word.iter().cloned());
        PartialInjection { window: self.window, word }
    }

    pub fn adjoint(&self) -> Self {
        let word = self
            .word
            .iter()
            .rev()
            .map(|l| match l {
                Letter::U { g, adjoint } => Letter::U { g: g.clone(), adjoint: !adjoint },
                Letter::S { e, adjoint } => Letter::S { e: e.clone(), adjoint: !adjoint },
            })
            .collect();
        PartialInjection { window: self.window, word }
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::identity(self.window), |acc, _| acc.compose(self))
    }

    /// `ξ_x ↦` image, with every intermediate point required to stay in the window.
    pub fn apply(&self, x: &[i64]) -> Image {
        if !self.window.contains(x) {
            return Image::Escaped;
        }
        let mut cur = x.to_vec();
        for letter in self.word.iter().rev() {
            let next = match letter {
                Letter::U { g, adjoint } => cur
                    .iter()
                    .zip(g)
                    .map(|(a, b)| if *adjoint { a.checked_sub(*b) } else { a.checked_add(*b) })
                    .collect::<Option<Vec<i64>>>(),
                Letter::S { e, adjoint: false } => e.apply(&cur),
                Letter::S { e, adjoint: true } => match e.preimage(&cur) {
                    None => None,
                    Some(None) => return Image::Zero,
                    Some(Some(y)) => Some(y),
                },
            };
            match next {
                Some(p) if self.window.contains(&p) => cur = p,
                _ => return Image::Escaped,
            }
        }
        Image::Point(cur)
    }
}

/// `u_g : ξ_x ↦ ξ_{x+g}`.
pub fn build_u(g: &[BigInt], w: Window) -> Result<PartialInjection> {
    if g.len() != w.rank() {
        return Err(Error::RankMismatch(g.len(), w.rank()));
    }
    let g = g.iter().map(small).collect::<Result<_>>()?;
    Ok(PartialInjection {
        window: w,
        word: vec![Letter::U { g, adjoint: false }],
    })
}

/// `s_φ : ξ_x ↦ ξ_{φ(x)}`.
pub fn build_s(e: &LatticeEndo, w: Window) -> Result<PartialInjection> {
    if e.rank() != w.rank() {
        return Err(Error::RankMismatch(e.rank(), w.rank()));
    }
    Ok(PartialInjection {
        window: w,
        word: vec![Letter::S { e: SmallEndo::new(e)?, adjoint: false }],
    })
}

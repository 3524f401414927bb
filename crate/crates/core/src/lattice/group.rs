use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::snf::snf;

/// A finitely generated abelian group `Z/d_1 ⊕ … ⊕ Z/d_k ⊕ Z^r` in
/// canonical form: `d_i ≥ 2` and `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbGroup {
    #[serde(with = "crate::serde_int::bigint_vec")]
    torsion: Vec<BigInt>,
    free_rank: usize,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        FgAbGroup {
            torsion: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            torsion: Vec::new(),
            free_rank: rank,
        }
    }

    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        Self::from_orders([order.into()], 0)
    }

    /// Canonical form of `⊕ Z/o_i ⊕ Z^extra_free`. An order of 0 stands for a
    /// copy of `Z`; orders of ±1 contribute nothing.
    pub fn from_orders(orders: impl IntoIterator<Item = BigInt>, extra_free: usize) -> Self {
        let mut free_rank = extra_free;
        let mut finite = Vec::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                free_rank += 1;
            } else if !o.is_one() {
                finite.push(o);
            }
        }
        let already_canonical = finite
            .windows(2)
            .all(|w| (&w[1] % &w[0]).is_zero());
        let torsion = if already_canonical {
            finite
        } else {
            let s = snf(&IntMatrix::diagonal(&finite));
            s.invariant_factors()
                .into_iter()
                .filter(|d| !d.is_one())
                .collect()
        };
        FgAbGroup { torsion, free_rank }
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Group order, `None` if the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(BigInt::one(), |a, d| a * d))
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        FgAbGroup::from_orders(
            self.torsion.iter().chain(&other.torsion).cloned(),
            self.free_rank + other.free_rank,
        )
    }

    /// One label per cyclic summand: `"Z/2"`, …, then `"Z"` per free rank.
    pub fn labels(&self) -> Vec<String> {
        self.torsion
            .iter()
            .map(|d| format!("Z/{d}"))
            .chain(std::iter::repeat("Z".to_string()).take(self.free_rank))
            .collect()
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        write!(f, "{}", self.labels().join(" ⊕ "))
    }
}

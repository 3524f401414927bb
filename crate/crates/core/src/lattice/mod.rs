//! Exact integer lattice arithmetic: Hermite and Smith normal forms,
//! sublattice sums and intersections, kernels and cokernels of integer maps.

mod group;
mod hnf;
mod matrix;
mod snf;

pub use group::FgAbGroup;
pub use hnf::{hnf, Sublattice};
pub use matrix::{ivec, mat, IntMatrix};
pub use snf::{ker_coker, kernel, snf, solve_integer, SmithDecomposition};

/// `Z^n / L` in invariant-factor form.
pub fn quotient_structure(l: &Sublattice) -> FgAbGroup {
    l.quotient_structure()
}

pub fn lattice_sum(a: &Sublattice, b: &Sublattice) -> crate::Result<Sublattice> {
    a.sum(b)
}

pub fn lattice_intersect(a: &Sublattice, b: &Sublattice) -> crate::Result<Sublattice> {
    a.intersect(b)
}

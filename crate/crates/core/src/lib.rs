//! Exact-arithmetic engine for the K-theory of the C*-algebras attached to
//! algebraic endomorphisms and rational polymorphisms of compact abelian
//! groups.
//!
//! The dual picture is used throughout: an endomorphism of `H = T^n` is
//! represented by the injective integer matrix of its dual on `G = Z^n`.
//!
//! - [`lattice`]: Hermite/Smith normal forms and sublattice arithmetic.
//! - [`endo`]: validation (injectivity, exactness), independence of pairs.
//! - [`ktheory`]: exterior powers, transfer maps, the exact sequences.
//! - [`completion`]: odometer digits on the completion and torus orbits.
//! - [`harness`]: finite-window operator model and relation checks.
//! - [`job`]: batch jobs and report envelopes used by the CLI.

pub mod completion;
pub mod endo;
mod error;
pub mod harness;
pub mod job;
pub mod ktheory;
pub mod lattice;
pub mod poly;
pub mod serde_int;

pub use endo::{GroupFamily, LatticeEndo};
pub use error::{Error, Result};
pub use lattice::{FgAbGroup, IntMatrix, Sublattice};

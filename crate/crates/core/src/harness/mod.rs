//! A finite-window model of `ℓ²(Z^n)`: the generators `u_g`, `s_φ` act as
//! partial injections on lattice points, and operator identities are
//! checked exactly, point by point, wherever both sides stay in the window.

mod checks;
mod operators;

pub use checks::{
    build_pair_s, check_p1_p4, check_pi, check_rel, trace_density, DensityEntry, PiReport,
    RelationReport, TraceDensityReport, Verdict, DEFAULT_MIN_COMPARED,
};
pub use operators::{build_s, build_u, Image, PartialInjection, Window, WINDOW_POINT_CAP};

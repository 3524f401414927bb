//! The φ-adic completion `G_φ = lim← G/φ^k G` as an odometer on digit
//! expansions, its product decomposition for independent pairs, and orbits
//! of the dual endomorphism on rational points of the torus.

mod checks;
mod odometer;
mod torus;

pub use checks::{crt_bijectivity, kernel_intersection_check, odometer_checks, ELEMENT_CAP};
pub use odometer::{
    all_elements, crt_decompose, digit_reps, CrtSystem, DigitSystem, ProfiniteElement, MAX_DIGITS,
};
pub use torus::{
    apply_alpha, kernel_points, orbit_product_check, orbit_segment, same_orbit, OrbitProductReport,
    OrbitVerdict, RationalTorusPoint,
};

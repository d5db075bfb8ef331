//! Grid certificates and the monomial-dilatation suites.

mod certificates;
mod grid;
mod report;
mod theorem;

pub use certificates::{
    boundary_extrema_count, boundary_extrema_count_with, convexity_check,
    direction_convexity_certificate, rz_check, rz_expression, sense_preserving_check,
    sup_modulus, RzLattice, DERIVATIVE_EPSILON, FLAT_DIFFERENCE,
};
pub use grid::{circle_points, SampleGrid};
pub use report::{CheckReport, Criterion};
pub use theorem::{
    bound_expression, boundary_gap, counterexample_search, theorem_bound,
    verify_monomial_theorem, verify_monomial_theorem_with, BOUNDARY_SAMPLES,
};

/// Certificate tolerance.
pub const TOLERANCE: f64 = 1e-7;

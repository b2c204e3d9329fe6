//! Exact rational linear algebra and polyhedral geometry.
//!
//! Nothing in this module uses floating point: face accessibility and argmax
//! sets change discontinuously with the direction, so approximate answers are
//! worthless here.

mod cells;
mod hull;
mod linalg;
mod lp;
mod matrix;
mod snf;

pub use cells::{canonical_direction, direction_cells, Direction};
pub use hull::{convex_hull, convex_hull_faces, minkowski_sum, Face, Polytope};
pub use linalg::{nullspace, rank, rref, solve, QMat};
pub use lp::{
    check_farkas, lp_minimize, lp_positive_meet, LpOutcome, PositiveMeet,
};
pub use matrix::IntMatrix;
pub use snf::{hermite_normal_form, lattice_basis, smith_normal_form, Snf};

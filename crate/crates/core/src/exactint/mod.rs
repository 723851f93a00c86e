//! Exact integer matrix algebra: Smith and Hermite normal forms with
//! transform tracking, Bareiss determinants, and lattice membership.

mod det;
mod hnf;
mod matrix;
mod snf;

pub use det::determinant;
pub use hnf::{hermite_normal_form, lattice_contains, Lattice};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SnfDecomposition};

//! Critical groups of finite multidigraphs and of their directed line graphs.
//!
//! The surjection `K(LG, e*) → K(G, w*)` induced by the map `ρ` is built
//! explicitly at the level of integer presentations, and every claim about it
//! (well-definedness, surjectivity, kernel equal to the k-torsion subgroup
//! for k-out-regular graphs) is checked with exact arithmetic.

pub mod abelian;
pub mod critical;
pub mod digraph;
pub mod error;
pub mod exactint;
pub mod fuzz;

pub use abelian::{AbelianGroup, GroupElement, GroupHom, Order, Subgroup};
pub use digraph::{BasePoint, Multidigraph};
pub use error::{Error, Result};
pub use exactint::IntMatrix;

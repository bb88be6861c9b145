//! Combinatorics of the completed discrete cluster category: arcs on a circle
//! with accumulation points, limit generators, extended dissections of the
//! disc, piano quivers and their graded path algebras.

pub mod cyclic_geometry;
pub mod derived_equivalence;
pub mod endomorphism_rings;
pub mod error;
pub mod generators;
pub mod hom_calculus;
pub mod quiver_algebras;
pub mod render;
pub mod surface_dissections;

pub use error::{Error, Result};

//! Exact cohomology of moment-angle manifolds and polyhedral products over
//! nice manifolds with corners, with brute-force oracles.

pub mod cli;
pub mod coeffs;
pub mod corners;
pub mod corpus;
pub mod delta;
pub mod face_ring;
pub mod group;
pub mod hochster;
pub mod index_set;
pub mod oracle;
pub mod rings;
pub mod series;

pub use coeffs::Coeffs;
pub use group::{AbelianGroup, GradedAbelianGroup};
pub use index_set::IndexSet;

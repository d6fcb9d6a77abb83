//! Δ-complexes and exact chain-level machinery.

pub mod chain;
pub mod cohomology;
pub mod complex;
pub mod cup;
pub mod glue;
pub mod matrix;
pub mod snf;
pub mod subcomplex;

use thiserror::Error;

pub use chain::{ChainComplex, CochainComplex, RelativeCells};
pub use cohomology::{relative_cohomology, CohomologyBasis, DegreeBasis};
pub use complex::{DeltaComplex, Simplex, SimplexRef};
pub use cup::{cup_product, relative_cup_product};
pub use glue::{glue, GlueResult, Identification};
pub use matrix::{DenseMatrix, SparseMatrix};
pub use snf::{smith_form, smith_normal_form, SmithForm, Track};
pub use subcomplex::Subcomplex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeltaError {
    #[error("{dim}-simplex {index} has {found} faces, expected {expected}")]
    FaceCount { dim: usize, index: usize, expected: usize, found: usize },
    #[error("{dim}-simplex {index} refers to face {face}, but there are only {count} simplices one dimension down")]
    FaceOutOfRange { dim: usize, index: usize, face: usize, count: usize },
    #[error("{dim}-simplex {index} violates d_{i} d_{j} = d_{} d_{i}", j - 1)]
    SimplicialIdentity { dim: usize, index: usize, i: usize, j: usize },
    #[error("boundary maps do not compose to zero at degree {0}")]
    BoundarySquare(usize),
    #[error("boundary matrix shapes do not chain at degree {0}")]
    ShapeMismatch(usize),
    #[error("simplex ({0}, {1}) is out of range")]
    SimplexOutOfRange(usize, usize),
    #[error("subcomplex is not closed: ({dim}, {index}) is a member but its face {face} is not")]
    NotClosed { dim: usize, index: usize, face: usize },
    #[error("subcomplex shape does not match the parent complex")]
    ParentMismatch,
    #[error("cochain of degree {0} has the wrong length")]
    CochainLength(usize),
    #[error("cochain of degree {0} is not a cocycle")]
    NotCocycle(usize),
    #[error("cochain of degree {0} does not vanish on the required subcomplex")]
    DoesNotVanish(usize),
    #[error("pairs are not nested")]
    NotNested,
    #[error("coefficient rings differ")]
    CoeffMismatch,
    #[error("identification of sheet {sheet_a} with sheet {sheet_b}: {reason}")]
    BadIdentification { sheet_a: usize, sheet_b: usize, reason: String },
    #[error("identified simplices of dimension {dim} have incompatible faces")]
    IncompatibleFaces { dim: usize },
    #[error("gluing identifies two distinct simplices of sheet {sheet} in dimension {dim}")]
    SheetCollision { sheet: usize, dim: usize },
}

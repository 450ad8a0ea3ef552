//! Exact integer linear algebra: Smith normal form, finitely generated
//! abelian groups and homology of integer chain complexes.

mod group;
mod lattice;
mod matrix;
mod snf;

pub use group::{iso_check, tensor, FgAbelianGroup};
pub use lattice::{
    columns_in_span, homology_at, homology_with_relations, kernel_basis, lattice_basis, LatticeSolver,
    Subquotient,
};
pub use matrix::IntegerMatrix;
pub use snf::{smith_decompose, smith_diagonal, smith_normal_form, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AbelianError {
    #[error("differentials do not compose to zero")]
    CompositionNonzero,
    #[error("matrix dimensions do not chain")]
    DimensionMismatch,
    #[error("vector is not a cycle of the subquotient")]
    NotACycle,
    #[error("invariant factor {0} does not fit in 64 bits")]
    Overflow(String),
}

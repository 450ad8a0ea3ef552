//! Mackey functors for `C_n`: symbolic box-product expressions, concrete
//! level tables, axiom checks, induction from a subgroup and comparison of
//! tables up to the invariants that an isomorphism preserves.

mod check;
mod exact;
mod expr;
mod fingerprint;
mod induce;
mod io;
mod table;

pub use check::{check_axioms, AxiomReport, Violation};
pub use exact::{exactness_witness, iota_cokernel, ExactnessReport};
pub use expr::{Factor, MackeyAtom, MackeyExpr};
pub use fingerprint::{fingerprint, map_kernel_cokernel, tables_match, MapInvariant, TableFingerprint};
pub use induce::induce_orbit;
pub use io::{table_from_json, table_to_json, TABLE_SCHEMA};
pub use table::{concretize, covers, Level, MackeyTable};

use crate::abelian::AbelianError;
use crate::repring::RepError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MackeyError {
    #[error("expected {expected} factors, one per prime, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("bracket order {order} is neither 0 nor the prime {prime}")]
    BadBracket { prime: u64, order: u64 },
    #[error("inconsistent table: {0}")]
    Shape(String),
    #[error("malformed table file: {0}")]
    Format(String),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

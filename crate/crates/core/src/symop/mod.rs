//! Exact symbolic first-order differential operators over `z, z̄, ζ, ζ̄`, the
//! named generator catalogs, and the algebra tables built from them.

mod algebra;
mod catalog;
mod diffop;
mod gaussian;
mod poly;
mod published;

use thiserror::Error;

pub use algebra::{
    adjoint_from_constants, adjoint_is_representation, adjoint_rep, commutator_table, express,
    ideal_check, is_closed, is_heisenberg_triple, jacobi_violations, structure_constants,
    AlgebraElement, Closure, ClosureWitness, CommutatorTable, StructureConstants,
};
pub use catalog::{generator, Catalog};
pub use diffop::{commutator, commutator_full, compose, DiffOperator, ParseOperatorError, SecondOrderOperator};
pub use gaussian::{GaussianRational, ParseGaussianError};
pub use poly::{Monomial, Polynomial, Var};
pub use published::{
    published_table, verify_against_paper, verify_table, DiscrepancyEntry, DiscrepancyReport,
    PublishedTable,
};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SymopError {
    #[error("index {index} is out of range for catalog {catalog}")]
    UnknownIndex { catalog: Catalog, index: usize },
    #[error("unknown catalog '{0}'")]
    UnknownCatalog(String),
    #[error("commutator {witness} leaves the span")]
    NotClosed { witness: DiffOperator },
    #[error("basis is linearly dependent")]
    DependentBasis,
}

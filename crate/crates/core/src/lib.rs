//! Nil-Hecke algebras `nH(W, d, J0)` of Coxeter systems.
//!
//! The crate enumerates monomial bases by braid-class closure, runs an exact
//! Coxeter-group backend for `d = (2, …, 2)`, classifies finite-dimensionality,
//! studies primitive elements and Frobenius structure, and verifies diagram
//! modules that witness infinite rank.

pub mod algebra;
pub mod classifier;
pub mod coxsys;
pub mod diagmod;
pub mod groupmodel;
pub mod linalg;
pub mod signedperm;
pub mod sysfile;
pub mod wordengine;

pub use algebra::{BasisTable, PrimitivityReport};
pub use classifier::{classify, ClassificationResult, DimInfo, Verdict};
pub use coxsys::{
    compile, g29_presentation, recognize_type, standard_system, CoxeterMatrix, Cutoff, Gen,
    GeneralPresentation, NilHeckeParams, Relation, StandardFamily, Truncation, Word,
};
pub use diagmod::{ModuleDiagram, VerificationReport};
pub use wordengine::{BasisEnumeration, Budget, Status};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    Param(String),
    #[error("Coxeter graph is disconnected")]
    Disconnected,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("malformed diagram: {0}")]
    Structure(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid file: {0}")]
    File(String),
}

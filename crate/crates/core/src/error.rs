use thiserror::Error;

use crate::parse::ParseError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("ring mismatch: `{0}` vs `{1}`")]
    RingMismatch(String, String),
    #[error("{0}")]
    BadRing(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("singular coordinate change")]
    SingularChange,
    #[error("coordinate change has size {got}, ring has {expected} variables")]
    ChangeSize { expected: usize, got: usize },
    #[error("cannot map `{0}` into the target ring")]
    NotRepresentable(String),
}

/// Top-level error for the library's fallible entry points.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Module(#[from] crate::modules::ModuleError),
    #[error(transparent)]
    Complex(#[from] crate::complexes::ComplexError),
    #[error(transparent)]
    Linkage(#[from] crate::linkage::LinkageError),
    #[error(transparent)]
    Weier(#[from] crate::weier::WeierError),
    #[error(transparent)]
    Groebner(#[from] crate::groebner::GroebnerError),
}

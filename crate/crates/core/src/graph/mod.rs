//! Stable graphs in the half-edge formalism, canonical forms, and a
//! brute-force census of decorated graphs whose orbit counts give
//! characters to compare against the series.

pub mod canon;
pub mod census;
pub mod enumerate;
pub mod halfedge;
pub mod orbit;

use thiserror::Error;

pub use canon::{canonical_code, canonical_form, Canonical};
pub use census::{
    char_of_census, char_of_census_with, cyclic_necklace_char_oracle, mv_char,
    necklace_char_oracle, tree_char_oracle, write_census_jsonl,
};
pub use enumerate::{
    enumerate_decorated, enumerate_decorated_with, Budget, CensusClass, Family, IsoClassSet,
};
pub use halfedge::{DecoratedGraph, Decoration, HalfEdgeGraph, Mark};
pub use orbit::hom_char;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no legs")]
    NoLegs,
    #[error("unsupported number of legs: {0}")]
    InvalidLegCount(usize),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid module spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Sym(#[from] crate::sym::SymError),
}

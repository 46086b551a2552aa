//! Combinatorics of simplicial sets stratified over a finite poset.
//!
//! The crate provides a finite-simplicial-set engine (normal forms, products,
//! colimits, barycentric subdivision, map enumeration, integral homology) and
//! on top of it the stratified constructions: stratified simplices, horns and
//! admissibility, links and truncated homotopy links, stratified subdivision
//! with its last-vertex map and right adjoint, pairings certifying strong
//! anodyne extensions, labelled simplicial sets and verticalization, diagrams
//! indexed by regular flags, and a per-flag weak-equivalence probe.

pub mod acceptance;
pub mod chains;
pub mod colimit;
pub mod corpus;
pub mod diagrams;
pub mod enumerate;
pub mod exec;
pub mod homology;
pub mod iso;
pub mod json;
pub mod links;
pub mod pairing;
pub mod poset;
pub mod product;
pub mod sd;
pub mod smap;
pub mod sset;
pub mod stratified;
pub mod subdivision;
pub mod vertical;
pub mod weq;
pub mod word;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("combinatorial budget exceeded (limit {limit}) in {context}")]
    BudgetExceeded { limit: u64, context: String },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("diagram is not cofibrant: {0}")]
    NotCofibrant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use enumerate::Budget;
pub use homology::HomologyReport;
pub use poset::{Flag, Poset, RegularFlag};
pub use smap::SimplicialMap;
pub use sset::{SimplexRef, SimplicialSet};
pub use stratified::{StratifiedMap, StratifiedSimplicialSet};

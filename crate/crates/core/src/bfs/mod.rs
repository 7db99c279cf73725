//! Branching function systems on finite truncations of countable sets.
//!
//! A truncated system records each partial injection `f_i` only where both
//! the point and its image lie inside the carrier. Points whose axiom data
//! (an image under some `f_i`, or the preimage) falls outside are *frontier*
//! points; axioms and components are asserted only on the rest.

mod components;
mod construct;
mod dump;
mod standard;
mod system;

pub use components::{find_components, ComponentKind, ComponentSkeleton};
pub use construct::{
    build_chain_system, build_cycle_system, naive_cycle_system, naive_product_system, shift_bfs,
    standard_bfs, ChainWord, GeneratedWord,
};
pub use standard::{a_coordinate, a_cycle_set, phi_map, ACoordinate, ACycleSet, RowCoordinate};
pub use system::{
    coding_map, direct_sum, direct_sum_all, validate_bfs, validate_bfs_with, BranchingSystem,
    CodingMap, DeclaredChain, ValidationReport, Violation,
};

use thiserror::Error;

use crate::words::WordError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BfsError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("point {0} is a frontier point; its coding data lies outside the truncation")]
    UnresolvedPoint(usize),
    #[error("systems are over different matrices")]
    MatrixMismatch,
    #[error("word {0} is not cyclically admissible")]
    NotCyclicallyAdmissible(String),
    #[error("chain word is not admissible: {0}")]
    NotAdmissible(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("point {point} out of range (carrier has {len} points)")]
    PointOutOfRange { point: usize, len: usize },
    #[error("symbol {symbol} maps point {point} twice")]
    ConflictingEdge { symbol: usize, point: usize },
    #[error("malformed system dump at line {line}: {message}")]
    Dump { line: usize, message: String },
}

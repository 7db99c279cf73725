//! Permutative representations: realizations of `π_f`, the Cuntz–Krieger
//! relations, classes `P(J; z)` and `P(K)`, decompositions, gauge twists and
//! states.

mod class;
mod decompose;
mod phase;
mod realize;
mod state;

pub use class::{
    equivalent, expand_irreducible, is_irreducible, twist_by_gauge, Decomposition, Level,
    Multiplicity, RepClass, Unresolved,
};
pub use decompose::{
    classify_component, cross_check_standard, decompose, decompose_shift, decompose_standard,
    standard_is_irreducible, standard_is_multiplicity_free, StandardCount, StandardCrossCheck,
};
pub use phase::{Phase, PHASE_TOLERANCE};
pub use realize::{
    realize, verify_ck_relations, verify_ck_relations_with, MatrixRealization, RelationReport,
    RelationViolation, Scalar,
};
pub use state::{gp_vector_check, is_pure, state_value, GpReport};

use thiserror::Error;

use crate::bfs::BfsError;
use crate::words::WordError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Bfs(#[from] BfsError),
    #[error("phase assigned to s_{symbol} at point {point}, outside its domain")]
    PhaseOffDomain { symbol: usize, point: usize },
    #[error("invalid phase: {0}")]
    InvalidPhase(String),
    #[error("component is not resolved inside the truncation")]
    UnresolvedComponent,
    #[error("operation is not defined for direct-integral classes")]
    IntegralClassUnsupported,
    #[error("state values are only defined for phase 1")]
    PhaseUnsupported,
    #[error("gauge has {got} phases; symbol {needed} needs one")]
    GaugeLength { needed: usize, got: usize },
    #[error("generator prefix too short: need {needed} letters, know {known}")]
    PrefixTooShort { needed: usize, known: usize },
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

//! Exact combinatorics of multiindices over a transition matrix.

pub(crate) mod enumerate;
mod matrix;
mod tail;
mod word;

pub use enumerate::{
    enumerate_cyclic_classes, enumerate_cyclic_classes_with, pspec_summary, tree, CyclicClass,
    PspecSummary, TreeNodeSet, TreeSide,
};
pub use matrix::TransitionMatrix;
pub use tail::{tail_canonical, words_equivalent_infinite, TailWord};
pub use word::{words_equivalent_finite, Symbol, Word};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("matrix must have at least 2 symbols")]
    TooSmall,
    #[error("matrix is not square (row {row} has {len} entries, expected {expected})")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry ({row},{col}) is not 0 or 1")]
    NonBinaryEntry { row: usize, col: usize },
    #[error("row {0} is identically zero")]
    ZeroRow(usize),
    #[error("column {0} is identically zero")]
    ZeroColumn(usize),
    #[error("word must be nonempty")]
    EmptyWord,
    #[error("symbol {symbol} is outside 1..={n}")]
    SymbolOutOfRange { symbol: Symbol, n: usize },
    #[error("words have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("word {0} is not admissible")]
    NotAdmissible(String),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

//! Permutative representations of Cuntz–Krieger algebras `O_A`.
//!
//! The crate is organised bottom-up:
//!
//! * [`words`]: admissible multiindices over a transition matrix, cyclic
//!   canonical forms, tail equivalence, enumeration of cyclic classes and the
//!   finiteness verdict for the permutative spectrum.
//! * [`bfs`]: branching function systems on finite truncations of countable
//!   sets: axiom validation, coding map, cycle/chain components, and the
//!   explicit constructions (cycle and chain systems, the standard system, the
//!   shift system).
//! * [`rep`]: the representation layer: sparse realizations of `π_f`,
//!   Cuntz–Krieger relation checks, classification into `P(J;z)` / `P(K)`,
//!   decomposition reports, gauge twists and state values.
//! * [`report`]: deterministic text and JSON rendering plus the literal
//!   syntax shared with the `ck` command-line tool.
//!
//! Symbols are 1-based throughout; the empty word is the unit index.

pub mod bfs;
pub mod cyclotomic;
pub mod par;
pub mod rep;
pub mod report;
pub mod words;

pub use par::Strategy;

pub use bfs::{BfsError, BranchingSystem};
pub use rep::{Decomposition, Multiplicity, Phase, RepClass, RepError};
pub use words::{TailWord, TransitionMatrix, Word, WordError};

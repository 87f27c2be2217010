//! Finite automaton models of quantized systems.
//!
//! * [`automaton`]: deterministic Mealy automata.
//! * [`experiments`]: state partitions induced by input words, the finest
//!   ones, and complementarity between experiments.
//! * [`logic`]: partition logics by pasting or horizontal sum, two-valued
//!   states, and the automaton reconstructed from a logic.
//! * [`urn`]: generalized urn models and the translation to/from automata.
//! * [`reversible`]: automata whose combined transition/output map is a
//!   permutation.
//! * [`counterfactual`]: seeded preparation/measurement automata.
//! * [`nits`]: complete sets of comeasurable nits.
//! * [`catalog`]: the canonical worked examples.

pub mod automaton;
pub mod catalog;
pub mod counterfactual;
pub mod error;
pub mod experiments;
pub mod logic;
pub mod nits;
pub mod partition;
pub mod reversible;
pub mod urn;

pub use automaton::{AutomatonTables, MealyAutomaton, Word};
pub use error::{Diagnostic, Error, Result};
pub use logic::{Mode, PartitionLogic, TwoValuedState};
pub use partition::Partition;

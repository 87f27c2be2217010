use std::fmt;

/// A single violated automaton invariant, with the offending coordinate
/// where there is one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    EmptyStates,
    EmptyInputs,
    EmptyOutputs,
    DuplicateState(String),
    DuplicateInput(String),
    DuplicateOutput(String),
    MissingRow { table: Table, state: usize },
    MissingEntry { table: Table, state: usize, input: usize },
    ExtraEntries { table: Table, state: usize },
    ExtraRows { table: Table },
    TransitionOutOfRange { state: usize, input: usize, target: usize },
    OutputOutOfRange { state: usize, input: usize, output: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table {
    Delta,
    Lambda,
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Table::Delta => f.write_str("delta"),
            Table::Lambda => f.write_str("lambda"),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::EmptyStates => f.write_str("state set is empty"),
            Diagnostic::EmptyInputs => f.write_str("input set is empty"),
            Diagnostic::EmptyOutputs => f.write_str("output set is empty"),
            Diagnostic::DuplicateState(l) => write!(f, "duplicate state label {l:?}"),
            Diagnostic::DuplicateInput(l) => write!(f, "duplicate input label {l:?}"),
            Diagnostic::DuplicateOutput(l) => write!(f, "duplicate output label {l:?}"),
            Diagnostic::MissingRow { table, state } => {
                write!(f, "{table} table has no row for state {state}")
            }
            Diagnostic::MissingEntry { table, state, input } => {
                write!(f, "{table} table is missing entry ({state}, {input})")
            }
            Diagnostic::ExtraEntries { table, state } => {
                write!(f, "{table} row {state} has more entries than inputs")
            }
            Diagnostic::ExtraRows { table } => write!(f, "{table} table has more rows than states"),
            Diagnostic::TransitionOutOfRange { state, input, target } => write!(
                f,
                "transition target out of range at ({state}, {input}): {target}"
            ),
            Diagnostic::OutputOutOfRange { state, input, output } => {
                write!(f, "output out of range at ({state}, {input}): {output}")
            }
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid automaton: {}", join(.0))]
    InvalidAutomaton(Vec<Diagnostic>),
    #[error("unknown state {0}")]
    UnknownState(usize),
    #[error("unknown input {0}")]
    UnknownInput(usize),
    #[error("word is empty")]
    EmptyWord,
    #[error("partitions are over different ground sets ({0} vs {1})")]
    GroundMismatch(usize, usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("logic has no contexts")]
    NoContexts,
    #[error("contexts {0} and {1} are identical")]
    DuplicateContext(usize, usize),
    #[error("operation requires a set-identified (pasted) logic")]
    ModeMismatch,
    #[error("search space of {size} exceeds the limit {limit}")]
    SearchTooLarge { size: u128, limit: u128 },
    #[error("not reversible: outputs ≠ inputs")]
    OutputsDifferFromInputs,
    #[error("not reversible: combined map is not a bijection on S×I")]
    NotReversible,
    #[error("permutation of length {len} does not match {states} states × {inputs} inputs")]
    SizeMismatch { len: usize, states: usize, inputs: usize },
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid urn model: {0}")]
    InvalidUrn(String),
    #[error("invalid translation: {0}")]
    InvalidTranslation(String),
    #[error("value {value} outside 1..={n}")]
    ValueOutOfRange { value: usize, n: usize },
    #[error("unknown mode {0}")]
    UnknownMode(usize),
    #[error("invalid base or particle count: {0}")]
    InvalidShape(String),
    #[error("tessellation needs exactly two nits, got {0}")]
    TessellationArity(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

fn join(diags: &[Diagnostic]) -> String {
    diags.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;

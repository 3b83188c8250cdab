//! Error types shared across the crate.

use thiserror::Error;

/// Errors from graph construction and graph-level queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex count {0} outside supported range 1..=64")]
    InvalidOrder(usize),
    #[error("vertex index {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("combined order {0} exceeds 64 vertices")]
    TooLarge(usize),
    #[error("reference set is empty")]
    EmptyReferenceSet,
}

/// Errors from the graph6 codec.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 line")]
    Empty,
    #[error("byte {byte:#04x} at column {column} outside the graph6 range 63..=126")]
    InvalidByte { column: usize, byte: u8 },
    #[error("truncated graph6 line: expected {expected} payload bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing data: expected {expected} payload bytes, found {found}")]
    TrailingData { expected: usize, found: usize },
    #[error("nonzero padding bits in final payload byte")]
    Padding,
    #[error("graph6 order {0} outside supported range 1..=64")]
    UnsupportedOrder(usize),
}

/// Errors from family constructors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameter for {family}: {reason}")]
    Parameter { family: &'static str, reason: String },
    #[error("substitution target {0} assigned more than once")]
    DuplicateAssignment(usize),
    #[error("graphs E and F are unavailable: derive them first")]
    DerivedUnavailable,
    #[error("derived store is malformed: {0}")]
    DerivedStore(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Errors from isomorph-free generation and graph6 import.
#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error("built-in generation supports orders 1..=8, got {0}")]
    UnsupportedOrder(usize),
    #[error("order {0} not present in the census source")]
    MissingOrder(usize),
    #[error("line {line}: {source}")]
    Import {
        line: usize,
        #[source]
        source: Graph6Error,
    },
    #[error("census cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Errors from theorem verification and the constructive procedures.
#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("the given set is not a locating-dominating set of the graph")]
    NotLdSet,
    #[error("derivation expected exactly 2 remaining classes, found {count}: {forms:?}")]
    DeriveAmbiguous { count: usize, forms: Vec<String> },
    #[error("derivation did not find the known class {0} in the census")]
    DeriveMissingKnown(String),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

//! Error types shared across the compiler pipeline.

use thiserror::Error;

/// Errors produced by formula construction, parsing, synthesis, lowering and
/// simulation.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed textual input (DIMACS, `.ecnf`, expression grammar).
    #[error("parse error at {location}: {message}")]
    Parse { location: Location, message: String },

    /// Structurally invalid in-memory data (bad literal, length mismatch, ...).
    #[error("invalid input: {0}")]
    Input(String),

    /// A monomial of the form `x ∧ ¬x`; callers usually drop it with a warning.
    #[error("monomial is constant zero (contains a variable in both polarities)")]
    ConstantZeroMonomial,

    /// A resource cap was exceeded (brute-force vars, simulator qubits, ancilla pool).
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A transform was asked to encode a shape it does not support.
    #[error("encoding error: {0}")]
    Encoding(String),

    /// Circuit construction violated an IR invariant (index range, overlap).
    #[error("circuit construction error: {0}")]
    Construction(String),

    /// Oracle synthesis was given a degenerate formula (no clauses, empty clause).
    #[error("synthesis error: {0}")]
    Synthesis(String),

    /// A measurement or emission step requires a fully lowered circuit.
    #[error("circuit is not lowered: {0}")]
    NotLowered(String),

    /// The formula has no models; Grover iteration planning is undefined.
    #[error("formula is unsatisfiable")]
    Unsat,

    /// An internal invariant was violated; indicates a bug, not bad input.
    #[error("internal invariant breached: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Where a parse error occurred: a 1-based line for line-oriented formats,
/// a 0-based byte offset for the expression grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Line(usize),
    Byte(usize),
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Location::Line(n) => write!(f, "line {n}"),
            Location::Byte(n) => write!(f, "byte {n}"),
        }
    }
}

impl Error {
    pub(crate) fn parse_line(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            location: Location::Line(line),
            message: message.into(),
        }
    }

    pub(crate) fn parse_byte(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            location: Location::Byte(offset),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

//! Bit-exact readers and writers for DIMACS CNF, the `.ecnf` text format,
//! and the infix Boolean-expression grammar.

mod dimacs;
mod ecnf;
mod expr;

pub use dimacs::{parse_dimacs, write_dimacs};
pub use ecnf::{parse_ecnf, write_ecnf};
pub use expr::parse_expr;

/// Input format selector for the front end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceFormat {
    DimacsCnf,
    EcnfText,
    Expr,
}

impl SourceFormat {
    /// Infers the format from a file extension; `None` when unknown.
    pub fn from_extension(ext: &str) -> Option<Self> {
        match ext {
            "cnf" | "dimacs" => Some(SourceFormat::DimacsCnf),
            "ecnf" => Some(SourceFormat::EcnfText),
            "expr" | "bexpr" => Some(SourceFormat::Expr),
            _ => None,
        }
    }
}

impl std::fmt::Display for SourceFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SourceFormat::DimacsCnf => write!(f, "dimacs-cnf"),
            SourceFormat::EcnfText => write!(f, "ecnf-text"),
            SourceFormat::Expr => write!(f, "expr"),
        }
    }
}

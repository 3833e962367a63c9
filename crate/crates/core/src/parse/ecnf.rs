//! The `.ecnf` text format, DIMACS-like by design:
//!
//! ```text
//! c optional comments
//! p ecnf <nvars> <nclauses>
//! <clause>            one per line, terminated by 0
//! ```
//!
//! A clause is monomials separated by the token `^`; a monomial is a run of
//! whitespace-separated signed integers (negative = complemented literal) or
//! the single token `T` for the constant-1 monomial.

use log::warn;

use crate::error::{Error, Result};
use crate::formula::{EcnfFormula, EsopClause, Literal, Monomial};

pub fn parse_ecnf(text: &str) -> Result<EcnfFormula> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<EsopClause> = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse_line(line_no, "duplicate header"));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "ecnf" {
                return Err(Error::parse_line(
                    line_no,
                    format!("malformed header '{line}', expected 'p ecnf <nvars> <nclauses>'"),
                ));
            }
            let nvars: u32 = fields[2]
                .parse()
                .map_err(|_| Error::parse_line(line_no, "invalid variable count"))?;
            let nclauses: usize = fields[3]
                .parse()
                .map_err(|_| Error::parse_line(line_no, "invalid clause count"))?;
            header = Some((nvars, nclauses));
            continue;
        }
        let Some((nvars, _)) = header else {
            return Err(Error::parse_line(line_no, "clause before header"));
        };
        clauses.push(parse_clause_line(line, line_no, nvars)?);
    }

    let Some((nvars, nclauses)) = header else {
        return Err(Error::parse_line(1, "missing 'p ecnf' header"));
    };
    if clauses.len() != nclauses {
        return Err(Error::parse_line(
            1,
            format!(
                "header declares {nclauses} clauses but body has {}",
                clauses.len()
            ),
        ));
    }
    EcnfFormula::new(nvars, clauses)
}

fn parse_clause_line(line: &str, line_no: usize, nvars: u32) -> Result<EsopClause> {
    let mut tokens: Vec<&str> = line.split_whitespace().collect();
    match tokens.pop() {
        Some("0") => {}
        _ => {
            return Err(Error::parse_line(
                line_no,
                "clause line must end with the terminator 0",
            ))
        }
    }
    if tokens.is_empty() {
        return Err(Error::parse_line(line_no, "empty clause"));
    }

    let mut monomials: Vec<Monomial> = Vec::new();
    for group in tokens.split(|t| *t == "^") {
        if group.is_empty() {
            return Err(Error::parse_line(
                line_no,
                "empty monomial between '^' separators",
            ));
        }
        if group == ["T"] {
            monomials.push(Monomial::one());
            continue;
        }
        let mut literals = Vec::with_capacity(group.len());
        for token in group {
            if *token == "T" {
                return Err(Error::parse_line(
                    line_no,
                    "'T' cannot be combined with literals in one monomial",
                ));
            }
            let value: i64 = token
                .parse()
                .map_err(|_| Error::parse_line(line_no, format!("unknown token '{token}'")))?;
            if value == 0 {
                return Err(Error::parse_line(line_no, "0 may only terminate the line"));
            }
            let lit = Literal::from_dimacs(value)?;
            if lit.var() > nvars {
                return Err(Error::parse_line(
                    line_no,
                    format!("literal {value} out of range (nvars = {nvars})"),
                ));
            }
            literals.push(lit);
        }
        match Monomial::new(literals) {
            Ok(m) => monomials.push(m),
            Err(Error::ConstantZeroMonomial) => {
                warn!("line {line_no}: dropping constant-zero monomial (x ∧ ¬x)");
            }
            Err(e) => {
                return Err(match e {
                    Error::Input(msg) => Error::parse_line(line_no, msg),
                    other => other,
                })
            }
        }
    }
    if monomials.is_empty() {
        return Err(Error::parse_line(
            line_no,
            "clause has no monomials left after dropping constant-zero terms",
        ));
    }
    EsopClause::new(monomials).map_err(|e| match e {
        Error::Input(msg) => Error::parse_line(line_no, msg),
        other => other,
    })
}

/// Writer matching the grammar above token for token:
/// `parse_ecnf(write_ecnf(f))` structurally equals the normalized `f`.
pub fn write_ecnf(f: &EcnfFormula) -> String {
    let mut out = String::new();
    out.push_str(&format!("p ecnf {} {}\n", f.num_vars(), f.clauses().len()));
    for clause in f.clauses() {
        let monomials: Vec<String> = clause
            .monomials()
            .iter()
            .map(|m| {
                if m.is_constant_one() {
                    "T".to_string()
                } else {
                    m.literals()
                        .iter()
                        .map(|l| l.to_dimacs().to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                }
            })
            .collect();
        out.push_str(&monomials.join(" ^ "));
        out.push_str(" 0\n");
    }
    out
}

//! DIMACS CNF reader/writer. Comments start with `c`, the header is
//! `p cnf <nvars> <nclauses>`, and each clause is a run of signed integers
//! terminated by `0` (clauses may span lines).

use crate::error::{Error, Result};
use crate::formula::{Clause, CnfFormula, Literal};

pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut open_clause_line = 0usize;

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
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                return Err(Error::parse_line(
                    line_no,
                    format!("malformed header '{line}', expected 'p cnf <nvars> <nclauses>'"),
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
        for token in line.split_whitespace() {
            let value: i64 = token
                .parse()
                .map_err(|_| Error::parse_line(line_no, format!("invalid token '{token}'")))?;
            if value == 0 {
                if current.is_empty() {
                    return Err(Error::parse_line(line_no, "empty clause"));
                }
                clauses.push(Clause::new(std::mem::take(&mut current))?);
            } else {
                if current.is_empty() {
                    open_clause_line = line_no;
                }
                let lit = Literal::from_dimacs(value)?;
                if lit.var() > nvars {
                    return Err(Error::parse_line(
                        line_no,
                        format!("literal {value} out of range (nvars = {nvars})"),
                    ));
                }
                current.push(lit);
            }
        }
    }

    let Some((nvars, nclauses)) = header else {
        return Err(Error::parse_line(1, "missing 'p cnf' header"));
    };
    if !current.is_empty() {
        return Err(Error::parse_line(
            open_clause_line,
            "clause is missing its terminating 0",
        ));
    }
    if clauses.len() != nclauses {
        return Err(Error::parse_line(
            1,
            format!(
                "header declares {nclauses} clauses but body has {}",
                clauses.len()
            ),
        ));
    }
    CnfFormula::new(nvars, clauses)
}

/// One clause per line, literals space-separated, `0`-terminated.
/// `parse_dimacs(write_dimacs(f)) == f`.
pub fn write_dimacs(f: &CnfFormula) -> String {
    let mut out = String::new();
    out.push_str(&format!("p cnf {} {}\n", f.num_vars(), f.clauses().len()));
    for clause in f.clauses() {
        for lit in clause.literals() {
            out.push_str(&format!("{} ", lit.to_dimacs()));
        }
        out.push_str("0\n");
    }
    out
}

//! Boolean formula representations: CNF (AND of OR-clauses), e-CNF (AND of
//! XOR-of-monomial clauses) and the operator AST, plus evaluation and
//! brute-force model counting.
//!
//! Variables are 1-based (DIMACS convention). Assignments are bit vectors
//! where slot `i` (or bit `i` of a mask) holds the value of variable `i + 1`.

mod expr;

pub use expr::BoolExpr;

use crate::error::{Error, Result};

/// Default cap on brute-force enumeration, in variables.
pub const DEFAULT_BRUTE_FORCE_CAP: u32 = 24;

/// A variable or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    var: u32,
    negated: bool,
}

impl Literal {
    pub fn new(var: u32, negated: bool) -> Result<Self> {
        if var == 0 {
            return Err(Error::Input("variable indices are 1-based".into()));
        }
        Ok(Literal { var, negated })
    }

    pub fn positive(var: u32) -> Result<Self> {
        Literal::new(var, false)
    }

    pub fn negative(var: u32) -> Result<Self> {
        Literal::new(var, true)
    }

    /// Builds a literal from a signed DIMACS integer (`-3` = ¬x3).
    pub fn from_dimacs(value: i64) -> Result<Self> {
        if value == 0 || value.unsigned_abs() > u32::MAX as u64 {
            return Err(Error::Input(format!("invalid DIMACS literal {value}")));
        }
        Literal::new(value.unsigned_abs() as u32, value < 0)
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn var(self) -> u32 {
        self.var
    }

    pub fn negated(self) -> bool {
        self.negated
    }

    pub fn complement(self) -> Self {
        Literal {
            var: self.var,
            negated: !self.negated,
        }
    }

    /// Value under an assignment mask (bit `var - 1` holds the variable).
    pub fn eval_mask(self, mask: u64) -> bool {
        let bit = (mask >> (self.var - 1)) & 1 == 1;
        bit != self.negated
    }
}

/// A disjunction of literals. Non-empty; duplicate (var, polarity) pairs are
/// removed at construction (first occurrence kept). A variable may appear in
/// both polarities, making the clause a tautology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Result<Self> {
        if literals.is_empty() {
            return Err(Error::Input("clause must not be empty".into()));
        }
        let mut seen: Vec<Literal> = Vec::with_capacity(literals.len());
        for lit in literals {
            if !seen.contains(&lit) {
                seen.push(lit);
            }
        }
        Ok(Clause { literals: seen })
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    /// Always false: clauses are non-empty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn eval_mask(&self, mask: u64) -> bool {
        self.literals.iter().any(|l| l.eval_mask(mask))
    }
}

/// A conjunction of literals, or the constant 1. Literals are stored sorted
/// by variable index; a variable appears at most once.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    literals: Vec<Literal>,
    is_constant_one: bool,
}

impl Monomial {
    /// The constant-1 monomial.
    pub fn one() -> Self {
        Monomial {
            literals: Vec::new(),
            is_constant_one: true,
        }
    }

    /// A conjunction of literals. Errors on an empty list, on a duplicated
    /// (var, polarity) pair, and with [`Error::ConstantZeroMonomial`] when a
    /// variable appears in both polarities (callers typically drop the
    /// monomial and warn).
    pub fn new(mut literals: Vec<Literal>) -> Result<Self> {
        if literals.is_empty() {
            return Err(Error::Input(
                "monomial must have at least one literal (use Monomial::one for the constant)"
                    .into(),
            ));
        }
        literals.sort_by_key(|l| (l.var, l.negated));
        for pair in literals.windows(2) {
            if pair[0].var == pair[1].var {
                if pair[0].negated == pair[1].negated {
                    return Err(Error::Input(format!(
                        "duplicate literal for variable {} in monomial",
                        pair[0].var
                    )));
                }
                return Err(Error::ConstantZeroMonomial);
            }
        }
        Ok(Monomial {
            literals,
            is_constant_one: false,
        })
    }

    pub fn from_literal(lit: Literal) -> Self {
        Monomial {
            literals: vec![lit],
            is_constant_one: false,
        }
    }

    pub fn is_constant_one(&self) -> bool {
        self.is_constant_one
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn eval_mask(&self, mask: u64) -> bool {
        self.is_constant_one || self.literals.iter().all(|l| l.eval_mask(mask))
    }
}

/// An XOR of monomials. Normalized: duplicate monomials cancel pairwise
/// (XOR), so no two stored monomials are equal; in particular at most one
/// constant-1 monomial remains. Monomial order is preserved (an odd survivor
/// keeps its first position).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EsopClause {
    monomials: Vec<Monomial>,
}

impl EsopClause {
    /// Normalizing constructor. Errors if the clause cancels to the empty
    /// XOR (constant 0), which would make the whole formula unsatisfiable.
    pub fn new(monomials: Vec<Monomial>) -> Result<Self> {
        if monomials.is_empty() {
            return Err(Error::Input("ESOP clause must not be empty".into()));
        }
        let mut tally: Vec<(Monomial, bool)> = Vec::with_capacity(monomials.len());
        for m in monomials {
            if let Some(entry) = tally.iter_mut().find(|(k, _)| *k == m) {
                entry.1 = !entry.1;
            } else {
                tally.push((m, true));
            }
        }
        let kept: Vec<Monomial> = tally
            .into_iter()
            .filter(|(_, odd)| *odd)
            .map(|(m, _)| m)
            .collect();
        if kept.is_empty() {
            return Err(Error::Input(
                "ESOP clause normalizes to constant 0 (all monomials cancel)".into(),
            ));
        }
        Ok(EsopClause { monomials: kept })
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn eval_mask(&self, mask: u64) -> bool {
        self.monomials
            .iter()
            .fold(false, |acc, m| acc ^ m.eval_mask(mask))
    }
}

/// AND of OR-clauses over variables `1..=num_vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: u32, clauses: Vec<Clause>) -> Result<Self> {
        for (idx, clause) in clauses.iter().enumerate() {
            for lit in clause.literals() {
                if lit.var() > num_vars {
                    return Err(Error::Input(format!(
                        "clause {} references variable {} > declared {}",
                        idx + 1,
                        lit.var(),
                        num_vars
                    )));
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn eval_mask(&self, mask: u64) -> bool {
        self.clauses.iter().all(|c| c.eval_mask(mask))
    }

    /// Evaluates under an explicit assignment; errors on length mismatch.
    pub fn eval(&self, assignment: &[bool]) -> Result<bool> {
        Ok(self.eval_mask(assignment_mask(assignment, self.num_vars)?))
    }

    pub fn count_models(&self) -> Result<ModelCount> {
        count_models_impl(self.num_vars, DEFAULT_BRUTE_FORCE_CAP, |m| {
            self.eval_mask(m)
        })
    }

    pub fn count_models_capped(&self, cap: u32) -> Result<ModelCount> {
        count_models_impl(self.num_vars, cap, |m| self.eval_mask(m))
    }
}

/// AND of ESOP clauses over variables `1..=num_vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EcnfFormula {
    num_vars: u32,
    clauses: Vec<EsopClause>,
}

impl EcnfFormula {
    pub fn new(num_vars: u32, clauses: Vec<EsopClause>) -> Result<Self> {
        for (idx, clause) in clauses.iter().enumerate() {
            for mono in clause.monomials() {
                for lit in mono.literals() {
                    if lit.var() > num_vars {
                        return Err(Error::Input(format!(
                            "clause {} references variable {} > declared {}",
                            idx + 1,
                            lit.var(),
                            num_vars
                        )));
                    }
                }
            }
        }
        Ok(EcnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[EsopClause] {
        &self.clauses
    }

    pub fn eval_mask(&self, mask: u64) -> bool {
        self.clauses.iter().all(|c| c.eval_mask(mask))
    }

    pub fn eval(&self, assignment: &[bool]) -> Result<bool> {
        Ok(self.eval_mask(assignment_mask(assignment, self.num_vars)?))
    }

    pub fn count_models(&self) -> Result<ModelCount> {
        count_models_impl(self.num_vars, DEFAULT_BRUTE_FORCE_CAP, |m| {
            self.eval_mask(m)
        })
    }

    pub fn count_models_capped(&self, cap: u32) -> Result<ModelCount> {
        count_models_impl(self.num_vars, cap, |m| self.eval_mask(m))
    }
}

/// Either source language of the compiler.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Cnf(CnfFormula),
    Ecnf(EcnfFormula),
}

impl Formula {
    pub fn num_vars(&self) -> u32 {
        match self {
            Formula::Cnf(f) => f.num_vars(),
            Formula::Ecnf(f) => f.num_vars(),
        }
    }

    pub fn num_clauses(&self) -> usize {
        match self {
            Formula::Cnf(f) => f.clauses().len(),
            Formula::Ecnf(f) => f.clauses().len(),
        }
    }

    pub fn eval_mask(&self, mask: u64) -> bool {
        match self {
            Formula::Cnf(f) => f.eval_mask(mask),
            Formula::Ecnf(f) => f.eval_mask(mask),
        }
    }

    pub fn count_models(&self) -> Result<ModelCount> {
        self.count_models_capped(DEFAULT_BRUTE_FORCE_CAP)
    }

    pub fn count_models_capped(&self, cap: u32) -> Result<ModelCount> {
        match self {
            Formula::Cnf(f) => f.count_models_capped(cap),
            Formula::Ecnf(f) => f.count_models_capped(cap),
        }
    }
}

/// Result of exhaustive enumeration: `count == assignments.len()`, with
/// assignments listed as bit masks in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelCount {
    pub count: u64,
    pub assignments: Vec<u64>,
}

fn count_models_impl(num_vars: u32, cap: u32, eval: impl Fn(u64) -> bool) -> Result<ModelCount> {
    if num_vars > cap {
        return Err(Error::Capacity(format!(
            "brute-force enumeration over {num_vars} variables exceeds cap {cap}"
        )));
    }
    if num_vars > 48 {
        return Err(Error::Capacity(format!(
            "brute-force enumeration over {num_vars} variables is not supported"
        )));
    }
    let total: u64 = 1u64 << num_vars;
    let mut assignments = Vec::new();
    for mask in 0..total {
        if eval(mask) {
            assignments.push(mask);
        }
    }
    Ok(ModelCount {
        count: assignments.len() as u64,
        assignments,
    })
}

/// Converts a bool-slice assignment into a mask, checking the length.
pub fn assignment_mask(assignment: &[bool], num_vars: u32) -> Result<u64> {
    if assignment.len() != num_vars as usize {
        return Err(Error::Input(format!(
            "assignment has {} entries, formula has {} variables",
            assignment.len(),
            num_vars
        )));
    }
    let mut mask = 0u64;
    for (i, &bit) in assignment.iter().enumerate() {
        if bit {
            mask |= 1 << i;
        }
    }
    Ok(mask)
}

//! Operator AST for Boolean expressions, the front end of the Tseitin and
//! e-CNF transforms.

use crate::error::{Error, Result};

/// A Boolean expression over 1-based variables. `Iff` is XNOR; `Implies` is
/// material implication (¬a ∨ b).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoolExpr {
    Var(u32),
    Const(bool),
    Not(Box<BoolExpr>),
    And(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
    Xor(Box<BoolExpr>, Box<BoolExpr>),
    Iff(Box<BoolExpr>, Box<BoolExpr>),
    Implies(Box<BoolExpr>, Box<BoolExpr>),
}

impl BoolExpr {
    pub fn var(index: u32) -> Self {
        assert!(index >= 1, "variable indices are 1-based");
        BoolExpr::Var(index)
    }

    #[allow(clippy::should_implement_trait)] // constructor by value, next to and/or/xor
    pub fn not(e: BoolExpr) -> Self {
        BoolExpr::Not(Box::new(e))
    }

    pub fn and(a: BoolExpr, b: BoolExpr) -> Self {
        BoolExpr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: BoolExpr, b: BoolExpr) -> Self {
        BoolExpr::Or(Box::new(a), Box::new(b))
    }

    pub fn xor(a: BoolExpr, b: BoolExpr) -> Self {
        BoolExpr::Xor(Box::new(a), Box::new(b))
    }

    pub fn iff(a: BoolExpr, b: BoolExpr) -> Self {
        BoolExpr::Iff(Box::new(a), Box::new(b))
    }

    pub fn implies(a: BoolExpr, b: BoolExpr) -> Self {
        BoolExpr::Implies(Box::new(a), Box::new(b))
    }

    /// Largest variable index mentioned, 0 if none.
    pub fn max_var(&self) -> u32 {
        match self {
            BoolExpr::Var(v) => *v,
            BoolExpr::Const(_) => 0,
            BoolExpr::Not(e) => e.max_var(),
            BoolExpr::And(a, b)
            | BoolExpr::Or(a, b)
            | BoolExpr::Xor(a, b)
            | BoolExpr::Iff(a, b)
            | BoolExpr::Implies(a, b) => a.max_var().max(b.max_var()),
        }
    }

    /// Number of internal operator nodes (Not included).
    pub fn internal_nodes(&self) -> usize {
        match self {
            BoolExpr::Var(_) | BoolExpr::Const(_) => 0,
            BoolExpr::Not(e) => 1 + e.internal_nodes(),
            BoolExpr::And(a, b)
            | BoolExpr::Or(a, b)
            | BoolExpr::Xor(a, b)
            | BoolExpr::Iff(a, b)
            | BoolExpr::Implies(a, b) => 1 + a.internal_nodes() + b.internal_nodes(),
        }
    }

    pub fn eval_mask(&self, mask: u64) -> bool {
        match self {
            BoolExpr::Var(v) => (mask >> (v - 1)) & 1 == 1,
            BoolExpr::Const(b) => *b,
            BoolExpr::Not(e) => !e.eval_mask(mask),
            BoolExpr::And(a, b) => a.eval_mask(mask) && b.eval_mask(mask),
            BoolExpr::Or(a, b) => a.eval_mask(mask) || b.eval_mask(mask),
            BoolExpr::Xor(a, b) => a.eval_mask(mask) ^ b.eval_mask(mask),
            BoolExpr::Iff(a, b) => a.eval_mask(mask) == b.eval_mask(mask),
            BoolExpr::Implies(a, b) => !a.eval_mask(mask) || b.eval_mask(mask),
        }
    }

    /// Evaluates under an explicit assignment; errors if any variable index
    /// falls outside the assignment.
    pub fn eval(&self, assignment: &[bool]) -> Result<bool> {
        let max = self.max_var();
        if max as usize > assignment.len() {
            return Err(Error::Input(format!(
                "expression references variable {max} but assignment has {} entries",
                assignment.len()
            )));
        }
        let mut mask = 0u64;
        for (i, &bit) in assignment.iter().enumerate() {
            if bit {
                mask |= 1 << i;
            }
        }
        Ok(self.eval_mask(mask))
    }

    /// Folds constants away bottom-up. The result contains `Const` only if
    /// the whole expression is constant.
    pub fn fold_constants(&self) -> BoolExpr {
        use BoolExpr::*;
        match self {
            Var(v) => Var(*v),
            Const(b) => Const(*b),
            Not(e) => match e.fold_constants() {
                Const(b) => Const(!b),
                e => BoolExpr::not(e),
            },
            And(a, b) => match (a.fold_constants(), b.fold_constants()) {
                (Const(false), _) | (_, Const(false)) => Const(false),
                (Const(true), e) | (e, Const(true)) => e,
                (a, b) => BoolExpr::and(a, b),
            },
            Or(a, b) => match (a.fold_constants(), b.fold_constants()) {
                (Const(true), _) | (_, Const(true)) => Const(true),
                (Const(false), e) | (e, Const(false)) => e,
                (a, b) => BoolExpr::or(a, b),
            },
            Xor(a, b) => match (a.fold_constants(), b.fold_constants()) {
                (Const(false), e) | (e, Const(false)) => e,
                (Const(true), e) | (e, Const(true)) => BoolExpr::not(e),
                (a, b) => BoolExpr::xor(a, b),
            },
            Iff(a, b) => match (a.fold_constants(), b.fold_constants()) {
                (Const(true), e) | (e, Const(true)) => e,
                (Const(false), e) | (e, Const(false)) => BoolExpr::not(e),
                (a, b) => BoolExpr::iff(a, b),
            },
            Implies(a, b) => match (a.fold_constants(), b.fold_constants()) {
                (Const(false), _) => Const(true),
                (Const(true), e) => e,
                (_, Const(true)) => Const(true),
                (e, Const(false)) => BoolExpr::not(e),
                (a, b) => BoolExpr::implies(a, b),
            },
        }
    }
}

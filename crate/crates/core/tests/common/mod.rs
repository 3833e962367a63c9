//! Shared random-instance generators for the integration suites.
//! Everything is seeded, so test runs are deterministic.

use rand::Rng;
use satq_core::formula::{
    BoolExpr, Clause, CnfFormula, EcnfFormula, EsopClause, Literal, Monomial,
};

/// Random expression with bounded depth, variable range and internal-node
/// budget. The budget keeps the Tseitin output small enough for exhaustive
/// model enumeration.
pub fn random_expr(
    rng: &mut impl Rng,
    max_var: u32,
    max_depth: u32,
    node_budget: &mut u32,
) -> BoolExpr {
    let leaf = max_depth == 0 || *node_budget == 0 || rng.gen_bool(0.3);
    if leaf {
        if rng.gen_bool(0.06) {
            return BoolExpr::Const(rng.gen_bool(0.5));
        }
        return BoolExpr::var(rng.gen_range(1..=max_var));
    }
    *node_budget -= 1;
    if rng.gen_bool(0.15) {
        return BoolExpr::not(random_expr(rng, max_var, max_depth - 1, node_budget));
    }
    let a = random_expr(rng, max_var, max_depth - 1, node_budget);
    let b = random_expr(rng, max_var, max_depth - 1, node_budget);
    match rng.gen_range(0..5) {
        0 => BoolExpr::and(a, b),
        1 => BoolExpr::or(a, b),
        2 => BoolExpr::xor(a, b),
        3 => BoolExpr::iff(a, b),
        _ => BoolExpr::implies(a, b),
    }
}

/// As [`random_expr`] but guaranteed to contain at least one binary gate
/// node after constant folding.
pub fn random_gate_expr(
    rng: &mut impl Rng,
    max_var: u32,
    max_depth: u32,
    node_budget: u32,
) -> BoolExpr {
    loop {
        let mut budget = node_budget;
        let e = random_expr(rng, max_var, max_depth, &mut budget);
        let folded = e.fold_constants();
        if !matches!(
            folded,
            BoolExpr::Var(_) | BoolExpr::Const(_) | BoolExpr::Not(_)
        ) {
            return e;
        }
    }
}

/// Random CNF over `num_vars` variables with clause arities in
/// `1..=max_arity` (distinct variables per clause).
pub fn random_cnf(
    rng: &mut impl Rng,
    num_vars: u32,
    num_clauses: usize,
    max_arity: usize,
) -> CnfFormula {
    let clauses: Vec<Clause> = (0..num_clauses)
        .map(|_| {
            let arity = rng.gen_range(1..=max_arity.min(num_vars as usize));
            let mut vars: Vec<u32> = (1..=num_vars).collect();
            for i in (1..vars.len()).rev() {
                vars.swap(i, rng.gen_range(0..=i));
            }
            let lits: Vec<Literal> = vars[..arity]
                .iter()
                .map(|&v| Literal::new(v, rng.gen_bool(0.5)).unwrap())
                .collect();
            Clause::new(lits).unwrap()
        })
        .collect();
    CnfFormula::new(num_vars, clauses).unwrap()
}

/// Random e-CNF; monomials draw distinct variables, and a clause may include
/// the constant-1 monomial.
pub fn random_ecnf(
    rng: &mut impl Rng,
    num_vars: u32,
    num_clauses: usize,
    max_monomials: usize,
    max_arity: usize,
) -> EcnfFormula {
    let clauses: Vec<EsopClause> = (0..num_clauses)
        .map(|_| loop {
            let count = rng.gen_range(1..=max_monomials);
            let mut monomials = Vec::with_capacity(count);
            for _ in 0..count {
                if rng.gen_bool(0.15) {
                    monomials.push(Monomial::one());
                    continue;
                }
                let arity = rng.gen_range(1..=max_arity.min(num_vars as usize));
                let mut vars: Vec<u32> = (1..=num_vars).collect();
                for i in (1..vars.len()).rev() {
                    vars.swap(i, rng.gen_range(0..=i));
                }
                let lits: Vec<Literal> = vars[..arity]
                    .iter()
                    .map(|&v| Literal::new(v, rng.gen_bool(0.5)).unwrap())
                    .collect();
                monomials.push(Monomial::new(lits).unwrap());
            }
            // Duplicates may cancel to the empty clause; retry when they do.
            if let Ok(clause) = EsopClause::new(monomials) {
                return clause;
            }
        })
        .collect();
    EcnfFormula::new(num_vars, clauses).unwrap()
}

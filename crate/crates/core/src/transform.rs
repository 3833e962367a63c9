//! Encoding passes: expression → CNF via the Tseitin transformation, and
//! expression/CNF → e-CNF by rewriting each auxiliary-variable equivalence
//! `p ⇔ F` as the single ESOP clause `1 ⊕ p ⊕ F`, and each OR-clause as
//! `1 ⊕ (∧ of complemented literals)`.
//!
//! Both expression transforms allocate auxiliary variables with the same
//! post-order traversal, so the CNF and e-CNF outputs of one expression range
//! over the same variable set. NOT nodes never allocate; they fold into
//! literal polarity.

use crate::error::{Error, Result};
use crate::formula::{BoolExpr, Clause, CnfFormula, EcnfFormula, EsopClause, Literal, Monomial};

/// Output of [`tseitin_encode`]: the CNF, the auxiliary variables paired with
/// the sub-expression each one names, and the literal asserted by the final
/// unit clause.
#[derive(Debug, Clone)]
pub struct TseitinResult {
    pub formula: CnfFormula,
    pub aux_vars: Vec<(u32, BoolExpr)>,
    pub root: Literal,
}

/// Output of [`expr_to_ecnf`], mirroring [`TseitinResult`].
#[derive(Debug, Clone)]
pub struct EcnfResult {
    pub formula: EcnfFormula,
    pub aux_vars: Vec<(u32, BoolExpr)>,
    pub root: Literal,
}

/// Right-hand side of an auxiliary equivalence `p ⇔ F`.
#[derive(Debug, Clone)]
pub enum EquivRhs {
    /// `p ⇔ l₁ ∧ l₂ ∧ …`
    Conjunction(Vec<Literal>),
    /// `p ⇔ l₁ ∨ l₂ ∨ …`
    Disjunction(Vec<Literal>),
    /// `p ⇔ l₁ ⊕ l₂ ⊕ …`
    XorChain(Vec<Literal>),
}

struct AuxAllocator {
    next: u32,
    aux_vars: Vec<(u32, BoolExpr)>,
}

impl AuxAllocator {
    fn new(first_fresh: u32) -> Self {
        AuxAllocator {
            next: first_fresh,
            aux_vars: Vec::new(),
        }
    }

    fn fresh(&mut self, defines: &BoolExpr) -> Literal {
        let var = self.next;
        self.next += 1;
        self.aux_vars.push((var, defines.clone()));
        Literal::positive(var).expect("aux indices start above 1")
    }
}

/// Tseitin transformation. Gate encodings: AND and OR produce 3 clauses,
/// XOR and IFF produce 4, IMPLIES is encoded as the OR `¬a ∨ b`; a final
/// unit clause asserts the root literal. Constant sub-expressions are folded
/// away first; a constant root is encoded through one auxiliary variable so
/// the output is always a well-formed CNF.
pub fn tseitin_encode(e: &BoolExpr) -> Result<TseitinResult> {
    let num_original = e.max_var();
    let folded = e.fold_constants();
    let mut alloc = AuxAllocator::new(num_original + 1);
    let mut clauses: Vec<Clause> = Vec::new();

    let root = match &folded {
        BoolExpr::Const(b) => {
            let p = alloc.fresh(&folded);
            if !*b {
                clauses.push(Clause::new(vec![p.complement()])?);
            }
            p
        }
        _ => encode_cnf(&folded, &mut alloc, &mut clauses)?,
    };
    clauses.push(Clause::new(vec![root])?);

    let num_vars = alloc.next - 1;
    Ok(TseitinResult {
        formula: CnfFormula::new(num_vars, clauses)?,
        aux_vars: alloc.aux_vars,
        root,
    })
}

fn encode_cnf(
    e: &BoolExpr,
    alloc: &mut AuxAllocator,
    clauses: &mut Vec<Clause>,
) -> Result<Literal> {
    match e {
        BoolExpr::Var(v) => Literal::positive(*v),
        BoolExpr::Not(inner) => Ok(encode_cnf(inner, alloc, clauses)?.complement()),
        BoolExpr::Const(_) => Err(Error::Internal(
            "constants must be folded before gate encoding".into(),
        )),
        BoolExpr::And(a, b)
        | BoolExpr::Or(a, b)
        | BoolExpr::Xor(a, b)
        | BoolExpr::Iff(a, b)
        | BoolExpr::Implies(a, b) => {
            let la = encode_cnf(a, alloc, clauses)?;
            let lb = encode_cnf(b, alloc, clauses)?;
            let p = alloc.fresh(e);
            clauses.extend(gate_clauses(e, p, la, lb)?);
            Ok(p)
        }
    }
}

/// CNF clauses for `p ⇔ (la OP lb)`.
fn gate_clauses(e: &BoolExpr, p: Literal, la: Literal, lb: Literal) -> Result<Vec<Clause>> {
    let na = la.complement();
    let nb = lb.complement();
    let np = p.complement();
    let rows: Vec<Vec<Literal>> = match e {
        BoolExpr::And(_, _) => vec![vec![na, nb, p], vec![la, np], vec![lb, np]],
        BoolExpr::Or(_, _) => vec![vec![p, na], vec![p, nb], vec![np, la, lb]],
        BoolExpr::Implies(_, _) => vec![vec![p, la], vec![p, nb], vec![np, na, lb]],
        BoolExpr::Xor(_, _) => vec![
            vec![np, la, lb],
            vec![np, na, nb],
            vec![p, na, lb],
            vec![p, la, nb],
        ],
        BoolExpr::Iff(_, _) => vec![
            vec![np, na, lb],
            vec![np, la, nb],
            vec![p, la, lb],
            vec![p, na, nb],
        ],
        _ => {
            return Err(Error::Internal(
                "gate_clauses called on a non-gate node".into(),
            ))
        }
    };
    rows.into_iter().map(Clause::new).collect()
}

/// Rewrites `p ⇔ rhs` as one ESOP clause:
/// conjunctions become `¬p ⊕ (∧ lits)`, disjunctions become
/// `p ⊕ (∧ of complemented lits)`, XOR chains become `1 ⊕ p ⊕ l₁ ⊕ …` with
/// literal polarities folded into the constant.
pub fn equivalence_to_esop(p: Literal, rhs: &EquivRhs) -> Result<EsopClause> {
    match rhs {
        EquivRhs::Conjunction(lits) => {
            let lits = dedupe_literals(lits)?;
            match conjunction_monomial(&lits) {
                ConjunctionValue::ConstantZero => {
                    // p ⇔ 0 is just ¬p.
                    EsopClause::new(vec![Monomial::from_literal(p.complement())])
                }
                ConjunctionValue::Monomial(m) => {
                    EsopClause::new(vec![Monomial::from_literal(p.complement()), m])
                }
            }
        }
        EquivRhs::Disjunction(lits) => {
            let lits = dedupe_literals(lits)?;
            let complemented: Vec<Literal> = lits.iter().map(|l| l.complement()).collect();
            match conjunction_monomial(&complemented) {
                // ∧ of complements is 0, so the disjunction is 1: p ⇔ 1 is p.
                ConjunctionValue::ConstantZero => EsopClause::new(vec![Monomial::from_literal(p)]),
                ConjunctionValue::Monomial(m) => {
                    EsopClause::new(vec![Monomial::from_literal(p), m])
                }
            }
        }
        EquivRhs::XorChain(lits) => {
            if lits.is_empty() {
                return Err(Error::Encoding("empty XOR chain".into()));
            }
            // 1 ⊕ p ⊕ l₁ ⊕ …, folding each ¬x into the leading constant.
            let mut parity = true;
            let mut body = Vec::with_capacity(lits.len() + 1);
            for l in std::iter::once(&p).chain(lits.iter()) {
                if l.negated() {
                    parity = !parity;
                }
                body.push(Monomial::from_literal(Literal::positive(l.var())?));
            }
            let mut monomials = Vec::with_capacity(body.len() + 1);
            if parity {
                monomials.push(Monomial::one());
            }
            monomials.extend(body);
            EsopClause::new(monomials)
        }
    }
}

enum ConjunctionValue {
    Monomial(Monomial),
    ConstantZero,
}

fn conjunction_monomial(lits: &[Literal]) -> ConjunctionValue {
    match Monomial::new(lits.to_vec()) {
        Ok(m) => ConjunctionValue::Monomial(m),
        Err(Error::ConstantZeroMonomial) => ConjunctionValue::ConstantZero,
        Err(_) => unreachable!("literals are deduped before monomial construction"),
    }
}

fn dedupe_literals(lits: &[Literal]) -> Result<Vec<Literal>> {
    if lits.is_empty() {
        return Err(Error::Encoding("empty literal list".into()));
    }
    let mut out: Vec<Literal> = Vec::with_capacity(lits.len());
    for &l in lits {
        if !out.contains(&l) {
            out.push(l);
        }
    }
    Ok(out)
}

/// Rewrites an OR-clause as `1 ⊕ (∧ of complemented literals)`; a unit
/// clause `(l)` simplifies to the bare monomial `l`.
pub fn clause_to_esop(c: &Clause) -> Result<EsopClause> {
    let lits = c.literals();
    if lits.len() == 1 {
        return EsopClause::new(vec![Monomial::from_literal(lits[0])]);
    }
    let complemented: Vec<Literal> = lits.iter().map(|l| l.complement()).collect();
    match conjunction_monomial(&complemented) {
        // A tautological clause (x ∨ ¬x ∨ …) rewrites to the constant 1.
        ConjunctionValue::ConstantZero => EsopClause::new(vec![Monomial::one()]),
        ConjunctionValue::Monomial(m) => EsopClause::new(vec![Monomial::one(), m]),
    }
}

/// Expression → e-CNF: same auxiliary allocation as [`tseitin_encode`], each
/// gate definition encoded by [`equivalence_to_esop`], and the root asserted
/// by a final unit-monomial clause.
pub fn expr_to_ecnf(e: &BoolExpr) -> Result<EcnfResult> {
    let num_original = e.max_var();
    let folded = e.fold_constants();
    let mut alloc = AuxAllocator::new(num_original + 1);
    let mut clauses: Vec<EsopClause> = Vec::new();

    let root = match &folded {
        BoolExpr::Const(b) => {
            let p = alloc.fresh(&folded);
            if !*b {
                clauses.push(EsopClause::new(vec![Monomial::from_literal(
                    p.complement(),
                )])?);
            }
            p
        }
        _ => encode_ecnf(&folded, &mut alloc, &mut clauses)?,
    };
    clauses.push(EsopClause::new(vec![Monomial::from_literal(root)])?);

    let num_vars = alloc.next - 1;
    Ok(EcnfResult {
        formula: EcnfFormula::new(num_vars, clauses)?,
        aux_vars: alloc.aux_vars,
        root,
    })
}

fn encode_ecnf(
    e: &BoolExpr,
    alloc: &mut AuxAllocator,
    clauses: &mut Vec<EsopClause>,
) -> Result<Literal> {
    match e {
        BoolExpr::Var(v) => Literal::positive(*v),
        BoolExpr::Not(inner) => Ok(encode_ecnf(inner, alloc, clauses)?.complement()),
        BoolExpr::Const(_) => Err(Error::Internal(
            "constants must be folded before gate encoding".into(),
        )),
        BoolExpr::And(a, b)
        | BoolExpr::Or(a, b)
        | BoolExpr::Xor(a, b)
        | BoolExpr::Iff(a, b)
        | BoolExpr::Implies(a, b) => {
            let la = encode_ecnf(a, alloc, clauses)?;
            let lb = encode_ecnf(b, alloc, clauses)?;
            let p = alloc.fresh(e);
            let rhs = match e {
                BoolExpr::And(_, _) => EquivRhs::Conjunction(vec![la, lb]),
                BoolExpr::Or(_, _) => EquivRhs::Disjunction(vec![la, lb]),
                BoolExpr::Implies(_, _) => EquivRhs::Disjunction(vec![la.complement(), lb]),
                BoolExpr::Xor(_, _) => EquivRhs::XorChain(vec![la, lb]),
                // p ⇔ (a ⇔ b) is p ⇔ (¬a ⊕ b).
                BoolExpr::Iff(_, _) => EquivRhs::XorChain(vec![la.complement(), lb]),
                _ => unreachable!(),
            };
            clauses.push(equivalence_to_esop(p, &rhs)?);
            Ok(p)
        }
    }
}

/// Clause-wise CNF → e-CNF rewriting. Logically equivalent (identical model
/// set), not merely equisatisfiable.
pub fn cnf_to_ecnf(f: &CnfFormula) -> Result<EcnfFormula> {
    let clauses: Result<Vec<EsopClause>> = f.clauses().iter().map(clause_to_esop).collect();
    EcnfFormula::new(f.num_vars(), clauses?)
}

/// The benchmark family over `n = 2m` inputs: `φ` alternates AND-groups
/// `(a₁ ∧ ¬a₂) ∨ ¬(a₃ ∧ a₄) ∨ …`; `cnf` is the wide-clause encoding with one
/// auxiliary pᵢ per group (big clause first, then three clauses per group);
/// `ecnf` rewrites the same structure as ESOP clauses.
#[derive(Debug, Clone)]
pub struct PhiFamily {
    pub m: u64,
    pub expr: BoolExpr,
    pub cnf: CnfFormula,
    pub ecnf: EcnfFormula,
}

pub fn phi_family(m: u64) -> Result<PhiFamily> {
    if m < 2 {
        return Err(Error::Input("phi family requires m >= 2".into()));
    }
    let n = 2 * m as u32;
    let aux = |i: u32| n + i; // p_i for 1-based group i

    // Group i covers (a_{2i-1}, a_{2i}); odd groups negate the second input
    // and enter the disjunction positively.
    let group_monomial = |i: u32| -> Result<Monomial> {
        Monomial::new(vec![
            Literal::positive(2 * i - 1)?,
            Literal::new(2 * i, i % 2 == 1)?,
        ])
    };
    let group_sign_positive = |i: u32| i % 2 == 1;

    // φ itself.
    let mut expr: Option<BoolExpr> = None;
    for i in 1..=m as u32 {
        let inner = BoolExpr::and(
            BoolExpr::var(2 * i - 1),
            if i % 2 == 1 {
                BoolExpr::not(BoolExpr::var(2 * i))
            } else {
                BoolExpr::var(2 * i)
            },
        );
        let signed = if group_sign_positive(i) {
            inner
        } else {
            BoolExpr::not(inner)
        };
        expr = Some(match expr {
            None => signed,
            Some(acc) => BoolExpr::or(acc, signed),
        });
    }
    let expr = expr.expect("m >= 2");

    // CNF: one wide clause over the p_i, then the three AND1-style clauses
    // per group definition p_i ⇔ group_i.
    let mut cnf_clauses = Vec::with_capacity(3 * m as usize + 1);
    let big: Result<Vec<Literal>> = (1..=m as u32)
        .map(|i| Literal::new(aux(i), !group_sign_positive(i)))
        .collect();
    cnf_clauses.push(Clause::new(big?)?);
    for i in 1..=m as u32 {
        let p = Literal::positive(aux(i))?;
        let mono = group_monomial(i)?;
        let la = mono.literals()[0];
        let lb = mono.literals()[1];
        cnf_clauses.push(Clause::new(vec![la.complement(), lb.complement(), p])?);
        cnf_clauses.push(Clause::new(vec![la, p.complement()])?);
        cnf_clauses.push(Clause::new(vec![lb, p.complement()])?);
    }
    let cnf = CnfFormula::new(n + m as u32, cnf_clauses)?;

    // e-CNF: 1 ⊕ (∧ complemented big-clause literals), then ¬p_i ⊕ group_i.
    let mut ecnf_clauses = Vec::with_capacity(m as usize + 1);
    let big_mono: Result<Vec<Literal>> = (1..=m as u32)
        .map(|i| Literal::new(aux(i), group_sign_positive(i)))
        .collect();
    ecnf_clauses.push(EsopClause::new(vec![
        Monomial::one(),
        Monomial::new(big_mono?)?,
    ])?);
    for i in 1..=m as u32 {
        let p = Literal::positive(aux(i))?;
        ecnf_clauses.push(EsopClause::new(vec![
            Monomial::from_literal(p.complement()),
            group_monomial(i)?,
        ])?);
    }
    let ecnf = EcnfFormula::new(n + m as u32, ecnf_clauses)?;

    Ok(PhiFamily { m, expr, cnf, ecnf })
}

//! Phase-oracle synthesis: compute every clause onto its own ancilla (U_F),
//! flip the phase when all clause ancillas are 1 (H · MCX · H on the last
//! ancilla), then uncompute (U_F†). On basis input |x⟩ with clean ancillas
//! the result is (−1)^F(x) |x⟩ ⊗ |0…0⟩.

use crate::circuit::{Circuit, Gate, QubitRegistry};
use crate::error::{Error, Result};
use crate::formula::{Clause, EsopClause, Formula, Monomial};

/// Which source language an oracle was synthesized from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaKind {
    Cnf,
    Ecnf,
}

impl std::fmt::Display for FormulaKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormulaKind::Cnf => write!(f, "cnf"),
            FormulaKind::Ecnf => write!(f, "ecnf"),
        }
    }
}

/// A synthesized phase oracle. The gate list is `U_F ++ phase ++ invert(U_F)`;
/// `u_f_len` and `phase_len` delimit the segments.
#[derive(Debug, Clone)]
pub struct OracleCircuit {
    pub circuit: Circuit,
    pub formula_kind: FormulaKind,
    pub num_clauses: usize,
    pub u_f_len: usize,
    pub phase_len: usize,
}

impl OracleCircuit {
    pub fn registry(&self) -> &QubitRegistry {
        self.circuit.registry()
    }

    pub fn compute_gates(&self) -> &[Gate] {
        &self.circuit.gates()[..self.u_f_len]
    }

    pub fn phase_gates(&self) -> &[Gate] {
        &self.circuit.gates()[self.u_f_len..self.u_f_len + self.phase_len]
    }

    pub fn uncompute_gates(&self) -> &[Gate] {
        &self.circuit.gates()[self.u_f_len + self.phase_len..]
    }
}

/// Gates leaving `y = value of the OR-clause`: pre-flip X(y), conjugate the
/// non-complemented literal qubits, apply the positive-control MCX (CX for a
/// unit clause), undo the conjugation.
pub fn synthesize_clause_cnf(
    clause: &Clause,
    registry: &QubitRegistry,
    y: usize,
) -> Result<Vec<Gate>> {
    if clause.literals().is_empty() {
        return Err(Error::Synthesis("empty CNF clause".into()));
    }
    // A tautological clause (both polarities of some variable) is constantly
    // true; its MCX condition can never fire, so only the pre-flip remains.
    let tautological = clause.literals().iter().any(|l| {
        clause
            .literals()
            .iter()
            .any(|o| o.var() == l.var() && o.negated() != l.negated())
    });
    if tautological {
        return Ok(vec![Gate::x(y)]);
    }
    let mut gates = vec![Gate::x(y)];
    let conjugated: Vec<usize> = clause
        .literals()
        .iter()
        .filter(|l| !l.negated())
        .map(|l| registry.input_qubit(l.var()))
        .collect();
    for &q in &conjugated {
        gates.push(Gate::x_polarity_fix(q));
    }
    let controls: Vec<usize> = clause
        .literals()
        .iter()
        .map(|l| registry.input_qubit(l.var()))
        .collect();
    if controls.len() == 1 {
        gates.push(Gate::cx(controls[0], y));
    } else {
        gates.push(Gate::mcx(controls, y));
    }
    for &q in conjugated.iter().rev() {
        gates.push(Gate::x_polarity_fix(q));
    }
    Ok(gates)
}

/// Gates leaving `y = value of the ESOP clause` (XOR of its monomials):
/// the constant-1 monomial is a single X(y); a positive literal is a CX; a
/// complemented literal is CX then X(y); a product term conjugates its
/// complemented literals around a positive-control MCX.
pub fn synthesize_clause_ecnf(
    clause: &EsopClause,
    registry: &QubitRegistry,
    y: usize,
) -> Result<Vec<Gate>> {
    let mut gates = Vec::new();
    for monomial in clause.monomials() {
        gates.extend(synthesize_monomial(monomial, registry, y)?);
    }
    Ok(gates)
}

fn synthesize_monomial(
    monomial: &Monomial,
    registry: &QubitRegistry,
    y: usize,
) -> Result<Vec<Gate>> {
    if monomial.is_constant_one() {
        return Ok(vec![Gate::x(y)]);
    }
    let lits = monomial.literals();
    if lits.len() == 1 {
        let q = registry.input_qubit(lits[0].var());
        return Ok(if lits[0].negated() {
            vec![Gate::cx(q, y), Gate::x(y)]
        } else {
            vec![Gate::cx(q, y)]
        });
    }
    let mut gates = Vec::new();
    let conjugated: Vec<usize> = lits
        .iter()
        .filter(|l| l.negated())
        .map(|l| registry.input_qubit(l.var()))
        .collect();
    for &q in &conjugated {
        gates.push(Gate::x_polarity_fix(q));
    }
    let controls: Vec<usize> = lits.iter().map(|l| registry.input_qubit(l.var())).collect();
    gates.push(Gate::mcx(controls, y));
    for &q in conjugated.iter().rev() {
        gates.push(Gate::x_polarity_fix(q));
    }
    Ok(gates)
}

/// Pool ancillas required to lower every MCX the oracle will emit, including
/// the phase-kickback MCX over the clause ancillas.
fn pool_size(f: &Formula) -> usize {
    let mut widest = 0usize;
    match f {
        Formula::Cnf(cnf) => {
            for clause in cnf.clauses() {
                if clause.len() >= 2 {
                    widest = widest.max(clause.len());
                }
            }
        }
        Formula::Ecnf(ecnf) => {
            for clause in ecnf.clauses() {
                for m in clause.monomials() {
                    if m.literals().len() >= 2 {
                        widest = widest.max(m.literals().len());
                    }
                }
            }
        }
    }
    let m = f.num_clauses();
    if m >= 3 {
        widest = widest.max(m - 1);
    }
    widest.saturating_sub(2)
}

/// Synthesizes the phase oracle O_F.
pub fn synthesize_oracle(f: &Formula) -> Result<OracleCircuit> {
    synthesize_oracle_with_pool(f, 0)
}

/// As [`synthesize_oracle`] but guarantees at least `min_pool` decomposition
/// ancillas (the Grover assembler needs slack for the diffusion operator).
pub fn synthesize_oracle_with_pool(f: &Formula, min_pool: usize) -> Result<OracleCircuit> {
    let m = f.num_clauses();
    if m == 0 {
        return Err(Error::Synthesis(
            "cannot synthesize an oracle for a formula with no clauses".into(),
        ));
    }
    let registry = QubitRegistry::new(f.num_vars() as usize, m, pool_size(f).max(min_pool));

    let mut u_f: Vec<Gate> = Vec::new();
    match f {
        Formula::Cnf(cnf) => {
            for (k, clause) in cnf.clauses().iter().enumerate() {
                u_f.extend(synthesize_clause_cnf(
                    clause,
                    &registry,
                    registry.clause_ancilla(k),
                )?);
            }
        }
        Formula::Ecnf(ecnf) => {
            for (k, clause) in ecnf.clauses().iter().enumerate() {
                u_f.extend(synthesize_clause_ecnf(
                    clause,
                    &registry,
                    registry.clause_ancilla(k),
                )?);
            }
        }
    }

    // Phase kickback on the last clause ancilla: H · MCX(𝒴 ∖ y_t → y_t) · H
    // is a controlled-Z across all clause ancillas. With a single clause the
    // control set is empty and the block degenerates to Z = T⁴ on y₀.
    let target = registry.clause_ancilla(m - 1);
    let phase: Vec<Gate> = if m == 1 {
        (0..4).map(|_| Gate::t(target)).collect()
    } else {
        let controls: Vec<usize> = (0..m - 1).map(|k| registry.clause_ancilla(k)).collect();
        let flip = if controls.len() == 1 {
            Gate::cx(controls[0], target)
        } else {
            Gate::mcx(controls, target)
        };
        vec![Gate::h(target), flip, Gate::h(target)]
    };

    let uncompute = crate::circuit::invert_gates(&u_f);

    let mut circuit = Circuit::new(registry);
    let u_f_len = u_f.len();
    let phase_len = phase.len();
    circuit.extend(u_f)?;
    circuit.extend(phase)?;
    circuit.extend(uncompute)?;

    Ok(OracleCircuit {
        circuit,
        formula_kind: match f {
            Formula::Cnf(_) => FormulaKind::Cnf,
            Formula::Ecnf(_) => FormulaKind::Ecnf,
        },
        num_clauses: m,
        u_f_len,
        phase_len,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Control;
    use crate::formula::{CnfFormula, EcnfFormula, Literal};
    use crate::parse::{parse_dimacs, parse_ecnf};
    use crate::sim::StateVector;
    use num_complex::Complex64;

    fn lit(v: i64) -> Literal {
        Literal::from_dimacs(v).unwrap()
    }

    fn example_cnf() -> CnfFormula {
        parse_dimacs("p cnf 4 2\n1 2 -3 0\n-2 3 4 0\n").unwrap()
    }

    fn example_ecnf() -> EcnfFormula {
        parse_ecnf("p ecnf 4 2\n1 ^ T ^ 2 -3 0\n-2 ^ -3 4 0\n").unwrap()
    }

    #[test]
    fn cnf_clause_gate_order() {
        let registry = QubitRegistry::new(3, 1, 0);
        let clause = Clause::new(vec![lit(1), lit(2), lit(-3)]).unwrap();
        let gates = synthesize_clause_cnf(&clause, &registry, 3).unwrap();
        assert_eq!(
            gates,
            vec![
                Gate::x(3),
                Gate::x_polarity_fix(0),
                Gate::x_polarity_fix(1),
                Gate::mcx(vec![0, 1, 2], 3),
                Gate::x_polarity_fix(1),
                Gate::x_polarity_fix(0),
            ]
        );
    }

    #[test]
    fn cnf_unit_clause_uses_cx() {
        let registry = QubitRegistry::new(1, 1, 0);
        let clause = Clause::new(vec![lit(1)]).unwrap();
        let gates = synthesize_clause_cnf(&clause, &registry, 1).unwrap();
        assert_eq!(
            gates,
            vec![
                Gate::x(1),
                Gate::x_polarity_fix(0),
                Gate::cx(0, 1),
                Gate::x_polarity_fix(0),
            ]
        );
    }

    #[test]
    fn cnf_clause_computes_truth_table() {
        let registry = QubitRegistry::new(3, 1, 0);
        let clause = Clause::new(vec![lit(1), lit(2), lit(-3)]).unwrap();
        let gates = synthesize_clause_cnf(&clause, &registry, 3).unwrap();
        for mask in 0..8u64 {
            let mut s = StateVector::basis(4, mask).unwrap();
            for g in &gates {
                s.apply_gate(g).unwrap();
            }
            let expect_y = clause.eval_mask(mask) as u64;
            let expected_basis = mask | (expect_y << 3);
            assert!(
                (s.amplitude(expected_basis) - Complex64::new(1.0, 0.0)).norm() < 1e-12,
                "mask={mask}"
            );
        }
    }

    #[test]
    fn ecnf_clause_gate_order() {
        // a1 ⊕ 1 ⊕ (a2 ∧ ¬a3) onto y at index 3.
        let registry = QubitRegistry::new(3, 1, 0);
        let clause = EsopClause::new(vec![
            Monomial::from_literal(lit(1)),
            Monomial::one(),
            Monomial::new(vec![lit(2), lit(-3)]).unwrap(),
        ])
        .unwrap();
        let gates = synthesize_clause_ecnf(&clause, &registry, 3).unwrap();
        assert_eq!(
            gates,
            vec![
                Gate::cx(0, 3),
                Gate::x(3),
                Gate::x_polarity_fix(2),
                Gate::mcx(vec![1, 2], 3),
                Gate::x_polarity_fix(2),
            ]
        );
    }

    #[test]
    fn ecnf_single_constant_clause_is_one_x() {
        let registry = QubitRegistry::new(1, 1, 0);
        let clause = EsopClause::new(vec![Monomial::one()]).unwrap();
        let gates = synthesize_clause_ecnf(&clause, &registry, 1).unwrap();
        assert_eq!(gates, vec![Gate::x(1)]);
    }

    #[test]
    fn ecnf_complemented_literal_monomial_is_cx_then_x() {
        let registry = QubitRegistry::new(2, 1, 0);
        let clause = EsopClause::new(vec![
            Monomial::from_literal(lit(-1)),
            Monomial::new(vec![lit(1), lit(-2)]).unwrap(),
        ])
        .unwrap();
        let gates = synthesize_clause_ecnf(&clause, &registry, 2).unwrap();
        assert_eq!(gates[0], Gate::cx(0, 2));
        assert_eq!(gates[1], Gate::x(2));
    }

    #[test]
    fn ecnf_clause_computes_truth_table() {
        let registry = QubitRegistry::new(3, 1, 0);
        let clause = EsopClause::new(vec![
            Monomial::from_literal(lit(1)),
            Monomial::one(),
            Monomial::new(vec![lit(2), lit(-3)]).unwrap(),
        ])
        .unwrap();
        let gates = synthesize_clause_ecnf(&clause, &registry, 3).unwrap();
        for mask in 0..8u64 {
            let mut s = StateVector::basis(4, mask).unwrap();
            for g in &gates {
                s.apply_gate(g).unwrap();
            }
            let expect_y = clause.eval_mask(mask) as u64;
            let expected_basis = mask | (expect_y << 3);
            assert!(
                (s.amplitude(expected_basis) - Complex64::new(1.0, 0.0)).norm() < 1e-12,
                "mask={mask}"
            );
        }
    }

    fn assert_phase_oracle(f: &Formula) {
        let oracle = synthesize_oracle(f).unwrap();
        let n = f.num_vars();
        let total = oracle.registry().total();
        for mask in 0..(1u64 << n) {
            let s = crate::sim::run(&oracle.circuit, mask).unwrap();
            let expected_sign = if f.eval_mask(mask) { -1.0 } else { 1.0 };
            for idx in 0..(1u64 << total) {
                let amp = s.amplitude(idx);
                let expected = if idx == mask {
                    Complex64::new(expected_sign, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                assert!(
                    (amp - expected).norm() < 1e-12,
                    "mask={mask} idx={idx} amp={amp}"
                );
            }
        }
    }

    #[test]
    fn oracle_phases_match_brute_force_cnf() {
        assert_phase_oracle(&Formula::Cnf(example_cnf()));
    }

    #[test]
    fn oracle_phases_match_brute_force_ecnf() {
        assert_phase_oracle(&Formula::Ecnf(example_ecnf()));
    }

    #[test]
    fn oracle_phase_block_structure() {
        let oracle = synthesize_oracle(&Formula::Cnf(example_cnf())).unwrap();
        // Two clauses: the kickback is H · CX(y0 → y1) · H.
        assert_eq!(
            oracle.phase_gates(),
            &[Gate::h(5), Gate::cx(4, 5), Gate::h(5)]
        );
        // The tail is the structural inverse of the head.
        assert_eq!(
            oracle.uncompute_gates(),
            crate::circuit::invert_gates(oracle.compute_gates())
        );
    }

    #[test]
    fn single_clause_oracle_uses_four_t() {
        let f = Formula::Cnf(CnfFormula::new(1, vec![Clause::new(vec![lit(1)]).unwrap()]).unwrap());
        let oracle = synthesize_oracle(&f).unwrap();
        assert_eq!(oracle.phase_gates().len(), 4);
        assert!(oracle
            .phase_gates()
            .iter()
            .all(|g| matches!(g, Gate::T { .. })));
        assert_phase_oracle(&f);
    }

    #[test]
    fn compute_segment_composed_with_its_inverse_is_identity() {
        for f in [
            Formula::Cnf(example_cnf()),
            Formula::Ecnf(example_ecnf()),
        ] {
            let oracle = synthesize_oracle(&f).unwrap();
            let total = oracle.registry().total();
            for mask in 0..(1u64 << total) {
                let mut s = StateVector::basis(total, mask).unwrap();
                for g in oracle.compute_gates() {
                    s.apply_gate(g).unwrap();
                }
                for g in crate::circuit::invert_gates(oracle.compute_gates()) {
                    s.apply_gate(&g).unwrap();
                }
                assert!(
                    (s.amplitude(mask) - Complex64::new(1.0, 0.0)).norm() < 1e-12,
                    "mask={mask}"
                );
            }
        }
    }

    #[test]
    fn oracle_is_involution() {
        let f = Formula::Ecnf(example_ecnf());
        let oracle = synthesize_oracle(&f).unwrap();
        let total = oracle.registry().total();
        for mask in 0..16u64 {
            let mut s = StateVector::basis(total, mask).unwrap();
            crate::sim::run_on(&oracle.circuit, &mut s).unwrap();
            crate::sim::run_on(&oracle.circuit, &mut s).unwrap();
            assert!((s.amplitude(mask) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_clause_formula_is_rejected() {
        let f = Formula::Cnf(CnfFormula::new(2, vec![]).unwrap());
        assert!(matches!(synthesize_oracle(&f), Err(Error::Synthesis(_))));
    }

    #[test]
    fn lowered_oracle_is_clifford_t_and_phase_correct() {
        let f = Formula::Ecnf(example_ecnf());
        let oracle = synthesize_oracle(&f).unwrap();
        let lowered = crate::mcx::lower(&oracle.circuit).unwrap();
        assert!(!lowered.contains_mcx());
        for mask in 0..16u64 {
            let s = crate::sim::run(&lowered, mask).unwrap();
            let expected_sign = if f.eval_mask(mask) { -1.0 } else { 1.0 };
            assert!(
                (s.amplitude(mask) - Complex64::new(expected_sign, 0.0)).norm() < 1e-12,
                "mask={mask}"
            );
        }
    }

    #[test]
    fn appending_overlapping_mcx_is_rejected_via_circuit() {
        let registry = QubitRegistry::new(2, 1, 0);
        let mut c = Circuit::new(registry);
        assert!(c
            .push(Gate::mcx_with_polarity(
                vec![Control::positive(0), Control::positive(2)],
                2
            ))
            .is_err());
    }
}

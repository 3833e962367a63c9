//! Grover search assembly: uniform initialization over the formula's
//! variables, k repetitions of oracle-then-diffusion, and the iteration
//! count policy k = ⌊(π/4)·√(N/M)⌋.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::formula::{Formula, DEFAULT_BRUTE_FORCE_CAP};
use crate::oracle::{synthesize_oracle_with_pool, OracleCircuit};

/// Iteration plan for a satisfiable instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroverPlan {
    /// Qubits placed in superposition (all formula variables).
    pub n_search: u32,
    /// Search-space size 2^n_search.
    pub num_states: u64,
    /// Number of satisfying assignments.
    pub models: u64,
    /// asin(√(M/N)).
    pub theta: f64,
    /// Optimal iteration count ⌊(π/4)·√(N/M)⌋.
    pub iterations: u64,
    /// Set when M > N/2; the initial state already favors the models and
    /// the computed k is 0.
    pub over_half: bool,
}

impl GroverPlan {
    /// sin²((2k+1)·θ): the exact success probability after k iterations.
    pub fn success_probability(&self, k: u64) -> f64 {
        ((2 * k + 1) as f64 * self.theta).sin().powi(2)
    }
}

/// Computes θ and the iteration count. `models == 0` is an UNSAT error: the
/// caller reports UNSAT instead of running Grover.
pub fn plan_iterations(n_search: u32, models: u64) -> Result<GroverPlan> {
    if models == 0 {
        return Err(Error::Unsat);
    }
    if n_search > 63 {
        return Err(Error::Capacity("search register exceeds 63 qubits".into()));
    }
    let num_states = 1u64 << n_search;
    if models > num_states {
        return Err(Error::Input(format!(
            "model count {models} exceeds search space {num_states}"
        )));
    }
    let ratio = models as f64 / num_states as f64;
    let theta = ratio.sqrt().asin();
    let iterations =
        (std::f64::consts::FRAC_PI_4 * (num_states as f64 / models as f64).sqrt()).floor() as u64;
    Ok(GroverPlan {
        n_search,
        num_states,
        models,
        theta,
        iterations,
        over_half: 2 * models > num_states,
    })
}

/// Gates of the diffusion operator D over search qubits `0..n_search`.
/// Equals 2|ψ₀⟩⟨ψ₀| − I up to a global phase of −1. The embedded MCX has
/// n_search − 1 controls; for n_search = 2 it degenerates to CX and for
/// n_search = 1 the phase flip is Z = T⁴.
pub fn diffusion_gates(n_search: u32) -> Vec<Gate> {
    let n = n_search as usize;
    let mut gates = Vec::new();
    for q in 0..n {
        gates.push(Gate::h(q));
    }
    if n == 1 {
        for _ in 0..4 {
            gates.push(Gate::t(0));
        }
        gates.push(Gate::h(0));
        return gates;
    }
    for q in 0..n {
        gates.push(Gate::x(q));
    }
    let target = n - 1;
    gates.push(Gate::h(target));
    if n == 2 {
        gates.push(Gate::cx(0, target));
    } else {
        gates.push(Gate::mcx((0..n - 1).collect(), target));
    }
    gates.push(Gate::h(target));
    for q in 0..n {
        gates.push(Gate::x(q));
    }
    for q in 0..n {
        gates.push(Gate::h(q));
    }
    gates
}

/// A fully assembled Grover circuit together with its plan and the oracle it
/// embeds.
#[derive(Debug, Clone)]
pub struct GroverCircuit {
    pub circuit: Circuit,
    pub plan: GroverPlan,
    pub oracle: OracleCircuit,
}

/// Assembles H^⊗n initialization over all formula variables followed by
/// `iterations` repetitions of O_F then D. `models` overrides brute-force
/// counting (mandatory above the cap); `iterations` overrides the plan's k.
pub fn assemble_grover(
    f: &Formula,
    models: Option<u64>,
    iterations: Option<u64>,
) -> Result<GroverCircuit> {
    assemble_grover_capped(f, models, iterations, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn assemble_grover_capped(
    f: &Formula,
    models: Option<u64>,
    iterations: Option<u64>,
    count_cap: u32,
) -> Result<GroverCircuit> {
    let n_search = f.num_vars();
    let models = match models {
        Some(m) => m,
        None => f.count_models_capped(count_cap)?.count,
    };
    let mut plan = plan_iterations(n_search, models)?;
    if let Some(k) = iterations {
        plan.iterations = k;
    }

    // The diffusion MCX has n_search − 1 controls and must share the
    // decomposition pool with the oracle's own gates.
    let diffusion_pool = (n_search as usize).saturating_sub(3);
    let oracle = synthesize_oracle_with_pool(f, diffusion_pool)?;

    let mut circuit = Circuit::new(oracle.registry().clone());
    for var in 1..=n_search {
        circuit.push(Gate::h(circuit.registry().input_qubit(var)))?;
    }
    let diffusion = diffusion_gates(n_search);
    for _ in 0..plan.iterations {
        circuit.extend(oracle.circuit.gates().to_vec())?;
        circuit.extend(diffusion.clone())?;
    }

    Ok(GroverCircuit {
        circuit,
        plan,
        oracle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::QubitRegistry;
    use crate::formula::EcnfFormula;
    use crate::parse::parse_ecnf;
    use crate::sim::StateVector;
    use num_complex::Complex64;

    fn example_ecnf() -> EcnfFormula {
        parse_ecnf("p ecnf 4 2\n1 ^ T ^ 2 -3 0\n-2 ^ -3 4 0\n").unwrap()
    }

    #[test]
    fn plan_examples() {
        let p = plan_iterations(4, 4).unwrap();
        assert!((p.theta - std::f64::consts::FRAC_PI_6).abs() < 1e-12);
        assert_eq!(p.iterations, 1);
        assert!(!p.over_half);
        assert!((p.success_probability(1) - 1.0).abs() < 1e-12);

        let p = plan_iterations(4, 12).unwrap();
        assert_eq!(p.iterations, 0);
        assert!(p.over_half);

        let p = plan_iterations(3, 8).unwrap();
        assert_eq!(p.iterations, 0);
        assert!((p.success_probability(0) - 1.0).abs() < 1e-12);

        assert!(matches!(plan_iterations(4, 0), Err(Error::Unsat)));
        assert!(plan_iterations(2, 5).is_err());
    }

    /// Builds the dense matrix of the diffusion gates and compares it with
    /// 2|ψ₀⟩⟨ψ₀| − I entrywise, allowing one global sign.
    #[test]
    fn diffusion_matrix_matches_reflection() {
        for n in 1..=3u32 {
            let gates = diffusion_gates(n);
            let dim = 1usize << n;
            let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
            for basis in 0..dim {
                let mut s = StateVector::basis(n as usize, basis as u64).unwrap();
                for g in &gates {
                    s.apply_gate(g).unwrap();
                }
                columns.push((0..dim as u64).map(|i| s.amplitude(i)).collect());
            }
            // Reference: (2/dim) J − I, scaled by the global phase −1 for
            // n ≥ 2 (the X-conjugated controlled-Z flips |0…0⟩).
            let phase = if n == 1 { 1.0 } else { -1.0 };
            for (col, column) in columns.iter().enumerate() {
                for (row, amp) in column.iter().enumerate() {
                    let expected = 2.0 / dim as f64 - if row == col { 1.0 } else { 0.0 };
                    let expected = Complex64::new(phase * expected, 0.0);
                    assert!(
                        (amp - expected).norm() < 1e-12,
                        "n={n} row={row} col={col} amp={amp} expected={expected}"
                    );
                }
            }
        }
    }

    #[test]
    fn diffusion_fixes_uniform_state() {
        let n = 4u32;
        let mut s = StateVector::basis(n as usize, 0).unwrap();
        for q in 0..n as usize {
            s.apply_gate(&Gate::h(q)).unwrap();
        }
        // Registry with pool so the MCX can also be lowered.
        let mut c = Circuit::new(QubitRegistry::new(n as usize, 0, 1));
        c.extend(diffusion_gates(n)).unwrap();
        let lowered = crate::mcx::lower(&c).unwrap();
        let mut s_full = StateVector::basis(lowered.registry().total(), 0).unwrap();
        for q in 0..n as usize {
            s_full.apply_gate(&Gate::h(q)).unwrap();
        }
        for g in lowered.gates() {
            s_full.apply_gate(g).unwrap();
        }
        // |ψ₀⟩ is a fixed point up to global phase: all 16 amplitudes stay
        // equal, pool ancillas stay |0⟩.
        let reference = s_full.amplitude(0);
        assert!((reference.norm() - 0.25).abs() < 1e-12);
        for basis in 0..(1u64 << lowered.registry().total()) {
            let expected = if basis < 16 {
                reference
            } else {
                num_complex::Complex64::new(0.0, 0.0)
            };
            assert!((s_full.amplitude(basis) - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn diffusion_is_self_inverse() {
        let n = 3u32;
        let mut c = Circuit::new(QubitRegistry::new(3, 0, 0));
        c.extend(diffusion_gates(n)).unwrap();
        c.extend(diffusion_gates(n)).unwrap();
        for basis in 0..8u64 {
            let s = crate::sim::run(&c, basis).unwrap();
            assert!((s.amplitude(basis) - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn grover_on_example_reaches_certainty() {
        let f = Formula::Ecnf(example_ecnf());
        let g = assemble_grover(&f, None, None).unwrap();
        assert_eq!(g.plan.iterations, 1);
        let s = crate::sim::run(&g.circuit, 0).unwrap();
        let models = f.count_models().unwrap().assignments;
        let var_mask = 0b1111u64;
        let mass = s.probability_mass(|b| models.contains(&(b & var_mask)));
        assert!((mass - 1.0).abs() < 1e-9, "mass={mass}");
    }

    #[test]
    fn grover_matches_closed_form_on_lowered_circuit() {
        let f = Formula::Ecnf(example_ecnf());
        let g = assemble_grover(&f, None, None).unwrap();
        let lowered = crate::mcx::lower(&g.circuit).unwrap();
        let s = crate::sim::run(&lowered, 0).unwrap();
        let models = f.count_models().unwrap().assignments;
        let mass = s.probability_mass(|b| models.contains(&(b & 0b1111)));
        assert!((mass - g.plan.success_probability(g.plan.iterations)).abs() < 1e-9);
    }

    #[test]
    fn constant_true_formula_stays_uniform() {
        let f = Formula::Ecnf(parse_ecnf("p ecnf 2 1\nT 0\n").unwrap());
        let g = assemble_grover(&f, None, None).unwrap();
        assert_eq!(g.plan.iterations, 0);
        let s = crate::sim::run(&g.circuit, 0).unwrap();
        for basis in 0..4u64 {
            assert!((s.amplitude(basis).norm_sqr() - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn unsat_formula_reports_unsat() {
        let f = Formula::Cnf(crate::parse::parse_dimacs("p cnf 1 2\n1 0\n-1 0\n").unwrap());
        assert!(matches!(assemble_grover(&f, None, None), Err(Error::Unsat)));
    }

    #[test]
    fn init_state_is_uniform_with_clean_ancillas() {
        let f = Formula::Ecnf(example_ecnf());
        let g = assemble_grover(&f, None, Some(0)).unwrap();
        let s = crate::sim::run(&g.circuit, 0).unwrap();
        let expected = 2f64.powf(-2.0); // 2^(−n/2) with n = 4
        for basis in 0..(1u64 << g.circuit.registry().total()) {
            let amp = s.amplitude(basis);
            if basis < 16 {
                assert!((amp - Complex64::new(expected, 0.0)).norm() < 1e-12);
            } else {
                assert!(amp.norm() < 1e-15);
            }
        }
    }
}

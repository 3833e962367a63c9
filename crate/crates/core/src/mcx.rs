//! Lowering of multi-controlled X gates into Clifford+T.
//!
//! A CᵐX with m ≥ 3 positive controls is built as a ladder of relative-phase
//! Toffolis (9 gates each: 2 H, 4 T, 3 CX) computing the AND of the first
//! m−1 controls onto m−2 clean pool ancillas, one full 15-gate CCX acting on
//! the target, and the inverse ladder. The relative phases cancel between the
//! compute and uncompute halves, so the whole block is an exact CᵐX and the
//! ancillas end clean. Totals per control count m:
//!
//!   gates = 18m − 21, H = 4m − 6, T = 8m − 9, CX = 6m − 6, ancillas = m − 2.
//!
//! Negative controls are handled by an X-conjugation pair per control; those
//! X gates carry the `polarity_fix` marker so paper-mode accounting can
//! exclude them.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

/// Closed-form Clifford+T cost of a positive-polarity CᵐX.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McxCost {
    pub total: u64,
    pub h: u64,
    pub t: u64,
    pub cx: u64,
    pub ancilla: u64,
}

/// Cost of a CᵐX with `m ≥ 2` controls: 18m−21 gates (4m−6 H, 8m−9 T,
/// 6m−6 CX) using m−2 clean ancillas.
pub fn mcx_cost(m: u64) -> Result<McxCost> {
    if m < 2 {
        return Err(Error::Input(
            "mcx_cost is defined for m >= 2 (m = 1 is a single CX)".into(),
        ));
    }
    Ok(McxCost {
        total: 18 * m - 21,
        h: 4 * m - 6,
        t: 8 * m - 9,
        cx: 6 * m - 6,
        ancilla: m - 2,
    })
}

/// The 15-gate CCX decomposition: 2 H, 7 T/T†, 6 CX.
pub fn ccx_gates(c1: usize, c2: usize, target: usize) -> Vec<Gate> {
    vec![
        Gate::h(target),
        Gate::cx(c2, target),
        Gate::tdg(target),
        Gate::cx(c1, target),
        Gate::t(target),
        Gate::cx(c2, target),
        Gate::tdg(target),
        Gate::cx(c1, target),
        Gate::t(c2),
        Gate::t(target),
        Gate::h(target),
        Gate::cx(c1, c2),
        Gate::t(c1),
        Gate::tdg(c2),
        Gate::cx(c1, c2),
    ]
}

/// A Toffoli up to relative phase (9 gates: 2 H, 4 T/T†, 3 CX). Used in
/// compute/uncompute pairs only; on its own it differs from CCX by diagonal
/// phases.
fn rccx_gates(c1: usize, c2: usize, target: usize) -> Vec<Gate> {
    vec![
        Gate::h(target),
        Gate::t(target),
        Gate::cx(c2, target),
        Gate::tdg(target),
        Gate::cx(c1, target),
        Gate::t(target),
        Gate::cx(c2, target),
        Gate::tdg(target),
        Gate::h(target),
    ]
}

fn rccx_dagger_gates(c1: usize, c2: usize, target: usize) -> Vec<Gate> {
    crate::circuit::invert_gates(&rccx_gates(c1, c2, target))
}

/// Lowers one MCX gate into Clifford+T. `pool` must supply at least m−2
/// clean qubits disjoint from the gate's own qubits; they are returned clean.
pub fn decompose_mcx(gate: &Gate, pool: &[usize]) -> Result<Vec<Gate>> {
    let (controls, target) = match gate {
        Gate::Mcx { controls, target } => (controls, *target),
        _ => return Err(Error::Input("decompose_mcx expects an MCX gate".into())),
    };
    let m = controls.len();
    debug_assert!(m >= 2);
    let needed = m.saturating_sub(2);
    if pool.len() < needed {
        return Err(Error::Capacity(format!(
            "C^{m}X decomposition needs {needed} ancillas, pool has {}",
            pool.len()
        )));
    }
    for &p in &pool[..needed] {
        if p == target || controls.iter().any(|c| c.qubit == p) {
            return Err(Error::Construction(format!(
                "pool qubit {p} overlaps the gate being decomposed"
            )));
        }
    }

    let mut out = Vec::with_capacity(18 * m);
    // X-conjugation for negative controls, marked as polarity fixes.
    let negatives: Vec<usize> = controls
        .iter()
        .filter(|c| !c.positive)
        .map(|c| c.qubit)
        .collect();
    for &q in &negatives {
        out.push(Gate::x_polarity_fix(q));
    }

    let ctrl: Vec<usize> = controls.iter().map(|c| c.qubit).collect();
    if m == 2 {
        out.extend(ccx_gates(ctrl[0], ctrl[1], target));
    } else {
        let anc = &pool[..needed];
        // Compute ladder: anc[j] accumulates the AND of the first j+2 controls.
        out.extend(rccx_gates(ctrl[0], ctrl[1], anc[0]));
        for j in 1..needed {
            out.extend(rccx_gates(ctrl[j + 1], anc[j - 1], anc[j]));
        }
        out.extend(ccx_gates(ctrl[m - 1], anc[needed - 1], target));
        for j in (1..needed).rev() {
            out.extend(rccx_dagger_gates(ctrl[j + 1], anc[j - 1], anc[j]));
        }
        out.extend(rccx_dagger_gates(ctrl[0], ctrl[1], anc[0]));
    }

    for &q in negatives.iter().rev() {
        out.push(Gate::x_polarity_fix(q));
    }
    Ok(out)
}

/// Lowers every MCX in a circuit using the registry's decomposition pool.
/// The returned circuit is pure Clifford+T; its registry records the
/// cumulative per-gate ancilla demand alongside the shared pool size.
pub fn lower(circuit: &Circuit) -> Result<Circuit> {
    let mut lowered = Circuit::new(circuit.registry().clone());
    let pool = circuit.registry().decomp_ancillas();
    let mut cumulative = 0usize;
    for gate in circuit.gates() {
        match gate {
            Gate::Mcx { controls, .. } => {
                cumulative += controls.len().saturating_sub(2);
                lowered.extend(decompose_mcx(gate, &pool)?)?;
            }
            g => lowered.push(g.clone())?,
        }
    }
    lowered.registry_mut().set_decomp_cumulative(cumulative);
    Ok(lowered)
}

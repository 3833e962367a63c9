//! Reversible-circuit IR: a gate list over a structured qubit registry with
//! inversion, composition, gate-level depth and exact gate counting.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// A control line of a multi-controlled gate. `positive == false` fires on
/// the |0⟩ state (drawn as a white dot).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Control {
    pub qubit: usize,
    pub positive: bool,
}

impl Control {
    pub fn positive(qubit: usize) -> Self {
        Control {
            qubit,
            positive: true,
        }
    }

    pub fn negative(qubit: usize) -> Self {
        Control {
            qubit,
            positive: false,
        }
    }
}

/// One gate of the target set. `X` carries a `polarity_fix` marker when it is
/// half of an X-conjugation pair that only adjusts control polarity; the
/// paper accounting mode excludes such gates from cost totals.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    X {
        target: usize,
        polarity_fix: bool,
    },
    H {
        target: usize,
    },
    T {
        target: usize,
    },
    Tdg {
        target: usize,
    },
    Cx {
        control: usize,
        target: usize,
    },
    Mcx {
        controls: Vec<Control>,
        target: usize,
    },
}

impl Gate {
    pub fn x(target: usize) -> Self {
        Gate::X {
            target,
            polarity_fix: false,
        }
    }

    pub fn x_polarity_fix(target: usize) -> Self {
        Gate::X {
            target,
            polarity_fix: true,
        }
    }

    pub fn h(target: usize) -> Self {
        Gate::H { target }
    }

    pub fn t(target: usize) -> Self {
        Gate::T { target }
    }

    pub fn tdg(target: usize) -> Self {
        Gate::Tdg { target }
    }

    pub fn cx(control: usize, target: usize) -> Self {
        Gate::Cx { control, target }
    }

    /// Positive-control MCX; use [`Gate::mcx_with_polarity`] for mixed polarity.
    pub fn mcx(controls: Vec<usize>, target: usize) -> Self {
        Gate::Mcx {
            controls: controls.into_iter().map(Control::positive).collect(),
            target,
        }
    }

    pub fn mcx_with_polarity(controls: Vec<Control>, target: usize) -> Self {
        Gate::Mcx { controls, target }
    }

    /// All qubits the gate touches (controls then target).
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::X { target, .. }
            | Gate::H { target }
            | Gate::T { target }
            | Gate::Tdg { target } => vec![*target],
            Gate::Cx { control, target } => vec![*control, *target],
            Gate::Mcx { controls, target } => {
                let mut qs: Vec<usize> = controls.iter().map(|c| c.qubit).collect();
                qs.push(*target);
                qs
            }
        }
    }

    /// The inverse gate: T ↔ Tdg, everything else is self-inverse.
    pub fn inverse(&self) -> Gate {
        match self {
            Gate::T { target } => Gate::Tdg { target: *target },
            Gate::Tdg { target } => Gate::T { target: *target },
            g => g.clone(),
        }
    }

    fn validate(&self, total_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        for &q in &qubits {
            if q >= total_qubits {
                return Err(Error::Construction(format!(
                    "qubit index {q} out of range (registry has {total_qubits})"
                )));
            }
        }
        match self {
            Gate::Cx { control, target } => {
                if control == target {
                    return Err(Error::Construction(
                        "CX control and target must differ".into(),
                    ));
                }
            }
            Gate::Mcx { controls, target } => {
                if controls.len() < 2 {
                    return Err(Error::Construction(
                        "MCX requires at least 2 controls; use CX or X for lower arity".into(),
                    ));
                }
                let mut seen = vec![*target];
                for c in controls {
                    if seen.contains(&c.qubit) {
                        return Err(Error::Construction(format!(
                            "MCX control/target sets overlap on qubit {}",
                            c.qubit
                        )));
                    }
                    seen.push(c.qubit);
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// Qubit layout: formula variables first (originals then auxiliaries), then
/// one ancilla per clause, then the shared pool used when decomposing MCX
/// gates. The phase kickback reuses the last clause ancilla, so no dedicated
/// phase qubit is allocated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitRegistry {
    num_inputs: usize,
    num_clause_ancillas: usize,
    num_decomp_ancillas: usize,
    /// Sum over decomposed MCX gates of their per-gate ancilla demand; filled
    /// in by the lowering pass (the pool itself is shared).
    decomp_cumulative: usize,
}

impl QubitRegistry {
    pub fn new(num_inputs: usize, num_clause_ancillas: usize, num_decomp_ancillas: usize) -> Self {
        QubitRegistry {
            num_inputs,
            num_clause_ancillas,
            num_decomp_ancillas,
            decomp_cumulative: 0,
        }
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn num_clause_ancillas(&self) -> usize {
        self.num_clause_ancillas
    }

    pub fn num_decomp_ancillas(&self) -> usize {
        self.num_decomp_ancillas
    }

    pub fn decomp_cumulative(&self) -> usize {
        self.decomp_cumulative
    }

    pub(crate) fn set_decomp_cumulative(&mut self, value: usize) {
        self.decomp_cumulative = value;
    }

    pub fn total(&self) -> usize {
        self.num_inputs + self.num_clause_ancillas + self.num_decomp_ancillas
    }

    /// Qubit holding 1-based variable `var`.
    pub fn input_qubit(&self, var: u32) -> usize {
        debug_assert!(var >= 1 && (var as usize) <= self.num_inputs);
        var as usize - 1
    }

    pub fn clause_ancilla(&self, k: usize) -> usize {
        debug_assert!(k < self.num_clause_ancillas);
        self.num_inputs + k
    }

    pub fn decomp_ancilla(&self, j: usize) -> usize {
        debug_assert!(j < self.num_decomp_ancillas);
        self.num_inputs + self.num_clause_ancillas + j
    }

    pub fn decomp_ancillas(&self) -> Vec<usize> {
        (0..self.num_decomp_ancillas)
            .map(|j| self.decomp_ancilla(j))
            .collect()
    }
}

/// An ordered gate list over a registry.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    registry: QubitRegistry,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(registry: QubitRegistry) -> Self {
        Circuit {
            registry,
            gates: Vec::new(),
        }
    }

    pub fn registry(&self) -> &QubitRegistry {
        &self.registry
    }

    pub(crate) fn registry_mut(&mut self) -> &mut QubitRegistry {
        &mut self.registry
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.registry.total())?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    /// Reversed gate order with T ↔ Tdg swapped. `invert(invert(c)) == c`.
    pub fn invert(&self) -> Circuit {
        Circuit {
            registry: self.registry.clone(),
            gates: invert_gates(&self.gates),
        }
    }

    pub fn contains_mcx(&self) -> bool {
        self.gates.iter().any(|g| matches!(g, Gate::Mcx { .. }))
    }

    /// Gate-level depth: longest chain where gates conflict iff their qubit
    /// sets intersect (as-soon-as-possible layering). Every gate occupies one
    /// layer regardless of kind.
    pub fn depth(&self) -> usize {
        let mut ready = vec![0usize; self.registry.total()];
        let mut depth = 0;
        for gate in &self.gates {
            let layer = gate.qubits().iter().map(|&q| ready[q]).max().unwrap_or(0) + 1;
            for q in gate.qubits() {
                ready[q] = layer;
            }
            depth = depth.max(layer);
        }
        depth
    }

    pub fn count_gates(&self) -> GateCounts {
        let mut counts = GateCounts::default();
        for gate in &self.gates {
            match gate {
                Gate::X { polarity_fix, .. } => {
                    counts.x += 1;
                    if *polarity_fix {
                        counts.x_polarity_fix += 1;
                    }
                }
                Gate::H { .. } => counts.h += 1,
                Gate::T { .. } | Gate::Tdg { .. } => counts.t += 1,
                Gate::Cx { .. } => counts.cx += 1,
                Gate::Mcx { controls, .. } => {
                    *counts.mcx.entry(controls.len()).or_insert(0) += 1;
                }
            }
        }
        counts
    }
}

/// Reverses a gate slice, swapping T and Tdg.
pub fn invert_gates(gates: &[Gate]) -> Vec<Gate> {
    gates.iter().rev().map(|g| g.inverse()).collect()
}

/// Exact gate multiset. `t` pools T and T†; `mcx` maps control count to the
/// number of MCX gates of that arity. `x` counts every X gate;
/// `x_polarity_fix` is the subset that only adjusts control polarity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GateCounts {
    pub x: u64,
    pub x_polarity_fix: u64,
    pub h: u64,
    pub t: u64,
    pub cx: u64,
    pub mcx: BTreeMap<usize, u64>,
}

impl GateCounts {
    /// Clifford+T total with every gate counted (physical accounting).
    pub fn total_clifford_t(&self) -> u64 {
        self.x + self.h + self.t + self.cx
    }

    pub fn mcx_total(&self) -> u64 {
        self.mcx.values().sum()
    }
}

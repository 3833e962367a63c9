//! Dense statevector simulation of Clifford+T (and direct MCX) circuits.
//! This is the repository's semantic ground truth for verifying synthesized
//! oracles and decompositions.
//!
//! Convention: little-endian — qubit 0 is the least significant bit of a
//! basis index.

use num_complex::Complex64;

use crate::circuit::{Circuit, Control, Gate};
use crate::error::{Error, Result};

/// Default cap on simulated qubits (2^24 amplitudes ≈ 256 MiB).
pub const DEFAULT_SIM_CAP: u32 = 24;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// A normalized complex amplitude vector over `2^num_qubits` basis states.
#[derive(Debug, Clone)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// |basis⟩ with the given index.
    pub fn basis(num_qubits: usize, basis: u64) -> Result<Self> {
        Self::basis_capped(num_qubits, basis, DEFAULT_SIM_CAP)
    }

    pub fn basis_capped(num_qubits: usize, basis: u64, cap: u32) -> Result<Self> {
        if num_qubits as u32 > cap {
            return Err(Error::Capacity(format!(
                "statevector over {num_qubits} qubits exceeds cap {cap}"
            )));
        }
        if num_qubits > 32 {
            return Err(Error::Capacity(format!(
                "dense simulation of {num_qubits} qubits is not supported"
            )));
        }
        let dim = 1usize << num_qubits;
        if basis as usize >= dim {
            return Err(Error::Input(format!(
                "basis index {basis} out of range for {num_qubits} qubits"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[basis as usize] = Complex64::new(1.0, 0.0);
        Ok(StateVector { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitude(&self, basis: u64) -> Complex64 {
        self.amps[basis as usize]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Σ |amp|² over basis states satisfying the predicate.
    pub fn probability_mass(&self, predicate: impl Fn(u64) -> bool) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| predicate(*i as u64))
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        for q in gate.qubits() {
            if q >= self.num_qubits {
                return Err(Error::Input(format!(
                    "gate touches qubit {q}, state has {}",
                    self.num_qubits
                )));
            }
        }
        match gate {
            Gate::X { target, .. } => self.apply_x(*target),
            Gate::H { target } => self.apply_h(*target),
            Gate::T { target } => self.apply_phase(
                *target,
                Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
            ),
            Gate::Tdg { target } => self.apply_phase(
                *target,
                Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4),
            ),
            Gate::Cx { control, target } => self.apply_cx(*control, *target),
            Gate::Mcx { controls, target } => self.apply_mcx(controls, *target),
        }
        Ok(())
    }

    fn apply_x(&mut self, target: usize) {
        let mask = 1usize << target;
        for i in 0..self.amps.len() {
            if i & mask == 0 {
                self.amps.swap(i, i | mask);
            }
        }
    }

    fn apply_h(&mut self, target: usize) {
        let mask = 1usize << target;
        for i in 0..self.amps.len() {
            if i & mask == 0 {
                let j = i | mask;
                let a = self.amps[i];
                let b = self.amps[j];
                self.amps[i] = (a + b) * FRAC_1_SQRT_2;
                self.amps[j] = (a - b) * FRAC_1_SQRT_2;
            }
        }
    }

    fn apply_phase(&mut self, target: usize, phase: Complex64) {
        let mask = 1usize << target;
        for i in 0..self.amps.len() {
            if i & mask != 0 {
                self.amps[i] *= phase;
            }
        }
    }

    fn apply_cx(&mut self, control: usize, target: usize) {
        let cmask = 1usize << control;
        let tmask = 1usize << target;
        for i in 0..self.amps.len() {
            if i & cmask != 0 && i & tmask == 0 {
                self.amps.swap(i, i | tmask);
            }
        }
    }

    fn apply_mcx(&mut self, controls: &[Control], target: usize) {
        let tmask = 1usize << target;
        // Controls fire when positive controls are 1 and negative are 0.
        let mut care = 0usize;
        let mut want = 0usize;
        for c in controls {
            care |= 1 << c.qubit;
            if c.positive {
                want |= 1 << c.qubit;
            }
        }
        for i in 0..self.amps.len() {
            if i & care == want && i & tmask == 0 {
                self.amps.swap(i, i | tmask);
            }
        }
    }
}

/// Runs a circuit on a basis state. The circuit's registry fixes the qubit
/// count; the default simulation cap applies.
pub fn run(circuit: &Circuit, initial_basis: u64) -> Result<StateVector> {
    run_capped(circuit, initial_basis, DEFAULT_SIM_CAP)
}

pub fn run_capped(circuit: &Circuit, initial_basis: u64, cap: u32) -> Result<StateVector> {
    let mut state = StateVector::basis_capped(circuit.registry().total(), initial_basis, cap)?;
    run_on(circuit, &mut state)?;
    Ok(state)
}

/// Applies a circuit's gates in order to an existing state.
pub fn run_on(circuit: &Circuit, state: &mut StateVector) -> Result<()> {
    if state.num_qubits() != circuit.registry().total() {
        return Err(Error::Input(format!(
            "state has {} qubits, circuit registry has {}",
            state.num_qubits(),
            circuit.registry().total()
        )));
    }
    for gate in circuit.gates() {
        state.apply_gate(gate)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Control, QubitRegistry};

    const EPS: f64 = 1e-12;

    fn approx(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < EPS
    }

    #[test]
    fn h_on_zero_gives_plus() {
        let mut s = StateVector::basis(1, 0).unwrap();
        s.apply_gate(&Gate::h(0)).unwrap();
        assert!(approx(s.amplitude(0), Complex64::new(FRAC_1_SQRT_2, 0.0)));
        assert!(approx(s.amplitude(1), Complex64::new(FRAC_1_SQRT_2, 0.0)));
    }

    #[test]
    fn four_t_gates_are_z() {
        let mut s = StateVector::basis(1, 1).unwrap();
        for _ in 0..4 {
            s.apply_gate(&Gate::t(0)).unwrap();
        }
        assert!(approx(s.amplitude(1), Complex64::new(-1.0, 0.0)));
    }

    #[test]
    fn mcx_truth_table_little_endian() {
        // |110⟩ with q0 least significant means q0=0, q1=1, q2=1 for index 6.
        // Controls on q0,q1 fire only when both are 1: index 3 = |011⟩.
        let mut s = StateVector::basis(3, 0b011).unwrap();
        s.apply_gate(&Gate::mcx(vec![0, 1], 2)).unwrap();
        assert!(approx(s.amplitude(0b111), Complex64::new(1.0, 0.0)));

        let mut s = StateVector::basis(3, 0b110).unwrap();
        s.apply_gate(&Gate::mcx(vec![0, 1], 2)).unwrap();
        assert!(approx(s.amplitude(0b110), Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn mcx_negative_controls() {
        let mut s = StateVector::basis(3, 0b010).unwrap();
        let gate = Gate::mcx_with_polarity(vec![Control::negative(0), Control::positive(1)], 2);
        s.apply_gate(&gate).unwrap();
        assert!(approx(s.amplitude(0b110), Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn empty_circuit_is_identity_and_caps_apply() {
        let c = Circuit::new(QubitRegistry::new(2, 0, 0));
        let s = run(&c, 0b10).unwrap();
        assert!(approx(s.amplitude(0b10), Complex64::new(1.0, 0.0)));

        let big = Circuit::new(QubitRegistry::new(30, 0, 0));
        assert!(matches!(run(&big, 0), Err(Error::Capacity(_))));
    }

    #[test]
    fn norm_preserved_and_inverse_returns_initial() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for round in 0..10 {
            let mut c = Circuit::new(QubitRegistry::new(6, 0, 0));
            for _ in 0..50 {
                let q = rng.gen_range(0..6);
                let gate = match rng.gen_range(0..6) {
                    0 => Gate::x(q),
                    1 => Gate::h(q),
                    2 => Gate::t(q),
                    3 => Gate::tdg(q),
                    4 => {
                        let mut t = rng.gen_range(0..6);
                        while t == q {
                            t = rng.gen_range(0..6);
                        }
                        Gate::cx(q, t)
                    }
                    _ => {
                        let mut qubits: Vec<usize> = (0..6).collect();
                        // shuffle-lite: rotate by a random amount
                        let r = rng.gen_range(0..6);
                        qubits.rotate_left(r);
                        Gate::mcx(vec![qubits[0], qubits[1]], qubits[2])
                    }
                };
                c.push(gate).unwrap();
            }
            let start = rng.gen_range(0..64u64);
            let mut s = StateVector::basis(6, start).unwrap();
            for gate in c.gates() {
                s.apply_gate(gate).unwrap();
                assert!((s.norm_sqr() - 1.0).abs() < 1e-10, "round {round}");
            }
            run_on(&c.invert(), &mut s).unwrap();
            assert!(
                (s.amplitude(start) - Complex64::new(1.0, 0.0)).norm() < 1e-9,
                "round {round}"
            );
        }
    }

    #[test]
    fn probability_mass_examples() {
        let mut s = StateVector::basis(4, 0).unwrap();
        for q in 0..4 {
            s.apply_gate(&Gate::h(q)).unwrap();
        }
        let models = [0b0000u64, 0b0100, 0b1011, 0b1100];
        let mass = s.probability_mass(|b| models.contains(&b));
        assert!((mass - 0.25).abs() < EPS);

        let s = StateVector::basis(2, 0b01).unwrap();
        assert!((s.probability_mass(|b| b == 1) - 1.0).abs() < EPS);
    }
}

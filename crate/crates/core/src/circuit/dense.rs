use num_complex::Complex64;

use super::gate::{Circuit, Gate, Polarity};
use crate::error::{Error, Result};

/// Largest register for which a full unitary is built.
pub const MAX_UNITARY_QUBITS: usize = 12;
/// Largest register for a single statevector run.
pub const MAX_STATE_QUBITS: usize = 20;

/// Dense `2^n × 2^n` matrix, column-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseUnitary {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DenseUnitary {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[col * self.dim + row]
    }

    pub fn column(&self, col: usize) -> &[Complex64] {
        &self.entries[col * self.dim..(col + 1) * self.dim]
    }

    /// Largest entrywise distance to the permutation matrix sending basis
    /// state `x` to `images[x]`.
    pub fn max_deviation_from_permutation(&self, images: &[usize]) -> f64 {
        assert_eq!(images.len(), self.dim, "permutation size mismatch");
        let mut worst = 0.0f64;
        for (col, &image) in images.iter().enumerate() {
            for (row, a) in self.column(col).iter().enumerate() {
                let expected = if row == image { 1.0 } else { 0.0 };
                worst = worst.max((a - expected).norm());
            }
        }
        worst
    }

    pub fn max_deviation_from_identity(&self) -> f64 {
        let identity: Vec<usize> = (0..self.dim).collect();
        self.max_deviation_from_permutation(&identity)
    }
}

#[inline]
fn mask(n_qubits: usize, qubit: usize) -> usize {
    1 << (n_qubits - 1 - qubit)
}

fn controls_fire(gate: &Gate, n_qubits: usize, index: usize) -> bool {
    gate.controls().iter().all(|c| {
        let set = index & mask(n_qubits, c.qubit) != 0;
        match c.polarity {
            Polarity::Positive => set,
            Polarity::Negative => !set,
        }
    })
}

/// Applies one gate in place to a `2^n` statevector.
pub fn apply_gate(state: &mut [Complex64], n_qubits: usize, gate: &Gate) {
    let t = mask(n_qubits, gate.target());
    match gate {
        Gate::H { .. } => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            for index in 0..state.len() {
                if index & t == 0 {
                    let (a, b) = (state[index], state[index | t]);
                    state[index] = (a + b) * s;
                    state[index | t] = (a - b) * s;
                }
            }
        }
        Gate::X { .. } | Gate::Mcx { .. } => {
            for index in 0..state.len() {
                if index & t == 0 && controls_fire(gate, n_qubits, index) {
                    state.swap(index, index | t);
                }
            }
        }
    }
}

/// Output statevector for computational basis input `|input⟩`.
pub fn simulate_state(circuit: &Circuit, input: usize) -> Result<Vec<Complex64>> {
    let n = circuit.n_qubits();
    if n > MAX_STATE_QUBITS {
        return Err(Error::ResourceLimit(format!(
            "{n} qubits exceeds statevector limit {MAX_STATE_QUBITS}"
        )));
    }
    let dim = 1usize << n;
    if input >= dim {
        return Err(Error::InvalidArgument(format!(
            "basis state {input} out of range"
        )));
    }
    let mut state = vec![Complex64::new(0.0, 0.0); dim];
    state[input] = Complex64::new(1.0, 0.0);
    for gate in circuit.gates() {
        apply_gate(&mut state, n, gate);
    }
    Ok(state)
}

/// Full unitary, one simulated column per basis input.
pub fn simulate_dense(circuit: &Circuit) -> Result<DenseUnitary> {
    let n = circuit.n_qubits();
    if n > MAX_UNITARY_QUBITS {
        return Err(Error::ResourceLimit(format!(
            "{n} qubits exceeds unitary limit {MAX_UNITARY_QUBITS}"
        )));
    }
    let dim = 1usize << n;
    let mut entries = Vec::with_capacity(dim * dim);
    for input in 0..dim {
        entries.extend(simulate_state(circuit, input)?);
    }
    Ok(DenseUnitary { dim, entries })
}

/// `|⟨a|b⟩|²`.
pub fn fidelity(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.conj() * y)
        .sum::<Complex64>()
        .norm_sqr()
}

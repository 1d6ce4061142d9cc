//! Reversible circuits for the query oracles and the initial state, with a
//! dense simulator to verify them and gate-count reporting.

mod cost;
mod dense;
mod gate;
mod scaling;
mod synth;

pub use cost::{expand_mcx, gate_count, mcx_cost, GateCountReport};
pub use dense::{
    apply_gate, fidelity, simulate_dense, simulate_state, DenseUnitary, MAX_STATE_QUBITS,
    MAX_UNITARY_QUBITS,
};
pub use gate::{Circuit, Control, Gate, Polarity};
pub use scaling::{
    bounding_constant, fit_log_log, fit_scaling, reference_cost, scaling_function, scaling_table,
    FunctionFamily, LogLogFit, ScalingRow,
};
pub use synth::{
    gray_code, lift_boolean, permutation_to_transpositions, synth_boolean_oracle,
    synth_init_state_circuit, synth_phase_oracle, synth_transposition, GrayCodePath, Permutation,
    Transposition, TruthTable, MAX_WIDTH,
};

use num_complex::Complex64;

/// Target of [`synth_init_state_circuit`]: `Σ_k 2^{-s/2} |k⟩|k+1⟩…|k+M-1⟩`
/// with register values mod `2^s`, register 1 most significant.
pub fn init_state_target(s: usize, m: usize) -> Vec<Complex64> {
    let size = 1usize << s;
    let mut out = vec![Complex64::new(0.0, 0.0); 1 << (s * m)];
    let amp = Complex64::new(1.0 / (size as f64).sqrt(), 0.0);
    for k in 0..size {
        let index = (0..m).fold(0, |acc, t| (acc << s) | ((k + t) % size));
        out[index] = amp;
    }
    out
}

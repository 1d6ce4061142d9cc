use std::collections::BTreeMap;

use serde::Serialize;

use super::gate::{Circuit, Control, Gate, Polarity};
use crate::error::Result;

/// Two-qubit-equivalent cost of an X with `controls` controls: `2c - 1` for
/// `c >= 2`, otherwise 1.
pub fn mcx_cost(controls: usize) -> usize {
    if controls <= 1 {
        1
    } else {
        2 * controls - 1
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GateCountReport {
    pub hadamard: usize,
    pub x: usize,
    pub mcx: usize,
    /// MCX gates keyed by control count.
    pub mcx_by_controls: BTreeMap<usize, usize>,
    /// H and X count 1 each; MCX per [`mcx_cost`].
    pub basic_gates: usize,
}

pub fn gate_count(circuit: &Circuit) -> GateCountReport {
    let mut report = GateCountReport::default();
    for gate in circuit.gates() {
        match gate {
            Gate::H { .. } => {
                report.hadamard += 1;
                report.basic_gates += 1;
            }
            Gate::X { .. } => {
                report.x += 1;
                report.basic_gates += 1;
            }
            Gate::Mcx { controls, .. } => {
                report.mcx += 1;
                *report.mcx_by_controls.entry(controls.len()).or_default() += 1;
                report.basic_gates += mcx_cost(controls.len());
            }
        }
    }
    report
}

/// Rewrites every MCX with `c >= 3` controls into Toffolis and one CNOT/
/// Toffoli using a work register of `c - 2` qubits appended after the
/// original ones (the standard compute/target/uncompute ladder), with X
/// conjugation for negative controls. Gates with `c <= 2` are kept.
///
/// Each expanded MCX becomes `2c - 3` Toffolis, within the `2c - 1` units
/// charged by [`mcx_cost`].
pub fn expand_mcx(circuit: &Circuit) -> Result<Circuit> {
    let widest = circuit
        .gates()
        .iter()
        .map(|g| g.controls().len())
        .max()
        .unwrap_or(0);
    let work = widest.saturating_sub(2);
    let base = circuit.n_qubits();
    let mut out = Circuit::new(base + work);
    for gate in circuit.gates() {
        let controls = gate.controls();
        if controls.len() <= 2 {
            out.push(gate.clone())?;
            continue;
        }
        let target = gate.target();
        let flips: Vec<usize> = controls
            .iter()
            .filter(|c| c.polarity == Polarity::Negative)
            .map(|c| c.qubit)
            .collect();
        for &q in &flips {
            out.x(q)?;
        }
        let pos = |q: usize| Control::positive(q);
        let mut ladder = vec![Gate::Mcx {
            controls: vec![pos(controls[0].qubit), pos(controls[1].qubit)],
            target: base,
        }];
        for (w, c) in controls[2..controls.len() - 1].iter().enumerate() {
            ladder.push(Gate::Mcx {
                controls: vec![pos(base + w), pos(c.qubit)],
                target: base + w + 1,
            });
        }
        for g in &ladder {
            out.push(g.clone())?;
        }
        out.mcx(
            vec![
                pos(base + controls.len() - 3),
                pos(controls[controls.len() - 1].qubit),
            ],
            target,
        )?;
        for g in ladder.iter().rev() {
            out.push(g.clone())?;
        }
        for &q in &flips {
            out.x(q)?;
        }
    }
    Ok(out)
}

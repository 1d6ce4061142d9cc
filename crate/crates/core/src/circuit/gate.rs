use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    /// Fires when the control qubit is `|1⟩`.
    Positive,
    /// Fires when the control qubit is `|0⟩`.
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Control {
    pub qubit: usize,
    pub polarity: Polarity,
}

impl Control {
    pub fn positive(qubit: usize) -> Self {
        Control {
            qubit,
            polarity: Polarity::Positive,
        }
    }

    pub fn negative(qubit: usize) -> Self {
        Control {
            qubit,
            polarity: Polarity::Negative,
        }
    }

    /// Control on `qubit` that fires when it holds `value`.
    pub fn on(qubit: usize, value: bool) -> Self {
        if value {
            Self::positive(qubit)
        } else {
            Self::negative(qubit)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gate {
    H {
        target: usize,
    },
    X {
        target: usize,
    },
    /// Multi-controlled X. One positive control is a CNOT.
    Mcx {
        controls: Vec<Control>,
        target: usize,
    },
}

impl Gate {
    pub fn target(&self) -> usize {
        match self {
            Gate::H { target } | Gate::X { target } | Gate::Mcx { target, .. } => *target,
        }
    }

    pub fn controls(&self) -> &[Control] {
        match self {
            Gate::Mcx { controls, .. } => controls,
            _ => &[],
        }
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        let target = self.target();
        if target >= n_qubits {
            return Err(Error::InvalidCircuit(format!(
                "target q{target} out of range for {n_qubits} qubits"
            )));
        }
        let controls = self.controls();
        for (idx, c) in controls.iter().enumerate() {
            if c.qubit >= n_qubits {
                return Err(Error::InvalidCircuit(format!(
                    "control q{} out of range for {n_qubits} qubits",
                    c.qubit
                )));
            }
            if c.qubit == target {
                return Err(Error::InvalidCircuit(format!(
                    "q{target} is both control and target"
                )));
            }
            if controls[..idx].iter().any(|d| d.qubit == c.qubit) {
                return Err(Error::InvalidCircuit(format!(
                    "duplicate control q{}",
                    c.qubit
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::H { target } => write!(f, "H q{target}"),
            Gate::X { target } => write!(f, "X q{target}"),
            Gate::Mcx { controls, target } => {
                f.write_str("MCX")?;
                for c in controls {
                    let sign = match c.polarity {
                        Polarity::Positive => '+',
                        Polarity::Negative => '-',
                    };
                    write!(f, " {sign}q{}", c.qubit)?;
                }
                write!(f, " -> q{target}")
            }
        }
    }
}

/// Ordered gate list over `n_qubits` qubits.
///
/// Qubit 0 is the most significant bit of a computational basis index.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
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
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn h(&mut self, target: usize) -> Result<()> {
        self.push(Gate::H { target })
    }

    pub fn x(&mut self, target: usize) -> Result<()> {
        self.push(Gate::X { target })
    }

    pub fn mcx(&mut self, controls: Vec<Control>, target: usize) -> Result<()> {
        self.push(Gate::Mcx { controls, target })
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.mcx(vec![Control::positive(control)], target)
    }

    /// Appends another circuit on the same register.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits > self.n_qubits {
            return Err(Error::InvalidCircuit(format!(
                "cannot append {} qubits onto {}",
                other.n_qubits, self.n_qubits
            )));
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(())
    }

    /// The gates in reverse order. Every gate here is self-inverse, so this is
    /// the inverse circuit.
    pub fn mirrored(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().cloned().collect(),
        }
    }

    /// Renders the line-oriented text format.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QUBITS {}", self.n_qubits)?;
        for gate in &self.gates {
            writeln!(f, "{gate}")?;
        }
        Ok(())
    }
}

fn parse_qubit(token: &str, line: usize) -> Result<usize> {
    token
        .strip_prefix('q')
        .and_then(|q| q.parse().ok())
        .ok_or_else(|| Error::Parse {
            line,
            msg: format!("expected q<index>, got {token:?}"),
        })
}

fn parse_gate(text: &str, line: usize) -> Result<Gate> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let err = |msg: &str| Error::Parse {
        line,
        msg: msg.to_string(),
    };
    match tokens.as_slice() {
        ["H", q] => Ok(Gate::H {
            target: parse_qubit(q, line)?,
        }),
        ["X", q] => Ok(Gate::X {
            target: parse_qubit(q, line)?,
        }),
        ["MCX", rest @ ..] => {
            let (arrow, target) = match rest {
                [.., arrow, target] => (*arrow, *target),
                _ => return Err(err("MCX needs '-> q<target>'")),
            };
            if arrow != "->" {
                return Err(err("MCX needs '-> q<target>'"));
            }
            let controls = rest[..rest.len() - 2]
                .iter()
                .map(|tok| {
                    let (polarity, q) = match tok.split_at_checked(1) {
                        Some(("+", q)) => (Polarity::Positive, q),
                        Some(("-", q)) => (Polarity::Negative, q),
                        _ => return Err(err("control must start with + or -")),
                    };
                    Ok(Control {
                        qubit: parse_qubit(q, line)?,
                        polarity,
                    })
                })
                .collect::<Result<_>>()?;
            Ok(Gate::Mcx {
                controls,
                target: parse_qubit(target, line)?,
            })
        }
        _ => Err(err(&format!("unrecognised gate {text:?}"))),
    }
}

impl FromStr for Circuit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing QUBITS header".into(),
        })?;
        let n_qubits = header
            .strip_prefix("QUBITS ")
            .and_then(|n| n.trim().parse().ok())
            .ok_or_else(|| Error::Parse {
                line,
                msg: format!("bad header {header:?}"),
            })?;
        let mut circuit = Circuit::new(n_qubits);
        for (line, text) in lines {
            let gate = parse_gate(text, line)?;
            circuit.push(gate).map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })?;
        }
        Ok(circuit)
    }
}

use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use qpm_core::circuit::{
    bounding_constant, fidelity, fit_scaling, gate_count, init_state_target, lift_boolean,
    scaling_table, simulate_dense, simulate_state, synth_boolean_oracle, synth_init_state_circuit,
    synth_phase_oracle, synth_transposition, Circuit, FunctionFamily, Transposition, TruthTable,
    MAX_STATE_QUBITS, MAX_UNITARY_QUBITS,
};
use qpm_core::text::{build_index, Text};
use qpm_core::Error;

use crate::report::{literal_or_file, write_output};
use crate::{CliResult, Failure};

#[derive(Debug, Args)]
pub struct SynthOutput {
    /// Check the circuit by dense simulation.
    #[arg(long)]
    verify: bool,
    /// Write the circuit in text format.
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum SynthCommand {
    /// Exchange basis states `a` and `b` on `width` qubits.
    Transposition {
        #[arg(long)]
        width: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[command(flatten)]
        output: SynthOutput,
    },
    /// Oracle for the positions of one symbol in a text.
    Oracle {
        /// Literal text, or `@path` to read it from a file.
        #[arg(long)]
        text: String,
        /// A single byte.
        #[arg(long)]
        symbol: String,
        /// Emit the phase form (ancilla prepared and returned) instead of the bit form.
        #[arg(long)]
        phase: bool,
        #[command(flatten)]
        output: SynthOutput,
    },
    /// Preparation of the shifted-register superposition.
    InitState {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        output: SynthOutput,
    },
}

enum Verdict {
    Deviation(f64),
    Fidelity(f64),
}

impl Verdict {
    fn passed(&self) -> bool {
        match *self {
            Verdict::Deviation(d) => d <= 1e-10,
            Verdict::Fidelity(f) => f >= 1.0 - 1e-10,
        }
    }
}

fn unitary_limit(circuit: &Circuit) -> CliResult<()> {
    if circuit.n_qubits() > MAX_UNITARY_QUBITS {
        return Err(Error::ResourceLimit(format!(
            "--verify needs at most {MAX_UNITARY_QUBITS} qubits, circuit has {}",
            circuit.n_qubits()
        ))
        .into());
    }
    Ok(())
}

fn symbol_table(text: &str, symbol: &str) -> CliResult<TruthTable> {
    let [byte] = symbol.as_bytes() else {
        return Err(Failure::Usage(format!(
            "--symbol must be a single byte, got {symbol:?}"
        )));
    };
    let text = Text::from_bytes(&literal_or_file(text)?)?;
    let index = build_index(&text)?;
    let indicator = index.indicator_or_empty(*byte as u32);
    Ok(TruthTable::from_indicator(&indicator)?)
}

fn report(circuit: &Circuit, verdict: Option<Verdict>, emit: Option<&PathBuf>) -> CliResult<()> {
    if let Some(path) = emit {
        write_output(path, circuit.to_text().as_bytes())?;
    }
    let counts = gate_count(circuit);
    println!("qubits {}", circuit.n_qubits());
    let by_controls: Vec<String> = counts
        .mcx_by_controls
        .iter()
        .map(|(c, k)| format!("{c}:{k}"))
        .collect();
    println!(
        "gates H={} X={} MCX={} (by controls {})",
        counts.hadamard,
        counts.x,
        counts.mcx,
        if by_controls.is_empty() {
            "-".into()
        } else {
            by_controls.join(" ")
        }
    );
    println!("basic_gates {}", counts.basic_gates);
    let Some(verdict) = verdict else {
        return Ok(());
    };
    let status = if verdict.passed() { "PASS" } else { "FAIL" };
    match verdict {
        Verdict::Deviation(d) => println!("verify {status} max_deviation={d:e}"),
        Verdict::Fidelity(f) => println!("verify {status} fidelity={f:.12}"),
    }
    if verdict.passed() {
        Ok(())
    } else {
        Err(Failure::Check("verification failed".into()))
    }
}

pub fn synth(cmd: SynthCommand) -> CliResult<()> {
    match cmd {
        SynthCommand::Transposition {
            width,
            a,
            b,
            output,
        } => {
            let circuit = synth_transposition(&Transposition::new(a, b)?, width)?;
            let verdict = if output.verify {
                unitary_limit(&circuit)?;
                let images: Vec<usize> = (0..1usize << width)
                    .map(|x| {
                        if x == a {
                            b
                        } else if x == b {
                            a
                        } else {
                            x
                        }
                    })
                    .collect();
                Some(Verdict::Deviation(
                    simulate_dense(&circuit)?.max_deviation_from_permutation(&images),
                ))
            } else {
                None
            };
            report(&circuit, verdict, output.emit.as_ref())
        }
        SynthCommand::Oracle {
            text,
            symbol,
            phase,
            output,
        } => {
            let f = symbol_table(&text, &symbol)?;
            let circuit = if phase {
                synth_phase_oracle(&f)?
            } else {
                synth_boolean_oracle(&f)?
            };
            let verdict = if output.verify {
                unitary_limit(&circuit)?;
                let deviation = if phase {
                    phase_deviation(&circuit, &f)?
                } else {
                    simulate_dense(&circuit)?
                        .max_deviation_from_permutation(lift_boolean(&f).images())
                };
                Some(Verdict::Deviation(deviation))
            } else {
                None
            };
            report(&circuit, verdict, output.emit.as_ref())
        }
        SynthCommand::InitState { s, m, output } => {
            let circuit = synth_init_state_circuit(s, m)?;
            let verdict = if output.verify {
                if circuit.n_qubits() > MAX_STATE_QUBITS {
                    return Err(Error::ResourceLimit(format!(
                        "--verify needs at most {MAX_STATE_QUBITS} qubits, circuit has {}",
                        circuit.n_qubits()
                    ))
                    .into());
                }
                let out = simulate_state(&circuit, 0)?;
                Some(Verdict::Fidelity(fidelity(&out, &init_state_target(s, m))))
            } else {
                None
            };
            report(&circuit, verdict, output.emit.as_ref())
        }
    }
}

/// Largest distance of the data-register action, with the ancilla in `|0⟩`,
/// from `diag((-1)^{f(x)})` up to one global phase.
fn phase_deviation(circuit: &Circuit, f: &TruthTable) -> CliResult<f64> {
    let mut worst = 0.0f64;
    let global = simulate_state(circuit, 0)?[0] * if f.eval(0) { -1.0 } else { 1.0 };
    for x in 0..1usize << f.n() {
        let out = simulate_state(circuit, x)?;
        let sign = if f.eval(x) { -1.0 } else { 1.0 };
        for (y, a) in out.iter().enumerate() {
            let want = if y == x { global * sign } else { global * 0.0 };
            worst = worst.max((a - want).norm());
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Random,
    Zero,
}

#[derive(Debug, Args)]
pub struct ScalingArgs {
    #[arg(long, default_value_t = 3)]
    n_min: usize,
    #[arg(long, default_value_t = 8)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = Family::Random)]
    family: Family,
    #[arg(long, env = "QPM_SEED", default_value_t = 0)]
    seed: u64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// CSV of per-width oracle costs. The fitted exponent against
/// `(n+1)² · 2^{n+1}` and the smallest bounding constant are repeated on each
/// row; they are empty when any cost is zero.
pub fn scaling(args: ScalingArgs) -> CliResult<()> {
    if args.n_min == 0 || args.n_min > args.n_max {
        return Err(Failure::Usage(format!(
            "need 1 <= --n-min <= --n-max, got {}..{}",
            args.n_min, args.n_max
        )));
    }
    let family = match args.family {
        Family::Random => FunctionFamily::Random,
        Family::Zero => FunctionFamily::Zero,
    };
    let rows = scaling_table(args.n_min..=args.n_max, family, args.seed)?;
    let fit = fit_scaling(&rows).ok();
    let bound = bounding_constant(&rows);
    let mut csv = String::from(
        "n,ones,x,mcx,basic_gates,reference,ratio,fit_exponent,fit_log_constant,bound_constant\n",
    );
    let (exponent, log_constant) = match fit {
        Some(fit) => (fit.slope.to_string(), fit.intercept.to_string()),
        None => (String::new(), String::new()),
    };
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.n,
            r.ones,
            r.x,
            r.mcx,
            r.basic_gates,
            r.reference,
            r.ratio,
            exponent,
            log_constant,
            bound
        ));
    }
    match &args.out {
        Some(path) => {
            write_output(path, csv.as_bytes())?;
            match fit {
                Some(fit) => println!(
                    "fit exponent {:.4} vs (n+1)^2 2^(n+1), bound constant {:.6}",
                    fit.slope, bound
                ),
                None => println!("no fit: some widths cost zero gates"),
            }
        }
        None => print!("{csv}"),
    }
    Ok(())
}

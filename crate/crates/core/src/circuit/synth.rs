//! Reversible synthesis.
//!
//! A Boolean `f` on `n` bits is lifted to the bijection
//! `(b, x) ↦ (b ⊕ f(x), x)` on `n + 1` bits, that permutation is split into
//! transpositions, and each transposition `|ℓ⟩ ↔ |ℓ'⟩` is realized by a chain
//! of multi-controlled X gates walking a Gray path from `ℓ` to `ℓ'` and back.

use super::gate::{Circuit, Control};
use crate::error::{Error, Result};
use crate::text::SymbolIndicator;

/// Widest word handled by the bit-level helpers.
pub const MAX_WIDTH: usize = 20;

fn check_width(width: usize) -> Result<()> {
    if width == 0 || width > MAX_WIDTH {
        return Err(Error::InvalidArgument(format!(
            "width {width} outside 1..={MAX_WIDTH}"
        )));
    }
    Ok(())
}

/// Truth table of `f : {0,1}^n → {0,1}`, indexed by `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    n: usize,
    values: Vec<bool>,
}

impl TruthTable {
    pub fn new(n: usize, values: Vec<bool>) -> Result<Self> {
        if n >= MAX_WIDTH {
            return Err(Error::InvalidArgument(format!(
                "{n} input bits is too many"
            )));
        }
        if values.len() != 1 << n {
            return Err(Error::InvalidArgument(format!(
                "truth table on {n} bits needs {} entries, got {}",
                1usize << n,
                values.len()
            )));
        }
        Ok(TruthTable { n, values })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        Self::new(n, (0..1usize << n.min(MAX_WIDTH)).map(f).collect())
    }

    /// `f_σ` on `⌈log₂ N⌉` bits (at least one), zero past the text end.
    pub fn from_indicator(indicator: &SymbolIndicator) -> Result<Self> {
        let n = indicator.len().next_power_of_two().trailing_zeros().max(1) as usize;
        Self::from_fn(n, |x| indicator.get(x))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eval(&self, x: usize) -> bool {
        self.values[x]
    }

    pub fn ones(&self) -> usize {
        self.values.iter().filter(|&&v| v).count()
    }
}

/// Bijection on `0..2^width`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    width: usize,
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(width: usize, images: Vec<usize>) -> Result<Self> {
        check_width(width)?;
        let size = 1usize << width;
        if images.len() != size {
            return Err(Error::InvalidArgument(format!(
                "permutation on {width} bits needs {size} images, got {}",
                images.len()
            )));
        }
        let mut seen = vec![false; size];
        for &y in &images {
            if y >= size || std::mem::replace(&mut seen[y], true) {
                return Err(Error::InvalidArgument(format!(
                    "not a bijection at image {y}"
                )));
            }
        }
        Ok(Permutation { width, images })
    }

    pub fn identity(width: usize) -> Result<Self> {
        check_width(width)?;
        Ok(Permutation {
            width,
            images: (0..1usize << width).collect(),
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.width, other.width, "width mismatch");
        Permutation {
            width: self.width,
            images: self.images.iter().map(|&y| other.images[y]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }
}

/// Exchange of two basis indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transposition {
    a: usize,
    b: usize,
}

impl Transposition {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidArgument(format!(
                "transposition of {a} with itself"
            )));
        }
        Ok(Transposition { a, b })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn apply(&self, x: usize) -> usize {
        if x == self.a {
            self.b
        } else if x == self.b {
            self.a
        } else {
            x
        }
    }
}

/// `(b, x) ↦ (b ⊕ f(x), x)` on `n + 1` bits, `b` most significant.
pub fn lift_boolean(f: &TruthTable) -> Permutation {
    let n = f.n();
    let images = (0..2usize << n)
        .map(|word| {
            let x = word & ((1 << n) - 1);
            if f.eval(x) {
                word ^ (1 << n)
            } else {
                word
            }
        })
        .collect();
    Permutation {
        width: n + 1,
        images,
    }
}

/// Splits a permutation into transpositions applied left to right.
///
/// Each cycle `c₀ → c₁ → … → c_m` (starting at its smallest element, cycles
/// in ascending order of that element) yields `(c₀ c₁), (c₀ c₂), …, (c₀ c_m)`.
/// The total is `2^width - #cycles <= 2^width - 1`.
pub fn permutation_to_transpositions(p: &Permutation) -> Vec<Transposition> {
    let mut visited = vec![false; p.images.len()];
    let mut out = Vec::new();
    for start in 0..p.images.len() {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut next = p.apply(start);
        while next != start {
            visited[next] = true;
            out.push(Transposition { a: start, b: next });
            next = p.apply(next);
        }
    }
    out
}

/// Words `r_0 = ℓ, …, r_k = ℓ'` of equal width, consecutive ones at Hamming
/// distance one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayCodePath {
    width: usize,
    words: Vec<usize>,
}

impl GrayCodePath {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn words(&self) -> &[usize] {
        &self.words
    }

    /// Number of steps `k`.
    pub fn steps(&self) -> usize {
        self.words.len() - 1
    }
}

/// Gray path flipping the differing bits most-significant first.
pub fn gray_code(from: usize, to: usize, width: usize) -> Result<GrayCodePath> {
    check_width(width)?;
    if from >> width != 0 || to >> width != 0 {
        return Err(Error::InvalidArgument(format!(
            "words wider than {width} bits"
        )));
    }
    if from == to {
        return Err(Error::InvalidArgument(
            "gray path endpoints must differ".into(),
        ));
    }
    let mut words = vec![from];
    let mut current = from;
    for bit in (0..width).rev() {
        let m = 1 << bit;
        if (current ^ to) & m != 0 {
            current ^= m;
            words.push(current);
        }
    }
    Ok(GrayCodePath { width, words })
}

/// Gate swapping `|u⟩` and `|v⟩` at Hamming distance one: X on the differing
/// bit, controlled on every other bit matching their shared value.
fn push_adjacent_swap(circuit: &mut Circuit, width: usize, u: usize, v: usize) -> Result<()> {
    let diff = u ^ v;
    debug_assert_eq!(diff.count_ones(), 1);
    let qubit_of = |bit: usize| width - 1 - bit;
    let target = qubit_of(diff.trailing_zeros() as usize);
    let controls: Vec<Control> = (0..width)
        .rev()
        .filter(|&bit| diff >> bit & 1 == 0)
        .map(|bit| Control::on(qubit_of(bit), u >> bit & 1 == 1))
        .collect();
    if controls.is_empty() {
        circuit.x(target)
    } else {
        circuit.mcx(controls, target)
    }
}

/// Circuit exchanging `|a⟩` and `|b⟩` and fixing every other basis state.
///
/// With Gray path `r_0 … r_k` from `a` to `b`, emits the adjacent swaps
/// `(r_0 r_1), …, (r_{k-1} r_k)` and then `(r_{k-2} r_{k-1}), …, (r_0 r_1)`:
/// `2k - 1` gates in total.
pub fn synth_transposition(t: &Transposition, width: usize) -> Result<Circuit> {
    let path = gray_code(t.a, t.b, width)?;
    let words = path.words();
    let mut circuit = Circuit::new(width);
    for step in words.windows(2) {
        push_adjacent_swap(&mut circuit, width, step[0], step[1])?;
    }
    for step in words[..words.len() - 1].windows(2).rev() {
        push_adjacent_swap(&mut circuit, width, step[0], step[1])?;
    }
    Ok(circuit)
}

/// Bit oracle `|b, x⟩ ↦ |b ⊕ f(x), x⟩` on `n + 1` qubits, ancilla `b` = qubit 0.
pub fn synth_boolean_oracle(f: &TruthTable) -> Result<Circuit> {
    if f.n() == 0 {
        return Err(Error::InvalidArgument(
            "oracle needs at least one input bit".into(),
        ));
    }
    let width = f.n() + 1;
    let mut circuit = Circuit::new(width);
    for t in permutation_to_transpositions(&lift_boolean(f)) {
        circuit.append(&synth_transposition(&t, width)?)?;
    }
    Ok(circuit)
}

/// Phase oracle: the bit oracle wrapped in ancilla preparation `X, H` and
/// unpreparation `H, X`, so that `|0⟩|x⟩ ↦ (-1)^{f(x)} |0⟩|x⟩`.
pub fn synth_phase_oracle(f: &TruthTable) -> Result<Circuit> {
    let oracle = synth_boolean_oracle(f)?;
    let mut circuit = Circuit::new(oracle.n_qubits());
    circuit.x(0)?;
    circuit.h(0)?;
    circuit.append(&oracle)?;
    circuit.h(0)?;
    circuit.x(0)?;
    Ok(circuit)
}

/// Qubits of one-based register `t` in an `s`-qubit-per-register layout,
/// most significant first.
fn register(s: usize, t: usize) -> std::ops::Range<usize> {
    (t - 1) * s..t * s
}

/// Adds one modulo `2^s` to a register: flip each bit when all lower bits
/// are 1, most significant bit first.
fn push_increment(circuit: &mut Circuit, qubits: std::ops::Range<usize>) -> Result<()> {
    let qubits: Vec<usize> = qubits.collect();
    for (pos, &target) in qubits.iter().enumerate() {
        let controls: Vec<Control> = qubits[pos + 1..]
            .iter()
            .map(|&q| Control::positive(q))
            .collect();
        if controls.is_empty() {
            circuit.x(target)?;
        } else {
            circuit.mcx(controls, target)?;
        }
    }
    Ok(())
}

/// Prepares `Σ_k 2^{-s/2} |k⟩|k+1⟩…|k+M-1⟩` (values mod `2^s`) from `|0…0⟩`
/// on `s·M` qubits: Hadamards on register 1, then for each later register a
/// CNOT copy of its predecessor followed by an increment.
pub fn synth_init_state_circuit(s: usize, m: usize) -> Result<Circuit> {
    if s == 0 || m < 2 {
        return Err(Error::InvalidArgument(format!(
            "init-state circuit needs s >= 1 and M >= 2, got s={s}, M={m}"
        )));
    }
    let mut circuit = Circuit::new(s * m);
    for q in register(s, 1) {
        circuit.h(q)?;
    }
    for t in 2..=m {
        for (src, dst) in register(s, t - 1).zip(register(s, t)) {
            circuit.cnot(src, dst)?;
        }
        push_increment(&mut circuit, register(s, t))?;
    }
    Ok(circuit)
}

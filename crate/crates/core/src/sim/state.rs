use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;

use super::reference::MAX_REFERENCE_DIM;
use super::Operation;
use crate::error::{Error, Result};
use crate::text::SymbolIndicator;

/// Grids smaller than this are processed on the calling thread.
const PAR_THRESHOLD: usize = 1 << 14;

/// Amplitudes `a[i, k]` of `|i⟩ ⊗ |k+1, …, k+M-1⟩` for `i < N`, `k < N-M+1`.
///
/// Stored column-major so each tail `k` is a contiguous slice over `i`. With
/// `M = 1` every tail is the same empty register, so a single column is kept.
#[derive(Debug, Clone, PartialEq)]
pub struct TailEntangledState {
    n: usize,
    m: usize,
    amps: Vec<Complex64>,
}

fn check_dims(n: usize, m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::EmptyPattern);
    }
    if m > n {
        return Err(Error::PatternTooLong { m, n });
    }
    Ok(())
}

impl TailEntangledState {
    /// `|ψ₀⟩ = Σ_k (N-M+1)^{-1/2} |k, k+1, …, k+M-1⟩`.
    pub fn init_state(n: usize, m: usize) -> Result<Self> {
        check_dims(n, m)?;
        let offsets = n - m + 1;
        let amp = Complex64::new(1.0 / (offsets as f64).sqrt(), 0.0);
        if m == 1 {
            return Ok(TailEntangledState {
                n,
                m,
                amps: vec![amp; n],
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); n * offsets];
        for k in 0..offsets {
            amps[k * n + k] = amp;
        }
        Ok(TailEntangledState { n, m, amps })
    }

    /// Builds a state from row-major-in-`k` amplitudes (`amps[k * N + i]`).
    pub fn from_amplitudes(n: usize, m: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_dims(n, m)?;
        let expected = n * tail_count(n, m);
        if amps.len() != expected {
            return Err(Error::InvalidArgument(format!(
                "expected {expected} amplitudes, got {}",
                amps.len()
            )));
        }
        let state = TailEntangledState { n, m, amps };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidArgument(format!(
                "state is not normalized (|ψ|² = {norm})"
            )));
        }
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of stored columns: `N - M + 1`, or 1 when `M = 1`.
    pub fn tails(&self) -> usize {
        tail_count(self.n, self.m)
    }

    pub fn amplitude(&self, i: usize, k: usize) -> Complex64 {
        self.amps[k * self.n + i]
    }

    /// Column-major amplitudes, `[k * N + i]`.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Phase flip `(-1)^{f_σ}` on the position held by register `j`.
    ///
    /// Register 1 holds `i`; register `j >= 2` in tail `k` holds `k + j - 1`,
    /// so the flip is row-wise for `j = 1` and column-wise otherwise.
    pub fn apply_query_phase(&mut self, j: usize, indicator: &SymbolIndicator) -> Result<()> {
        if j == 0 || j > self.m {
            return Err(Error::RegisterOutOfRange { j, m: self.m });
        }
        if indicator.len() != self.n {
            return Err(Error::IndicatorLength {
                got: indicator.len(),
                expected: self.n,
            });
        }
        let n = self.n;
        if j == 1 {
            let marked: Vec<usize> = indicator.ones().collect();
            if marked.is_empty() {
                return Ok(());
            }
            for column in self.amps.chunks_exact_mut(n) {
                for &i in &marked {
                    column[i] = -column[i];
                }
            }
        } else {
            for (k, column) in self.amps.chunks_exact_mut(n).enumerate() {
                if indicator.get(k + j - 1) {
                    column.iter_mut().for_each(|a| *a = -*a);
                }
            }
        }
        Ok(())
    }

    /// Inversion about the mean of register 1, independently for every tail.
    pub fn apply_diffusion(&mut self) {
        let n = self.n;
        let reflect = |column: &mut [Complex64]| {
            let sum: Complex64 = column.iter().sum();
            let twice_mean = sum * (2.0 / n as f64);
            column.iter_mut().for_each(|a| *a = twice_mean - *a);
        };
        if self.amps.len() >= PAR_THRESHOLD {
            self.amps.par_chunks_exact_mut(n).for_each(reflect);
        } else {
            self.amps.chunks_exact_mut(n).for_each(reflect);
        }
    }

    pub fn apply(&mut self, op: &Operation) -> Result<()> {
        match op {
            Operation::Query { j, indicator } => self.apply_query_phase(*j, indicator),
            Operation::Diffusion => {
                self.apply_diffusion();
                Ok(())
            }
        }
    }

    /// Marginal of register 1: `P(i) = Σ_k |a[i, k]|²`.
    pub fn first_register_probabilities(&self) -> Vec<f64> {
        let mut probs = vec![0.0; self.n];
        for column in self.amps.chunks_exact(self.n) {
            for (p, a) in probs.iter_mut().zip(column) {
                *p += a.norm_sqr();
            }
        }
        probs
    }

    /// Embeds the grid into the `N^M`-dimensional tensor space, register 1
    /// being the most significant base-`N` digit.
    pub fn embed(&self) -> Result<Vec<Complex64>> {
        let dim = reference_dim(self.n, self.m)?;
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        let tail_stride = dim / self.n;
        for k in 0..self.tails() {
            let tail_index = (1..self.m).fold(0, |acc, t| acc * self.n + k + t);
            for i in 0..self.n {
                out[i * tail_stride + tail_index] = self.amplitude(i, k);
            }
        }
        Ok(out)
    }

    /// CSV snapshot `i,k,re,im` of entries with magnitude above `1e-14`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "i,k,re,im")?;
        for k in 0..self.tails() {
            for i in 0..self.n {
                let a = self.amplitude(i, k);
                if a.norm() > 1e-14 {
                    writeln!(out, "{i},{k},{},{}", a.re, a.im)?;
                }
            }
        }
        Ok(())
    }
}

fn tail_count(n: usize, m: usize) -> usize {
    if m == 1 {
        1
    } else {
        n - m + 1
    }
}

pub(super) fn reference_dim(n: usize, m: usize) -> Result<usize> {
    n.checked_pow(m as u32)
        .filter(|&d| d <= MAX_REFERENCE_DIM)
        .ok_or_else(|| Error::ResourceLimit(format!("N^M = {n}^{m} exceeds {MAX_REFERENCE_DIM}")))
}

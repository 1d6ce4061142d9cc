use num_complex::Complex64;

use super::state::reference_dim;
use super::Operation;
use crate::error::{Error, Result};

/// Largest tensor dimension `N^M` the reference simulator accepts.
pub const MAX_REFERENCE_DIM: usize = 1 << 20;

/// Naive statevector over the full `N^M` tensor space.
///
/// Basis index `x_1 N^{M-1} + x_2 N^{M-2} + … + x_M` encodes register values
/// `x_1 … x_M`. Only used to cross-check [`super::TailEntangledState`].
#[derive(Debug, Clone, PartialEq)]
pub struct FullStateReference {
    n: usize,
    m: usize,
    amps: Vec<Complex64>,
}

impl FullStateReference {
    pub fn init_state(n: usize, m: usize) -> Result<Self> {
        if m == 0 || m > n {
            return Err(Error::InvalidArgument(format!(
                "need 1 <= M <= N, got N={n}, M={m}"
            )));
        }
        let dim = reference_dim(n, m)?;
        let tails = n - m + 1;
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        for k in 0..tails {
            let mut index = 0;
            for t in 0..m {
                index = index * n + k + t;
            }
            amps[index] = Complex64::new(1.0 / (tails as f64).sqrt(), 0.0);
        }
        Ok(FullStateReference { n, m, amps })
    }

    pub fn from_amplitudes(n: usize, m: usize, amps: Vec<Complex64>) -> Result<Self> {
        let dim = reference_dim(n, m)?;
        if amps.len() != dim {
            return Err(Error::InvalidArgument(format!(
                "expected {dim} amplitudes, got {}",
                amps.len()
            )));
        }
        Ok(FullStateReference { n, m, amps })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn register_value(&self, index: usize, j: usize) -> usize {
        (index / self.n.pow((self.m - j) as u32)) % self.n
    }

    /// Applies the literal operator on the whole tensor space.
    pub fn apply(&mut self, op: &Operation) -> Result<()> {
        match op {
            Operation::Query { j, indicator } => {
                if *j == 0 || *j > self.m {
                    return Err(Error::RegisterOutOfRange { j: *j, m: self.m });
                }
                if indicator.len() != self.n {
                    return Err(Error::IndicatorLength {
                        got: indicator.len(),
                        expected: self.n,
                    });
                }
                for index in 0..self.amps.len() {
                    if indicator.get(self.register_value(index, *j)) {
                        self.amps[index] = -self.amps[index];
                    }
                }
            }
            Operation::Diffusion => {
                let stride = self.amps.len() / self.n;
                for rest in 0..stride {
                    let mut mean = Complex64::new(0.0, 0.0);
                    for x in 0..self.n {
                        mean += self.amps[x * stride + rest];
                    }
                    mean /= self.n as f64;
                    for x in 0..self.n {
                        let a = &mut self.amps[x * stride + rest];
                        *a = 2.0 * mean - *a;
                    }
                }
            }
        }
        Ok(())
    }

    pub fn first_register_probabilities(&self) -> Vec<f64> {
        let mut probs = vec![0.0; self.n];
        for (index, a) in self.amps.iter().enumerate() {
            probs[self.register_value(index, 1)] += a.norm_sqr();
        }
        probs
    }
}

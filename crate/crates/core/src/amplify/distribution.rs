use std::io::Write;

use serde::Serialize;

use super::schedule::{GroverSchedule, RMode};
use crate::error::{Error, Result};

/// Where a [`MatchDistribution`] came from.
#[derive(Debug, Clone, PartialEq)]
pub enum DistributionSource {
    /// Measured from a state directly.
    Snapshot,
    /// Exact distribution after one schedule.
    Schedule(GroverSchedule),
    /// Mean of exact per-schedule distributions.
    Averaged {
        trials: usize,
        seed: u64,
        r_mode: RMode,
    },
}

/// Probabilities of measuring each position `0..N` in register 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchDistribution {
    pub n: usize,
    pub m: usize,
    pub probabilities: Vec<f64>,
    pub source: DistributionSource,
}

#[derive(Serialize)]
struct DistributionDocument<'a> {
    n: usize,
    m: usize,
    trials: usize,
    seed: Option<u64>,
    r_mode: Option<String>,
    probabilities: &'a [f64],
}

impl MatchDistribution {
    pub fn new(
        n: usize,
        m: usize,
        probabilities: Vec<f64>,
        source: DistributionSource,
    ) -> Result<Self> {
        if probabilities.len() != n {
            return Err(Error::InvalidArgument(format!(
                "expected {n} probabilities, got {}",
                probabilities.len()
            )));
        }
        if probabilities.iter().any(|&p| p < 0.0 || !p.is_finite()) {
            return Err(Error::InvalidArgument(
                "negative or non-finite probability".into(),
            ));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(MatchDistribution {
            n,
            m,
            probabilities,
            source,
        })
    }

    /// Position of the largest probability; the lowest one on ties.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &p) in self.probabilities.iter().enumerate() {
            if p > self.probabilities[best] {
                best = i;
            }
        }
        best
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "position,probability")?;
        for (i, p) in self.probabilities.iter().enumerate() {
            writeln!(out, "{i},{p}")?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let (trials, seed, r_mode) = match &self.source {
            DistributionSource::Snapshot => (1, None, None),
            DistributionSource::Schedule(s) => {
                (1, Some(s.seed), Some(RMode::Fixed(s.r).to_string()))
            }
            DistributionSource::Averaged {
                trials,
                seed,
                r_mode,
            } => (*trials, Some(*seed), Some(r_mode.to_string())),
        };
        let doc = DistributionDocument {
            n: self.n,
            m: self.m,
            trials,
            seed,
            r_mode,
            probabilities: &self.probabilities,
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }
}

/// Median of a slice, averaging the middle pair for even lengths.
pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "median of empty slice");
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        0.5 * (sorted[mid - 1] + sorted[mid])
    }
}

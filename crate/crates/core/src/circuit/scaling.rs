use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cost::gate_count;
use super::synth::{synth_boolean_oracle, TruthTable};
use crate::error::{Error, Result};

/// Oracle cost for one input width.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingRow {
    pub n: usize,
    /// `|f⁻¹(1)|`.
    pub ones: usize,
    pub x: usize,
    pub mcx: usize,
    pub basic_gates: usize,
    /// `(n+1)² · 2^{n+1}`.
    pub reference: f64,
    pub ratio: f64,
}

/// Least-squares line `log y = slope · log x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionFamily {
    Zero,
    /// Each truth-table entry is 1 with probability 1/2.
    Random,
}

pub fn reference_cost(n: usize) -> f64 {
    let w = (n + 1) as f64;
    w * w * 2f64.powi(n as i32 + 1)
}

/// Truth table used for width `n`: the generator is reseeded per width so a
/// row does not depend on which other widths are in the range.
pub fn scaling_function(n: usize, family: FunctionFamily, seed: u64) -> Result<TruthTable> {
    match family {
        FunctionFamily::Zero => TruthTable::from_fn(n, |_| false),
        FunctionFamily::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(n as u64);
            let values = (0..1usize << n).map(|_| rng.gen::<bool>()).collect();
            TruthTable::new(n, values)
        }
    }
}

pub fn scaling_table(
    widths: std::ops::RangeInclusive<usize>,
    family: FunctionFamily,
    seed: u64,
) -> Result<Vec<ScalingRow>> {
    if widths.is_empty() || *widths.start() == 0 {
        return Err(Error::InvalidArgument(
            "width range must be non-empty and start at 1".into(),
        ));
    }
    widths
        .map(|n| {
            let f = scaling_function(n, family, seed)?;
            let report = gate_count(&synth_boolean_oracle(&f)?);
            let reference = reference_cost(n);
            Ok(ScalingRow {
                n,
                ones: f.ones(),
                x: report.x,
                mcx: report.mcx,
                basic_gates: report.basic_gates,
                reference,
                ratio: report.basic_gates as f64 / reference,
            })
        })
        .collect()
}

pub fn fit_log_log(points: &[(f64, f64)]) -> Result<LogLogFit> {
    if points.len() < 2 || points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return Err(Error::InvalidArgument(
            "log-log fit needs at least two points with positive coordinates".into(),
        ));
    }
    let k = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument(
            "log-log fit needs distinct x values".into(),
        ));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    Ok(LogLogFit {
        slope,
        intercept: my - slope * mx,
    })
}

/// Growth exponent of basic-gate cost against `(n+1)² · 2^{n+1}`.
pub fn fit_scaling(rows: &[ScalingRow]) -> Result<LogLogFit> {
    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (r.reference, r.basic_gates as f64))
        .collect();
    fit_log_log(&points)
}

/// Smallest `C` with `basic_gates <= C · (n+1)² · 2^{n+1}` on every row.
pub fn bounding_constant(rows: &[ScalingRow]) -> f64 {
    rows.iter().map(|r| r.ratio).fold(0.0, f64::max)
}

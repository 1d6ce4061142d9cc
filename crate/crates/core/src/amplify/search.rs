use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::distribution::{DistributionSource, MatchDistribution};
use super::schedule::{draw_schedule, GroverSchedule, JMode, RMode, TrialRng};
use super::stats::{wilson_interval, Z95};
use crate::error::{Error, Result};
use crate::sim::TailEntangledState;
use crate::text::{
    closest_match_classical, ClassicalMatchResult, OracleIndex, Pattern, SymbolIndicator, Text,
};

/// Trials are evaluated in blocks of this size and folded in trial order.
const TRIAL_BLOCK: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Report {
    /// Average exact per-schedule distributions.
    #[default]
    Distribution,
    /// Also sample one measured position per trial.
    Outcomes,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub trials: usize,
    pub seed: u64,
    pub r_mode: RMode,
    pub j_mode: JMode,
    pub report: Report,
}

impl RunConfig {
    pub fn new(trials: usize, seed: u64) -> Self {
        RunConfig {
            trials,
            seed,
            r_mode: RMode::Random,
            j_mode: JMode::Random,
            report: Report::Distribution,
        }
    }

    fn check(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub measured_position: usize,
    pub schedule: GroverSchedule,
    /// The measured position is one of the classical best offsets.
    pub success: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuccessEstimate {
    pub successes: usize,
    pub trials: usize,
    pub rate: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
}

/// Trial-averaged distribution with per-position standard errors of the mean.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionEstimate {
    pub distribution: MatchDistribution,
    pub std_errors: Vec<f64>,
}

impl DistributionEstimate {
    /// Normal-approximation 95% interval for the mean probability at `pos`.
    pub fn interval(&self, pos: usize) -> (f64, f64) {
        let p = self.distribution.probabilities[pos];
        let half = Z95 * self.std_errors[pos];
        (p - half, p + half)
    }
}

/// One step: phase query on register `j` for `p_j`, then diffusion.
pub fn grover_step(
    state: &mut TailEntangledState,
    j: usize,
    pattern: &Pattern,
    index: &OracleIndex,
) -> Result<()> {
    let symbol = pattern.register_symbol(j)?;
    state.apply_query_phase(j, &index.indicator_or_empty(symbol))?;
    state.apply_diffusion();
    Ok(())
}

/// A text/pattern pair ready to be searched, with per-register indicators and
/// the classical tie set cached.
#[derive(Debug, Clone)]
pub struct SearchInstance<'a> {
    text: &'a Text,
    pattern: &'a Pattern,
    indicators: Vec<SymbolIndicator>,
    baseline: ClassicalMatchResult,
}

impl<'a> SearchInstance<'a> {
    pub fn new(text: &'a Text, pattern: &'a Pattern, index: &OracleIndex) -> Result<Self> {
        if index.n() != text.len() {
            return Err(Error::InvalidArgument(format!(
                "index covers {} positions, text has {}",
                index.n(),
                text.len()
            )));
        }
        let baseline = closest_match_classical(text, pattern)?;
        let indicators = pattern
            .symbols()
            .iter()
            .map(|&s| index.indicator_or_empty(s))
            .collect();
        Ok(SearchInstance {
            text,
            pattern,
            indicators,
            baseline,
        })
    }

    pub fn n(&self) -> usize {
        self.text.len()
    }

    pub fn m(&self) -> usize {
        self.pattern.len()
    }

    pub fn baseline(&self) -> &ClassicalMatchResult {
        &self.baseline
    }

    pub fn draw_schedule(
        &self,
        r_mode: RMode,
        j_mode: JMode,
        rng: &mut TrialRng,
    ) -> Result<GroverSchedule> {
        draw_schedule(self.n(), self.m(), r_mode, j_mode, rng)
    }

    pub fn step(&self, state: &mut TailEntangledState, j: usize) -> Result<()> {
        let indicator = self
            .indicators
            .get(j.wrapping_sub(1))
            .ok_or(Error::RegisterOutOfRange { j, m: self.m() })?;
        state.apply_query_phase(j, indicator)?;
        state.apply_diffusion();
        Ok(())
    }

    /// State after `|ψ₀⟩` and the schedule's `r` iterations.
    pub fn evolve(&self, schedule: &GroverSchedule) -> Result<TailEntangledState> {
        let mut state = TailEntangledState::init_state(self.n(), self.m())?;
        for &j in &schedule.j_choices {
            self.step(&mut state, j)?;
        }
        Ok(state)
    }

    pub fn schedule_distribution(&self, schedule: &GroverSchedule) -> Result<MatchDistribution> {
        let probs = self.evolve(schedule)?.first_register_probabilities();
        MatchDistribution::new(
            self.n(),
            self.m(),
            probs,
            DistributionSource::Schedule(schedule.clone()),
        )
    }

    /// Draw a schedule, evolve, and sample a measurement of register 1.
    pub fn run_once(&self, r_mode: RMode, j_mode: JMode, rng: &mut TrialRng) -> Result<RunOutcome> {
        let schedule = self.draw_schedule(r_mode, j_mode, rng)?;
        let probs = self.evolve(&schedule)?.first_register_probabilities();
        let measured_position = sample_position(&probs, rng);
        Ok(RunOutcome {
            measured_position,
            success: self.baseline.contains(measured_position),
            schedule,
        })
    }

    /// Average of exact per-schedule distributions over `config.trials` trials.
    ///
    /// Trial `t` uses [`TrialRng::new(seed, t)`](TrialRng::new); results do not
    /// depend on thread count.
    pub fn estimate_distribution(&self, config: &RunConfig) -> Result<DistributionEstimate> {
        config.check()?;
        let n = self.n();
        let mut sum = vec![0.0; n];
        let mut sum_sq = vec![0.0; n];
        for block in trial_blocks(config.trials) {
            let per_trial: Vec<Vec<f64>> = block
                .into_par_iter()
                .map(|t| {
                    let mut rng = TrialRng::new(config.seed, t as u64);
                    let schedule = self.draw_schedule(config.r_mode, config.j_mode, &mut rng)?;
                    Ok(self.evolve(&schedule)?.first_register_probabilities())
                })
                .collect::<Result<_>>()?;
            for probs in &per_trial {
                for (i, &p) in probs.iter().enumerate() {
                    sum[i] += p;
                    sum_sq[i] += p * p;
                }
            }
        }
        let trials = config.trials as f64;
        let mean: Vec<f64> = sum.iter().map(|s| s / trials).collect();
        let std_errors = if config.trials > 1 {
            mean.iter()
                .zip(&sum_sq)
                .map(|(&mu, &sq)| {
                    let var = ((sq / trials - mu * mu) * trials / (trials - 1.0)).max(0.0);
                    (var / trials).sqrt()
                })
                .collect()
        } else {
            vec![0.0; n]
        };
        let distribution = MatchDistribution::new(
            n,
            self.m(),
            mean,
            DistributionSource::Averaged {
                trials: config.trials,
                seed: config.seed,
                r_mode: config.r_mode,
            },
        )?;
        Ok(DistributionEstimate {
            distribution,
            std_errors,
        })
    }

    /// Independent [`run_once`](Self::run_once) trials, in trial order.
    pub fn run_trials(&self, config: &RunConfig) -> Result<Vec<RunOutcome>> {
        config.check()?;
        let mut outcomes = Vec::with_capacity(config.trials);
        for block in trial_blocks(config.trials) {
            let part: Vec<RunOutcome> = block
                .into_par_iter()
                .map(|t| {
                    let mut rng = TrialRng::new(config.seed, t as u64);
                    self.run_once(config.r_mode, config.j_mode, &mut rng)
                })
                .collect::<Result<_>>()?;
            outcomes.extend(part);
        }
        Ok(outcomes)
    }

    /// Fraction of sampled runs landing in the classical tie set.
    pub fn success_probability(&self, config: &RunConfig) -> Result<SuccessEstimate> {
        let successes = self
            .run_trials(config)?
            .iter()
            .filter(|o| o.success)
            .count();
        let (wilson_low, wilson_high) = wilson_interval(successes, config.trials, Z95);
        Ok(SuccessEstimate {
            successes,
            trials: config.trials,
            rate: successes as f64 / config.trials as f64,
            wilson_low,
            wilson_high,
        })
    }
}

fn trial_blocks(trials: usize) -> impl Iterator<Item = std::ops::Range<usize>> {
    (0..trials)
        .step_by(TRIAL_BLOCK)
        .map(move |start| start..(start + TRIAL_BLOCK).min(trials))
}

fn sample_position(probs: &[f64], rng: &mut TrialRng) -> usize {
    let total: f64 = probs.iter().sum();
    let target = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        acc += p;
        if target < acc {
            return i;
        }
    }
    probs.iter().rposition(|&p| p > 0.0).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::build_index;

    fn setup(text: &[u8], pattern: &[u8]) -> (Text, Pattern, OracleIndex) {
        let t = Text::from_bytes(text).unwrap();
        let p = Pattern::from_bytes(pattern).unwrap();
        let i = build_index(&t).unwrap();
        (t, p, i)
    }

    fn max_diff(a: &TailEntangledState, b: &TailEntangledState) -> f64 {
        a.amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn absent_symbol_step_is_pure_diffusion() {
        let (t, p, index) = setup(b"abcabcab", b"xy");
        let mut a = TailEntangledState::init_state(8, 2).unwrap();
        let mut b = a.clone();
        grover_step(&mut a, 1, &p, &index).unwrap();
        b.apply_diffusion();
        assert_eq!(a, b);
        grover_step(&mut a, 1, &p, &index).unwrap();
        assert!(max_diff(&a, &TailEntangledState::init_state(8, 2).unwrap()) < 1e-15);
        let inst = SearchInstance::new(&t, &p, &index).unwrap();
        let mut c = TailEntangledState::init_state(8, 2).unwrap();
        inst.step(&mut c, 2).unwrap();
        assert_eq!(c, b);
    }

    #[test]
    fn instance_step_matches_free_function() {
        let (t, p, index) = setup(b"abracadabra", b"cad");
        let inst = SearchInstance::new(&t, &p, &index).unwrap();
        let mut a = TailEntangledState::init_state(11, 3).unwrap();
        let mut b = a.clone();
        for j in [1, 3, 2, 1, 1, 3] {
            grover_step(&mut a, j, &p, &index).unwrap();
            inst.step(&mut b, j).unwrap();
        }
        assert_eq!(a, b);
        assert!(inst.step(&mut b, 4).is_err());
        assert!(inst.step(&mut b, 0).is_err());
    }

    #[test]
    fn zero_iterations_measure_uniform_offsets() {
        let (t, p, index) = setup(b"the quick brown fox", b"own");
        let inst = SearchInstance::new(&t, &p, &index).unwrap();
        let mut config = RunConfig::new(1, 3);
        config.r_mode = RMode::Fixed(0);
        let est = inst.estimate_distribution(&config).unwrap();
        let k = 17;
        for (i, &pr) in est.distribution.probabilities.iter().enumerate() {
            let expected = if i < k { 1.0 / k as f64 } else { 0.0 };
            assert!((pr - expected).abs() < 1e-15);
        }
        let mut hits = vec![0usize; 19];
        for s in 0..3000 {
            let o = inst
                .run_once(RMode::Fixed(0), JMode::Random, &mut TrialRng::new(s, 0))
                .unwrap();
            hits[o.measured_position] += 1;
        }
        assert_eq!(hits[17] + hits[18], 0);
        assert!(hits[..17].iter().all(|&h| h > 100 && h < 260), "{hits:?}");
    }

    #[test]
    fn fixed_seed_reproduces_outcome() {
        let (t, p, index) = setup(b"mississippi river", b"ssip");
        let inst = SearchInstance::new(&t, &p, &index).unwrap();
        let a = inst
            .run_once(RMode::Random, JMode::Random, &mut TrialRng::new(77, 4))
            .unwrap();
        let b = inst
            .run_once(RMode::Random, JMode::Random, &mut TrialRng::new(77, 4))
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.success, inst.baseline().contains(a.measured_position));
    }

    #[test]
    fn no_match_reduces_to_powers_of_diffusion() {
        let (t, p, index) = setup(b"aaaaaaaaaaaaaaaa", b"xyz");
        let inst = SearchInstance::new(&t, &p, &index).unwrap();
        let (n, k) = (16.0, 14usize);
        // D² = I, so even r returns to |ψ₀⟩. Odd r is one reflection of each
        // basis column |c⟩: amplitude 2/N - 1 on c and 2/N elsewhere.
        let on_diag = (1.0 - 2.0 / n) * (1.0 - 2.0 / n);
        let off_diag = 4.0 / (n * n);
        for r in 0..6 {
            let mut config = RunConfig::new(3, 1);
            config.r_mode = RMode::Fixed(r);
            let probs = inst
                .estimate_distribution(&config)
                .unwrap()
                .distribution
                .probabilities;
            for (i, &pr) in probs.iter().enumerate() {
                let expected = match (r % 2, i < k) {
                    (0, true) => 1.0 / k as f64,
                    (0, false) => 0.0,
                    (_, true) => (on_diag + (k - 1) as f64 * off_diag) / k as f64,
                    (_, false) => off_diag,
                };
                assert!((pr - expected).abs() < 1e-12, "r={r} i={i}");
            }
        }
        // every offset scores 0, so every offset is a best match
        assert_eq!(inst.baseline().offsets.len(), 14);
    }

    #[test]
    fn full_length_pattern_succeeds_often() {
        let (t, p, index) = setup(b"pattern-is-text", b"pattern-is-text");
        let inst = SearchInstance::new(&t, &p, &index).unwrap();
        assert_eq!(inst.baseline().offsets, vec![0]);
        let s = inst.success_probability(&RunConfig::new(2000, 8)).unwrap();
        assert!(s.rate >= 0.25, "{s:?}");
        assert!(s.wilson_low <= s.rate && s.rate <= s.wilson_high);
    }

    #[test]
    fn estimate_is_deterministic_and_parallel_safe() {
        let (t, p, index) = setup(b"gattacagattacacatgattaca", b"tac");
        let inst = SearchInstance::new(&t, &p, &index).unwrap();
        let config = RunConfig::new(600, 21);
        let a = inst.estimate_distribution(&config).unwrap();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let b = pool.install(|| inst.estimate_distribution(&config).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_zero_trials_and_mismatched_index() {
        let (t, p, index) = setup(b"abcd", b"bc");
        let inst = SearchInstance::new(&t, &p, &index).unwrap();
        assert!(inst.estimate_distribution(&RunConfig::new(0, 1)).is_err());
        let other = build_index(&Text::from_bytes(b"abcde").unwrap()).unwrap();
        assert!(SearchInstance::new(&t, &p, &other).is_err());
        let long = Pattern::from_bytes(b"abcde").unwrap();
        assert!(matches!(
            SearchInstance::new(&t, &long, &index),
            Err(Error::PatternTooLong { .. })
        ));
    }
}

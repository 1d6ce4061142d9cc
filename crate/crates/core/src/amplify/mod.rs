//! The randomized closest-match search: schedule draws, Grover steps, single
//! sampled runs and Monte Carlo averages of exact measurement distributions.

mod distribution;
mod schedule;
mod search;
mod stats;

pub use distribution::{median, DistributionSource, MatchDistribution};
pub use schedule::{draw_schedule, max_iterations, GroverSchedule, JMode, RMode, TrialRng};
pub use search::{
    grover_step, DistributionEstimate, Report, RunConfig, RunOutcome, SearchInstance,
    SuccessEstimate,
};
pub use stats::{wilson_interval, Z95};

use crate::sim::TailEntangledState;

/// Measures register 1 of a state.
pub fn measure_first_register(state: &TailEntangledState) -> MatchDistribution {
    MatchDistribution {
        n: state.n(),
        m: state.m(),
        probabilities: state.first_register_probabilities(),
        source: DistributionSource::Snapshot,
    }
}

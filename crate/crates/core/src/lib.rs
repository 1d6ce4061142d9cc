//! Exact simulation of Grover-style closest pattern matching over an entangled
//! consecutive-position state, plus reversible synthesis and dense
//! verification of the circuits it needs.
//!
//! * [`text`]: texts, patterns, per-symbol indicators and the classical baseline.
//! * [`sim`]: the structured `N × (N-M+1)` state and a naive tensor reference.
//! * [`amplify`]: schedules, single runs and Monte Carlo distribution estimates.
//! * [`circuit`]: gate lists, text format, dense simulator and synthesis.

pub mod amplify;
pub mod circuit;
pub mod error;
pub mod sim;
pub mod text;

pub use error::{Error, ErrorKind, Result};

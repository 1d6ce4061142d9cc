//! Exact simulation of the matching algorithm's state.
//!
//! Every reachable state is a combination of basis vectors
//! `|i⟩ ⊗ |k+1, k+2, …, k+M-1⟩`: the initial state has this form, queries are
//! diagonal in the computational basis, and diffusion only touches the first
//! register. [`TailEntangledState`] therefore stores an `N × (N-M+1)` grid
//! instead of the `N^M` amplitudes of the full tensor space.
//! [`FullStateReference`] is the naive tensor simulation used to check that
//! claim.

mod reference;
mod state;

pub use reference::{FullStateReference, MAX_REFERENCE_DIM};
pub use state::TailEntangledState;

use crate::text::SymbolIndicator;

/// One step applied to either simulator.
#[derive(Debug, Clone)]
pub enum Operation {
    /// `I^{⊗j-1} ⊗ U_σ ⊗ I^{⊗M-j}` with a one-based register `j`.
    Query {
        j: usize,
        indicator: SymbolIndicator,
    },
    /// `D_N ⊗ I^{⊗M-1}`.
    Diffusion,
}

use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the iteration count `r` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RMode {
    /// Uniform on `0..=⌊√(N-M+1)⌋`.
    #[default]
    Random,
    Fixed(usize),
}

impl fmt::Display for RMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RMode::Random => f.write_str("random"),
            RMode::Fixed(r) => write!(f, "fixed:{r}"),
        }
    }
}

impl FromStr for RMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "random" {
            return Ok(RMode::Random);
        }
        s.strip_prefix("fixed:")
            .and_then(|r| r.parse().ok())
            .map(RMode::Fixed)
            .ok_or_else(|| {
                Error::InvalidArgument(format!("bad r mode {s:?}, want random|fixed:<k>"))
            })
    }
}

/// How the register `j` is chosen at each iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JMode {
    /// i.i.d. uniform on `1..=M`, redrawn every iteration.
    #[default]
    Random,
    /// `1, 2, …, M, 1, 2, …` without randomness.
    Cycle,
}

impl fmt::Display for JMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JMode::Random => f.write_str("random"),
            JMode::Cycle => f.write_str("cycle"),
        }
    }
}

impl FromStr for JMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(JMode::Random),
            "cycle" => Ok(JMode::Cycle),
            _ => Err(Error::InvalidArgument(format!(
                "bad j mode {s:?}, want random|cycle"
            ))),
        }
    }
}

/// The random choices pinning one run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroverSchedule {
    pub r: usize,
    /// One-based registers, one per iteration.
    pub j_choices: Vec<usize>,
    /// Base seed and stream of the generator that drew this schedule.
    pub seed: u64,
    pub stream: u64,
}

/// Seedable generator for one trial of an experiment.
///
/// Trial `stream` of an experiment seeded with `seed` owns ChaCha8 stream
/// number `stream` under the key derived from `seed`, so trials are
/// independent of each other and of the order they run in.
#[derive(Debug, Clone)]
pub struct TrialRng {
    seed: u64,
    stream: u64,
    inner: ChaCha8Rng,
}

impl TrialRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        TrialRng {
            seed,
            stream,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }
}

impl RngCore for TrialRng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
        self.inner.try_fill_bytes(dest)
    }
}

/// `⌊√(N-M+1)⌋`.
pub fn max_iterations(n: usize, m: usize) -> usize {
    let tails = n - m + 1;
    let mut r = (tails as f64).sqrt() as usize;
    while r * r > tails {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= tails {
        r += 1;
    }
    r
}

pub fn draw_schedule(
    n: usize,
    m: usize,
    r_mode: RMode,
    j_mode: JMode,
    rng: &mut TrialRng,
) -> Result<GroverSchedule> {
    if m == 0 {
        return Err(Error::EmptyPattern);
    }
    if m > n {
        return Err(Error::PatternTooLong { m, n });
    }
    let r = match r_mode {
        RMode::Random => rng.gen_range(0..=max_iterations(n, m)),
        RMode::Fixed(r) => r,
    };
    let j_choices = match j_mode {
        JMode::Random => (0..r).map(|_| rng.gen_range(1..=m)).collect(),
        JMode::Cycle => (0..r).map(|step| step % m + 1).collect(),
    };
    Ok(GroverSchedule {
        r,
        j_choices,
        seed: rng.seed(),
        stream: rng.stream(),
    })
}

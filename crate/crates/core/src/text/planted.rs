use rand::{Rng, RngCore};

use super::{closest_match_classical, Pattern, Symbol, Text};
use crate::error::{Error, Result};

/// Parameters for a random text with one planted exact occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantSpec {
    pub n: usize,
    pub m: usize,
    /// Background symbols are drawn from `0..alphabet`.
    pub alphabet: u32,
    /// Defaults to `N - M - ⌊(N - M)/8⌋`, close to the end of the text.
    pub offset: Option<usize>,
    /// Pattern symbols are `alphabet..alphabet + M`, all distinct and absent
    /// from the background, so every other window scores 0.
    pub exclusive: bool,
    /// Also copy the first `⌊M/2⌋` pattern symbols to this offset.
    pub half_match: Option<usize>,
}

impl PlantSpec {
    pub fn new(n: usize, m: usize, alphabet: u32) -> Self {
        PlantSpec {
            n,
            m,
            alphabet,
            offset: None,
            exclusive: false,
            half_match: None,
        }
    }

    pub fn default_offset(&self) -> usize {
        let gap = self.n - self.m;
        gap - gap / 8
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedInstance {
    pub text: Text,
    pub pattern: Pattern,
    pub offset: usize,
}

const MAX_REPAIRS: usize = 10_000;

/// Random background plus the pattern written at the planted offset. Any
/// other window that would also score `M` is broken up by redrawing one of
/// its background positions, so the planted offset is the unique exact match.
pub fn plant_pattern<R: RngCore>(spec: &PlantSpec, rng: &mut R) -> Result<PlantedInstance> {
    let PlantSpec { n, m, alphabet, .. } = *spec;
    if m == 0 {
        return Err(Error::EmptyPattern);
    }
    if m > n {
        return Err(Error::PatternTooLong { m, n });
    }
    if alphabet < 2 && !spec.exclusive {
        return Err(Error::InvalidArgument(
            "alphabet needs at least 2 symbols".into(),
        ));
    }
    if alphabet == 0 {
        return Err(Error::InvalidArgument(
            "alphabet needs at least 1 symbol".into(),
        ));
    }
    let offset = spec.offset.unwrap_or_else(|| spec.default_offset());
    if offset > n - m {
        return Err(Error::OffsetOutOfRange { offset, max: n - m });
    }
    let half = m / 2;
    if let Some(h) = spec.half_match {
        if h > n - m {
            return Err(Error::OffsetOutOfRange {
                offset: h,
                max: n - m,
            });
        }
        if h + m > offset && offset + m > h {
            return Err(Error::InvalidArgument(format!(
                "half match at {h} overlaps the planted window at {offset}"
            )));
        }
    }

    let pattern: Vec<Symbol> = if spec.exclusive {
        (alphabet..alphabet + m as u32).collect()
    } else {
        (0..m).map(|_| rng.gen_range(0..alphabet)).collect()
    };
    let mut text: Vec<Symbol> = (0..n).map(|_| rng.gen_range(0..alphabet)).collect();
    let mut fixed = vec![false; n];
    text[offset..offset + m].copy_from_slice(&pattern);
    fixed[offset..offset + m].iter_mut().for_each(|f| *f = true);
    if let Some(h) = spec.half_match {
        text[h..h + half].copy_from_slice(&pattern[..half]);
        fixed[h..h + half].iter_mut().for_each(|f| *f = true);
        // keep the rest of the window off the pattern so its score is exactly M/2
        for j in half..m {
            if !spec.exclusive && text[h + j] == pattern[j] {
                text[h + j] = (pattern[j] + 1) % alphabet;
            }
            fixed[h + j] = true;
        }
    }

    let pattern = Pattern::new(pattern)?;
    for _ in 0..MAX_REPAIRS {
        let candidate = Text::new(text.clone())?;
        let result = closest_match_classical(&candidate, &pattern)?;
        let clash = result.offsets.iter().copied().find(|&o| o != offset);
        let Some(clash) = clash else {
            return Ok(PlantedInstance {
                text: candidate,
                pattern,
                offset,
            });
        };
        let free: Vec<usize> = (clash..clash + m).filter(|&i| !fixed[i]).collect();
        if free.is_empty() {
            break;
        }
        let pos = free[rng.gen_range(0..free.len())];
        text[pos] = rng.gen_range(0..alphabet);
    }
    Err(Error::InvalidArgument(
        "could not make the planted occurrence unique; the pattern is too self-similar".into(),
    ))
}

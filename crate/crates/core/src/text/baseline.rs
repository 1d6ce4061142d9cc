use serde::{Deserialize, Serialize};

use super::{Pattern, Text};
use crate::error::{Error, Result};

/// Best per-position agreement `M'` and every zero-based offset attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalMatchResult {
    pub best_score: usize,
    pub offsets: Vec<usize>,
}

impl ClassicalMatchResult {
    pub fn contains(&self, offset: usize) -> bool {
        self.offsets.binary_search(&offset).is_ok()
    }
}

/// Number of positions `j` with `text[offset + j] == pattern[j]`.
pub fn hamming_score(text: &Text, pattern: &Pattern, offset: usize) -> Result<usize> {
    pattern.check_fits(text)?;
    let max = text.len() - pattern.len();
    if offset > max {
        return Err(Error::OffsetOutOfRange { offset, max });
    }
    Ok(score_at(text, pattern, offset))
}

fn score_at(text: &Text, pattern: &Pattern, offset: usize) -> usize {
    text.symbols()[offset..offset + pattern.len()]
        .iter()
        .zip(pattern.symbols())
        .filter(|(a, b)| a == b)
        .count()
}

/// Scans all `N - M + 1` windows. Ties are all reported, ascending.
pub fn closest_match_classical(text: &Text, pattern: &Pattern) -> Result<ClassicalMatchResult> {
    pattern.check_fits(text)?;
    let mut best_score = 0;
    let mut offsets = Vec::new();
    for offset in 0..=text.len() - pattern.len() {
        let score = score_at(text, pattern, offset);
        if score > best_score {
            best_score = score;
            offsets.clear();
        }
        if score == best_score {
            offsets.push(offset);
        }
    }
    Ok(ClassicalMatchResult {
        best_score,
        offsets,
    })
}

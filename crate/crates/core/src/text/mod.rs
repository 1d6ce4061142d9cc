//! Text and pattern model, per-symbol membership indicators and the classical
//! closest-match baseline.
//!
//! Positions are zero-based throughout: a text of length `N` has positions
//! `0..N` and a window offset `o` is valid for `0 <= o <= N - M`.

mod baseline;
mod index;
mod planted;

pub use baseline::{closest_match_classical, hamming_score, ClassicalMatchResult};
pub use index::{build_index, OracleIndex, SymbolIndicator, INDEX_FORMAT_VERSION};
pub use planted::{plant_pattern, PlantSpec, PlantedInstance};

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// A symbol code. Raw bytes map to codes by identity.
pub type Symbol = u32;

/// Code reserved for padding positions. It never belongs to an alphabet.
pub const SENTINEL: Symbol = Symbol::MAX;

/// The searched string `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    symbols: Vec<Symbol>,
    alphabet: BTreeSet<Symbol>,
    padding: usize,
}

impl Text {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyText);
        }
        if symbols.contains(&SENTINEL) {
            return Err(Error::ReservedSymbol(SENTINEL));
        }
        let alphabet = symbols.iter().copied().collect();
        Ok(Text {
            symbols,
            alphabet,
            padding: 0,
        })
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        Self::new(bytes.iter().map(|&b| Symbol::from(b)).collect())
    }

    /// Length including any sentinel padding.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Length of the original (unpadded) text.
    pub fn unpadded_len(&self) -> usize {
        self.symbols.len() - self.padding
    }

    /// Length after padding, or `None` if no padding was appended.
    pub fn padded_len(&self) -> Option<usize> {
        (self.padding > 0).then_some(self.symbols.len())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn alphabet(&self) -> &BTreeSet<Symbol> {
        &self.alphabet
    }

    pub fn get(&self, pos: usize) -> Option<Symbol> {
        self.symbols.get(pos).copied()
    }
}

/// The pattern `p` searched for in a [`Text`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    symbols: Vec<Symbol>,
}

impl Pattern {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if symbols.contains(&SENTINEL) {
            return Err(Error::ReservedSymbol(SENTINEL));
        }
        Ok(Pattern { symbols })
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        Self::new(bytes.iter().map(|&b| Symbol::from(b)).collect())
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Symbol at one-based register `j`, i.e. `p_j`.
    pub fn register_symbol(&self, j: usize) -> Result<Symbol> {
        if j == 0 || j > self.symbols.len() {
            return Err(Error::RegisterOutOfRange {
                j,
                m: self.symbols.len(),
            });
        }
        Ok(self.symbols[j - 1])
    }

    /// Checks `M <= N` against a text.
    pub fn check_fits(&self, text: &Text) -> Result<()> {
        if self.len() > text.len() {
            return Err(Error::PatternTooLong {
                m: self.len(),
                n: text.len(),
            });
        }
        Ok(())
    }
}

/// Recodes text and pattern over the alphabet of overlapping `k`-grams.
///
/// Each distinct `k`-gram occurring in either input gets a fresh code, assigned
/// in lexicographic order of the underlying symbols. Windows that overlap
/// sentinel padding become sentinels themselves.
pub fn recode_kgrams(text: &Text, pattern: &Pattern, k: usize) -> Result<(Text, Pattern)> {
    if !(2..=3).contains(&k) {
        return Err(Error::InvalidKgram(k));
    }
    if pattern.len() < k {
        return Err(Error::KgramTooWide {
            k,
            m: pattern.len(),
        });
    }
    if text.len() < k {
        return Err(Error::PatternTooLong {
            m: k,
            n: text.len(),
        });
    }

    let mut grams: BTreeMap<&[Symbol], Symbol> = BTreeMap::new();
    for w in text
        .symbols()
        .windows(k)
        .chain(pattern.symbols().windows(k))
    {
        if !w.contains(&SENTINEL) {
            grams.insert(w, 0);
        }
    }
    for (code, slot) in grams.values_mut().enumerate() {
        *slot = code as Symbol;
    }
    let recode = |w: &[Symbol]| {
        if w.contains(&SENTINEL) {
            SENTINEL
        } else {
            grams[w]
        }
    };

    let text_symbols: Vec<Symbol> = text.symbols().windows(k).map(recode).collect();
    let padding = text_symbols.iter().filter(|&&s| s == SENTINEL).count();
    let alphabet = text_symbols
        .iter()
        .copied()
        .filter(|&s| s != SENTINEL)
        .collect();
    let recoded_text = Text {
        symbols: text_symbols,
        alphabet,
        padding,
    };
    let recoded_pattern = Pattern {
        symbols: pattern.symbols().windows(k).map(recode).collect(),
    };
    Ok((recoded_text, recoded_pattern))
}

/// Appends sentinels until `N - M` is a power of two `2^s` with `s >= 1`.
pub fn pad_to_power_of_two(text: &Text, m: usize) -> Result<Text> {
    if m == 0 {
        return Err(Error::EmptyPattern);
    }
    if m > text.len() {
        return Err(Error::PatternTooLong { m, n: text.len() });
    }
    let gap = (text.len() - m).max(2).next_power_of_two();
    let extra = gap + m - text.len();
    let mut padded = text.clone();
    padded.symbols.extend(std::iter::repeat_n(SENTINEL, extra));
    padded.padding += extra;
    Ok(padded)
}

use std::collections::BTreeMap;

use base64::engine::general_purpose::STANDARD as BASE64;
use base64::Engine;
use serde::{Deserialize, Serialize};

use super::{Symbol, Text, SENTINEL};
use crate::error::{Error, Result};

pub const INDEX_FORMAT_VERSION: u32 = 1;

/// Membership bitvector `f_σ` of one symbol over all text positions.
///
/// Bits are packed least-significant-first: position `i` lives in byte `i / 8`
/// at bit `i % 8`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolIndicator {
    symbol: Symbol,
    len: usize,
    bits: Vec<u8>,
}

impl SymbolIndicator {
    pub fn zeros(symbol: Symbol, len: usize) -> Self {
        SymbolIndicator {
            symbol,
            len,
            bits: vec![0; len.div_ceil(8)],
        }
    }

    pub fn from_fn(symbol: Symbol, len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut ind = Self::zeros(symbol, len);
        for i in 0..len {
            if f(i) {
                ind.bits[i / 8] |= 1 << (i % 8);
            }
        }
        ind
    }

    fn from_packed(symbol: Symbol, len: usize, bits: Vec<u8>) -> Result<Self> {
        if bits.len() != len.div_ceil(8) {
            return Err(Error::IndicatorLength {
                got: bits.len() * 8,
                expected: len,
            });
        }
        if !len.is_multiple_of(8) && bits[len / 8] >> (len % 8) != 0 {
            return Err(Error::InvalidArgument(format!(
                "indicator for symbol {symbol} has bits set past position {len}"
            )));
        }
        Ok(SymbolIndicator { symbol, len, bits })
    }

    pub fn symbol(&self) -> Symbol {
        self.symbol
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `f_σ(i)`. Positions past the end read as 0.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        i < self.len && self.bits[i / 8] >> (i % 8) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    pub fn packed(&self) -> &[u8] {
        &self.bits
    }
}

/// The classical content of the query family `{Q_σ : σ ∈ Σ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleIndex {
    n: usize,
    indicators: BTreeMap<Symbol, SymbolIndicator>,
}

#[derive(Serialize, Deserialize)]
struct IndexDocument {
    version: u32,
    n: usize,
    alphabet: Vec<Symbol>,
    indicators: BTreeMap<Symbol, String>,
}

/// Builds one indicator per alphabet symbol in a single pass over the text.
pub fn build_index(text: &Text) -> Result<OracleIndex> {
    if text.is_empty() {
        return Err(Error::EmptyText);
    }
    let n = text.len();
    let mut indicators: BTreeMap<Symbol, SymbolIndicator> = text
        .alphabet()
        .iter()
        .map(|&s| (s, SymbolIndicator::zeros(s, n)))
        .collect();
    for (i, &s) in text.symbols().iter().enumerate() {
        if s == SENTINEL {
            continue;
        }
        let ind = indicators
            .get_mut(&s)
            .expect("alphabet covers every text symbol");
        ind.bits[i / 8] |= 1 << (i % 8);
    }
    Ok(OracleIndex { n, indicators })
}

impl OracleIndex {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.indicators.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.indicators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indicators.is_empty()
    }

    pub fn indicator(&self, symbol: Symbol) -> Option<&SymbolIndicator> {
        self.indicators.get(&symbol)
    }

    /// Indicator of `symbol`, or the all-zero indicator when the symbol never
    /// occurs in the text.
    pub fn indicator_or_empty(&self, symbol: Symbol) -> SymbolIndicator {
        self.indicators
            .get(&symbol)
            .cloned()
            .unwrap_or_else(|| SymbolIndicator::zeros(symbol, self.n))
    }

    pub fn f_sigma(&self, symbol: Symbol, i: usize) -> Result<bool> {
        if i >= self.n {
            return Err(Error::PositionOutOfRange {
                pos: i,
                len: self.n,
            });
        }
        let ind = self
            .indicators
            .get(&symbol)
            .ok_or(Error::UnknownSymbol(symbol))?;
        Ok(ind.get(i))
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = IndexDocument {
            version: INDEX_FORMAT_VERSION,
            n: self.n,
            alphabet: self.indicators.keys().copied().collect(),
            indicators: self
                .indicators
                .iter()
                .map(|(&s, ind)| (s, BASE64.encode(&ind.bits)))
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let doc: IndexDocument = serde_json::from_str(json)?;
        if doc.version != INDEX_FORMAT_VERSION {
            return Err(Error::InvalidArgument(format!(
                "unsupported index version {}",
                doc.version
            )));
        }
        if doc.n == 0 {
            return Err(Error::EmptyText);
        }
        let listed: Vec<Symbol> = doc.indicators.keys().copied().collect();
        if listed != doc.alphabet {
            return Err(Error::InvalidArgument(
                "alphabet does not match indicator keys".into(),
            ));
        }
        let mut indicators = BTreeMap::new();
        for (symbol, encoded) in doc.indicators {
            let bits = BASE64
                .decode(encoded.as_bytes())
                .map_err(|e| Error::InvalidArgument(format!("symbol {symbol}: {e}")))?;
            indicators.insert(symbol, SymbolIndicator::from_packed(symbol, doc.n, bits)?);
        }
        let index = OracleIndex {
            n: doc.n,
            indicators,
        };
        index.check_disjoint()?;
        Ok(index)
    }

    fn check_disjoint(&self) -> Result<()> {
        let mut seen = vec![0u8; self.n.div_ceil(8)];
        for ind in self.indicators.values() {
            for (acc, &b) in seen.iter_mut().zip(&ind.bits) {
                if *acc & b != 0 {
                    return Err(Error::InvalidArgument(
                        "indicators overlap at some position".into(),
                    ));
                }
                *acc |= b;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::pad_to_power_of_two;

    fn bits(ind: &SymbolIndicator) -> String {
        (0..ind.len())
            .map(|i| if ind.get(i) { '1' } else { '0' })
            .collect()
    }

    #[test]
    fn aba_indicators() {
        let index = build_index(&Text::from_bytes(b"aba").unwrap()).unwrap();
        assert_eq!(bits(index.indicator(b'a' as Symbol).unwrap()), "101");
        assert_eq!(bits(index.indicator(b'b' as Symbol).unwrap()), "010");
        assert_eq!(index.len(), 2);
    }

    #[test]
    fn single_symbol_text() {
        let index = build_index(&Text::from_bytes(b"zzzz").unwrap()).unwrap();
        assert_eq!(index.len(), 1);
        assert_eq!(bits(index.indicator(b'z' as Symbol).unwrap()), "1111");
    }

    #[test]
    fn f_sigma_lookups() {
        let index = build_index(&Text::from_bytes(b"abc").unwrap()).unwrap();
        assert!(index.f_sigma(b'b' as Symbol, 1).unwrap());
        assert!(!index.f_sigma(b'b' as Symbol, 0).unwrap());
        assert!(matches!(
            index.f_sigma(b'b' as Symbol, 3),
            Err(Error::PositionOutOfRange { .. })
        ));
        assert!(matches!(
            index.f_sigma(b'q' as Symbol, 0),
            Err(Error::UnknownSymbol(_))
        ));
    }

    #[test]
    fn padded_tail_has_no_bits() {
        let text = Text::from_bytes(b"abcabcabca").unwrap();
        let padded = pad_to_power_of_two(&text, 4).unwrap();
        let index = build_index(&padded).unwrap();
        assert_eq!(index.n(), 12);
        for s in index.alphabet() {
            let ind = index.indicator(s).unwrap();
            assert!((10..12).all(|i| !ind.get(i)));
        }
    }

    #[test]
    fn json_is_versioned_and_round_trips() {
        let index = build_index(&Text::from_bytes(b"hello world").unwrap()).unwrap();
        let json = index.to_json().unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["version"], 1);
        assert_eq!(value["n"], 11);
        assert_eq!(value["alphabet"].as_array().unwrap().len(), 8);
        assert_eq!(OracleIndex::from_json(&json).unwrap(), index);
    }

    #[test]
    fn json_rejects_overlapping_indicators() {
        let json = r#"{"version":1,"n":2,"alphabet":[1,2],"indicators":{"1":"Aw==","2":"Ag=="}}"#;
        assert!(OracleIndex::from_json(json).is_err());
    }

    #[test]
    fn json_rejects_stray_bits() {
        let json = r#"{"version":1,"n":2,"alphabet":[1],"indicators":{"1":"BA=="}}"#;
        assert!(OracleIndex::from_json(json).is_err());
    }
}

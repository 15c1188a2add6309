use std::fmt;

use crate::error::{Error, Result};

/// A symbol of the integer alphabet `[1..sigma]`. Zero is reserved for the
/// sentinel used by [`crate::oracle::SentinelPrefixView`].
pub type Symbol = u32;

/// A string over the alphabet `[1..sigma]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Text {
    symbols: Vec<Symbol>,
    sigma: u32,
}

impl Text {
    pub fn new(symbols: Vec<Symbol>, sigma: u32) -> Result<Self> {
        if sigma == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if let Some(&symbol) = symbols.iter().find(|&&s| s == 0 || s > sigma) {
            return Err(Error::SymbolOutOfRange { symbol, sigma });
        }
        Ok(Self { symbols, sigma })
    }

    /// Maps ASCII letters case-insensitively to `a = 1, b = 2, ...`; the
    /// alphabet size is the largest symbol present.
    pub fn from_letters(s: &str) -> Result<Self> {
        let symbols = s
            .bytes()
            .map(|b| match b {
                b'a'..=b'z' => Ok(u32::from(b - b'a') + 1),
                b'A'..=b'Z' => Ok(u32::from(b - b'A') + 1),
                _ => Err(Error::SymbolOutOfRange {
                    symbol: u32::from(b),
                    sigma: 26,
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        let sigma = symbols.iter().copied().max().unwrap_or(1);
        Self::new(symbols, sigma)
    }

    /// Parses a `0`/`1` string into the binary alphabet (`0 -> 1`, `1 -> 2`).
    pub fn from_bits(s: &str) -> Result<Self> {
        let symbols = s
            .bytes()
            .map(|b| match b {
                b'0' => Ok(1),
                b'1' => Ok(2),
                _ => Err(Error::NotBinary),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(symbols, 2)
    }

    /// Maps raw bytes onto a dense alphabet in order of first occurrence.
    pub fn from_bytes_dense(bytes: &[u8]) -> Self {
        let mut table = [0u32; 256];
        let mut next = 0;
        let symbols = bytes
            .iter()
            .map(|&b| {
                let slot = &mut table[usize::from(b)];
                if *slot == 0 {
                    next += 1;
                    *slot = next;
                }
                *slot
            })
            .collect();
        Self {
            symbols,
            sigma: next.max(1),
        }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn reversed(&self) -> Self {
        Self {
            symbols: self.symbols.iter().rev().copied().collect(),
            sigma: self.sigma,
        }
    }

    /// Renders symbols `1..=26` as lowercase letters and anything else as `<k>`.
    pub fn to_letters(&self) -> String {
        letters(&self.symbols)
    }

    /// Renders a binary text as `0`/`1`.
    pub fn to_bits(&self) -> Result<String> {
        bits(&self.symbols)
    }
}

pub(crate) fn letters(symbols: &[Symbol]) -> String {
    let mut out = String::with_capacity(symbols.len());
    for &s in symbols {
        match s {
            1..=26 => out.push(char::from(b'a' + (s - 1) as u8)),
            _ => out.push_str(&format!("<{s}>")),
        }
    }
    out
}

pub(crate) fn bits(symbols: &[Symbol]) -> Result<String> {
    symbols
        .iter()
        .map(|&s| match s {
            1 => Ok('0'),
            2 => Ok('1'),
            _ => Err(Error::NotBinary),
        })
        .collect()
}

impl fmt::Debug for Text {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Text(\"{}\", sigma={})", self.to_letters(), self.sigma)
    }
}

impl fmt::Display for Text {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_letters())
    }
}

impl AsRef<[Symbol]> for Text {
    fn as_ref(&self) -> &[Symbol] {
        &self.symbols
    }
}

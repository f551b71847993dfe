//! Finite ordered alphabets.
//!
//! The construction order of the tokens is fixed and induces the
//! lexicographic order used everywhere else in the crate.

use crate::error::{Error, Result};

/// A finite ordered alphabet of distinct printable tokens.
///
/// Symbols are addressed by their `u8` index in construction order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = tokens.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("token list is empty".into()));
        }
        if symbols.len() > u8::MAX as usize {
            return Err(Error::InvalidAlphabet(format!(
                "at most {} symbols are supported",
                u8::MAX
            )));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::InvalidAlphabet("empty token".into()));
            }
            if symbols[..i].contains(s) {
                return Err(Error::InvalidAlphabet(format!("duplicate token {s:?}")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// The binary alphabet `{"0", "1"}`.
    pub fn binary() -> Self {
        Alphabet::new(["0", "1"]).expect("binary alphabet is valid")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false // at least one symbol by construction
    }

    pub fn symbol(&self, index: u8) -> &str {
        &self.symbols[index as usize]
    }

    pub fn index_of(&self, token: &str) -> Option<u8> {
        self.symbols.iter().position(|s| s == token).map(|i| i as u8)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.symbols.iter().map(String::as_str)
    }

    /// All symbol indices, in construction order.
    pub fn indices(&self) -> impl Iterator<Item = u8> {
        0..self.symbols.len() as u8
    }
}

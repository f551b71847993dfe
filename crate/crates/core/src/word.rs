//! Finite words placed on integer intervals.

use crate::alphabet::Alphabet;

/// A finite word occupying the integer interval `[start, start + len)`.
///
/// Letters are symbol indices into an alphabet that is carried by the
/// surrounding context (subshift spec or block code). Equality compares
/// both coordinates and letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    start: i64,
    letters: Vec<u8>,
}

impl Word {
    pub fn new(start: i64, letters: Vec<u8>) -> Self {
        Word { start, letters }
    }

    /// A word anchored at coordinate 0.
    pub fn anchored(letters: Vec<u8>) -> Self {
        Word { start: 0, letters }
    }

    pub fn empty(start: i64) -> Self {
        Word {
            start,
            letters: Vec::new(),
        }
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// One past the last occupied coordinate.
    pub fn end(&self) -> i64 {
        self.start + self.letters.len() as i64
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn letter_at(&self, coord: i64) -> u8 {
        assert!(coord >= self.start && coord < self.end(), "coordinate out of range");
        self.letters[(coord - self.start) as usize]
    }

    /// Restriction to the subinterval `[from, to)`; the result is again a word.
    pub fn restrict(&self, from: i64, to: i64) -> Word {
        assert!(
            from >= self.start && to <= self.end() && from <= to,
            "restriction interval [{from},{to}) not contained in [{},{})",
            self.start,
            self.end()
        );
        let a = (from - self.start) as usize;
        let b = (to - self.start) as usize;
        Word {
            start: from,
            letters: self.letters[a..b].to_vec(),
        }
    }

    /// The same letters re-anchored at a new start coordinate.
    pub fn translated(&self, start: i64) -> Word {
        Word {
            start,
            letters: self.letters.clone(),
        }
    }

    /// All contiguous factors of a given length, anchored at 0.
    pub fn factors(&self, len: usize) -> impl Iterator<Item = Word> + '_ {
        let n = self.letters.len();
        let count = if len <= n { n - len + 1 } else { 0 };
        (0..count).map(move |i| Word::anchored(self.letters[i..i + len].to_vec()))
    }

    /// Render the word through an alphabet by concatenating tokens.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        self.letters
            .iter()
            .map(|&c| alphabet.symbol(c))
            .collect::<Vec<_>>()
            .join("")
    }
}

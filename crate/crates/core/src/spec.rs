//! Declarative subshift specifications.

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

/// Declarative description of a two-sided subshift over `ℤ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubshiftSpec {
    /// The full shift on the given alphabet.
    Full { alphabet: Alphabet },
    /// A shift of finite type given by a finite set of forbidden patterns.
    Sft {
        alphabet: Alphabet,
        /// Forbidden patterns as letter sequences; position-free.
        forbidden: Vec<Vec<u8>>,
    },
    /// The shift generated by a primitive substitution.
    Substitution {
        alphabet: Alphabet,
        /// `rules[a]` is the (nonempty) image word of symbol `a`.
        rules: Vec<Vec<u8>>,
    },
    /// An explicitly listed language, valid up to a maximal length.
    Explicit {
        alphabet: Alphabet,
        max_len: usize,
        /// `words[n - 1]` holds the sorted admissible words of length `n`.
        words: Vec<Vec<Vec<u8>>>,
    },
}

impl SubshiftSpec {
    pub fn full(alphabet: Alphabet) -> Self {
        SubshiftSpec::Full { alphabet }
    }

    pub fn sft(alphabet: Alphabet, forbidden: Vec<Vec<u8>>) -> Result<Self> {
        if forbidden.is_empty() {
            return Err(Error::InvalidSpec(
                "an SFT needs at least one forbidden word; use a full shift otherwise".into(),
            ));
        }
        for w in &forbidden {
            if w.is_empty() {
                return Err(Error::InvalidSpec("forbidden words must be nonempty".into()));
            }
            if w.iter().any(|&c| c as usize >= alphabet.len()) {
                return Err(Error::InvalidSpec("forbidden word uses an out-of-range symbol".into()));
            }
        }
        let mut forbidden = forbidden;
        forbidden.sort();
        forbidden.dedup();
        Ok(SubshiftSpec::Sft { alphabet, forbidden })
    }

    pub fn substitution(alphabet: Alphabet, rules: Vec<Vec<u8>>) -> Result<Self> {
        if rules.len() != alphabet.len() {
            return Err(Error::InvalidSpec(format!(
                "substitution must define a rule for each of the {} symbols",
                alphabet.len()
            )));
        }
        for (a, w) in rules.iter().enumerate() {
            if w.is_empty() {
                return Err(Error::InvalidSpec(format!(
                    "substitution image of symbol {a} is empty"
                )));
            }
            if w.iter().any(|&c| c as usize >= alphabet.len()) {
                return Err(Error::InvalidSpec("substitution image uses an out-of-range symbol".into()));
            }
        }
        Ok(SubshiftSpec::Substitution { alphabet, rules })
    }

    /// Build an explicit language; the supplied lists must be factor-closed
    /// and biextendable up to the maximal supplied length.
    pub fn explicit(alphabet: Alphabet, words_by_len: Vec<Vec<Vec<u8>>>) -> Result<Self> {
        let max_len = words_by_len.len();
        let mut words = words_by_len;
        for (i, list) in words.iter_mut().enumerate() {
            let n = i + 1;
            for w in list.iter() {
                if w.len() != n {
                    return Err(Error::InvalidExplicitLanguage(format!(
                        "word of length {} listed under length {n}",
                        w.len()
                    )));
                }
                if w.iter().any(|&c| c as usize >= alphabet.len()) {
                    return Err(Error::InvalidExplicitLanguage(
                        "word uses an out-of-range symbol".into(),
                    ));
                }
            }
            list.sort();
            list.dedup();
        }
        // Factor closure: every (n-1)-factor of a length-n word is listed.
        for n in 2..=max_len {
            for w in &words[n - 1] {
                for i in 0..=1 {
                    let f = &w[i..i + n - 1];
                    if words[n - 2].binary_search_by(|c| c.as_slice().cmp(f)).is_err() {
                        return Err(Error::InvalidExplicitLanguage(format!(
                            "length-{} factor of a listed length-{n} word is missing",
                            n - 1
                        )));
                    }
                }
            }
        }
        // Biextendability: every length-n word is a prefix and a suffix of
        // some length-(n+1) word.
        for n in 1..max_len {
            for w in &words[n - 1] {
                let ext_right = words[n].iter().any(|v| &v[..n] == w.as_slice());
                let ext_left = words[n].iter().any(|v| &v[1..] == w.as_slice());
                if !ext_right || !ext_left {
                    return Err(Error::InvalidExplicitLanguage(format!(
                        "length-{n} word is not biextendable within the supplied lists"
                    )));
                }
            }
        }
        Ok(SubshiftSpec::Explicit {
            alphabet,
            max_len,
            words,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            SubshiftSpec::Full { alphabet }
            | SubshiftSpec::Sft { alphabet, .. }
            | SubshiftSpec::Substitution { alphabet, .. }
            | SubshiftSpec::Explicit { alphabet, .. } => alphabet,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sft_rejects_empty_forbidden_word() {
        let a = Alphabet::binary();
        assert!(SubshiftSpec::sft(a, vec![vec![]]).is_err());
    }

    #[test]
    fn substitution_needs_all_rules() {
        let a = Alphabet::binary();
        assert!(SubshiftSpec::substitution(a, vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn explicit_validates_factor_closure() {
        let a = Alphabet::binary();
        // {01} of length 2 without "1" of length 1 is not factor-closed.
        let bad = SubshiftSpec::explicit(a, vec![vec![vec![0]], vec![vec![0, 1]]]);
        assert!(matches!(bad, Err(Error::InvalidExplicitLanguage(_))));
    }

    #[test]
    fn explicit_validates_biextendability() {
        let a = Alphabet::binary();
        // "1" has no right extension among the length-2 words.
        let bad = SubshiftSpec::explicit(
            a,
            vec![vec![vec![0], vec![1]], vec![vec![0, 0], vec![1, 0]]],
        );
        assert!(matches!(bad, Err(Error::InvalidExplicitLanguage(_))));
    }
}

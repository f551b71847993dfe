//! Sliding block codes with interval memory sets.
//!
//! A code with memory `[-l, r]` maps a word on `[a, b)` to a word on
//! `[a + l, b - r)`; the letter at position `g` of the image is the rule
//! applied to the input restricted to `[g - l, g + r]`. Rules are stored
//! only on the windows they are meant to see; consulting the rule outside
//! its table is an error, not a default letter.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::language::{all_words, language_words, rule_space_size};
use crate::spec::SubshiftSpec;
use crate::word::Word;

#[derive(Debug, Clone)]
pub struct BlockCode {
    id: String,
    alphabet: Alphabet,
    left: usize,
    right: usize,
    rule: BTreeMap<Vec<u8>, u8>,
}

/// Outcome of a depth-bounded endomorphism check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EndoVerdict {
    Pass,
    Fail { witness: Word, image: Word },
}

/// A block code together with a depth-bounded invertibility certificate.
#[derive(Debug, Clone)]
pub struct CertifiedCode {
    code: BlockCode,
    inverse: BlockCode,
    depth: usize,
}

impl CertifiedCode {
    pub fn code(&self) -> &BlockCode {
        &self.code
    }

    pub fn inverse(&self) -> &BlockCode {
        &self.inverse
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn id(&self) -> &str {
        self.code.id()
    }
}

impl BlockCode {
    pub fn new(
        id: impl Into<String>,
        alphabet: Alphabet,
        left: usize,
        right: usize,
        rule: BTreeMap<Vec<u8>, u8>,
    ) -> Result<Self> {
        let width = left + 1 + right;
        for (window, &out) in &rule {
            if window.len() != width {
                return Err(Error::InvalidSpec(format!(
                    "rule window has length {}, expected {width}",
                    window.len()
                )));
            }
            if window.iter().any(|&c| c as usize >= alphabet.len())
                || out as usize >= alphabet.len()
            {
                return Err(Error::InvalidSpec("rule uses an out-of-range symbol".into()));
            }
        }
        Ok(BlockCode {
            id: id.into(),
            alphabet,
            left,
            right,
            rule,
        })
    }

    /// The shift by `k`: memory `[min(k,0), max(k,0)]`, the rule selects the
    /// letter at offset `k`.
    pub fn shift(alphabet: Alphabet, k: i64) -> Self {
        let left = (-k).max(0) as usize;
        let right = k.max(0) as usize;
        let width = left + 1 + right;
        let mut rule = BTreeMap::new();
        for w in all_words(&alphabet, width).expect("shift window space is small") {
            let out = w[(left as i64 + k) as usize];
            rule.insert(w, out);
        }
        BlockCode {
            id: format!("shift({k})"),
            alphabet,
            left,
            right,
            rule,
        }
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        let mut code = BlockCode::shift(alphabet, 0);
        code.id = "id".into();
        code
    }

    /// The symbol flip on the binary alphabet.
    pub fn flip(alphabet: Alphabet) -> Result<Self> {
        if alphabet.len() != 2 {
            return Err(Error::InvalidSpec("flip is defined on two-letter alphabets".into()));
        }
        let rule = BTreeMap::from([(vec![0u8], 1u8), (vec![1u8], 0u8)]);
        BlockCode::new("flip", alphabet, 0, 0, rule)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn window_len(&self) -> usize {
        self.left + 1 + self.right
    }

    pub fn rule(&self) -> &BTreeMap<Vec<u8>, u8> {
        &self.rule
    }

    /// True when the rule table covers every admissible window of the shift.
    pub fn covers(&self, spec: &SubshiftSpec) -> Result<bool> {
        let windows = language_words(spec, self.window_len())?;
        let covered = windows.iter().all(|w| self.rule.contains_key(w.letters()));
        Ok(covered)
    }

    /// Apply the code to a finite word: the image occupies `[a + l, b - r)`.
    ///
    /// A word shorter than `l + r` yields the empty word on the empty
    /// interval; consulting the rule outside its table is an error.
    pub fn apply_local(&self, word: &Word) -> Result<Word> {
        if word.len() < self.left + self.right {
            return Ok(Word::empty(word.start() + self.left as i64));
        }
        let out_len = word.len() - self.left - self.right;
        let width = self.window_len();
        let mut letters = Vec::with_capacity(out_len);
        for i in 0..out_len {
            let window = &word.letters()[i..i + width];
            match self.rule.get(window) {
                Some(&c) => letters.push(c),
                None => {
                    return Err(Error::InadmissibleWindow {
                        window: window.to_vec(),
                    })
                }
            }
        }
        Ok(Word::new(word.start() + self.left as i64, letters))
    }

    /// Compose two codes: `apply_local(compose(f, g), w) = apply_local(f,
    /// apply_local(g, w))` on every sufficiently long word where both sides
    /// are defined.
    pub fn compose(outer: &BlockCode, inner: &BlockCode) -> Result<BlockCode> {
        if outer.alphabet != inner.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let left = outer.left + inner.left;
        let right = outer.right + inner.right;
        let width = left + 1 + right;
        let mut rule = BTreeMap::new();
        for w in all_words(&outer.alphabet, width)? {
            let word = Word::anchored(w.clone());
            let mid = match inner.apply_local(&word) {
                Ok(m) => m,
                Err(Error::InadmissibleWindow { .. }) => continue,
                Err(e) => return Err(e),
            };
            match outer.rule.get(mid.letters()) {
                Some(&c) => {
                    rule.insert(w, c);
                }
                None => continue,
            }
        }
        BlockCode::new(
            format!("{}*{}", outer.id, inner.id),
            outer.alphabet.clone(),
            left,
            right,
            rule,
        )
    }

    /// True when the code acts as the identity on every admissible word of
    /// the given length (compared on the central interval).
    pub fn is_identity_on(&self, spec: &SubshiftSpec, len: usize) -> Result<bool> {
        let len = len.max(self.left + self.right + 1);
        for w in language_words(spec, len)?.iter() {
            let image = self.apply_local(w)?;
            let central = w.restrict(image.start(), image.end());
            if image != central {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Verify that the image of every admissible word of length up to
/// `depth + l + r` is admissible; the first counterexample is returned.
pub fn check_endomorphism(
    spec: &SubshiftSpec,
    code: &BlockCode,
    depth: usize,
) -> Result<EndoVerdict> {
    assert!(depth >= 1, "depth must be at least 1");
    for n in 1..=depth {
        let inputs = language_words(spec, n + code.left + code.right)?;
        let targets = language_words(spec, n)?;
        for w in inputs.iter() {
            let image = code.apply_local(w)?;
            if !targets.contains_letters(image.letters()) {
                return Ok(EndoVerdict::Fail {
                    witness: w.clone(),
                    image,
                });
            }
        }
    }
    Ok(EndoVerdict::Pass)
}

/// Derive the inverse rule for a fixed candidate memory `(l', r')` by
/// grouping admissible preimage windows by their image; fails when the
/// center letters of a group are not unique.
pub fn derive_inverse_candidate(
    spec: &SubshiftSpec,
    code: &BlockCode,
    inv_left: usize,
    inv_right: usize,
) -> Result<Option<BlockCode>> {
    let width = inv_left + code.left + 1 + code.right + inv_right;
    let center = code.left + inv_left;
    let mut table: HashMap<Vec<u8>, u8> = HashMap::new();
    for w in language_words(spec, width)?.iter() {
        let image = match code.apply_local(w) {
            Ok(v) => v,
            Err(Error::InadmissibleWindow { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let letter = w.letters()[center];
        match table.insert(image.letters().to_vec(), letter) {
            Some(prev) if prev != letter => return Ok(None),
            _ => {}
        }
    }
    let rule: BTreeMap<Vec<u8>, u8> = table.into_iter().collect();
    Ok(Some(BlockCode::new(
        format!("inv({})", code.id),
        code.alphabet.clone(),
        inv_left,
        inv_right,
        rule,
    )?))
}

/// Both compositions act as the identity on admissible words up to `depth`.
pub fn verify_inverse(
    spec: &SubshiftSpec,
    code: &BlockCode,
    candidate: &BlockCode,
    depth: usize,
) -> Result<bool> {
    for (f, g) in [(candidate, code), (code, candidate)] {
        let comp = BlockCode::compose(f, g)?;
        for k in 1..=depth {
            let len = k + comp.left + comp.right;
            for w in language_words(spec, len)?.iter() {
                let image = match comp.apply_local(w) {
                    Ok(v) => v,
                    Err(Error::InadmissibleWindow { .. }) => return Ok(false),
                    Err(e) => return Err(e),
                };
                let central = w.restrict(image.start(), image.end());
                if image != central {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Search for an inverse block code of total memory at most
/// `inverse_radius_cap`; `None` is a value, not an error.
pub fn find_inverse(
    spec: &SubshiftSpec,
    code: &BlockCode,
    inverse_radius_cap: usize,
    depth: usize,
) -> Result<Option<BlockCode>> {
    for total in 0..=inverse_radius_cap {
        for inv_left in 0..=total {
            let inv_right = total - inv_left;
            if let Some(candidate) = derive_inverse_candidate(spec, code, inv_left, inv_right)? {
                if verify_inverse(spec, code, &candidate, depth)? {
                    return Ok(Some(candidate));
                }
            }
        }
    }
    Ok(None)
}

/// Run the endomorphism check and the inverse search; a certificate is
/// returned only when both succeed.
pub fn certify(
    spec: &SubshiftSpec,
    code: &BlockCode,
    inverse_radius_cap: usize,
    depth: usize,
) -> Result<Option<CertifiedCode>> {
    match check_endomorphism(spec, code, depth)? {
        EndoVerdict::Fail { .. } => return Ok(None),
        EndoVerdict::Pass => {}
    }
    match find_inverse(spec, code, inverse_radius_cap, depth)? {
        Some(inverse) => Ok(Some(CertifiedCode {
            code: code.clone(),
            inverse,
            depth,
        })),
        None => Ok(None),
    }
}

/// The map a code induces on admissible words of a fixed length; the
/// identity of record for deduplication.
pub fn induced_word_map(
    spec: &SubshiftSpec,
    code: &BlockCode,
    len: usize,
) -> Result<Vec<Vec<u8>>> {
    let len = len.max(code.left + code.right + 1);
    let mut images = Vec::new();
    for w in language_words(spec, len)?.iter() {
        images.push(code.apply_local(w)?.letters().to_vec());
    }
    Ok(images)
}

/// Enumerate every total rule on the admissible windows of the given
/// radius and keep the certified automorphisms, deduplicated by the map
/// they induce on admissible depth-length words.
pub fn search_automorphisms(
    spec: &SubshiftSpec,
    left: usize,
    right: usize,
    inverse_radius_cap: usize,
    depth: usize,
    budget: u64,
) -> Result<Vec<CertifiedCode>> {
    let alphabet = spec.alphabet().clone();
    let windows = language_words(spec, left + 1 + right)?;
    let space = rule_space_size(alphabet.len(), windows.count());
    if space > BigUint::from(budget) {
        return Err(Error::BudgetExceeded(format!(
            "{} candidate rules exceed the budget of {budget}",
            space
        )));
    }
    let total: u64 = space.try_into().expect("space fits after budget check");
    let keys: Vec<&[u8]> = windows.iter().map(|w| w.letters()).collect();
    let base = alphabet.len() as u64;

    let mut found: BTreeMap<Vec<Vec<u8>>, CertifiedCode> = BTreeMap::new();
    for index in 0..total {
        let mut digits = index;
        let mut rule = BTreeMap::new();
        for key in &keys {
            rule.insert(key.to_vec(), (digits % base) as u8);
            digits /= base;
        }
        let code = BlockCode::new(format!("cand_{index}"), alphabet.clone(), left, right, rule)?;
        if let Some(cert) = certify(spec, &code, inverse_radius_cap, depth)? {
            let key = induced_word_map(spec, &code, depth)?;
            found.entry(key).or_insert(cert);
        }
    }
    Ok(found
        .into_values()
        .enumerate()
        .map(|(i, mut cert)| {
            cert.code = cert.code.with_id(format!("auto_{i:03}"));
            cert
        })
        .collect())
}

/// Least window length `k ≤ cap` on which every admissible configuration
/// visibly differs from its image; `None` when the cap is exhausted.
pub fn find_separating_window(
    spec: &SubshiftSpec,
    code: &BlockCode,
    cap: usize,
    depth: usize,
) -> Result<Option<usize>> {
    if code.is_identity_on(spec, depth)? {
        return Err(Error::IdentityCode);
    }
    'next_k: for k in 1..=cap {
        let len = k + code.left + code.right;
        for w in language_words(spec, len)?.iter() {
            let image = code.apply_local(w)?;
            let central = w.restrict(image.start(), image.end());
            if image == central {
                continue 'next_k;
            }
        }
        return Ok(Some(k));
    }
    Ok(None)
}

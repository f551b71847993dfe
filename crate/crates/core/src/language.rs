//! Exact language computation on interval windows.
//!
//! `language_words` returns exactly the words of the two-sided subshift's
//! language, not merely the locally admissible ones: for SFTs this is
//! enforced by iteratively trimming the de Bruijn graph, for substitutions
//! by iterating the rules until the factor set stabilizes.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::One;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::spec::SubshiftSpec;
use crate::word::Word;

/// Hard cap on the number of words any single enumeration may materialize.
pub const ENUMERATION_LIMIT: u64 = 1 << 22;

/// The exact set of admissible words of a fixed length, anchored at 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSet {
    n: usize,
    words: Vec<Word>,
}

impl WordSet {
    fn from_sorted(n: usize, words: Vec<Word>) -> Self {
        debug_assert!(words.windows(2).all(|p| p[0] < p[1]), "sorted, no duplicates");
        debug_assert!(words.iter().all(|w| w.len() == n && w.start() == 0));
        WordSet { n, words }
    }

    pub fn from_words(n: usize, mut words: Vec<Word>) -> Self {
        words.sort();
        words.dedup();
        WordSet::from_sorted(n, words)
    }

    pub fn window_len(&self) -> usize {
        self.n
    }

    /// `N_Σ` on this window.
    pub fn count(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn contains_letters(&self, letters: &[u8]) -> bool {
        self.words
            .binary_search_by(|w| w.letters().cmp(letters))
            .is_ok()
    }
}

/// All words of the two-sided subshift's language of length `n`, sorted.
pub fn language_words(spec: &SubshiftSpec, n: usize) -> Result<WordSet> {
    if n == 0 {
        return Ok(WordSet::from_sorted(0, vec![Word::anchored(Vec::new())]));
    }
    match spec {
        SubshiftSpec::Full { alphabet } => full_language(alphabet, n),
        SubshiftSpec::Sft { alphabet, forbidden } => sft_language(alphabet, forbidden, n),
        SubshiftSpec::Substitution { alphabet, rules } => {
            substitution_language(alphabet, rules, n)
        }
        SubshiftSpec::Explicit { max_len, words, .. } => {
            if n > *max_len {
                return Err(Error::ExplicitLengthExceeded { n, max: *max_len });
            }
            Ok(WordSet::from_sorted(
                n,
                words[n - 1].iter().cloned().map(Word::anchored).collect(),
            ))
        }
    }
}

/// `N_Σ(n)` without materializing word lists where a closed form exists.
pub fn language_count(spec: &SubshiftSpec, n: usize) -> Result<BigUint> {
    match spec {
        SubshiftSpec::Full { alphabet } => {
            Ok(BigUint::from(alphabet.len()).pow(n as u32))
        }
        _ => Ok(BigUint::from(language_words(spec, n)?.count())),
    }
}

/// Enumerate all words of a given length over the alphabet, in
/// lexicographic order.
pub fn all_words(alphabet: &Alphabet, n: usize) -> Result<Vec<Vec<u8>>> {
    let k = alphabet.len() as u64;
    let mut total: u64 = 1;
    for _ in 0..n {
        total = total
            .checked_mul(k)
            .filter(|&t| t <= ENUMERATION_LIMIT)
            .ok_or_else(|| {
                Error::BudgetExceeded(format!("{}^{n} words exceed the enumeration limit", k))
            })?;
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut cur = vec![0u8; n];
    loop {
        out.push(cur.clone());
        // increment as a base-k counter, most significant letter first
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if (cur[i] as usize) + 1 < alphabet.len() {
                cur[i] += 1;
                cur[i + 1..].fill(0);
                break;
            }
        }
    }
}

fn full_language(alphabet: &Alphabet, n: usize) -> Result<WordSet> {
    let words = all_words(alphabet, n)?
        .into_iter()
        .map(Word::anchored)
        .collect();
    Ok(WordSet::from_sorted(n, words))
}

fn contains_forbidden(letters: &[u8], forbidden: &[Vec<u8>]) -> bool {
    forbidden.iter().any(|f| {
        letters
            .windows(f.len())
            .any(|w| w == f.as_slice())
    })
}

/// Language of an SFT via de Bruijn graph trimming.
///
/// Vertices are the locally admissible `(k-1)`-blocks, edges the locally
/// admissible `k`-blocks; vertices with in-degree or out-degree 0 are
/// deleted until stable. The trimming is what turns local admissibility
/// into membership in the language of the two-sided shift.
pub fn sft_language(alphabet: &Alphabet, forbidden: &[Vec<u8>], n: usize) -> Result<WordSet> {
    if n == 0 {
        return Ok(WordSet::from_sorted(0, vec![Word::anchored(Vec::new())]));
    }
    let k = forbidden.iter().map(Vec::len).max().unwrap_or(1).max(2);
    let block = k - 1;

    let vertices: Vec<Vec<u8>> = all_words(alphabet, block)?
        .into_iter()
        .filter(|w| !contains_forbidden(w, forbidden))
        .collect();
    let vidx = |letters: &[u8]| -> Option<usize> {
        vertices.binary_search_by(|v| v.as_slice().cmp(letters)).ok()
    };
    // edge (u, v) for each admissible k-block
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for w in all_words(alphabet, k)? {
        if contains_forbidden(&w, forbidden) {
            continue;
        }
        if let (Some(u), Some(v)) = (vidx(&w[..block]), vidx(&w[1..])) {
            edges.push((u, v));
        }
    }

    let mut alive = vec![true; vertices.len()];
    loop {
        let mut out_deg = vec![0usize; vertices.len()];
        let mut in_deg = vec![0usize; vertices.len()];
        for &(u, v) in &edges {
            if alive[u] && alive[v] {
                out_deg[u] += 1;
                in_deg[v] += 1;
            }
        }
        let mut changed = false;
        for i in 0..vertices.len() {
            if alive[i] && (out_deg[i] == 0 || in_deg[i] == 0) {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    if alive.iter().all(|&a| !a) {
        return Err(Error::EmptySubshift);
    }

    if n < block {
        let mut set: BTreeSet<Vec<u8>> = BTreeSet::new();
        for (i, v) in vertices.iter().enumerate() {
            if alive[i] {
                for w in v.windows(n) {
                    set.insert(w.to_vec());
                }
            }
        }
        let words = set.into_iter().map(Word::anchored).collect();
        return Ok(WordSet::from_sorted(n, words));
    }

    // adjacency on surviving vertices: letters that extend each block
    let mut succ: Vec<Vec<(u8, usize)>> = vec![Vec::new(); vertices.len()];
    for &(u, v) in &edges {
        if alive[u] && alive[v] {
            succ[u].push((*vertices[v].last().expect("block length >= 1"), v));
        }
    }
    for s in &mut succ {
        s.sort();
    }

    // enumerate edge-path labels of length n
    let mut frontier: Vec<(Vec<u8>, usize)> = vertices
        .iter()
        .enumerate()
        .filter(|(i, _)| alive[*i])
        .map(|(i, v)| (v.clone(), i))
        .collect();
    for _ in block..n {
        let mut next = Vec::new();
        for (w, u) in &frontier {
            for &(c, v) in &succ[*u] {
                let mut ext = w.clone();
                ext.push(c);
                next.push((ext, v));
            }
        }
        if next.len() as u64 > ENUMERATION_LIMIT {
            return Err(Error::BudgetExceeded(format!(
                "SFT language at length {n} exceeds the enumeration limit"
            )));
        }
        frontier = next;
    }
    let mut words: Vec<Word> = frontier.into_iter().map(|(w, _)| Word::anchored(w)).collect();
    words.sort();
    words.dedup();
    Ok(WordSet::from_sorted(n, words))
}

/// Incidence matrix of the substitution: `m[a][b]` counts occurrences of
/// `b` in the image of `a`.
fn incidence_matrix(alphabet: &Alphabet, rules: &[Vec<u8>]) -> Vec<Vec<u64>> {
    let k = alphabet.len();
    let mut m = vec![vec![0u64; k]; k];
    for (a, image) in rules.iter().enumerate() {
        for &b in image {
            m[a][b as usize] += 1;
        }
    }
    m
}

fn is_primitive(alphabet: &Alphabet, rules: &[Vec<u8>]) -> bool {
    let k = alphabet.len();
    let m = incidence_matrix(alphabet, rules);
    let mut p = m.clone();
    for _ in 1..=k * k {
        if p.iter().all(|row| row.iter().all(|&x| x > 0)) {
            return true;
        }
        // p <- p * m, saturating; only positivity matters
        let mut q = vec![vec![0u64; k]; k];
        for i in 0..k {
            for j in 0..k {
                let mut acc: u64 = 0;
                for t in 0..k {
                    acc = acc.saturating_add(p[i][t].saturating_mul(m[t][j]));
                }
                q[i][j] = acc.min(1u64 << 32);
            }
        }
        p = q;
    }
    p.iter().all(|row| row.iter().all(|&x| x > 0))
}

fn apply_rules(rules: &[Vec<u8>], word: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(word.len() * 2);
    for &c in word {
        out.extend_from_slice(&rules[c as usize]);
    }
    out
}

/// Language of a primitive substitution shift by iterating the rules on
/// each symbol until the set of length-`n` factors stabilizes for two
/// consecutive rounds.
pub fn substitution_language(alphabet: &Alphabet, rules: &[Vec<u8>], n: usize) -> Result<WordSet> {
    if !is_primitive(alphabet, rules) {
        return Err(Error::NonPrimitiveSubstitution);
    }
    if n == 0 {
        return Ok(WordSet::from_sorted(0, vec![Word::anchored(Vec::new())]));
    }
    if rules.iter().all(|w| w.len() == 1) {
        // primitive with all images of length 1 forces a one-letter alphabet;
        // the shift is the single constant configuration
        debug_assert_eq!(alphabet.len(), 1);
        return Ok(WordSet::from_sorted(n, vec![Word::anchored(vec![0; n])]));
    }

    let mut iterates: Vec<Vec<u8>> = alphabet.indices().map(|a| vec![a]).collect();
    let mut prev: Option<BTreeSet<Vec<u8>>> = None;
    const MAX_ROUNDS: usize = 10_000;
    for _ in 0..MAX_ROUNDS {
        for w in &mut iterates {
            *w = apply_rules(rules, w);
        }
        if iterates.iter().any(|w| w.len() < n) {
            continue; // too short to carry length-n factors yet
        }
        let mut set: BTreeSet<Vec<u8>> = BTreeSet::new();
        for w in &iterates {
            for f in w.windows(n) {
                set.insert(f.to_vec());
            }
        }
        if prev.as_ref() == Some(&set) {
            let words = set.into_iter().map(Word::anchored).collect();
            return Ok(WordSet::from_sorted(n, words));
        }
        prev = Some(set);
    }
    Err(Error::BudgetExceeded(
        "substitution factor set did not stabilize".into(),
    ))
}

/// Number of total rule tables on the admissible windows of a given width,
/// compared against a budget without overflow.
pub fn rule_space_size(alphabet_len: usize, window_count: usize) -> BigUint {
    let mut size = BigUint::one();
    for _ in 0..window_count {
        size *= BigUint::from(alphabet_len);
    }
    size
}

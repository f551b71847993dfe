//! Finite-stage characteristic-measure construction.
//!
//! For a core window `[0, n)` we pick one canonical padded representative
//! per admissible core word, put the uniform measure on the
//! representatives, push it forward under certified automorphisms, and
//! compare the projections in exact total variation against the `2ε`
//! bound.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::block_code::{BlockCode, CertifiedCode};
use crate::error::{Error, Result};
use crate::growth::{window_defect, Margin};
use crate::language::language_words;
use crate::spec::SubshiftSpec;
use crate::word::Word;

/// One canonical admissible extension per admissible core word.
///
/// The extension of a core word `u` on `[0, n)` is the lexicographically
/// least admissible word on `[-p_left, n + p_right)` restricting to `u`
/// (left pad compared before right pad, positions ascending).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentativeSet {
    n: usize,
    pads: Margin,
    /// Pairs `(core word anchored at 0, padded member)`, sorted by core.
    members: Vec<(Word, Word)>,
}

impl RepresentativeSet {
    pub fn core_len(&self) -> usize {
        self.n
    }

    pub fn pads(&self) -> Margin {
        self.pads
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[(Word, Word)] {
        &self.members
    }
}

/// A rational-weighted distribution on admissible words of a fixed length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalMeasure {
    m: usize,
    weights: BTreeMap<Word, BigRational>,
}

impl EmpiricalMeasure {
    pub fn from_weights(m: usize, weights: BTreeMap<Word, BigRational>) -> Self {
        debug_assert!(weights.keys().all(|w| w.len() == m && w.start() == 0));
        debug_assert!(weights.values().all(|p| !p.is_negative()));
        EmpiricalMeasure { m, weights }
    }

    pub fn word_len(&self) -> usize {
        self.m
    }

    pub fn weight(&self, word: &Word) -> BigRational {
        self.weights.get(word).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn weights(&self) -> &BTreeMap<Word, BigRational> {
        &self.weights
    }

    pub fn total_mass(&self) -> BigRational {
        self.weights.values().sum()
    }

    /// Marginalize to the length-`m2` prefix.
    pub fn marginal(&self, m2: usize) -> Result<EmpiricalMeasure> {
        if m2 > self.m {
            return Err(Error::ProjectionTooLong { m: m2, n: self.m });
        }
        let mut out: BTreeMap<Word, BigRational> = BTreeMap::new();
        for (w, p) in &self.weights {
            let key = Word::anchored(w.letters()[..m2].to_vec());
            *out.entry(key).or_insert_with(BigRational::zero) += p.clone();
        }
        Ok(EmpiricalMeasure::from_weights(m2, out))
    }
}

/// Build the canonical representative set for the core window `[0, n)`
/// with the given pads.
pub fn representatives(spec: &SubshiftSpec, n: usize, pads: Margin) -> Result<RepresentativeSet> {
    let ext = language_words(spec, n + pads.total())?;
    if ext.count() == 0 {
        return Err(Error::EmptySubshift);
    }
    let mut members: Vec<(Word, Word)> = Vec::new();
    let mut seen: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    for w in ext.iter() {
        let core = w.letters()[pads.left..pads.left + n].to_vec();
        if !seen.contains_key(&core) {
            seen.insert(core.clone(), members.len());
            members.push((
                Word::anchored(core),
                w.translated(-(pads.left as i64)),
            ));
        }
    }
    members.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(RepresentativeSet { n, pads, members })
}

/// The projection `π_m ν_n`: uniform weights on representatives, restricted
/// to the prefix `[0, m)` of the core window.
pub fn empirical_measure(reps: &RepresentativeSet, m: usize) -> Result<EmpiricalMeasure> {
    if m > reps.n {
        return Err(Error::ProjectionTooLong { m, n: reps.n });
    }
    let total = BigInt::from(reps.len());
    let unit = BigRational::new(BigInt::one(), total);
    let mut weights: BTreeMap<Word, BigRational> = BTreeMap::new();
    for (core, _) in &reps.members {
        let key = Word::anchored(core.letters()[..m].to_vec());
        *weights.entry(key).or_insert_with(BigRational::zero) += unit.clone();
    }
    Ok(EmpiricalMeasure::from_weights(m, weights))
}

/// The projection `π_m φ_* ν_n`: apply the code to every padded member and
/// restrict the image to `[0, m)`.
pub fn pushforward(code: &BlockCode, reps: &RepresentativeSet, m: usize) -> Result<EmpiricalMeasure> {
    if m > reps.n {
        return Err(Error::ProjectionTooLong { m, n: reps.n });
    }
    if reps.pads.left < code.left() || reps.pads.right < code.right() {
        return Err(Error::InsufficientPads {
            left: reps.pads.left,
            right: reps.pads.right,
            need_left: code.left(),
            need_right: code.right(),
        });
    }
    let total = BigInt::from(reps.len());
    let unit = BigRational::new(BigInt::one(), total);
    let mut weights: BTreeMap<Word, BigRational> = BTreeMap::new();
    for (_, member) in &reps.members {
        let image = code.apply_local(member)?;
        let key = image.restrict(0, m as i64).translated(0);
        *weights.entry(key).or_insert_with(BigRational::zero) += unit.clone();
    }
    Ok(EmpiricalMeasure::from_weights(m, weights))
}

/// Exact total variation distance: half the `L¹` distance.
pub fn tv_distance(a: &EmpiricalMeasure, b: &EmpiricalMeasure) -> Result<BigRational> {
    if a.m != b.m {
        return Err(Error::LengthMismatch(a.m, b.m));
    }
    let mut sum = BigRational::zero();
    let mut keys: Vec<&Word> = a.weights.keys().chain(b.weights.keys()).collect();
    keys.sort();
    keys.dedup();
    for key in keys {
        sum += (a.weight(key) - b.weight(key)).abs();
    }
    Ok(sum / BigRational::from(BigInt::from(2)))
}

/// Per-automorphism total-variation defect against the `2ε` bound.
#[derive(Debug, Clone)]
pub struct DefectEntry {
    pub code_id: String,
    pub margin: Margin,
    pub eps: BigRational,
    pub bound: BigRational,
    pub tv: BigRational,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct DefectReport {
    pub n: usize,
    pub m: usize,
    pub pads: Margin,
    pub entries: Vec<DefectEntry>,
}

impl DefectReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

/// Finite-stage certificate: for each certified automorphism, the exact TV
/// distance between `π_m ν_n` and its pushforward, compared with `2 ε_n`
/// computed for that automorphism's margin.
pub fn characteristic_defect(
    spec: &SubshiftSpec,
    autos: &[CertifiedCode],
    n: usize,
    m: usize,
) -> Result<DefectReport> {
    if m > n {
        return Err(Error::ProjectionTooLong { m, n });
    }
    let pads = Margin::new(
        autos.iter().map(|c| c.code().left()).max().unwrap_or(0),
        autos.iter().map(|c| c.code().right()).max().unwrap_or(0),
    );
    let reps = representatives(spec, n, pads)?;
    let base = empirical_measure(&reps, m)?;
    let mut entries = Vec::with_capacity(autos.len());
    for cert in autos {
        let code = cert.code();
        let margin = Margin::new(code.left(), code.right());
        let eps = window_defect(spec, n, margin)?;
        let bound = &eps * BigRational::from(BigInt::from(2));
        let pushed = pushforward(code, &reps, m)?;
        let tv = tv_distance(&base, &pushed)?;
        let pass = tv <= bound;
        entries.push(DefectEntry {
            code_id: code.id().to_string(),
            margin,
            eps,
            bound,
            tv,
            pass,
        });
    }
    Ok(DefectReport {
        n,
        m,
        pads,
        entries,
    })
}

/// TV distances between `π_m ν_n` along a schedule of window lengths and
/// an oracle frequency measure counted in a long substitution iterate.
#[derive(Debug, Clone)]
pub struct FreqComparison {
    pub m: usize,
    pub oracle: EmpiricalMeasure,
    /// Rows `(n, TV(π_m ν_n, oracle))` in schedule order.
    pub rows: Vec<(usize, BigRational)>,
}

/// Number of substitution rounds used to build the oracle word.
pub const FREQ_ORACLE_ITERATIONS: usize = 20;

/// Exact factor frequencies of length `m` in the `FREQ_ORACLE_ITERATIONS`-th
/// substitution iterate of the first symbol.
pub fn substitution_frequency_oracle(spec: &SubshiftSpec, m: usize) -> Result<EmpiricalMeasure> {
    let rules = match spec {
        SubshiftSpec::Substitution { rules, .. } => rules,
        _ => {
            return Err(Error::UnsupportedSpec(
                "frequency oracle needs a substitution shift".into(),
            ))
        }
    };
    let mut word = vec![0u8];
    for _ in 0..FREQ_ORACLE_ITERATIONS {
        let mut next = Vec::with_capacity(word.len() * 2);
        for &c in &word {
            next.extend_from_slice(&rules[c as usize]);
        }
        word = next;
    }
    if word.len() < m || m == 0 {
        return Err(Error::UnsupportedSpec(format!(
            "oracle iterate of length {} cannot count factors of length {m}",
            word.len()
        )));
    }
    let windows = word.len() - m + 1;
    let mut counts: BTreeMap<Word, usize> = BTreeMap::new();
    for f in word.windows(m) {
        *counts.entry(Word::anchored(f.to_vec())).or_insert(0) += 1;
    }
    let total = BigInt::from(windows);
    let weights = counts
        .into_iter()
        .map(|(w, c)| (w, BigRational::new(BigInt::from(c), total.clone())))
        .collect();
    Ok(EmpiricalMeasure::from_weights(m, weights))
}

pub fn frequency_comparison(
    spec: &SubshiftSpec,
    schedule: &[usize],
    m: usize,
) -> Result<FreqComparison> {
    let oracle = substitution_frequency_oracle(spec, m)?;
    let mut rows = Vec::with_capacity(schedule.len());
    for &n in schedule {
        if m > n {
            return Err(Error::ProjectionTooLong { m, n });
        }
        let reps = representatives(spec, n, Margin::new(0, 0))?;
        let nu = empirical_measure(&reps, m)?;
        rows.push((n, tv_distance(&nu, &oracle)?));
    }
    Ok(FreqComparison { m, oracle, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::block_code::certify;

    fn binary() -> Alphabet {
        Alphabet::binary()
    }

    fn full2() -> SubshiftSpec {
        SubshiftSpec::full(binary())
    }

    fn golden_mean() -> SubshiftSpec {
        SubshiftSpec::sft(binary(), vec![vec![1, 1]]).unwrap()
    }

    fn fibonacci() -> SubshiftSpec {
        SubshiftSpec::substitution(binary(), vec![vec![0, 1], vec![0]]).unwrap()
    }

    fn rat(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn measure_of(pairs: &[(&[u8], BigRational)]) -> EmpiricalMeasure {
        let m = pairs[0].0.len();
        let weights = pairs
            .iter()
            .map(|(w, p)| (Word::anchored(w.to_vec()), p.clone()))
            .collect();
        EmpiricalMeasure::from_weights(m, weights)
    }

    #[test]
    fn least_extensions_pad_with_zero_on_full_shift() {
        let reps = representatives(&full2(), 1, Margin::new(1, 1)).unwrap();
        assert_eq!(reps.len(), 2);
        assert_eq!(reps.members()[0].1, Word::new(-1, vec![0, 0, 0]));
        assert_eq!(reps.members()[1].1, Word::new(-1, vec![0, 1, 0]));
    }

    #[test]
    fn zero_padding_returns_core_words() {
        let reps = representatives(&fibonacci(), 2, Margin::new(0, 0)).unwrap();
        let padded: Vec<&Word> = reps.members().iter().map(|(_, p)| p).collect();
        assert_eq!(
            padded,
            vec![
                &Word::anchored(vec![0, 0]),
                &Word::anchored(vec![0, 1]),
                &Word::anchored(vec![1, 0])
            ]
        );
    }

    #[test]
    fn golden_mean_least_right_extensions() {
        let reps = representatives(&golden_mean(), 2, Margin::new(0, 1)).unwrap();
        let rendered: Vec<String> = reps
            .members()
            .iter()
            .map(|(_, p)| p.render(&binary()))
            .collect();
        assert_eq!(rendered, vec!["000", "010", "100"]);
    }

    #[test]
    fn uniform_prefix_projection() {
        let reps = representatives(&full2(), 3, Margin::new(0, 0)).unwrap();
        let mu = empirical_measure(&reps, 1).unwrap();
        assert_eq!(mu.weight(&Word::anchored(vec![0])), rat(1, 2));
        assert_eq!(mu.weight(&Word::anchored(vec![1])), rat(1, 2));
    }

    #[test]
    fn identity_projection_is_uniform() {
        let reps = representatives(&fibonacci(), 2, Margin::new(0, 0)).unwrap();
        let mu = empirical_measure(&reps, 2).unwrap();
        for p in mu.weights().values() {
            assert_eq!(p, &rat(1, 3));
        }
    }

    #[test]
    fn fibonacci_letter_projection() {
        let reps = representatives(&fibonacci(), 2, Margin::new(0, 0)).unwrap();
        let mu = empirical_measure(&reps, 1).unwrap();
        assert_eq!(mu.weight(&Word::anchored(vec![0])), rat(2, 3));
        assert_eq!(mu.weight(&Word::anchored(vec![1])), rat(1, 3));
    }

    #[test]
    fn projection_length_checked() {
        let reps = representatives(&fibonacci(), 2, Margin::new(0, 0)).unwrap();
        assert!(matches!(
            empirical_measure(&reps, 3),
            Err(Error::ProjectionTooLong { .. })
        ));
    }

    #[test]
    fn flip_pushforward_preserves_uniform() {
        let reps = representatives(&full2(), 1, Margin::new(0, 0)).unwrap();
        let flip = BlockCode::flip(binary()).unwrap();
        let mu = pushforward(&flip, &reps, 1).unwrap();
        assert_eq!(mu.weight(&Word::anchored(vec![0])), rat(1, 2));
        assert_eq!(mu.weight(&Word::anchored(vec![1])), rat(1, 2));
    }

    #[test]
    fn identity_pushforward_matches_projection() {
        let reps = representatives(&fibonacci(), 5, Margin::new(0, 1)).unwrap();
        let id = BlockCode::identity(binary());
        for m in 1..=5 {
            assert_eq!(
                pushforward(&id, &reps, m).unwrap(),
                empirical_measure(&reps, m).unwrap()
            );
        }
    }

    #[test]
    fn pushforward_checks_pads() {
        let reps = representatives(&fibonacci(), 3, Margin::new(0, 0)).unwrap();
        let s1 = BlockCode::shift(binary(), 1);
        assert!(matches!(
            pushforward(&s1, &reps, 1),
            Err(Error::InsufficientPads { .. })
        ));
    }

    #[test]
    fn pushforward_mass_is_one() {
        let reps = representatives(&fibonacci(), 7, Margin::new(0, 1)).unwrap();
        let s1 = BlockCode::shift(binary(), 1);
        let mu = pushforward(&s1, &reps, 1).unwrap();
        assert_eq!(mu.total_mass(), BigRational::one());
    }

    #[test]
    fn tv_examples() {
        let u = measure_of(&[(&[0], rat(1, 2)), (&[1], rat(1, 2))]);
        assert_eq!(tv_distance(&u, &u).unwrap(), BigRational::zero());

        let d0 = measure_of(&[(&[0], rat(1, 1))]);
        let d1 = measure_of(&[(&[1], rat(1, 1))]);
        assert_eq!(tv_distance(&d0, &d1).unwrap(), BigRational::one());

        let a = measure_of(&[(&[0], rat(3, 4)), (&[1], rat(1, 4))]);
        assert_eq!(tv_distance(&a, &u).unwrap(), rat(1, 4));
    }

    #[test]
    fn tv_length_mismatch() {
        let a = measure_of(&[(&[0], rat(1, 1))]);
        let b = measure_of(&[(&[0, 0], rat(1, 1))]);
        assert!(matches!(tv_distance(&a, &b), Err(Error::LengthMismatch(_, _))));
    }

    #[test]
    fn fibonacci_defect_certificate() {
        let spec = fibonacci();
        let s1 = certify(&spec, &BlockCode::shift(binary(), 1), 2, 8)
            .unwrap()
            .unwrap();
        let report = characteristic_defect(&spec, &[s1], 7, 2).unwrap();
        let entry = &report.entries[0];
        assert_eq!(entry.eps, rat(1, 9));
        assert_eq!(entry.bound, rat(2, 9));
        assert!(entry.tv <= entry.bound);
        assert!(entry.pass);
    }

    #[test]
    fn identity_defect_is_zero() {
        let spec = fibonacci();
        let id = certify(&spec, &BlockCode::identity(binary()), 1, 6)
            .unwrap()
            .unwrap();
        let report = characteristic_defect(&spec, &[id], 6, 3).unwrap();
        assert_eq!(report.entries[0].tv, BigRational::zero());
    }

    #[test]
    fn flip_permutes_full_shift_words() {
        let spec = full2();
        let flip = certify(&spec, &BlockCode::flip(binary()).unwrap(), 1, 6)
            .unwrap()
            .unwrap();
        let report = characteristic_defect(&spec, &[flip], 5, 5).unwrap();
        let entry = &report.entries[0];
        assert_eq!(entry.tv, BigRational::zero());
        assert_eq!(entry.eps, BigRational::zero());
        assert!(entry.pass);
    }

    #[test]
    fn m_larger_than_n_rejected() {
        assert!(matches!(
            characteristic_defect(&fibonacci(), &[], 5, 6),
            Err(Error::ProjectionTooLong { .. })
        ));
    }

    #[test]
    fn fibonacci_letter_frequencies() {
        let oracle = substitution_frequency_oracle(&fibonacci(), 1).unwrap();
        // letter counts in the 20th iterate of "0": Fibonacci numbers
        assert_eq!(
            oracle.weight(&Word::anchored(vec![0])),
            rat(10946, 17711)
        );
        assert_eq!(oracle.weight(&Word::anchored(vec![1])), rat(6765, 17711));
    }

    #[test]
    fn thue_morse_letter_frequencies_are_balanced() {
        let tm = SubshiftSpec::substitution(binary(), vec![vec![0, 1], vec![1, 0]]).unwrap();
        let oracle = substitution_frequency_oracle(&tm, 1).unwrap();
        assert_eq!(oracle.weight(&Word::anchored(vec![0])), rat(1, 2));
        assert_eq!(oracle.weight(&Word::anchored(vec![1])), rat(1, 2));
    }

    #[test]
    fn frequency_comparison_runs() {
        let cmp = frequency_comparison(&fibonacci(), &[10, 25], 1).unwrap();
        assert_eq!(cmp.rows.len(), 2);
        for (_, tv) in &cmp.rows {
            assert!(tv >= &BigRational::zero() && tv <= &BigRational::one());
        }
    }

    #[test]
    fn marginal_contracts_tv() {
        let spec = fibonacci();
        let s1 = certify(&spec, &BlockCode::shift(binary(), 1), 2, 8)
            .unwrap()
            .unwrap();
        let reps = representatives(&spec, 10, Margin::new(0, 1)).unwrap();
        let mu = empirical_measure(&reps, 5).unwrap();
        let nu = pushforward(s1.code(), &reps, 5).unwrap();
        let mut prev = tv_distance(&mu, &nu).unwrap();
        for m2 in (1..5).rev() {
            let cur = tv_distance(&mu.marginal(m2).unwrap(), &nu.marginal(m2).unwrap()).unwrap();
            assert!(cur <= prev);
            prev = cur;
        }
    }
}

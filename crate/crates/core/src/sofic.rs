//! Partially defined self-maps of `A = Σ_F̃` and the four soficity
//! conditions, measured exactly.
//!
//! The ground set is the language on the enlarged window
//! `F̃ = [-l_max, n + r_max)`; each certified automorphism induces the
//! partial map `a ↦ b` where `b` is the unique element of `A` whose core
//! restriction equals the image of `a` on `[0, n)`, undefined when
//! uniqueness fails.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::block_code::{find_separating_window, BlockCode, CertifiedCode};
use crate::error::{Error, Result};
use crate::growth::Margin;
use crate::language::{language_count, language_words};
use crate::spec::SubshiftSpec;
use crate::word::Word;

/// A partially defined self-map of the finite ground set `A = Σ_F̃`.
#[derive(Debug, Clone)]
pub struct PartialMapTable {
    code_id: String,
    n: usize,
    margins: Margin,
    /// Ground words on `[-l_max, n + r_max)`, sorted by letters.
    ground: Vec<Word>,
    /// Defined entries as index pairs into `ground`.
    entries: BTreeMap<usize, usize>,
}

impl PartialMapTable {
    pub fn code_id(&self) -> &str {
        &self.code_id
    }

    pub fn core_len(&self) -> usize {
        self.n
    }

    pub fn margins(&self) -> Margin {
        self.margins
    }

    pub fn ground(&self) -> &[Word] {
        &self.ground
    }

    pub fn ground_size(&self) -> usize {
        self.ground.len()
    }

    pub fn entries(&self) -> &BTreeMap<usize, usize> {
        &self.entries
    }

    pub fn defined_count(&self) -> usize {
        self.entries.len()
    }

    pub fn image_count(&self) -> usize {
        let mut images: Vec<usize> = self.entries.values().copied().collect();
        images.sort_unstable();
        images.dedup();
        images.len()
    }

    pub fn get(&self, a: usize) -> Option<usize> {
        self.entries.get(&a).copied()
    }
}

/// Verdict of the fixed-point condition for one non-identity element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixedPointCheck {
    Pass,
    Fail { witness: Word },
    /// No separating window fits inside the core; a certification gap,
    /// not a refutation.
    Blocked { separating: Option<usize> },
}

#[derive(Debug, Clone)]
pub struct SoficCodeReport {
    pub id: String,
    pub defined: BigRational,
    pub injective: BigRational,
    pub cond2: bool,
    pub cond3_mismatches: usize,
    pub cond4: FixedPointCheck,
}

/// One checked composition `g∘h = f` with its mismatch count.
#[derive(Debug, Clone)]
pub struct CompositionTriple {
    pub outer: String,
    pub inner: String,
    pub composed: String,
    pub mismatches: usize,
}

#[derive(Debug, Clone)]
pub struct SoficReport {
    pub n: usize,
    pub margins: Margin,
    pub ground_size: usize,
    /// `ε` with `N(F̃)/N(F) = 1 + ε`, exact.
    pub eps: BigRational,
    /// The guaranteed fraction `(1 − ε)/(1 + ε)`.
    pub floor: BigRational,
    pub triples: Vec<CompositionTriple>,
    pub codes: Vec<SoficCodeReport>,
}

impl SoficReport {
    pub fn any_blocked(&self) -> bool {
        self.codes
            .iter()
            .any(|c| matches!(c.cond4, FixedPointCheck::Blocked { .. }))
    }

    pub fn all_pass(&self) -> bool {
        self.codes.iter().all(|c| {
            c.cond2
                && c.cond3_mismatches == 0
                && matches!(c.cond4, FixedPointCheck::Pass)
                && c.defined >= self.floor
                && c.injective >= self.floor
        }) && self.triples.iter().all(|t| t.mismatches == 0)
    }
}

/// Build the partial map `φ̃` for one certified automorphism.
pub fn build_partial_map(
    spec: &SubshiftSpec,
    cert: &CertifiedCode,
    n: usize,
    margins: Margin,
) -> Result<PartialMapTable> {
    let code = cert.code();
    if margins.left < code.left() || margins.right < code.right() {
        return Err(Error::InsufficientPads {
            left: margins.left,
            right: margins.right,
            need_left: code.left(),
            need_right: code.right(),
        });
    }
    let ground: Vec<Word> = language_words(spec, n + margins.total())?
        .iter()
        .map(|w| w.translated(-(margins.left as i64)))
        .collect();
    if ground.is_empty() {
        return Err(Error::EmptySubshift);
    }

    // index ground words by their core restriction
    let mut by_core: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
    for (i, w) in ground.iter().enumerate() {
        let core = w.restrict(0, n as i64).letters().to_vec();
        by_core.entry(core).or_default().push(i);
    }

    let mut entries = BTreeMap::new();
    for (i, a) in ground.iter().enumerate() {
        let image = code.apply_local(a)?;
        let core = image.restrict(0, n as i64).letters().to_vec();
        if let Some(candidates) = by_core.get(&core) {
            if candidates.len() == 1 {
                entries.insert(i, candidates[0]);
            }
        }
    }
    Ok(PartialMapTable {
        code_id: code.id().to_string(),
        n,
        margins,
        ground,
        entries,
    })
}

/// The exact surplus `ε = N(F̃)/N(F) − 1`.
pub fn window_surplus(spec: &SubshiftSpec, n: usize, margins: Margin) -> Result<BigRational> {
    let inner = language_count(spec, n)?;
    let outer = language_count(spec, n + margins.total())?;
    if inner == num_traits::Zero::zero() {
        return Err(Error::EmptySubshift);
    }
    Ok(BigRational::new(BigInt::from(outer), BigInt::from(inner)) - BigRational::one())
}

fn codes_agree(
    spec: &SubshiftSpec,
    f: &BlockCode,
    g: &BlockCode,
    probe_len: usize,
) -> Result<bool> {
    let need = (f.left() + f.right()).max(g.left() + g.right()) + 1;
    let len = probe_len.max(need);
    for w in language_words(spec, len)?.iter() {
        let a = f.apply_local(w)?;
        let b = g.apply_local(w)?;
        let from = a.start().max(b.start());
        let to = a.end().min(b.end());
        if from >= to {
            return Ok(false); // no comparable overlap at this length
        }
        if a.restrict(from, to) != b.restrict(from, to) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Measure the four soficity conditions on the tested automorphism set.
///
/// `codes` must contain the identity. Condition (3) is checked for every
/// ordered pair whose composition agrees, as a map on admissible words up
/// to the enlarged window, with some element of the set.
pub fn check_sofic_conditions(
    spec: &SubshiftSpec,
    codes: &[CertifiedCode],
    n: usize,
    margins: Margin,
) -> Result<SoficReport> {
    let window_len = n + margins.total();
    let mut identity_idx = None;
    for (i, cert) in codes.iter().enumerate() {
        if cert.code().is_identity_on(spec, window_len)? {
            identity_idx = Some(i);
            break;
        }
    }
    let identity_idx = identity_idx.ok_or(Error::MissingIdentity)?;

    let eps = window_surplus(spec, n, margins)?;
    let floor = (BigRational::one() - &eps) / (BigRational::one() + &eps);

    let tables: Vec<PartialMapTable> = codes
        .iter()
        .map(|c| build_partial_map(spec, c, n, margins))
        .collect::<Result<_>>()?;
    let ground_size = tables[0].ground_size();
    let size = BigInt::from(ground_size);

    // condition (3): compositions present in the tested set
    let mut triples = Vec::new();
    let mut mismatch_by_code = vec![0usize; codes.len()];
    for (gi, g) in codes.iter().enumerate() {
        for (hi, h) in codes.iter().enumerate() {
            let composed = BlockCode::compose(g.code(), h.code())?;
            for (fi, f) in codes.iter().enumerate() {
                if !codes_agree(spec, &composed, f.code(), window_len)? {
                    continue;
                }
                let mut mismatches = 0;
                for a in 0..ground_size {
                    let Some(hb) = tables[hi].get(a) else { continue };
                    let Some(gb) = tables[gi].get(hb) else { continue };
                    let Some(fb) = tables[fi].get(a) else { continue };
                    if gb != fb {
                        mismatches += 1;
                    }
                }
                mismatch_by_code[fi] += mismatches;
                triples.push(CompositionTriple {
                    outer: g.id().to_string(),
                    inner: h.id().to_string(),
                    composed: f.id().to_string(),
                    mismatches,
                });
            }
        }
    }

    let mut code_reports = Vec::with_capacity(codes.len());
    for (i, cert) in codes.iter().enumerate() {
        let table = &tables[i];
        let defined = BigRational::new(BigInt::from(table.defined_count()), size.clone());
        let injective = BigRational::new(BigInt::from(table.image_count()), size.clone());

        let cond2 = if i == identity_idx {
            table.entries().iter().all(|(&a, &b)| a == b)
        } else {
            true
        };

        let cond4 = if i == identity_idx {
            FixedPointCheck::Pass
        } else {
            let code = cert.code();
            let separating = find_separating_window(spec, code, n, window_len)?;
            let usable = separating
                .map(|k| k + code.left() + code.right() <= n)
                .unwrap_or(false);
            if !usable {
                FixedPointCheck::Blocked { separating }
            } else {
                match table.entries().iter().find(|(&a, &b)| a == b) {
                    Some((&a, _)) => FixedPointCheck::Fail {
                        witness: table.ground()[a].clone(),
                    },
                    None => FixedPointCheck::Pass,
                }
            }
        };

        code_reports.push(SoficCodeReport {
            id: cert.id().to_string(),
            defined,
            injective,
            cond2,
            cond3_mismatches: mismatch_by_code[i],
            cond4,
        });
    }

    Ok(SoficReport {
        n,
        margins,
        ground_size,
        eps,
        floor,
        triples,
        codes: code_reports,
    })
}

/// Least `R ≤ cap` such that every admissible word of length `R` contains
/// every admissible word of length `n` as a factor; finite-scale evidence
/// of minimality, never a proof.
pub fn recurrence_check(spec: &SubshiftSpec, n: usize, cap: usize) -> Result<Option<usize>> {
    assert!(n >= 1, "window length must be at least 1");
    let targets = language_words(spec, n)?;
    for r in n..=cap {
        let hosts = language_words(spec, r)?;
        let all_contain = hosts.iter().all(|host| {
            targets.iter().all(|t| {
                host.letters()
                    .windows(n)
                    .any(|w| w == t.letters())
            })
        });
        if all_contain {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

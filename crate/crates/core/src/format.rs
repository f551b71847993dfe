//! Line-oriented file formats and report serialization.
//!
//! Shift spec files and block-code files are structured text with explicit
//! field names; reports are emitted as JSON or CSV with exact rationals
//! serialized as `{num, den}` integer pairs, never floats.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::alphabet::Alphabet;
use crate::block_code::BlockCode;
use crate::error::{Error, Result};
use crate::growth::{FlatWindowReport, GrowthTable};
use crate::measure::{DefectReport, FreqComparison};
use crate::sofic::{FixedPointCheck, SoficReport};
use crate::spec::SubshiftSpec;

/// Exact rational as an integer pair, the JSON wire form.
#[derive(Debug, Clone, Serialize)]
pub struct RatioJson {
    pub num: i64,
    pub den: i64,
}

impl RatioJson {
    pub fn from_rational(r: &BigRational) -> Result<Self> {
        let num = r.numer().to_i64().ok_or_else(|| {
            Error::Parse("rational numerator does not fit a 64-bit integer".into())
        })?;
        let den = r.denom().to_i64().ok_or_else(|| {
            Error::Parse("rational denominator does not fit a 64-bit integer".into())
        })?;
        Ok(RatioJson { num, den })
    }
}

/// Parse a decimal ("0.1") or fraction ("1/10") literal into an exact
/// rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid fraction {s:?}")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid fraction {s:?}")))?;
        if den == BigInt::from(0) {
            return Err(Error::Parse("zero denominator".into()));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let num: BigInt = digits
            .parse()
            .map_err(|_| Error::Parse(format!("invalid decimal {s:?}")))?;
        let den = BigInt::from(10u8).pow(frac.len() as u32);
        return Ok(BigRational::new(num, den));
    }
    let num: BigInt = s
        .parse()
        .map_err(|_| Error::Parse(format!("invalid number {s:?}")))?;
    Ok(BigRational::from(num))
}

/// Greedy longest-match tokenization of a word string over an alphabet.
pub fn tokenize_word(alphabet: &Alphabet, s: &str) -> Result<Vec<u8>> {
    let mut letters = Vec::new();
    let mut rest = s;
    'outer: while !rest.is_empty() {
        let mut best: Option<(usize, u8)> = None;
        for (i, tok) in alphabet.symbols().enumerate() {
            if rest.starts_with(tok) {
                match best {
                    Some((len, _)) if len >= tok.len() => {}
                    _ => best = Some((tok.len(), i as u8)),
                }
            }
        }
        if let Some((len, idx)) = best {
            letters.push(idx);
            rest = &rest[len..];
            continue 'outer;
        }
        return Err(Error::Parse(format!(
            "cannot tokenize {s:?} over the alphabet"
        )));
    }
    Ok(letters)
}

fn parse_lines(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Parse(format!("line {}: expected `key = value`", lineno + 1))
        })?;
        out.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(out)
}

fn find_field<'a>(fields: &'a [(String, String)], key: &str) -> Option<&'a str> {
    fields
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
}

/// Parse a shift spec file.
///
/// Fields: `type` (full|sft|substitution|explicit), `alphabet` (tokens
/// separated by spaces), plus `forbidden` (words), `rules` (`token:image`
/// pairs) or `words <n>` lines (one per length).
pub fn parse_shift_spec(text: &str) -> Result<SubshiftSpec> {
    let fields = parse_lines(text)?;
    let kind = find_field(&fields, "type")
        .ok_or_else(|| Error::Parse("missing `type` field".into()))?;
    let alphabet_tokens = find_field(&fields, "alphabet")
        .ok_or_else(|| Error::Parse("missing `alphabet` field".into()))?;
    let alphabet = Alphabet::new(alphabet_tokens.split_whitespace())?;
    match kind {
        "full" => Ok(SubshiftSpec::full(alphabet)),
        "sft" => {
            let forbidden_raw = find_field(&fields, "forbidden")
                .ok_or_else(|| Error::Parse("SFT spec needs a `forbidden` field".into()))?;
            let forbidden = forbidden_raw
                .split_whitespace()
                .map(|w| tokenize_word(&alphabet, w))
                .collect::<Result<Vec<_>>>()?;
            SubshiftSpec::sft(alphabet, forbidden)
        }
        "substitution" => {
            let rules_raw = find_field(&fields, "rules")
                .ok_or_else(|| Error::Parse("substitution spec needs a `rules` field".into()))?;
            let mut rules = vec![Vec::new(); alphabet.len()];
            let mut seen = vec![false; alphabet.len()];
            for pair in rules_raw.split_whitespace() {
                let (tok, image) = pair.split_once(':').ok_or_else(|| {
                    Error::Parse(format!("rule {pair:?} is not of the form `token:image`"))
                })?;
                let idx = alphabet
                    .index_of(tok)
                    .ok_or_else(|| Error::Parse(format!("unknown symbol {tok:?}")))?;
                rules[idx as usize] = tokenize_word(&alphabet, image)?;
                seen[idx as usize] = true;
            }
            if seen.iter().any(|&s| !s) {
                return Err(Error::Parse("substitution must cover every symbol".into()));
            }
            SubshiftSpec::substitution(alphabet, rules)
        }
        "explicit" => {
            let mut by_len: BTreeMap<usize, Vec<Vec<u8>>> = BTreeMap::new();
            for (key, value) in &fields {
                if let Some(len_str) = key.strip_prefix("words ") {
                    let len: usize = len_str
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad length in {key:?}")))?;
                    let list = value
                        .split_whitespace()
                        .map(|w| tokenize_word(&alphabet, w))
                        .collect::<Result<Vec<_>>>()?;
                    by_len.insert(len, list);
                }
            }
            let max_len = by_len.keys().max().copied().unwrap_or(0);
            if max_len == 0 {
                return Err(Error::Parse("explicit spec needs `words <n>` lines".into()));
            }
            let mut lists = Vec::with_capacity(max_len);
            for n in 1..=max_len {
                lists.push(by_len.remove(&n).ok_or_else(|| {
                    Error::Parse(format!("explicit spec is missing `words {n}`"))
                })?);
            }
            SubshiftSpec::explicit(alphabet, lists)
        }
        other => Err(Error::Parse(format!("unknown shift type {other:?}"))),
    }
}

/// Render a shift spec back to its file form.
pub fn render_shift_spec(spec: &SubshiftSpec) -> String {
    let alphabet = spec.alphabet();
    let tokens: Vec<&str> = alphabet.symbols().collect();
    let mut out = String::new();
    match spec {
        SubshiftSpec::Full { .. } => {
            out.push_str("type = full\n");
            out.push_str(&format!("alphabet = {}\n", tokens.join(" ")));
        }
        SubshiftSpec::Sft { forbidden, .. } => {
            out.push_str("type = sft\n");
            out.push_str(&format!("alphabet = {}\n", tokens.join(" ")));
            let words: Vec<String> = forbidden
                .iter()
                .map(|w| w.iter().map(|&c| alphabet.symbol(c)).collect())
                .collect();
            out.push_str(&format!("forbidden = {}\n", words.join(" ")));
        }
        SubshiftSpec::Substitution { rules, .. } => {
            out.push_str("type = substitution\n");
            out.push_str(&format!("alphabet = {}\n", tokens.join(" ")));
            let pairs: Vec<String> = rules
                .iter()
                .enumerate()
                .map(|(a, image)| {
                    let img: String = image.iter().map(|&c| alphabet.symbol(c)).collect();
                    format!("{}:{img}", alphabet.symbol(a as u8))
                })
                .collect();
            out.push_str(&format!("rules = {}\n", pairs.join(" ")));
        }
        SubshiftSpec::Explicit { words, .. } => {
            out.push_str("type = explicit\n");
            out.push_str(&format!("alphabet = {}\n", tokens.join(" ")));
            for (i, list) in words.iter().enumerate() {
                let rendered: Vec<String> = list
                    .iter()
                    .map(|w| w.iter().map(|&c| alphabet.symbol(c)).collect())
                    .collect();
                out.push_str(&format!("words {} = {}\n", i + 1, rendered.join(" ")));
            }
        }
    }
    out
}

/// Parse a block-code file: `alphabet`, `l`, `r`, and `map` lines of the
/// form `window -> letter`. Completeness against a shift's admissible
/// windows is checked separately by `BlockCode::covers`.
pub fn parse_block_code(text: &str, id: &str) -> Result<BlockCode> {
    let mut alphabet = None;
    let mut left = None;
    let mut right = None;
    let mut maps: Vec<(String, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("map ") {
            let (window, letter) = rest.split_once("->").ok_or_else(|| {
                Error::Parse(format!("line {}: expected `map window -> letter`", lineno + 1))
            })?;
            maps.push((window.trim().to_string(), letter.trim().to_string()));
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Parse(format!("line {}: expected `key = value`", lineno + 1))
        })?;
        match key.trim() {
            "alphabet" => alphabet = Some(Alphabet::new(value.split_whitespace())?),
            "l" => {
                left = Some(value.trim().parse::<usize>().map_err(|_| {
                    Error::Parse(format!("line {}: bad `l` value", lineno + 1))
                })?)
            }
            "r" => {
                right = Some(value.trim().parse::<usize>().map_err(|_| {
                    Error::Parse(format!("line {}: bad `r` value", lineno + 1))
                })?)
            }
            other => return Err(Error::Parse(format!("unknown field {other:?}"))),
        }
    }
    let alphabet = alphabet.ok_or_else(|| Error::Parse("missing `alphabet` field".into()))?;
    let left = left.ok_or_else(|| Error::Parse("missing `l` field".into()))?;
    let right = right.ok_or_else(|| Error::Parse("missing `r` field".into()))?;
    let mut rule = BTreeMap::new();
    for (window, letter) in maps {
        let w = tokenize_word(&alphabet, &window)?;
        let c = alphabet
            .index_of(&letter)
            .ok_or_else(|| Error::Parse(format!("unknown output symbol {letter:?}")))?;
        rule.insert(w, c);
    }
    if rule.is_empty() {
        return Err(Error::Parse("block-code file has no `map` lines".into()));
    }
    BlockCode::new(id, alphabet, left, right, rule)
}

pub fn render_block_code(code: &BlockCode) -> String {
    let alphabet = code.alphabet();
    let tokens: Vec<&str> = alphabet.symbols().collect();
    let mut out = String::new();
    out.push_str(&format!("alphabet = {}\n", tokens.join(" ")));
    out.push_str(&format!("l = {}\n", code.left()));
    out.push_str(&format!("r = {}\n", code.right()));
    for (window, &letter) in code.rule() {
        let w: String = window.iter().map(|&c| alphabet.symbol(c)).collect();
        out.push_str(&format!("map {w} -> {}\n", alphabet.symbol(letter)));
    }
    out
}

// --- report serialization -------------------------------------------------

#[derive(Serialize)]
struct DefectEntryJson {
    code_id: String,
    eps: RatioJson,
    bound: RatioJson,
    tv: RatioJson,
    pass: bool,
}

#[derive(Serialize)]
struct DefectReportJson {
    shift: String,
    n: usize,
    m: usize,
    entries: Vec<DefectEntryJson>,
}

pub fn defect_report_json(shift: &str, report: &DefectReport) -> Result<String> {
    let entries = report
        .entries
        .iter()
        .map(|e| {
            Ok(DefectEntryJson {
                code_id: e.code_id.clone(),
                eps: RatioJson::from_rational(&e.eps)?,
                bound: RatioJson::from_rational(&e.bound)?,
                tv: RatioJson::from_rational(&e.tv)?,
                pass: e.pass,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let doc = DefectReportJson {
        shift: shift.to_string(),
        n: report.n,
        m: report.m,
        entries,
    };
    serde_json::to_string_pretty(&doc).map_err(|e| Error::Parse(e.to_string()))
}

pub fn defect_report_csv(report: &DefectReport) -> Result<String> {
    let mut out =
        String::from("code_id,eps_num,eps_den,bound_num,bound_den,tv_num,tv_den,pass\n");
    for e in &report.entries {
        let eps = RatioJson::from_rational(&e.eps)?;
        let bound = RatioJson::from_rational(&e.bound)?;
        let tv = RatioJson::from_rational(&e.tv)?;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            e.code_id, eps.num, eps.den, bound.num, bound.den, tv.num, tv.den, e.pass
        ));
    }
    Ok(out)
}

pub fn growth_table_csv(table: &GrowthTable) -> String {
    let mut out = String::from("r,N,L,L_over_r\n");
    for r in 1..=table.r_max {
        out.push_str(&format!(
            "{},{},{:.6},{:.6}\n",
            r,
            table.counts[r - 1],
            table.logs[r - 1],
            table.logs[r - 1] / r as f64
        ));
    }
    out
}

#[derive(Serialize)]
struct GrowthRowJson {
    r: usize,
    n_words: String,
    log: f64,
    log_over_r: f64,
}

pub fn growth_table_json(shift: &str, table: &GrowthTable) -> Result<String> {
    #[derive(Serialize)]
    struct Doc {
        shift: String,
        rows: Vec<GrowthRowJson>,
    }
    let rows = (1..=table.r_max)
        .map(|r| GrowthRowJson {
            r,
            n_words: table.counts[r - 1].to_string(),
            log: table.logs[r - 1],
            log_over_r: table.logs[r - 1] / r as f64,
        })
        .collect();
    serde_json::to_string_pretty(&Doc {
        shift: shift.to_string(),
        rows,
    })
    .map_err(|e| Error::Parse(e.to_string()))
}

pub fn flat_report_csv(report: &FlatWindowReport) -> Result<String> {
    let mut out = String::from("n,eps_num,eps_den\n");
    for (n, eps) in &report.hits {
        let r = RatioJson::from_rational(eps)?;
        out.push_str(&format!("{n},{},{}\n", r.num, r.den));
    }
    Ok(out)
}

pub fn flat_report_json(shift: &str, report: &FlatWindowReport) -> Result<String> {
    #[derive(Serialize)]
    struct HitJson {
        n: usize,
        eps: RatioJson,
    }
    #[derive(Serialize)]
    struct Doc {
        shift: String,
        margin: [usize; 2],
        exhausted: bool,
        hits: Vec<HitJson>,
    }
    let hits = report
        .hits
        .iter()
        .map(|(n, eps)| {
            Ok(HitJson {
                n: *n,
                eps: RatioJson::from_rational(eps)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    serde_json::to_string_pretty(&Doc {
        shift: shift.to_string(),
        margin: [report.margin.left, report.margin.right],
        exhausted: report.exhausted,
        hits,
    })
    .map_err(|e| Error::Parse(e.to_string()))
}

pub fn sofic_report_json(shift: &str, report: &SoficReport) -> Result<String> {
    #[derive(Serialize)]
    struct CodeJson {
        id: String,
        defined: RatioJson,
        injective: RatioJson,
        cond2: bool,
        cond3_mismatches: usize,
        cond4: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        cond4_witness: Option<String>,
    }
    #[derive(Serialize)]
    struct TripleJson {
        outer: String,
        inner: String,
        composed: String,
        mismatches: usize,
    }
    #[derive(Serialize)]
    struct Doc {
        shift: String,
        n: usize,
        margins: [usize; 2],
        ground_size: usize,
        eps: RatioJson,
        floor: RatioJson,
        codes: Vec<CodeJson>,
        triples: Vec<TripleJson>,
    }
    let codes = report
        .codes
        .iter()
        .map(|c| {
            let (cond4, witness) = match &c.cond4 {
                FixedPointCheck::Pass => ("pass".to_string(), None),
                FixedPointCheck::Fail { witness } => {
                    ("fail".to_string(), Some(format!("{witness:?}")))
                }
                FixedPointCheck::Blocked { separating } => (
                    "blocked".to_string(),
                    separating.map(|k| format!("separating_window={k}")),
                ),
            };
            Ok(CodeJson {
                id: c.id.clone(),
                defined: RatioJson::from_rational(&c.defined)?,
                injective: RatioJson::from_rational(&c.injective)?,
                cond2: c.cond2,
                cond3_mismatches: c.cond3_mismatches,
                cond4,
                cond4_witness: witness,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let triples = report
        .triples
        .iter()
        .map(|t| TripleJson {
            outer: t.outer.clone(),
            inner: t.inner.clone(),
            composed: t.composed.clone(),
            mismatches: t.mismatches,
        })
        .collect();
    serde_json::to_string_pretty(&Doc {
        shift: shift.to_string(),
        n: report.n,
        margins: [report.margins.left, report.margins.right],
        ground_size: report.ground_size,
        eps: RatioJson::from_rational(&report.eps)?,
        floor: RatioJson::from_rational(&report.floor)?,
        codes,
        triples,
    })
    .map_err(|e| Error::Parse(e.to_string()))
}

pub fn freq_comparison_csv(cmp: &FreqComparison) -> Result<String> {
    let mut out = String::from("n,tv_num,tv_den\n");
    for (n, tv) in &cmp.rows {
        let r = RatioJson::from_rational(tv)?;
        out.push_str(&format!("{n},{},{}\n", r.num, r.den));
    }
    Ok(out)
}

pub fn freq_comparison_json(shift: &str, cmp: &FreqComparison) -> Result<String> {
    #[derive(Serialize)]
    struct RowJson {
        n: usize,
        tv: RatioJson,
    }
    #[derive(Serialize)]
    struct Doc {
        shift: String,
        m: usize,
        rows: Vec<RowJson>,
    }
    let rows = cmp
        .rows
        .iter()
        .map(|(n, tv)| {
            Ok(RowJson {
                n: *n,
                tv: RatioJson::from_rational(tv)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    serde_json::to_string_pretty(&Doc {
        shift: shift.to_string(),
        m: cmp.m,
        rows,
    })
    .map_err(|e| Error::Parse(e.to_string()))
}

//! Growth functions, entropy estimates, and flat-window search.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::language::language_count;
use crate::spec::SubshiftSpec;

/// A two-sided interval margin `(l, r)`: the window `[0, n)` enlarged to
/// `[-l, n + r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Margin {
    pub left: usize,
    pub right: usize,
}

impl Margin {
    pub fn new(left: usize, right: usize) -> Self {
        Margin { left, right }
    }

    pub fn total(&self) -> usize {
        self.left + self.right
    }
}

/// Exact word counts `N(1..=r_max)` with their natural logarithms.
#[derive(Debug, Clone)]
pub struct GrowthTable {
    pub r_max: usize,
    /// `counts[r - 1] = N(r)`.
    pub counts: Vec<BigUint>,
    /// `logs[r - 1] = ln N(r)`.
    pub logs: Vec<f64>,
}

/// Windows whose growth defect stays below a target.
#[derive(Debug, Clone)]
pub struct FlatWindowReport {
    pub margin: Margin,
    pub eps_target: BigRational,
    /// All `(n, ε_n)` with `ε_n ≤ eps_target`, in increasing `n`.
    pub hits: Vec<(usize, BigRational)>,
    /// Set when the cap was scanned without a single hit.
    pub exhausted: bool,
}

/// Entropy upper bound `min_{r ≤ r_max} ln N(r) / r` with its argmin.
#[derive(Debug, Clone, Copy)]
pub struct EntropyEstimate {
    pub value: f64,
    pub argmin: usize,
}

fn ln_big(x: &BigUint) -> f64 {
    // counts at desk scale convert exactly enough for display purposes
    let f = x.to_f64().expect("word count converts to f64");
    f.ln()
}

pub fn growth_function(spec: &SubshiftSpec, r_max: usize) -> Result<GrowthTable> {
    if r_max == 0 {
        return Err(Error::InvalidSpec("r_max must be at least 1".into()));
    }
    let mut counts = Vec::with_capacity(r_max);
    for r in 1..=r_max {
        counts.push(language_count(spec, r)?);
    }
    let logs = counts.iter().map(ln_big).collect();
    Ok(GrowthTable { r_max, counts, logs })
}

pub fn entropy_estimate(spec: &SubshiftSpec, r_max: usize) -> Result<EntropyEstimate> {
    let table = growth_function(spec, r_max)?;
    if table.counts.iter().any(Zero::is_zero) {
        return Err(Error::EmptySubshift);
    }
    let mut best = f64::INFINITY;
    let mut argmin = 1;
    for r in 1..=r_max {
        let v = table.logs[r - 1] / r as f64;
        if v < best {
            best = v;
            argmin = r;
        }
    }
    Ok(EntropyEstimate { value: best, argmin })
}

/// The defect `ε_n = 1 − N(n) / N(n + l + r)`, exact.
pub fn window_defect(spec: &SubshiftSpec, n: usize, margin: Margin) -> Result<BigRational> {
    let inner = language_count(spec, n)?;
    let outer = language_count(spec, n + margin.total())?;
    if outer.is_zero() {
        return Err(Error::EmptySubshift);
    }
    let ratio = BigRational::new(BigInt::from(inner), BigInt::from(outer));
    Ok(BigRational::one() - ratio)
}

/// Exhaustive scan for windows with defect at most `eps_target`.
pub fn find_flat_windows(
    spec: &SubshiftSpec,
    margin: Margin,
    eps_target: &BigRational,
    n_cap: usize,
) -> Result<FlatWindowReport> {
    if eps_target <= &BigRational::zero() || eps_target >= &BigRational::one() {
        return Err(Error::InvalidSpec("ε target must lie in (0, 1)".into()));
    }
    if n_cap == 0 {
        return Err(Error::InvalidSpec("window cap must be at least 1".into()));
    }
    let mut hits = Vec::new();
    for n in 1..=n_cap {
        let eps = window_defect(spec, n, margin)?;
        if &eps <= eps_target {
            hits.push((n, eps));
        }
    }
    let exhausted = hits.is_empty();
    Ok(FlatWindowReport {
        margin,
        eps_target: eps_target.clone(),
        hits,
        exhausted,
    })
}

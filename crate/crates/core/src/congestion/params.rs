//! Resolution of the congestion triple `(n_c, p_c, max_c)`.
//!
//! The three values are tied by the expected conflict count
//! `E(n_c) = n · p_c · (1 + max_c)/2 · 1/2`; any two determine the third.

use std::fmt;

use crate::error::{Error, Result};

/// Partially specified congestion request.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CongestionSpec {
    pub n_c: Option<usize>,
    pub p_c: Option<f64>,
    pub max_c: Option<usize>,
}

/// Fully resolved congestion request.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedCongestion {
    pub n: usize,
    pub n_c: usize,
    pub p_c: f64,
    pub max_c: usize,
    pub warnings: Vec<CongestionWarning>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CongestionWarning {
    /// `max_c < 2·n_c/n`: the request cannot be met.
    BelowHardBound { max_c: usize, bound: f64 },
    /// `max_c < 4·n_c/n - 1`: even `p_c = 1` falls short on average.
    BelowRecommended { max_c: usize, bound: f64 },
    /// The derived probability exceeded 1 and was clamped.
    ProbabilityClamped { derived: f64 },
    /// The derived cap fell outside `[1, n-1]` and was clamped.
    CapClamped { derived: f64, used: usize },
    /// A fully specified triple disagrees with the expected-count relation.
    Inconsistent { expected: f64, n_c: usize },
}

impl fmt::Display for CongestionWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CongestionWarning::BelowHardBound { max_c, bound } => {
                write!(f, "max_c = {max_c} is below 2·n_c/n = {bound}; the requested conflicts exceed what the cap allows")
            }
            CongestionWarning::BelowRecommended { max_c, bound } => {
                write!(f, "max_c = {max_c} is below the recommended 4·n_c/n - 1 = {bound}")
            }
            CongestionWarning::ProbabilityClamped { derived } => {
                write!(f, "derived p_c = {derived} exceeds 1, clamped")
            }
            CongestionWarning::CapClamped { derived, used } => {
                write!(f, "derived max_c = {derived} clamped to {used}")
            }
            CongestionWarning::Inconsistent { expected, n_c } => {
                write!(f, "n_c = {n_c} differs from the expected count {expected} of the given p_c and max_c")
            }
        }
    }
}

pub const DEFAULT_PC: f64 = 0.5;

/// `E(n_c)` for a given triple.
pub fn expected_conflicts(n: usize, p_c: f64, max_c: usize) -> f64 {
    n as f64 * p_c * ((1.0 + max_c as f64) / 2.0) * 0.5
}

/// Closest integer, ties to even.
pub fn round_count(x: f64) -> usize {
    x.round_ties_even().max(0.0) as usize
}

/// Fills the missing members of the congestion triple.
///
/// With two values given the third follows from `E(n_c)`. With fewer, the
/// defaults `max_c = n - 1` and then `p_c = 0.5` are applied first.
pub fn resolve_congestion_params(n: usize, partial: CongestionSpec) -> Result<ResolvedCongestion> {
    if n < 2 {
        return Err(Error::param("n", "congestion control needs at least 2 aircraft"));
    }
    if let Some(p) = partial.p_c {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::param("p_c", format!("{p} is not a probability")));
        }
    }
    if let Some(m) = partial.max_c {
        if !(1..n).contains(&m) {
            return Err(Error::param("max_c", format!("{m} is outside [1, {}]", n - 1)));
        }
    }
    if let Some(nc) = partial.n_c {
        let pairs = n * (n - 1) / 2;
        if nc > pairs {
            return Err(Error::Infeasible(format!("n_c = {nc} exceeds the {pairs} available pairs")));
        }
    }

    let mut warnings = Vec::new();
    let filled = match (partial.n_c, partial.p_c, partial.max_c) {
        (Some(n_c), Some(p_c), Some(max_c)) => {
            let expected = expected_conflicts(n, p_c, max_c);
            if round_count(expected) != n_c {
                warnings.push(CongestionWarning::Inconsistent { expected, n_c });
            }
            (n_c, p_c, max_c)
        }
        (Some(n_c), None, Some(max_c)) => (n_c, derive_probability(n, n_c, max_c, &mut warnings), max_c),
        (Some(n_c), Some(p_c), None) => (n_c, p_c, derive_cap(n, n_c, p_c, &mut warnings)?),
        (None, Some(p_c), Some(max_c)) => (round_count(expected_conflicts(n, p_c, max_c)), p_c, max_c),
        (Some(n_c), None, None) => {
            let max_c = n - 1;
            (n_c, derive_probability(n, n_c, max_c, &mut warnings), max_c)
        }
        (None, p_c, max_c) => {
            let max_c = max_c.unwrap_or(n - 1);
            let p_c = p_c.unwrap_or(DEFAULT_PC);
            (round_count(expected_conflicts(n, p_c, max_c)), p_c, max_c)
        }
    };
    let (n_c, p_c, max_c) = filled;

    let hard = n as f64 * max_c as f64 / 2.0;
    if n_c as f64 > hard {
        return Err(Error::Infeasible(format!(
            "n_c = {n_c} exceeds n·max_c/2 = {hard} for n = {n}, max_c = {max_c}"
        )));
    }
    let nf = n as f64;
    let ncf = n_c as f64;
    if (max_c as f64) < 2.0 * ncf / nf {
        warnings.push(CongestionWarning::BelowHardBound { max_c, bound: 2.0 * ncf / nf });
    }
    if (max_c as f64) < 4.0 * ncf / nf - 1.0 {
        warnings.push(CongestionWarning::BelowRecommended { max_c, bound: 4.0 * ncf / nf - 1.0 });
    }
    for w in &warnings {
        log::warn!("{w}");
    }
    Ok(ResolvedCongestion { n, n_c, p_c, max_c, warnings })
}

fn derive_probability(n: usize, n_c: usize, max_c: usize, warnings: &mut Vec<CongestionWarning>) -> f64 {
    let p = (4 * n_c) as f64 / (n * (1 + max_c)) as f64;
    if p > 1.0 {
        warnings.push(CongestionWarning::ProbabilityClamped { derived: p });
        1.0
    } else {
        p
    }
}

fn derive_cap(n: usize, n_c: usize, p_c: f64, warnings: &mut Vec<CongestionWarning>) -> Result<usize> {
    if n_c == 0 {
        return Ok(n - 1);
    }
    if p_c == 0.0 {
        return Err(Error::Infeasible(format!("p_c = 0 cannot produce n_c = {n_c} conflicts")));
    }
    let derived = 4.0 * n_c as f64 / (n as f64 * p_c) - 1.0;
    let rounded = derived.round_ties_even();
    let used = rounded.clamp(1.0, (n - 1) as f64) as usize;
    if rounded < 1.0 || rounded > (n - 1) as f64 {
        warnings.push(CongestionWarning::CapClamped { derived, used });
    }
    Ok(used)
}

//! Exact count of non-degenerate Lucas sequences whose dominant root satisfies
//! `|α| ≤ t`, for rational `t`.

use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lucas::{classify, Kind, LucasParams};
use crate::numutil::{exact_sqrt_u128, isqrt_u128};

/// Largest threshold accepted by [`census`].
pub const CENSUS_MAX_T: i128 = 10_000;

/// Largest reduced denominator accepted by [`census`]; keeps every
/// intermediate product inside `i128`.
pub const CENSUS_MAX_DENOM: i128 = 1_000_000;

/// Rows of the non-real scan handled per parallel task.
const ROW_CHUNK: u64 = 1 << 16;

/// A positive rational threshold `t = p/q` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Threshold(Ratio<i128>);

impl Threshold {
    pub fn new(p: i128, q: i128) -> Result<Self> {
        if q == 0 {
            return Err(Error::BadThreshold(format!("{p}/{q}")));
        }
        Ok(Threshold(Ratio::new(p, q)))
    }

    pub fn integer(t: i64) -> Self {
        Threshold(Ratio::from_integer(t as i128))
    }

    pub fn p(&self) -> i128 {
        *self.0.numer()
    }

    pub fn q(&self) -> i128 {
        *self.0.denom()
    }

    pub fn as_ratio(&self) -> Ratio<i128> {
        self.0
    }
}

impl FromStr for Threshold {
    type Err = Error;

    /// Accepts integers, finite decimals (`2.5`) and fractions (`5/2`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadThreshold(s.to_string());
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let p: i128 = num.trim().parse().map_err(|_| bad())?;
            let q: i128 = den.trim().parse().map_err(|_| bad())?;
            return Threshold::new(p, q).map_err(|_| bad());
        }
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty()
            || !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
            || frac_part.len() > 18
        {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let mut p: i128 = if digits.is_empty() {
            0
        } else {
            digits.parse().map_err(|_| bad())?
        };
        if neg {
            p = -p;
        }
        let q = 10i128.pow(frac_part.len() as u32);
        Threshold::new(p, q)
    }
}

impl std::fmt::Display for Threshold {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.q() == 1 {
            write!(f, "{}", self.p())
        } else {
            write!(f, "{}/{}", self.p(), self.q())
        }
    }
}

/// Counts for `A > 0`, before doubling for `A < 0`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusBreakdown {
    pub non_real: u64,
    pub real_pos_b: u64,
    pub real_neg_b: u64,
}

impl CensusBreakdown {
    pub fn total(&self) -> u64 {
        self.non_real + self.real_pos_b + self.real_neg_b
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusResult {
    pub t: Threshold,
    pub exact_count: u64,
    /// `4t³ − 10t² − 29t`, unclamped.
    pub lower_formula: Ratio<i128>,
    /// `4t³ − t² + 7t`.
    pub upper_formula: Ratio<i128>,
    pub breakdown: CensusBreakdown,
}

impl CensusResult {
    pub fn within_bounds(&self) -> bool {
        let c = Ratio::from_integer(self.exact_count as i128);
        self.lower_formula <= c && c <= self.upper_formula
    }
}

/// `(4t³ − 10t² − 29t, 4t³ − t² + 7t)`, exact.
pub fn census_bounds(t: Threshold) -> (Ratio<i128>, Ratio<i128>) {
    let t = t.as_ratio();
    let t2 = t * t;
    let t3 = t2 * t;
    let four = Ratio::from_integer(4);
    (
        four * t3 - Ratio::from_integer(10) * t2 - Ratio::from_integer(29) * t,
        four * t3 - t2 + Ratio::from_integer(7) * t,
    )
}

fn check_threshold(t: Threshold) -> Result<()> {
    let r = t.as_ratio();
    if r < Ratio::from_integer(2) || r > Ratio::from_integer(CENSUS_MAX_T) {
        return Err(Error::out_of_range(
            "t",
            t,
            format!("need 2 ≤ t ≤ {CENSUS_MAX_T}"),
        ));
    }
    if t.q() > CENSUS_MAX_DENOM {
        return Err(Error::out_of_range(
            "t",
            t,
            format!("denominator exceeds {CENSUS_MAX_DENOM}"),
        ));
    }
    Ok(())
}

/// Exact census by row-wise counting over the three root configurations.
///
/// With `t = p/q` and `A > 0`:
/// * non-real: `B q² ≤ p²` and `1 ≤ A ≤ ⌊√(4B − 1)⌋`;
/// * real, `B > 0`: `Aq ≤ 2p` and `p(Aq − p)/q² ≤ B ≤ ⌊(A² − 1)/4⌋`;
/// * real, `B < 0`: `Aq < p` and `1 ≤ −B ≤ p(p − Aq)/q²`.
///
/// The real bounds are `(A + √(A² − 4B))/2 ≤ t` squared under the guard
/// `2t ≥ A`. Degenerate pairs are all non-real and are removed row by row.
pub fn census(t: Threshold) -> Result<CensusResult> {
    check_threshold(t)?;
    let (p, q) = (t.p(), t.q());
    let q2 = q * q;

    let b_max = Integer::div_floor(&(p * p), &q2) as u64;
    let non_real: u64 = chunks(1, b_max)
        .into_par_iter()
        .map(|(lo, hi)| (lo..=hi).map(non_real_row).sum::<u64>())
        .sum();

    let a_max = Integer::div_floor(&(2 * p), &q);
    let real_pos_b: u64 = (1..=a_max)
        .map(|a| {
            let lo = Integer::div_ceil(&(p * (a * q - p)), &q2).max(1);
            let hi = Integer::div_floor(&(a * a - 1), &4);
            (hi - lo + 1).max(0) as u64
        })
        .sum();

    let real_neg_b: u64 = (1..)
        .take_while(|&a: &i128| a * q < p)
        .map(|a| Integer::div_floor(&(p * (p - a * q)), &q2) as u64)
        .sum();

    let breakdown = CensusBreakdown {
        non_real,
        real_pos_b,
        real_neg_b,
    };
    let (lower_formula, upper_formula) = census_bounds(t);
    Ok(CensusResult {
        t,
        exact_count: 2 * breakdown.total(),
        lower_formula,
        upper_formula,
        breakdown,
    })
}

fn chunks(lo: u64, hi: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut s = lo;
    while s <= hi {
        let e = (s + ROW_CHUNK - 1).min(hi);
        out.push((s, e));
        s = e + 1;
    }
    out
}

/// Non-degenerate `A ≥ 1` with `A² < 4B`.
fn non_real_row(b: u64) -> u64 {
    let b128 = b as u128;
    let mut count = isqrt_u128(4 * b128 - 1) as u64;
    for k in 1..=3u128 {
        if let Some(a) = exact_sqrt_u128(k * b128) {
            let kind = classify(LucasParams::new(a as i64, b as i64)).kind;
            debug_assert_eq!(kind, Kind::Degenerate);
            if kind == Kind::Degenerate {
                count -= 1;
            }
        }
    }
    count
}

/// `true` when `|α| ≤ t` for `(A, B)`, decided exactly.
pub fn root_within(params: LucasParams, t: Threshold) -> bool {
    let (p, q) = (t.p(), t.q());
    let a = params.a.unsigned_abs() as i128;
    let b = params.b as i128;
    let d = a * a - 4 * b;
    if d < 0 {
        b * q * q <= p * p
    } else {
        // √d ≤ 2t − |A|, i.e. 2p − |A|q ≥ 0 and d·q² ≤ (2p − |A|q)².
        let s = 2 * p - a * q;
        s >= 0 && d * q * q <= s * s
    }
}

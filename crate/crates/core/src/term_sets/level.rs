//! Exact scan of a single index `n ≥ 5`.
//!
//! Pairs split into a box `1 ≤ A < 9N^{1/(n−1)}`, `|B| < 17N^{2/(n−1)}` that is
//! evaluated in full, and a tail `B ≥ 17N^{2/(n−1)}` where every solution sits
//! next to a real root `2√B·cos(kπ/n)` of `Fₙ(·, B)`. Pairs with larger `A` or
//! more negative `B` have `|Fₙ| > N`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::ScanStats;
use crate::error::{Error, Result};
use crate::lucas::LucasParams;
use crate::numutil::integer_kth_root_big;
use crate::poly::{eval_coeffs_i128, fib_poly, FibPolynomial};

/// Value → lexicographically smallest `(A, B)` attaining it.
pub(crate) type HitMap = BTreeMap<u64, (i64, i64)>;

/// Largest number of tail rows scanned before the stopping rule may apply.
pub const TAIL_ROW_BUDGET: u64 = 400_000_000;

/// Tail rows handed to one parallel task.
const ROW_CHUNK: i64 = 4096;

pub(crate) struct Evaluator {
    n: u32,
    big_n: u64,
    coeffs: Option<Vec<i128>>,
    poly: FibPolynomial,
}

impl Evaluator {
    pub(crate) fn new(n: u32, big_n: u64) -> Self {
        let poly = fib_poly(n);
        Evaluator {
            n,
            big_n,
            coeffs: poly.coefficients_i128(),
            poly,
        }
    }

    /// `|Fₙ(a, b)|` when it is at most `N`.
    pub(crate) fn within(&self, a: i64, b: i64) -> Option<u64> {
        if let Some(c) = &self.coeffs {
            if let Some(v) = eval_coeffs_i128(c, self.n, a as i128, b as i128) {
                let m = v.unsigned_abs();
                return (m <= self.big_n as u128).then_some(m as u64);
            }
        }
        self.poly
            .eval(a, b)
            .magnitude()
            .to_u64()
            .filter(|&m| m <= self.big_n)
    }
}

fn record(map: &mut HitMap, x: u64, a: i64, b: i64) {
    if x == 0 || !LucasParams::new(a, b).is_admissible() {
        return;
    }
    map.entry(x)
        .and_modify(|w| *w = (*w).min((a, b)))
        .or_insert((a, b));
}

pub(crate) fn merge(mut into: HitMap, from: HitMap) -> HitMap {
    let (mut big, small) = if into.len() >= from.len() {
        (std::mem::take(&mut into), from)
    } else {
        (from, std::mem::take(&mut into))
    };
    for (x, w) in small {
        big.entry(x).and_modify(|v| *v = (*v).min(w)).or_insert(w);
    }
    big
}

/// `⌊(c^{n−1}·N^e − 1)^{1/(n−1)}⌋`, the largest integer strictly below
/// `c·N^{e/(n−1)}`.
pub(crate) fn strict_root_bound(c: u32, e: u32, n: u32, big_n: u64) -> u64 {
    let k = n - 1;
    let x = BigUint::from(c).pow(k) * BigUint::from(big_n).pow(e) - 1u32;
    integer_kth_root_big(&x, k)
        .to_u64()
        .expect("region bound fits in u64")
}

/// `⌊c·N^{e/(n−1)}⌋`.
pub(crate) fn floor_root_bound(c: u32, e: u32, n: u32, big_n: u64) -> u64 {
    let k = n - 1;
    let x = BigUint::from(c).pow(k) * BigUint::from(big_n).pow(e);
    integer_kth_root_big(&x, k)
        .to_u64()
        .expect("region bound fits in u64")
}

/// `ln c₃(n)` with `c₃ = 2^{9−2n}·e^{2n}·n²`.
pub fn ln_c3(n: u32) -> f64 {
    let nf = n as f64;
    (9.0 - 2.0 * nf) * std::f64::consts::LN_2 + 2.0 * nf + 2.0 * nf.ln()
}

/// First `B` at which the tail half-width `c₃·N·B^{1−n/2}` drops below ½,
/// rounded up by one for safety.
pub fn tail_half_width_start(n: u32, big_n: u64) -> u64 {
    let ln_target = (2.0f64).ln() + ln_c3(n) + (big_n as f64).ln();
    let b = (ln_target / (n as f64 / 2.0 - 1.0)).exp();
    if b >= 1e18 {
        return u64::MAX / 4;
    }
    b.floor() as u64 + 2
}

/// Box limits `(A₁, B₁)`: largest `A < 9N^{1/(n−1)}` and `|B| < 17N^{2/(n−1)}`.
pub(crate) fn box_limits(n: u32, big_n: u64) -> (u64, u64) {
    (
        strict_root_bound(9, 1, n, big_n),
        strict_root_bound(17, 2, n, big_n),
    )
}

pub(crate) struct LevelScan {
    pub hits: HitMap,
    pub stats: ScanStats,
}

/// Checks the work budget without scanning.
pub(crate) fn check_budget(n: u32, big_n: u64) -> Result<()> {
    let (_, b1) = box_limits(n, big_n);
    let b_half = tail_half_width_start(n, big_n);
    if b_half.saturating_sub(b1) > TAIL_ROW_BUDGET {
        return Err(Error::out_of_range(
            "N",
            big_n,
            format!("tail scan for n = {n} would exceed {TAIL_ROW_BUDGET} rows"),
        ));
    }
    Ok(())
}

pub(crate) fn scan_level(n: u32, big_n: u64) -> Result<LevelScan> {
    check_budget(n, big_n)?;
    let ev = Evaluator::new(n, big_n);
    let (a1, b1) = box_limits(n, big_n);
    let (a1, b1) = (a1 as i64, b1 as i64);

    let (box_hits, box_evals) = (1..=a1)
        .into_par_iter()
        .map(|a| {
            let mut local = HitMap::new();
            for b in -b1..=b1 {
                if let Some(x) = ev.within(a, b) {
                    record(&mut local, x, a, b);
                }
            }
            (local, (2 * b1 + 1) as u64)
        })
        .reduce(|| (HitMap::new(), 0), |x, y| (merge(x.0, y.0), x.1 + y.1));

    let cosines = root_cosines(n);
    let b_half = (tail_half_width_start(n, big_n) as i64).max(b1 + 1);

    let chunks: Vec<i64> = (b1 + 1..b_half).step_by(ROW_CHUNK as usize).collect();
    let (tail_hits, tail_evals) = chunks
        .into_par_iter()
        .map(|start| {
            let mut local = HitMap::new();
            let mut evals = 0;
            for b in start..(start + ROW_CHUNK).min(b_half) {
                evals += tail_row(&ev, &cosines, b, &mut local).0;
            }
            (local, evals)
        })
        .reduce(|| (HitMap::new(), 0), |x, y| (merge(x.0, y.0), x.1 + y.1));

    let mut hits = merge(box_hits, tail_hits);
    let mut evaluations = box_evals + tail_evals;
    // Past b_half each root admits at most its nearest integers; stop at the
    // first row where no candidate reaches |Fₙ| ≤ N.
    let mut b = b_half;
    loop {
        let (evals, touched) = tail_row(&ev, &cosines, b, &mut hits);
        evaluations += evals;
        if !touched {
            break;
        }
        b += 1;
    }

    Ok(LevelScan {
        hits,
        stats: ScanStats {
            a_limit: a1 as u64,
            b_limit: b1 as u64,
            tail_b_half: b_half as u64,
            tail_b_stop: b as u64,
            evaluations,
        },
    })
}

/// `2cos(kπ/n)` for `k = n−1, …, 1`, ascending.
pub(crate) fn root_cosines(n: u32) -> Vec<f64> {
    (1..n)
        .rev()
        .map(|k| 2.0 * (k as f64 * std::f64::consts::PI / n as f64).cos())
        .collect()
}

/// Scans the integers `A ≥ 1` around each root of `Fₙ(·, B)`.
///
/// Between consecutive roots `|Fₙ|` has a single critical point, and outside
/// the extreme roots it is monotone, so `{|Fₙ| ≤ N}` is a union of intervals
/// each containing a root. The integers of the interval around `r` are found
/// by walking down from `⌊r⌋` and up from `⌈r⌉` until the first failure.
///
/// Returns the number of evaluations and whether any `|Fₙ| ≤ N` was seen.
fn tail_row(ev: &Evaluator, cosines: &[f64], b: i64, out: &mut HitMap) -> (u64, bool) {
    let s = (b as f64).sqrt();
    let mut evals = 0;
    let mut touched = false;
    let mut visit = |a: i64, evals: &mut u64| -> bool {
        *evals += 1;
        match ev.within(a, b) {
            Some(x) => {
                touched = true;
                record(out, x, a, b);
                true
            }
            None => false,
        }
    };
    for c in cosines {
        let r = c * s;
        let (lo, hi) = (r.floor() as i64, r.ceil() as i64);
        let mut a = lo;
        while a >= 1 && visit(a, &mut evals) {
            a -= 1;
        }
        if hi != lo {
            let mut a = hi.max(1);
            while visit(a, &mut evals) {
                a += 1;
            }
        } else {
            let mut a = (hi + 1).max(1);
            while visit(a, &mut evals) {
                a += 1;
            }
        }
    }
    (evals, touched)
}

/// Outcome of scanning the regions that must contain no solutions.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CaseEmptiness {
    pub n: u32,
    pub big_n: u64,
    /// Pairs with `A ≥ 9N^{1/(n−1)}` up to `36N^{1/(n−1)}` and `|B| < 17N^{2/(n−1)}`.
    pub large_a_checked: u64,
    pub large_a_hits: Vec<(i64, i64)>,
    /// Pairs with `−68N^{2/(n−1)} ≤ B ≤ −17N^{2/(n−1)}` and `1 ≤ A ≤ 36N^{1/(n−1)}`.
    pub negative_b_checked: u64,
    pub negative_b_hits: Vec<(i64, i64)>,
}

impl CaseEmptiness {
    pub fn is_empty(&self) -> bool {
        self.large_a_hits.is_empty() && self.negative_b_hits.is_empty()
    }
}

/// Exhaustively scans the large-`A` and very-negative-`B` regions, four times
/// past their inner edges, for admissible pairs with `|Uₙ| ≤ N`.
pub fn case_emptiness(n: u32, big_n: u64) -> Result<CaseEmptiness> {
    if !(5..=64).contains(&n) {
        return Err(Error::out_of_range("n", n, "must lie in 5..=64"));
    }
    if big_n == 0 || big_n > 1_000_000 {
        return Err(Error::out_of_range("N", big_n, "must lie in 1..=1000000"));
    }
    let ev = Evaluator::new(n, big_n);
    let (a1, b1) = box_limits(n, big_n);
    let (a1, b1) = (a1 as i64, b1 as i64);
    let a_outer = floor_root_bound(36, 1, n, big_n) as i64;
    let b_outer = floor_root_bound(68, 2, n, big_n) as i64;

    let scan = |a_range: std::ops::RangeInclusive<i64>, b_range: std::ops::RangeInclusive<i64>| {
        a_range
            .into_par_iter()
            .map(|a| {
                let mut hits = Vec::new();
                for b in b_range.clone() {
                    if let Some(x) = ev.within(a, b) {
                        if x != 0 && LucasParams::new(a, b).is_admissible() {
                            hits.push((a, b));
                        }
                    }
                }
                (hits, b_range.clone().count() as u64)
            })
            .reduce(
                || (Vec::new(), 0),
                |mut x, y| {
                    x.0.extend(y.0);
                    (x.0, x.1 + y.1)
                },
            )
    };
    let (mut large_a_hits, large_a_checked) = scan(a1 + 1..=a_outer, -b1..=b1);
    let (mut negative_b_hits, negative_b_checked) = scan(1..=a_outer, -b_outer..=-(b1 + 1));
    large_a_hits.sort_unstable();
    negative_b_hits.sort_unstable();
    Ok(CaseEmptiness {
        n,
        big_n,
        large_a_checked,
        large_a_hits,
        negative_b_checked,
        negative_b_hits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_limits_are_strict() {
        // 9·16^{1/4} = 18 exactly, so A₁ = 17; 17·16^{2/4} = 68, so B₁ = 67.
        assert_eq!(box_limits(5, 16), (17, 67));
        assert_eq!(box_limits(5, 17), (18, 70));
        assert_eq!(floor_root_bound(36, 1, 5, 16), 72);
    }

    #[test]
    fn half_width_start_matches_definition() {
        for (n, big_n) in [(5u32, 100u64), (6, 1000), (7, 500), (9, 10_000)] {
            let b = tail_half_width_start(n, big_n) as f64;
            let width = |b: f64| (ln_c3(n) + (big_n as f64).ln() + (1.0 - n as f64 / 2.0) * b.ln()).exp();
            assert!(width(b) < 0.5);
            assert!(width(b - 3.0) >= 0.5);
        }
    }

    #[test]
    fn tail_hits_lie_within_the_root_window() {
        for (n, big_n) in [(5u32, 2000u64), (6, 2000), (7, 5000)] {
            let scan = scan_level(n, big_n).unwrap();
            let b1 = scan.stats.b_limit as i64;
            let cos = root_cosines(n);
            for (&x, &(a, b)) in &scan.hits {
                if b <= b1 {
                    continue;
                }
                let s = (b as f64).sqrt();
                let dist = cos
                    .iter()
                    .map(|c| (a as f64 - c * s).abs())
                    .fold(f64::INFINITY, f64::min);
                let width = (ln_c3(n) + (big_n as f64).ln() + (1.0 - n as f64 / 2.0) * (b as f64).ln()).exp();
                assert!(dist <= width.max(1.0) + 1e-9, "n={n} x={x} ({a},{b})");
            }
        }
    }

    #[test]
    fn small_regions_are_empty() {
        for n in 5..=7 {
            let c = case_emptiness(n, 1000).unwrap();
            assert!(c.is_empty(), "{c:?}");
            assert!(c.large_a_checked > 0 && c.negative_b_checked > 0);
        }
    }
}

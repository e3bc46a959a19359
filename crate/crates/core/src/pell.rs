//! Solutions of `x² − 5y² = t`, their families under the unit `9 + 4√5`, and
//! counts of small solutions across many `t`.
//!
//! The index-5 term is tied to this equation by
//! `4F₅(A, B) = (2B − 3A²)² − 5A⁴`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numutil::{exact_sqrt_big, exact_sqrt_u128, isqrt_u128};

/// Largest `|t|` accepted by [`pell_solve_box`].
pub const PELL_MAX_T: i64 = 100_000_000;
/// Largest `y_max` accepted by [`pell_solve_box`].
pub const PELL_MAX_Y: u64 = 1_000_000;
/// Largest `T` accepted by [`lem5_count_check`].
pub const COUNT_MAX_T: u64 = 10_000_000;

/// A representative `u + v√5` of one family of solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PellSeed {
    pub u: i64,
    pub v: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PellSolutionList {
    pub t: i64,
    pub box_y: u64,
    /// Positive solutions `(x, y)` with `y ≤ box_y`, by increasing `y`.
    pub solutions: Vec<(u64, u64)>,
    /// One seed per family, with `0 < u < √((22 + 9√5)|t|/8)`.
    pub families: Vec<PellSeed>,
}

/// All positive solutions with `1 ≤ y ≤ y_max`, plus the family seeds.
pub fn pell_solve_box(t: i64, y_max: u64) -> Result<PellSolutionList> {
    if t == 0 {
        return Err(Error::out_of_range("t", t, "must be non-zero"));
    }
    if t.unsigned_abs() > PELL_MAX_T as u64 {
        return Err(Error::out_of_range("t", t, format!("|t| must be at most {PELL_MAX_T}")));
    }
    if y_max == 0 || y_max > PELL_MAX_Y {
        return Err(Error::out_of_range("y_max", y_max, format!("must lie in 1..={PELL_MAX_Y}")));
    }
    let solutions = (1..=y_max)
        .filter_map(|y| {
            let rhs = 5 * (y as i128) * (y as i128) + t as i128;
            if rhs <= 0 {
                return None;
            }
            exact_sqrt_u128(rhs as u128).map(|x| (x as u64, y))
        })
        .collect();
    Ok(PellSolutionList {
        t,
        box_y: y_max,
        solutions,
        families: seeds(t),
    })
}

/// Seeds `u + v√5` of norm `t` with `0 < u < √((22 + 9√5)|t|/8)`, one per
/// family.
pub fn seeds(t: i64) -> Vec<PellSeed> {
    // u² < (22 + 9√5)|t|/8 ⟺ 8u² − 22|t| < 9√5·|t| ⟺ lhs < 0 or lhs² < 405t².
    let at = t.unsigned_abs() as i128;
    let inside = |u: i128| {
        let lhs = 8 * u * u - 22 * at;
        lhs < 0 || lhs * lhs < 405 * at * at
    };
    let mut out: Vec<PellSeed> = Vec::new();
    let mut u: i128 = 1;
    while inside(u) {
        let d = u * u - t as i128;
        if d >= 0 && d % 5 == 0 {
            if let Some(v) = exact_sqrt_u128((d / 5) as u128) {
                let v = v as i64;
                for v in if v == 0 { vec![0] } else { vec![v, -v] } {
                    let cand = PellSeed { u: u as i64, v };
                    if !out.iter().any(|s| same_family(*s, cand, t)) {
                        out.push(cand);
                    }
                }
            }
        }
        u += 1;
    }
    out
}

/// Whether `s₁ / s₂` is a power of `9 + 4√5`, i.e. a norm-one unit with
/// positive rational part.
fn same_family(s1: PellSeed, s2: PellSeed, t: i64) -> bool {
    let (u1, v1, u2, v2) = (s1.u as i128, s1.v as i128, s2.u as i128, s2.v as i128);
    let t = t as i128;
    // s₁·conj(s₂) = (u₁u₂ − 5v₁v₂) + (v₁u₂ − u₁v₂)√5, and s₂·conj(s₂) = t.
    let a = u1 * u2 - 5 * v1 * v2;
    let b = v1 * u2 - u1 * v2;
    a % t == 0 && b % t == 0 && a / t > 0
}

/// `G₀ = v`, `G₁ = 4u + 9v`, `G_{k+2} = 18G_{k+1} − G_k`: the `y`-coordinates
/// of `(u + v√5)(9 + 4√5)^k`. Positive solutions have `y = |G_k|`. Each entry
/// is checked to solve the equation.
pub fn pell_family_extend(seed: PellSeed, steps: u32, t: i64) -> Result<Vec<BigInt>> {
    let (u, v) = (seed.u as i128, seed.v as i128);
    if u * u - 5 * v * v != t as i128 {
        return Err(Error::NotOnConic {
            u: seed.u,
            v: seed.v,
            t,
        });
    }
    if steps == 0 {
        return Err(Error::out_of_range("steps", steps, "must be positive"));
    }
    let mut ys = vec![BigInt::from(v), BigInt::from(4 * u + 9 * v)];
    for _ in 1..steps {
        let k = ys.len();
        let next = 18 * &ys[k - 1] - &ys[k - 2];
        ys.push(next);
    }
    for y in &ys {
        let rhs = 5 * y * y + t;
        assert!(
            exact_sqrt_big(&rhs).is_some(),
            "family term {y} does not solve x² − 5y² = {t}"
        );
    }
    Ok(ys)
}

/// Number of positive solutions with `y ≤ ½√T`.
pub fn lem5_count(big_t: u64, t: i64) -> Result<u64> {
    let y_max = half_sqrt(big_t);
    if y_max == 0 {
        return Ok(0);
    }
    Ok(pell_solve_box(t, y_max.min(PELL_MAX_Y))?.solutions.len() as u64)
}

fn half_sqrt(big_t: u64) -> u64 {
    // ⌊½√T⌋ = ⌊√(T/4)⌋ = ⌊√⌊T/4⌋⌋.
    isqrt_u128((big_t / 4) as u128) as u64
}

/// Solution counts for every `0 < |t| ≤ 4T`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountReport {
    pub big_t: u64,
    pub y_max: u64,
    /// `T^{4/ln ln T}`.
    pub bound: f64,
    pub max_count: u64,
    pub argmax_t: i64,
    /// Values of `t` with at least one solution.
    pub t_with_solutions: u64,
    pub violations: Vec<i64>,
}

impl CountReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Counts solutions with `y ≤ ½√T` for all `0 < |t| ≤ 4T` at once and
/// compares each count with `T^{4/ln ln T}`.
pub fn lem5_count_check(big_t: u64) -> Result<CountReport> {
    if !(100..=COUNT_MAX_T).contains(&big_t) {
        return Err(Error::out_of_range("T", big_t, format!("must lie in 100..={COUNT_MAX_T}")));
    }
    let y_max = half_sqrt(big_t);
    let lim = 4 * big_t as i128;
    let mut counts = vec![0u32; 2 * lim as usize + 1];
    for y in 1..=y_max as i128 {
        let five_y2 = 5 * y * y;
        // x² ∈ [5y² − 4T, 5y² + 4T], x ≥ 1.
        let lo = if five_y2 - lim <= 1 {
            1
        } else {
            let r = isqrt_u128((five_y2 - lim) as u128) as i128;
            if r * r == five_y2 - lim {
                r
            } else {
                r + 1
            }
        };
        let hi = isqrt_u128((five_y2 + lim) as u128) as i128;
        for x in lo..=hi {
            let t = x * x - five_y2;
            if t != 0 {
                counts[(t + lim) as usize] += 1;
            }
        }
    }
    let tf = big_t as f64;
    let bound = tf.powf(4.0 / tf.ln().ln());
    let mut max_count = 0;
    let mut argmax_t = 0;
    let mut with = 0;
    let mut violations = Vec::new();
    for (i, &c) in counts.iter().enumerate() {
        let t = i as i64 - lim as i64;
        if c == 0 {
            continue;
        }
        with += 1;
        if c as u64 > max_count {
            max_count = c as u64;
            argmax_t = t;
        }
        if c as f64 > bound {
            violations.push(t);
        }
    }
    Ok(CountReport {
        big_t,
        y_max,
        bound,
        max_count,
        argmax_t,
        t_with_solutions: with,
        violations,
    })
}

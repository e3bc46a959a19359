//! Brute-force reference computations, written independently of the fast
//! routines they cross-check.

use num_rational::Ratio;

use crate::census::Threshold;
use crate::lucas::{is_degenerate_oracle, LucasParams};

/// Census by scanning `|A| ≤ 2t`, `|B| ≤ t²` and testing `|α| ≤ t` in rational
/// arithmetic.
///
/// Real roots lie in `[−t, t]` iff `f(t) ≥ 0`, `f(−t) ≥ 0` and the vertex
/// `A/2` lies in `[−t, t]`, where `f(x) = x² − Ax + B`. Complex roots have
/// `|α|² = B`. Degeneracy is decided by the `Uₖ = 0` search.
pub fn census_naive(t: Threshold) -> u64 {
    let tr = t.as_ratio();
    let a_lim = (tr * 2).floor().to_integer() as i64;
    let b_lim = (tr * tr).floor().to_integer() as i64;
    let f = |a: i64, b: i64, x: Ratio<i128>| x * x - x * (a as i128) + Ratio::from(b as i128);
    let mut count = 0;
    for a in -a_lim..=a_lim {
        for b in -b_lim..=b_lim {
            let params = LucasParams::new(a, b);
            let d = (a as i128) * (a as i128) - 4 * b as i128;
            if a == 0 || b == 0 || d == 0 {
                continue;
            }
            let inside = if d < 0 {
                Ratio::from(b as i128) <= tr * tr
            } else {
                let half_a = Ratio::new(a as i128, 2);
                f(a, b, tr) >= Ratio::from(0)
                    && f(a, b, -tr) >= Ratio::from(0)
                    && -tr <= half_a
                    && half_a <= tr
            };
            if inside && !is_degenerate_oracle(params).expect("valid by construction") {
                count += 1;
            }
        }
    }
    count
}

/// `Uₙ` by the plain recurrence, `i128` with a `BigInt` fallback.
fn recurrence_term(a: i64, b: i64, n: u32) -> num_bigint::BigInt {
    let (mut u0, mut u1) = (0i128, 1i128);
    let (ai, bi) = (a as i128, b as i128);
    for k in 1..n {
        let next = ai
            .checked_mul(u1)
            .and_then(|x| bi.checked_mul(u0).and_then(|y| x.checked_sub(y)));
        match next {
            Some(v) => {
                u0 = u1;
                u1 = v;
            }
            None => {
                let (mut p, mut q) = (num_bigint::BigInt::from(u0), num_bigint::BigInt::from(u1));
                for _ in k..n {
                    let r = &q * a - &p * b;
                    p = std::mem::replace(&mut q, r);
                }
                return q;
            }
        }
    }
    if n == 0 {
        0.into()
    } else {
        u1.into()
    }
}

/// `𝓛ₙ(N)` by brute force over generous regions.
///
/// * `n ≥ 5`: `1 ≤ A ≤ 2 + 9N^{1/(n−1)}`, `|B| ≤ 2 + 17N^{2/(n−1)}`, and every
///   `B` up to `b_max` with `A ≤ 2√B + 2`.
/// * `n = 4`: `A | x`, so `A ≤ N` and `|A² − 2B| ≤ N/A`.
/// * `n = 3`: `A ≤ 6`, `|A² − B| ≤ N`.
/// * `n = 2`: `A ≤ N`, `|B| ≤ 3`.
pub fn ln_set_naive(n: u32, big_n: u64, b_max: u64) -> Vec<u64> {
    let nn = big_n as i64;
    let mut rows: Vec<(i64, std::ops::RangeInclusive<i64>)> = Vec::new();
    match n {
        2 => rows.extend((1..=nn).map(|a| (a, -3..=3))),
        3 => rows.extend((1..=6).map(|a| (a, a * a - nn..=a * a + nn))),
        4 => rows.extend((1..=nn).map(|a| {
            let j = nn / a;
            (a, (a * a - j).div_euclid(2)..=(a * a + j).div_euclid(2) + 1)
        })),
        _ => {
            let e = 1.0 / (n as f64 - 1.0);
            let a_lim = (2.0 + 9.0 * (big_n as f64).powf(e)).floor() as i64;
            let b_lim = (2.0 + 17.0 * (big_n as f64).powf(2.0 * e)).floor() as i64;
            rows.extend((1..=a_lim).map(|a| (a, -b_lim..=b_lim)));
            let b_top = b_max as i64;
            if b_top > b_lim {
                let a_top = (2.0 * (b_top as f64).sqrt()).floor() as i64 + 2;
                for a in 1..=a_top {
                    // B ≥ ((A − 2)/2)² covers A ≤ 2√B + 2.
                    let b_from = (((a - 2).max(0) * (a - 2).max(0)) / 4).max(b_lim + 1);
                    if b_from <= b_top {
                        rows.push((a, b_from..=b_top));
                    }
                }
            }
        }
    }
    let mut out = std::collections::BTreeSet::new();
    for (a, bs) in rows {
        for b in bs {
            let p = LucasParams::new(a, b);
            if !p.is_valid() || is_degenerate_oracle(p).unwrap_or(true) {
                continue;
            }
            let u = recurrence_term(a, b, n);
            if let Some(x) = num_traits::ToPrimitive::to_u64(u.magnitude()) {
                if x >= 1 && x <= big_n {
                    out.insert(x);
                }
            }
        }
    }
    out.into_iter().collect()
}

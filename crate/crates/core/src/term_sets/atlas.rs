//! Union of the term sets over all indices `m ≥ n`.
//!
//! Real pairs satisfy `|Uₘ| ≥ ½φ^{m−2}`, so they only contribute below the
//! cutoff `M` returned by [`real_index_cutoff`]; those indices are scanned
//! level by level. From `M` on, only non-real pairs with small `B` remain. For
//! each such pair `Uₘ = B^{(m−1)/2}·sin(mφ)/sin φ` with `φ = arg α`, so
//! `|Uₘ| ≤ N` needs `|sin(mφ)| ≤ τₘ = N·sin φ / B^{(m−1)/2}`. Small `m` are
//! iterated exactly; for larger `m` the continued fraction of `φ/π` bounds
//! `|sin(mφ)|` from below until the general growth bound exceeds `N`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::level::{box_limits, scan_level, tail_half_width_start};
use super::{small, ScanStats, SetOptions, TermSetResult, Witness};
use crate::error::{Error, Result};
use crate::growth::{arg_alpha, GrowthCertifier};
use crate::lucas::{term, LucasParams};
use crate::precision::{ln_abs_bigint, to_dyadic, to_f64, Ctx, VERIFY_PRECISION};

/// Indices past the cutoff over which the tail height is maximised.
const TAIL_INDEX_WINDOW: u32 = 400;
/// Slack on logarithmic comparisons.
const LOG_SLACK: f64 = 1e-6;
/// Exact iteration continues until `τₘ < 2^{−DIRECT_BITS}`.
const DIRECT_BITS: f64 = 40.0;
/// Approximation gaps below `2^{−GAP_FLOOR_BITS}` are not trusted.
const GAP_FLOOR_BITS: f64 = 400.0;
/// Per-pair limit on indices settled by exact evaluation inside the window.
const EXACT_FALLBACK_LIMIT: usize = 20_000;

/// Smallest `m ≥ 2` with `½φ^{m−2} > N`.
///
/// With `k = m − 2`, `φ^k = F_k·φ + F_{k−1}`, so the test is
/// `F_k·√5 > 4N − 2F_{k−1} − F_k`, decided in integers.
pub fn real_index_cutoff(big_n: u64) -> u32 {
    let four_n = 4 * big_n as i128;
    let (mut f_prev, mut f) = (1i128, 0i128); // F_{−1}, F_0
    let mut k = 0u32;
    loop {
        let r = four_n - 2 * f_prev - f;
        if r < 0 || (f > 0 && 5 * f * f > r * r) {
            return k + 2;
        }
        let next = f + f_prev;
        f_prev = f;
        f = next;
        k += 1;
    }
}

pub(crate) fn ge_set(n: u32, big_n: u64, opts: SetOptions) -> Result<TermSetResult> {
    let cutoff = real_index_cutoff(big_n);
    let start = n.max(cutoff);

    // Dense marks for indices 2..=4 record the smallest such index.
    let mut dense: Option<Vec<u8>> = None;
    for m in n..cutoff.min(5) {
        let hit = small::attained(m, big_n);
        let marks = dense.get_or_insert_with(|| vec![0u8; big_n as usize + 1]);
        for (x, &h) in hit.iter().enumerate() {
            if h && marks[x] == 0 {
                marks[x] = m as u8;
            }
        }
    }

    let mut sparse: BTreeMap<u64, Witness> = BTreeMap::new();
    let mut stats = ScanStats::default();
    for m in n.max(5)..cutoff {
        let scan = scan_level(m, big_n)?;
        stats.evaluations += scan.stats.evaluations;
        stats.a_limit = stats.a_limit.max(scan.stats.a_limit);
        stats.b_limit = stats.b_limit.max(scan.stats.b_limit);
        stats.tail_b_half = stats.tail_b_half.max(scan.stats.tail_b_half);
        stats.tail_b_stop = stats.tail_b_stop.max(scan.stats.tail_b_stop);
        for (x, (a, b)) in scan.hits {
            sparse.entry(x).or_insert(Witness { a, b, n: m });
        }
    }

    let b_tail = tail_height(start, big_n);
    let pairs: Vec<LucasParams> = (2..=b_tail)
        .flat_map(|b| {
            (1..)
                .take_while(move |&a: &i64| a * a < 4 * b)
                .map(move |a| LucasParams::new(a, b))
        })
        .filter(|p| p.is_admissible())
        .collect();
    let tail: Vec<Vec<(u64, u32)>> = pairs
        .par_iter()
        .map(|&p| tail_pair(p, big_n, start))
        .collect::<Result<_>>()?;
    let mut tail_hits: Vec<(u64, Witness)> = pairs
        .iter()
        .zip(tail)
        .flat_map(|(p, hits)| {
            hits.into_iter()
                .map(move |(x, m)| (x, Witness { a: p.a, b: p.b, n: m }))
        })
        .collect();
    tail_hits.sort_unstable_by_key(|&(x, w)| (x, w.n, w.a, w.b));
    for (x, w) in tail_hits {
        sparse.entry(x).or_insert(w);
    }
    stats.b_limit = stats.b_limit.max(b_tail as u64);

    let witness_of = |x: u64| -> Witness {
        if let Some(marks) = &dense {
            let m = marks[x as usize];
            if m != 0 {
                let p = small::witness(m as u32, x).expect("small member has a witness");
                return Witness { a: p.a, b: p.b, n: m as u32 };
            }
        }
        sparse[&x]
    };
    let members: Vec<u64> = match &dense {
        Some(marks) => (1..=big_n)
            .filter(|&x| marks[x as usize] != 0 || sparse.contains_key(&x))
            .collect(),
        None => sparse.keys().copied().collect(),
    };
    let upper = if n >= 5 {
        Some(super::thm22_upper(n, big_n)?.part_ii)
    } else {
        None
    };
    Ok(TermSetResult {
        n,
        big_n,
        count: members.len() as u64,
        witnesses: opts
            .witnesses
            .then(|| members.iter().map(|&x| (x, witness_of(x))).collect()),
        members: opts.members.then_some(members),
        upper_bound_value: upper,
        stats,
    })
}

/// Twice the largest tail start `max(B₁(m), b_half(m))` over a window of
/// indices from `start`.
fn tail_height(start: u32, big_n: u64) -> i64 {
    let top = (start..start + TAIL_INDEX_WINDOW)
        .map(|m| {
            let m = m.max(5);
            box_limits(m, big_n).1.max(tail_half_width_start(m, big_n))
        })
        .max()
        .unwrap_or(0);
    2 * top as i64
}

/// Values `|Uₘ| ≤ N` with `m ≥ start` for one non-real pair, with the
/// smallest such index per value.
fn tail_pair(params: LucasParams, big_n: u64, start: u32) -> Result<Vec<(u64, u32)>> {
    let mut found: BTreeMap<u64, u32> = BTreeMap::new();
    let mut ctx = Ctx::new(VERIFY_PRECISION);
    let phi = arg_alpha(&mut ctx, params);
    let pi = ctx.pi();
    let x = ctx.div(&phi, &pi);
    let (mant, k) = to_dyadic(&x).expect("φ/π is positive");
    let k = u64::try_from(k).expect("φ/π < 1");
    let ln_sin = to_f64(&phi).sin().ln();
    let ln_b = (params.b as f64).ln();
    let ln_n = (big_n as f64).ln();
    let ln_tau = |m: u64| ln_n + ln_sin - (m as f64 - 1.0) / 2.0 * ln_b;
    // Smallest m with ln τₘ < L.
    let first_below = |l: f64| -> u64 {
        let m = 1.0 + 2.0 * (ln_n + ln_sin - l) / ln_b;
        (m.max(0.0).floor() as u64) + 1
    };

    let m_direct = first_below(-DIRECT_BITS * std::f64::consts::LN_2 - LOG_SLACK).max(start as u64);
    let (mut u_prev, mut u) = (BigInt::zero(), BigInt::one());
    let (a, b) = (BigInt::from(params.a), BigInt::from(params.b));
    for m in 2..=m_direct {
        let next = &a * &u - &b * &u_prev;
        u_prev = std::mem::replace(&mut u, next);
        if m >= start as u64 {
            note(&mut found, &u, big_n, m);
        }
    }

    let cert = GrowthCertifier::new(params)?;
    let target = ln_n + LOG_SLACK;
    let m_eff = first_index_above(&cert, target, m_direct + 1);

    let uncertified = |reason: String| Error::Uncertified {
        a: params.a,
        b: params.b,
        reason,
    };
    let one = BigUint::one();
    let den = &one << k;
    let ln_den = k as f64 * std::f64::consts::LN_2;
    let gap_floor = -GAP_FLOOR_BITS * std::f64::consts::LN_2;
    let ln_dist = |num: &BigUint| -> f64 {
        // ln ‖num / 2^k‖ for the distance to the nearest integer.
        let r = num % &den;
        let d = if &r + &r > den { &den - &r } else { r };
        ln_abs_bigint(&BigInt::from(d)) - ln_den
    };

    let mut exact = 0usize;
    let lo_all = m_direct + 1;
    let hi_all = m_eff.saturating_sub(1);
    if lo_all <= hi_all {
        let mut conv = Convergents::new(mant.clone(), den.clone());
        let (mut q_cur, _) = conv.next().expect("first convergent");
        loop {
            let (q_next, _) = conv.next().unwrap_or((u64::MAX, BigUint::zero()));
            let lo = q_cur.max(lo_all);
            let hi = (q_next.saturating_sub(1)).min(hi_all);
            if lo <= hi {
                // ‖m·x̂‖ ≥ ‖q·x̂‖ for all m below the next denominator.
                let l_gap = ln_dist(&(&mant * BigUint::from(q_cur)));
                let pass_from = if l_gap > gap_floor {
                    first_below(std::f64::consts::LN_2 + l_gap - LOG_SLACK)
                } else {
                    u64::MAX
                };
                let mut m = lo;
                while m <= hi && m < pass_from {
                    let l = ln_dist(&(&mant * BigUint::from(m)));
                    let ok = l > gap_floor
                        && std::f64::consts::LN_2 + l - LOG_SLACK > ln_tau(m);
                    if !ok {
                        exact += 1;
                        if exact > EXACT_FALLBACK_LIMIT {
                            return Err(uncertified(format!(
                                "more than {EXACT_FALLBACK_LIMIT} indices need exact evaluation"
                            )));
                        }
                        note(&mut found, &term(params, m), big_n, m);
                    }
                    m += 1;
                }
            }
            if q_next > hi_all {
                break;
            }
            q_cur = q_next;
        }
    }
    Ok(found.into_iter().map(|(x, m)| (x, m as u32)).collect())
}

fn note(found: &mut BTreeMap<u64, u32>, u: &BigInt, big_n: u64, m: u64) {
    if u.is_zero() {
        return;
    }
    if let Some(x) = u.abs().to_u64().filter(|&x| x <= big_n) {
        found.entry(x).or_insert(m as u32);
    }
}

/// Smallest `m ≥ from` whose growth bound exceeds `e^{target}`.
fn first_index_above(cert: &GrowthCertifier, target: f64, from: u64) -> u64 {
    if cert.ln_bound_f64(from) > target {
        return from;
    }
    let mut hi = from.max(2) * 2;
    while cert.ln_bound_f64(hi) <= target {
        hi *= 2;
    }
    let mut lo = from;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if cert.ln_bound_f64(mid) > target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Convergent denominators `q₀ = 1, q₁, …` of `p/q ∈ (0, 1)`, with the
/// remaining partial quotient state. Denominators past `u64` end the stream.
struct Convergents {
    num: BigUint,
    den: BigUint,
    q_prev: u64,
    q: u64,
    started: bool,
}

impl Convergents {
    fn new(num: BigUint, den: BigUint) -> Self {
        // x < 1, so a₀ = 0 and the expansion continues with den/num.
        Convergents {
            num: den,
            den: num,
            q_prev: 0,
            q: 1,
            started: false,
        }
    }
}

impl Iterator for Convergents {
    type Item = (u64, BigUint);

    fn next(&mut self) -> Option<Self::Item> {
        if !self.started {
            self.started = true;
            return Some((1, BigUint::zero()));
        }
        if self.den.is_zero() {
            return None;
        }
        let (a, r) = self.num.div_rem(&self.den);
        self.num = std::mem::replace(&mut self.den, r);
        let next = a
            .to_u64()
            .and_then(|a| a.checked_mul(self.q))
            .and_then(|v| v.checked_add(self.q_prev))?;
        self.q_prev = self.q;
        self.q = next;
        Some((next, a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cutoff_matches_floating_definition() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        for big_n in [1u64, 2, 10, 100, 1000, 12345, 1_000_000, 1_000_000_000] {
            let m = real_index_cutoff(big_n);
            assert!(0.5 * phi.powi(m as i32 - 2) > big_n as f64);
            assert!(0.5 * phi.powi(m as i32 - 3) <= big_n as f64);
        }
    }

    #[test]
    fn convergent_denominators_of_a_fraction() {
        // 13/32 = [0; 2, 2, 6]: denominators 1, 2, 5, 32.
        let q: Vec<u64> = Convergents::new(BigUint::from(13u32), BigUint::from(32u32))
            .map(|(q, _)| q)
            .collect();
        assert_eq!(q, vec![1, 2, 5, 32]);
    }

    #[test]
    fn tail_pair_agrees_with_direct_terms() {
        // Indices beyond the cutoff are cheap to check directly up to a few
        // hundred; the certified tail must report exactly those hits.
        for (a, b) in [(1i64, 2i64), (1, 3), (2, 3), (3, 5), (1, 7), (5, 11)] {
            let p = LucasParams::new(a, b);
            let big_n = 1000;
            let start = 12;
            let hits = tail_pair(p, big_n, start).unwrap();
            let mut direct = BTreeMap::new();
            for m in start as u64..=600 {
                note(&mut direct, &term(p, m), big_n, m);
            }
            let direct: Vec<(u64, u32)> = direct.into_iter().map(|(x, m)| (x, m as u32)).collect();
            assert_eq!(hits, direct, "({a}, {b})");
        }
    }
}

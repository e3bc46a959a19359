//! Shared arithmetic: divisor counts, Fibonacci numbers, exact integer roots
//! and the coprime lattice-pair count.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::precision::Ctx;

/// Largest argument accepted by [`tau`].
pub const TAU_MAX: u64 = 1_000_000_000_000;

/// Largest `N` accepted by [`coprime_pair_count`].
pub const COPRIME_MAX: u64 = 200;

/// The constant in the Nicolas–Robin divisor bound `τ(k) ≤ k^{c·ln 2 / ln ln k}`.
pub const DIVISOR_BOUND_CONSTANT: f64 = 1.5379;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorProfile {
    pub k: u64,
    /// Number of positive divisors.
    pub tau: u64,
    /// Number of distinct prime divisors.
    pub omega: u32,
}

/// Divisor count and distinct-prime count by trial division.
pub fn divisor_profile(k: u64) -> Result<DivisorProfile> {
    if k == 0 || k > TAU_MAX {
        return Err(Error::out_of_range("k", k, format!("need 1 ≤ k ≤ {TAU_MAX}")));
    }
    let mut rest = k;
    let mut tau = 1u64;
    let mut omega = 0u32;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            tau *= e + 1;
            omega += 1;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        tau *= 2;
        omega += 1;
    }
    Ok(DivisorProfile { k, tau, omega })
}

/// Number of positive divisors of `k`.
pub fn tau(k: u64) -> Result<u64> {
    divisor_profile(k).map(|p| p.tau)
}

/// Evaluates `τ(k) ≤ k^{1.5379·ln 2 / ln ln k}` at 256-bit precision.
///
/// Defined for `k ≥ 3` only, where `ln ln k > 0`.
pub fn tau_bound_check(k: u64) -> Result<bool> {
    if k < 3 {
        return Err(Error::out_of_range("k", k, "need k ≥ 3 so that ln ln k > 0"));
    }
    let t = tau(k)?;
    let mut ctx = Ctx::new(256);
    let kf = ctx.int(k as i64);
    let ln_k = ctx.ln(&kf);
    let ln_ln_k = ctx.ln(&ln_k);
    let c = ctx.div(&ctx.int(15379), &ctx.int(10000));
    let ln2 = ctx.ln(&ctx.int(2));
    // ln(bound) = c·ln 2·ln k / ln ln k
    let ln_bound = ctx.div(&ctx.mul(&ctx.mul(&c, &ln2), &ln_k), &ln_ln_k);
    let ln_tau = ctx.ln(&ctx.int(t as i64));
    Ok(ln_tau.cmp(&ln_bound).is_some_and(|o| o <= 0))
}

/// The `n`-th Fibonacci number `F*_n`, by plain iteration.
pub fn fibonacci_number(n: u64) -> BigUint {
    let mut a = BigUint::zero();
    let mut b = BigUint::one();
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// Exact number of pairs `(x, y)` with `|x| ≤ N`, `|y| ≤ N²`, `gcd(x, y) = 1`,
/// using `gcd(0, m) = |m|`.
///
/// Axis pairs contribute `(0, ±1)` and `(±1, 0)`; the four open quadrants are
/// symmetric, and each quadrant row is counted with a Möbius sum over the
/// divisors of `x`.
pub fn coprime_pair_count(n: u64) -> Result<u64> {
    if n > COPRIME_MAX {
        return Err(Error::out_of_range("N", n, format!("need N ≤ {COPRIME_MAX}")));
    }
    if n == 0 {
        return Ok(0);
    }
    let m = n * n;
    let mut quadrant = 0u64;
    for x in 1..=n {
        quadrant += coprime_up_to(x, m);
    }
    Ok(4 * quadrant + 4)
}

/// `#{1 ≤ y ≤ m : gcd(x, y) = 1}`.
fn coprime_up_to(x: u64, m: u64) -> u64 {
    let primes = distinct_primes(x);
    let mut total: i64 = 0;
    for mask in 0u32..(1 << primes.len()) {
        let mut d = 1u64;
        for (i, p) in primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                d *= p;
            }
        }
        let term = (m / d) as i64;
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total as u64
}

fn distinct_primes(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= x {
        if x % p == 0 {
            out.push(p);
            while x % p == 0 {
                x /= p;
            }
        }
        p += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

/// `⌊x^{1/k}⌋` for `u128`, by binary search with checked powering.
pub fn integer_kth_root(x: u128, k: u32) -> u128 {
    assert!(k >= 1, "root index must be positive");
    if k == 1 || x < 2 {
        return x;
    }
    let mut lo: u128 = 1;
    // 2^(ceil(128/k)) bounds the root from above.
    let mut hi: u128 = 1u128 << (128 / k + 1).min(127);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if pow_le(mid, k, x) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

fn pow_le(base: u128, k: u32, x: u128) -> bool {
    let mut acc: u128 = 1;
    for _ in 0..k {
        match acc.checked_mul(base) {
            Some(v) if v <= x => acc = v,
            _ => return false,
        }
    }
    true
}

/// `⌊x^{1/k}⌋` for arbitrary-size integers.
pub fn integer_kth_root_big(x: &BigUint, k: u32) -> BigUint {
    assert!(k >= 1, "root index must be positive");
    if k == 1 || x.is_zero() || x.is_one() {
        return x.clone();
    }
    if let Ok(small) = u128::try_from(x) {
        return BigUint::from(integer_kth_root(small, k));
    }
    let bits = x.bits();
    let mut lo = BigUint::one();
    let mut hi = BigUint::one() << (bits / k as u64 + 1);
    while lo < hi {
        let mid: BigUint = &lo + (&hi - &lo + 1u32) / 2u32;
        if mid.pow(k) <= *x {
            lo = mid;
        } else {
            hi = mid - 1u32;
        }
    }
    lo
}

/// `⌊√x⌋`.
pub fn isqrt_u128(x: u128) -> u128 {
    integer_kth_root(x, 2)
}

pub fn isqrt_u64(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > x) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= x) {
        r += 1;
    }
    r
}

/// Exact square root when `x` is a perfect square.
pub fn exact_sqrt_u128(x: u128) -> Option<u128> {
    let r = isqrt_u128(x);
    (r * r == x).then_some(r)
}

pub fn exact_sqrt_big(x: &BigInt) -> Option<BigInt> {
    if x.sign() == num_bigint::Sign::Minus {
        return None;
    }
    let r = x.sqrt();
    (&r * &r == *x).then_some(r)
}

pub fn gcd_i64(a: i64, b: i64) -> u64 {
    (a as i128).gcd(&(b as i128)).unsigned_abs() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn tau_examples() {
        assert_eq!(tau(12).unwrap(), 6);
        assert_eq!(tau(1).unwrap(), 1);
        assert_eq!(tau(720).unwrap(), 30);
        assert!(tau(0).is_err());
        let p = divisor_profile(2 * 2 * 3 * 5 * 5 * 7).unwrap();
        assert_eq!((p.tau, p.omega), (3 * 2 * 3 * 2, 4));
    }

    #[test]
    fn tau_bound_examples() {
        assert!(tau_bound_check(12).unwrap());
        assert!(tau_bound_check(3).unwrap());
        assert!(tau_bound_check(64 * 81 * 25 * 7 * 11 * 13).unwrap());
        assert!(tau_bound_check(2).is_err());
    }

    #[test]
    fn tau_is_multiplicative_on_coprime_pairs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 1000 {
            let a = rng.random_range(1..100_000u64);
            let b = rng.random_range(1..100_000u64);
            if gcd_i64(a as i64, b as i64) != 1 {
                continue;
            }
            assert_eq!(tau(a * b).unwrap(), tau(a).unwrap() * tau(b).unwrap());
            checked += 1;
        }
    }

    #[test]
    fn fibonacci_examples() {
        assert_eq!(fibonacci_number(0), BigUint::zero());
        assert_eq!(fibonacci_number(1), BigUint::one());
        assert_eq!(fibonacci_number(10), BigUint::from(55u32));
    }

    #[test]
    fn coprime_count_matches_brute_force() {
        for n in 0..=8u64 {
            let m = (n * n) as i64;
            let n = n as i64;
            let mut brute = 0u64;
            for x in -n..=n {
                for y in -m..=m {
                    if gcd_i64(x, y) == 1 {
                        brute += 1;
                    }
                }
            }
            assert_eq!(coprime_pair_count(n as u64).unwrap(), brute, "N = {n}");
        }
        assert_eq!(coprime_pair_count(1).unwrap(), 8);
        assert!(coprime_pair_count(20).unwrap() >= 16_000);
        assert!(coprime_pair_count(201).is_err());
    }

    #[test]
    fn kth_root_examples() {
        assert_eq!(integer_kth_root(26, 3), 2);
        assert_eq!(integer_kth_root(27, 3), 3);
        assert_eq!(integer_kth_root(10u128.pow(18), 4), 31622);
        assert_eq!(integer_kth_root(u128::MAX, 2), u64::MAX as u128);
        assert_eq!(integer_kth_root(u128::MAX, 1), u128::MAX);
        let big = BigUint::from(10u8).pow(60) - 1u32;
        assert_eq!(integer_kth_root_big(&big, 3), BigUint::from(10u8).pow(20) - 1u32);
    }

    proptest! {
        #[test]
        fn kth_root_brackets(x in any::<u64>(), k in 1u32..12) {
            let r = integer_kth_root(x as u128, k);
            prop_assert!(pow_le(r, k, x as u128));
            prop_assert!(!pow_le(r + 1, k, x as u128));
        }

        #[test]
        fn big_kth_root_brackets(hi in any::<u64>(), lo in any::<u64>(), k in 2u32..9) {
            let x = (BigUint::from(hi) << 130) + BigUint::from(lo);
            let r = integer_kth_root_big(&x, k);
            prop_assert!(r.pow(k) <= x);
            prop_assert!((r + 1u32).pow(k) > x);
        }

        #[test]
        fn isqrt_u64_brackets(x in any::<u64>()) {
            let r = isqrt_u64(x) as u128;
            prop_assert!(r * r <= x as u128 && (r + 1) * (r + 1) > x as u128);
        }
    }
}

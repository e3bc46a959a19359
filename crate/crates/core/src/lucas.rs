//! Lucas sequences `U₀ = 0, U₁ = 1, Uₙ = A·Uₙ₋₁ − B·Uₙ₋₂`: terms, root data and
//! degeneracy.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::precision::{Ctx, Real, DEFAULT_PRECISION};

/// Above this index `term` switches from the plain recurrence to doubling.
const RECURRENCE_LIMIT: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LucasParams {
    pub a: i64,
    pub b: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    Degenerate,
    RealCase,
    NonRealCase,
    Invalid,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Degenerate => "degenerate",
            Kind::RealCase => "real",
            Kind::NonRealCase => "non-real",
            Kind::Invalid => "invalid",
        }
    }
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct SequenceClass {
    pub kind: Kind,
    /// `A² − 4B`.
    pub discriminant: i128,
    /// `|α|`, the larger root magnitude.
    pub dominant_root_abs: Real,
}

impl LucasParams {
    pub const fn new(a: i64, b: i64) -> Self {
        LucasParams { a, b }
    }

    pub fn discriminant(self) -> i128 {
        let a = self.a as i128;
        a * a - 4 * self.b as i128
    }

    /// `A·B·(A² − 4B) ≠ 0`.
    pub fn is_valid(self) -> bool {
        self.a != 0 && self.b != 0 && self.discriminant() != 0
    }

    /// Closed-form degeneracy test: `B ∈ {A², A²/2, A²/3}` for valid parameters.
    ///
    /// These are exactly the families `(r, r²)`, `(2r, 2r²)`, `(3r, 3r²)`, since
    /// `2B = A²` forces `2 | A` and `3B = A²` forces `3 | A`.
    pub fn is_degenerate(self) -> bool {
        if !self.is_valid() {
            return false;
        }
        let a2 = (self.a as i128) * (self.a as i128);
        let b = self.b as i128;
        b == a2 || 2 * b == a2 || 3 * b == a2
    }

    /// Valid and non-degenerate.
    pub fn is_admissible(self) -> bool {
        self.is_valid() && !self.is_degenerate()
    }

    pub fn with_a_abs(self) -> Self {
        LucasParams::new(self.a.abs(), self.b)
    }
}

impl std::fmt::Display for LucasParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// `Uₙ(A, B)`, exact.
pub fn term(params: LucasParams, n: u64) -> BigInt {
    if n <= RECURRENCE_LIMIT {
        term_by_recurrence(params, n)
    } else {
        term_pair_by_doubling(params, n).0
    }
}

fn term_by_recurrence(params: LucasParams, n: u64) -> BigInt {
    // Small indices fit in i128 when the coefficients are small; fall back to
    // BigInt on overflow.
    let (a, b) = (params.a as i128, params.b as i128);
    let (mut u0, mut u1) = (0i128, 1i128);
    if n == 0 {
        return BigInt::zero();
    }
    for i in 1..n {
        let next = a
            .checked_mul(u1)
            .and_then(|x| b.checked_mul(u0).and_then(|y| x.checked_sub(y)));
        match next {
            Some(v) => {
                u0 = u1;
                u1 = v;
            }
            None => return continue_big(params, BigInt::from(u0), BigInt::from(u1), i, n),
        }
    }
    BigInt::from(u1)
}

/// Continues the recurrence from `(U_{i-1}, U_i)` up to `U_n`.
fn continue_big(params: LucasParams, mut u0: BigInt, mut u1: BigInt, i: u64, n: u64) -> BigInt {
    let (a, b) = (BigInt::from(params.a), BigInt::from(params.b));
    for _ in i..n {
        let next = &a * &u1 - &b * &u0;
        u0 = std::mem::replace(&mut u1, next);
    }
    u1
}

/// `(Uₙ, Uₙ₊₁)` from the doubling identities
/// `U₂ₖ = Uₖ(2Uₖ₊₁ − A·Uₖ)` and `U₂ₖ₊₁ = Uₖ₊₁² − B·Uₖ²`.
fn term_pair_by_doubling(params: LucasParams, n: u64) -> (BigInt, BigInt) {
    let (a, b) = (BigInt::from(params.a), BigInt::from(params.b));
    let mut uk = BigInt::zero();
    let mut uk1 = BigInt::one();
    for bit in (0..64 - n.leading_zeros()).rev() {
        let u2k = &uk * (&uk1 * 2 - &a * &uk);
        let u2k1 = &uk1 * &uk1 - &b * &uk * &uk;
        if (n >> bit) & 1 == 1 {
            let u2k2 = &a * &u2k1 - &b * &u2k;
            uk = u2k1;
            uk1 = u2k2;
        } else {
            uk = u2k;
            uk1 = u2k1;
        }
    }
    (uk, uk1)
}

/// `Uₙ` read off from `xⁿ = Uₙ·x − B·Uₙ₋₁` in `ℤ[x]/(x² − Ax + B)`.
pub fn term_via_ring(params: LucasParams, n: u64) -> BigInt {
    let ring = QuadRing::new(params);
    ring.pow_x(n).1
}

/// Elements `c₀ + c₁·x` of `ℤ[x]/(x² − Ax + B)`.
struct QuadRing {
    a: BigInt,
    b: BigInt,
}

impl QuadRing {
    fn new(p: LucasParams) -> Self {
        QuadRing {
            a: BigInt::from(p.a),
            b: BigInt::from(p.b),
        }
    }

    /// `(c₀ + c₁x)(d₀ + d₁x)` with `x² = Ax − B`.
    fn mul(&self, l: &(BigInt, BigInt), r: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        let hi = &l.1 * &r.1;
        let c0 = &l.0 * &r.0 - &self.b * &hi;
        let c1 = &l.0 * &r.1 + &l.1 * &r.0 + &self.a * &hi;
        (c0, c1)
    }

    fn pow_x(&self, mut n: u64) -> (BigInt, BigInt) {
        let mut acc = (BigInt::one(), BigInt::zero());
        let mut base = (BigInt::zero(), BigInt::one());
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

pub fn classify(params: LucasParams) -> SequenceClass {
    classify_with_precision(params, DEFAULT_PRECISION)
}

pub fn classify_with_precision(params: LucasParams, prec: usize) -> SequenceClass {
    let discriminant = params.discriminant();
    let kind = if !params.is_valid() {
        Kind::Invalid
    } else if params.is_degenerate() {
        Kind::Degenerate
    } else if discriminant > 0 {
        Kind::RealCase
    } else {
        Kind::NonRealCase
    };
    let ctx = Ctx::new(prec);
    SequenceClass {
        kind,
        discriminant,
        dominant_root_abs: dominant_root_abs(&ctx, params),
    }
}

/// `|α|`: `(|A| + √(A² − 4B))/2` when the roots are real, `√B` otherwise.
pub fn dominant_root_abs(ctx: &Ctx, params: LucasParams) -> Real {
    let d = params.discriminant();
    if d >= 0 {
        let s = ctx.sqrt(&ctx.i128(d));
        let num = ctx.add(&ctx.int(params.a.abs()), &s);
        ctx.div(&num, &ctx.int(2))
    } else {
        ctx.sqrt(&ctx.int(params.b))
    }
}

/// `|α|` in `f64`, for filtering only.
pub fn dominant_root_abs_f64(params: LucasParams) -> f64 {
    let d = params.discriminant();
    if d >= 0 {
        (params.a.unsigned_abs() as f64 + (d as f64).sqrt()) / 2.0
    } else {
        (params.b as f64).sqrt()
    }
}

/// Degeneracy by direct search: some `Uₖ = 0` with `1 ≤ k ≤ 6`.
///
/// Roots of unity in quadratic fields have order in `{1, 2, 3, 4, 6}`, so
/// `α/β` is one of them iff such a `k` exists.
pub fn is_degenerate_oracle(params: LucasParams) -> Result<bool> {
    if !params.is_valid() {
        return Err(Error::InvalidParams {
            a: params.a,
            b: params.b,
        });
    }
    Ok((1..=6).any(|k| term_by_recurrence(params, k).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::to_f64;
    use proptest::prelude::*;

    fn p(a: i64, b: i64) -> LucasParams {
        LucasParams::new(a, b)
    }

    #[test]
    fn term_examples() {
        assert_eq!(term(p(1, -1), 10), BigInt::from(55));
        assert_eq!(term(p(17, 9), 0), BigInt::zero());
        assert_eq!(term(p(2, 1), 5), BigInt::from(5));
        assert_eq!(term_via_ring(p(1, -1), 10), BigInt::from(55));
        assert_eq!(term_via_ring(p(3, 2), 4), BigInt::from(15));
        assert_eq!(term_via_ring(p(7, -5), 1), BigInt::one());
    }

    #[test]
    fn doubling_crosses_recurrence_limit() {
        for n in 60..140 {
            for &(a, b) in &[(1, -1), (3, 7), (-5, 2), (2, 1), (1000, -999_999)] {
                assert_eq!(term(p(a, b), n), term_via_ring(p(a, b), n));
            }
        }
        // U_n = n on the double root α = β = 1.
        assert_eq!(term(p(2, 1), 10_000), BigInt::from(10_000));
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = p(i64::MAX, i64::MIN);
        assert_eq!(term(big, 40), term_via_ring(big, 40));
    }

    #[test]
    fn both_routes_agree_on_the_small_box() {
        for a in -50..=50 {
            for b in -50..=50 {
                let q = p(a, b);
                let mut u0 = BigInt::zero();
                let mut u1 = BigInt::one();
                for n in 0..=500u64 {
                    {
                        assert_eq!(term(q, n), u0, "{q} n={n}");
                        assert_eq!(term_via_ring(q, n), u0, "{q} n={n}");
                    }
                    let next = BigInt::from(a) * &u1 - BigInt::from(b) * &u0;
                    u0 = std::mem::replace(&mut u1, next);
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(p(1, 1)).kind, Kind::Degenerate);
        assert_eq!(classify(p(4, 8)).kind, Kind::Degenerate);
        let fib = classify(p(1, -1));
        assert_eq!(fib.kind, Kind::RealCase);
        assert!((to_f64(&fib.dominant_root_abs) - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-15);
        let nr = classify(p(1, 2));
        assert_eq!(nr.kind, Kind::NonRealCase);
        assert!((to_f64(&nr.dominant_root_abs) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(classify(p(0, 5)).kind, Kind::Invalid);
        assert_eq!(classify(p(2, 1)).kind, Kind::Invalid);
        assert_eq!(classify(p(3, 0)).kind, Kind::Invalid);
    }

    #[test]
    fn oracle_examples() {
        assert!(is_degenerate_oracle(p(3, 3)).unwrap());
        assert!(!is_degenerate_oracle(p(1, -1)).unwrap());
        assert!(is_degenerate_oracle(p(2, 2)).unwrap());
        assert!(is_degenerate_oracle(p(2, 1)).is_err());
    }

    #[test]
    fn closed_form_matches_oracle_on_box() {
        for a in -200..=200 {
            for b in -200..=200 {
                let q = p(a, b);
                if !q.is_valid() {
                    assert!(is_degenerate_oracle(q).is_err());
                    continue;
                }
                assert_eq!(q.is_degenerate(), is_degenerate_oracle(q).unwrap(), "{q}");
            }
        }
    }

    #[test]
    fn root_reconstruction() {
        let ctx = Ctx::new(256);
        for &(a, b) in &[(1, -1), (5, 3), (-7, -11), (1, 2), (3, 10), (-2, 9)] {
            let q = p(a, b);
            let r = dominant_root_abs(&ctx, q);
            if q.discriminant() < 0 {
                let sq = ctx.mul(&r, &r);
                assert!(to_f64(&ctx.sub(&sq, &ctx.int(b))).abs() < 1e-60);
            } else {
                // |α| solves x² − |A|x + B = 0.
                let v = ctx.add(
                    &ctx.sub(&ctx.mul(&r, &r), &ctx.mul(&ctx.int(a.abs()), &r)),
                    &ctx.int(b),
                );
                assert!(to_f64(&v).abs() < 1e-60, "{q}");
            }
            assert!(to_f64(&r) >= (b.abs() as f64).sqrt() - 1e-12);
        }
    }

    proptest! {
        #[test]
        fn sign_symmetry(a in -10_000i64..10_000, b in -10_000i64..10_000, n in 0u64..300) {
            let l = term(p(a, b), n);
            let r = term(p(-a, b), n);
            prop_assert_eq!(l.magnitude(), r.magnitude());
        }

        #[test]
        fn admissible_terms_never_vanish(a in -300i64..300, b in -300i64..300, n in 1u64..200) {
            let q = p(a, b);
            prop_assume!(q.is_admissible());
            prop_assert!(!term(q, n).is_zero());
        }

        #[test]
        fn routes_agree_on_wide_inputs(a in any::<i32>(), b in any::<i32>(), n in 0u64..400) {
            let q = p(a as i64, b as i64);
            prop_assert_eq!(term(q, n), term_via_ring(q, n));
        }
    }
}

//! Thin helpers over `astro-float` for the configurable-precision real
//! arithmetic used by the bound and root computations.
//!
//! Everything exact in this crate is done on integers. `BigFloat` only
//! appears where a quantity is irrational (root magnitudes, cosines, the
//! transcendental bounds), and its exponent range is wide enough to hold
//! values such as `e^-100000` without underflow.

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word};
use num_bigint::{BigInt, Sign as IntSign};

pub use astro_float::BigFloat as Real;

/// Default mantissa width in bits.
pub const DEFAULT_PRECISION: usize = 256;

/// Precision used by the verification sweeps.
pub const VERIFY_PRECISION: usize = 512;

const RM: RoundingMode = RoundingMode::ToEven;

/// Working context: a precision and a cache of constants (π, e, ln 2).
pub struct Ctx {
    prec: usize,
    cc: Consts,
}

impl std::fmt::Debug for Ctx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ctx").field("prec", &self.prec).finish()
    }
}

impl Ctx {
    pub fn new(prec: usize) -> Self {
        let prec = prec.max(64);
        Ctx {
            prec,
            cc: Consts::new().expect("constants cache allocation"),
        }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn int(&self, v: i64) -> BigFloat {
        BigFloat::from_i64(v, self.prec)
    }

    pub fn i128(&self, v: i128) -> BigFloat {
        BigFloat::from_i128(v, self.prec)
    }

    pub fn f64(&self, v: f64) -> BigFloat {
        BigFloat::from_f64(v, self.prec)
    }

    /// Exact conversion when the integer fits in the precision, rounded otherwise.
    pub fn bigint(&self, v: &BigInt) -> BigFloat {
        let (sign, digits) = v.to_u64_digits();
        if digits.is_empty() {
            return BigFloat::from_i64(0, self.prec);
        }
        let words: Vec<Word> = digits.iter().map(|&d| d as Word).collect();
        let s = if sign == IntSign::Minus {
            Sign::Neg
        } else {
            Sign::Pos
        };
        let e = (words.len() * 64) as i32;
        let mut x = BigFloat::from_words(&words, s, e);
        if words.len() * 64 > self.prec {
            let _ = x.set_precision(self.prec, RM);
        }
        x
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.prec, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.prec, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.prec, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.prec, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.prec, RM)
    }

    pub fn powi(&self, a: &BigFloat, n: usize) -> BigFloat {
        a.powi(n, self.prec, RM)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.prec, RM)
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.prec, RM, &mut self.cc)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.prec, RM, &mut self.cc)
    }

    pub fn cos(&mut self, a: &BigFloat) -> BigFloat {
        a.cos(self.prec, RM, &mut self.cc)
    }

    pub fn sin(&mut self, a: &BigFloat) -> BigFloat {
        a.sin(self.prec, RM, &mut self.cc)
    }

    pub fn acos(&mut self, a: &BigFloat) -> BigFloat {
        a.acos(self.prec, RM, &mut self.cc)
    }

    /// `cos(k·π/n)`.
    pub fn cos_pi_frac(&mut self, k: i64, n: i64) -> BigFloat {
        let pi = self.pi();
        let arg = self.div(&self.mul(&pi, &self.int(k)), &self.int(n));
        self.cos(&arg)
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&mut self, a: &BigFloat, digits: usize) -> String {
        format_sig(a, digits, &mut self.cc)
    }
}

fn format_sig(a: &BigFloat, digits: usize, cc: &mut Consts) -> String {
    if a.is_zero() {
        return "0".to_string();
    }
    // Round to ~digits decimal digits worth of bits before formatting.
    let bits = ((digits as f64) * std::f64::consts::LOG2_10).ceil() as usize + 4;
    let mut r = a.clone();
    let _ = r.set_precision(bits.max(64), RM);
    match r.format(astro_float::Radix::Dec, RM, cc) {
        Ok(s) => s,
        Err(_) => format!("{a}"),
    }
}

/// Natural logarithm as `f64`, computed from the exponent and leading word.
/// Relative accuracy is that of `f64`; returns `-inf` for zero.
pub fn ln_abs_f64(a: &BigFloat) -> f64 {
    match a.as_raw_parts() {
        Some((words, _, _, e, _)) => {
            let top = words.last().copied().unwrap_or(0);
            if top == 0 {
                return f64::NEG_INFINITY;
            }
            let next = if words.len() >= 2 {
                words[words.len() - 2]
            } else {
                0
            };
            let frac = (top as f64) / 2f64.powi(64) + (next as f64) / 2f64.powi(128);
            frac.ln() + (e as f64) * std::f64::consts::LN_2
        }
        None => f64::NAN,
    }
}

/// Value as `f64` (saturating to `±inf`/`0` outside the `f64` range).
pub fn to_f64(a: &BigFloat) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    let l = ln_abs_f64(a);
    let mag = l.exp();
    if a.is_negative() {
        -mag
    } else {
        mag
    }
}

/// Binary exponent `e` such that `2^(e-1) ≤ |a| < 2^e`.
pub fn binary_exponent(a: &BigFloat) -> Option<i32> {
    if a.is_zero() {
        None
    } else {
        a.exponent()
    }
}

/// `ln |v|` for a big integer, accurate to `f64` relative precision.
pub fn ln_abs_bigint(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        let (_, d) = v.to_u64_digits();
        return (d[0] as f64).ln();
    }
    let shift = bits - 64;
    let top: BigInt = v.magnitude().clone().into();
    let top = top >> shift;
    let (_, d) = top.to_u64_digits();
    (d[0] as f64).ln() + (shift as f64) * std::f64::consts::LN_2
}

/// Returns the pair `(M, k)` with `a = M / 2^k` exactly, for a non-negative value.
pub fn to_dyadic(a: &BigFloat) -> Option<(num_bigint::BigUint, i64)> {
    let (words, _, sign, e, _) = a.as_raw_parts()?;
    if sign == Sign::Neg {
        return None;
    }
    let mut mant = num_bigint::BigUint::from(0u32);
    for w in words.iter().rev() {
        mant <<= 64;
        mant += num_bigint::BigUint::from(*w);
    }
    let k = (words.len() as i64) * 64 - e as i64;
    Some((mant, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bigint_conversion_is_exact() {
        let ctx = Ctx::new(256);
        let v: BigInt = BigInt::from(3u8).pow(100) * -1;
        let x = ctx.bigint(&v);
        let (m, k) = to_dyadic(&x.abs()).unwrap();
        let back = if k >= 0 {
            m >> (k as usize)
        } else {
            m << ((-k) as usize)
        };
        assert_eq!(BigInt::from(back), -v);
    }

    #[test]
    fn ln_helpers_agree() {
        let mut ctx = Ctx::new(256);
        let v = BigInt::from(10u8).pow(40);
        assert!((ln_abs_bigint(&v) - 40.0 * 10f64.ln()).abs() < 1e-12);
        let x = ctx.bigint(&v);
        assert!((ln_abs_f64(&x) - 40.0 * 10f64.ln()).abs() < 1e-12);
        let tiny = ctx.exp(&ctx.int(-100000));
        assert!((ln_abs_f64(&tiny) + 100000.0).abs() < 1e-9);
    }

    #[test]
    fn cos_of_rational_multiple() {
        let mut ctx = Ctx::new(256);
        let c = ctx.cos_pi_frac(1, 3);
        assert!((to_f64(&c) - 0.5).abs() < 1e-15);
    }
}

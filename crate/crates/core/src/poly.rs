//! Fibonacci polynomials `Fₙ(x, y) = x·Fₙ₋₁ − y·Fₙ₋₂` with `F₀ = 0`, `F₁ = 1`,
//! their binary forms `G_m`, and the cosine factorization.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::precision::{Ctx, Real};

/// `Fₙ(x, y) = Σ_h a_h·x^{n−2h−1}·y^h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibPolynomial {
    pub n: u32,
    /// `a_h` for `h = 0 ..= ⌊(n−1)/2⌋`; empty for `n = 0`.
    pub coefficients: Vec<BigInt>,
}

/// `G_m(x, y) = Σ_h a_h·x^{m−h}·y^h`, so that `Fₙ(A, B)` equals `G_m(A², B)`
/// for odd `n` and `A·G_m(A², B)` for even `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociatedForm {
    pub n: u32,
    pub m: u32,
    pub coefficients: Vec<BigInt>,
}

pub fn fib_poly(n: u32) -> FibPolynomial {
    let mut prev: Vec<BigInt> = Vec::new();
    let mut cur: Vec<BigInt> = vec![BigInt::one()];
    if n == 0 {
        return FibPolynomial {
            n,
            coefficients: prev,
        };
    }
    for _ in 1..n {
        // a_h^{(k)} = a_h^{(k−1)} − a_{h−1}^{(k−2)}
        let len = cur.len().max(prev.len() + 1);
        let mut next = vec![BigInt::zero(); len];
        for (h, c) in cur.iter().enumerate() {
            next[h] += c;
        }
        for (h, c) in prev.iter().enumerate() {
            next[h + 1] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    FibPolynomial {
        n,
        coefficients: cur,
    }
}

impl FibPolynomial {
    /// Exact value at integer arguments.
    pub fn eval(&self, a: i64, b: i64) -> BigInt {
        if self.n == 0 {
            return BigInt::zero();
        }
        let a = BigInt::from(a);
        let b = BigInt::from(b);
        let a2 = &a * &a;
        // x-powers run over x^{n−1}, x^{n−3}, …; y-powers upward from y⁰.
        let mut total = BigInt::zero();
        let mut y_pow = BigInt::one();
        let mut x_pows = Vec::with_capacity(self.coefficients.len());
        let mut xp = if self.n % 2 == 0 { a.clone() } else { BigInt::one() };
        for _ in 0..self.coefficients.len() {
            x_pows.push(xp.clone());
            xp *= &a2;
        }
        for (h, c) in self.coefficients.iter().enumerate() {
            total += c * &x_pows[self.coefficients.len() - 1 - h] * &y_pow;
            y_pow *= &b;
        }
        total
    }

    /// Checked `i128` evaluation; `None` on overflow.
    pub fn eval_i128(&self, a: i64, b: i64) -> Option<i128> {
        let coeffs = self.coefficients_i128()?;
        eval_coeffs_i128(&coeffs, self.n, a as i128, b as i128)
    }

    /// Coefficients as `i128` when they all fit.
    pub fn coefficients_i128(&self) -> Option<Vec<i128>> {
        self.coefficients.iter().map(|c| c.to_i128()).collect()
    }

    /// Value at real arguments.
    pub fn eval_real(&self, ctx: &Ctx, x: &Real, y: &Real) -> Real {
        let mut total = ctx.int(0);
        for (h, c) in self.coefficients.iter().enumerate() {
            let e = self.n as usize - 2 * h - 1;
            let term = ctx.mul(&ctx.mul(&ctx.bigint(c), &ctx.powi(x, e)), &ctx.powi(y, h));
            total = ctx.add(&total, &term);
        }
        total
    }

    /// `Σ |a_h|`.
    pub fn abs_coefficient_sum(&self) -> BigInt {
        self.coefficients.iter().map(|c| c.abs()).sum()
    }

    /// `ln(Σ|a_h| · max(|A|, √|B|)^{n−1})`, the natural size of `Fₙ(A, B)`
    /// against which floating evaluations are compared.
    pub fn ln_value_scale(&self, a: i64, b: i64) -> f64 {
        let base = (a.unsigned_abs() as f64).max((b.unsigned_abs() as f64).sqrt()).max(1.0);
        crate::precision::ln_abs_bigint(&self.abs_coefficient_sum())
            + (self.n.saturating_sub(1) as f64) * base.ln()
    }
}

/// `Fₙ(a, b)` from `i128` coefficients by Horner in `b` over `a²`.
pub(crate) fn eval_coeffs_i128(coeffs: &[i128], n: u32, a: i128, b: i128) -> Option<i128> {
    if n == 0 {
        return Some(0);
    }
    let a2 = a.checked_mul(a)?;
    // Σ a_h (a²)^{m−h} b^h = ((a_0·b⁰)·a² + a_1·b)·a² + ... read as a
    // homogeneous Horner: acc ← acc·a² + a_h·b^h.
    let mut acc: i128 = 0;
    let mut b_pow: i128 = 1;
    for (h, &c) in coeffs.iter().enumerate() {
        if h > 0 {
            b_pow = b_pow.checked_mul(b)?;
        }
        acc = acc.checked_mul(a2)?.checked_add(c.checked_mul(b_pow)?)?;
    }
    if n % 2 == 0 {
        acc = acc.checked_mul(a)?;
    }
    Some(acc)
}

pub fn associated_form(n: u32) -> AssociatedForm {
    let f = fib_poly(n);
    let m = if n == 0 { 0 } else { (n - 1) / 2 };
    AssociatedForm {
        n,
        m,
        coefficients: f.coefficients,
    }
}

impl AssociatedForm {
    /// `G_m(x, y)` at integers.
    pub fn eval(&self, x: i64, y: i64) -> BigInt {
        let x = BigInt::from(x);
        let y = BigInt::from(y);
        let mut acc = BigInt::zero();
        let mut y_pow = BigInt::one();
        for (h, c) in self.coefficients.iter().enumerate() {
            let x_pow = num_traits::pow(x.clone(), (self.m as usize) - h);
            acc += c * x_pow * &y_pow;
            y_pow *= &y;
        }
        acc
    }
}

/// The `n − 1` roots `2cos(kπ/n)` of `Fₙ(x, 1)`, for `k = 1 … n−1`.
pub fn roots_of_section(ctx: &mut Ctx, n: u32) -> Vec<Real> {
    let two = ctx.int(2);
    (1..n as i64)
        .map(|k| {
            let c = ctx.cos_pi_frac(k, n as i64);
            ctx.mul(&two, &c)
        })
        .collect()
}

/// `Fₙ(A, B)` through `A^{[n even]} · ∏_{k=1}^{⌊(n−1)/2⌋} (A² − 4B·cos²(kπ/n))`.
pub fn factored_value(ctx: &mut Ctx, n: u32, a: i64, b: i64) -> Real {
    let a_r = ctx.int(a);
    let a2 = ctx.mul(&a_r, &a_r);
    let four_b = ctx.int(4 * b);
    let mut acc = if n % 2 == 0 { a_r } else { ctx.int(1) };
    for k in 1..=((n as i64 - 1) / 2) {
        let c = ctx.cos_pi_frac(k, n as i64);
        let factor = ctx.sub(&a2, &ctx.mul(&four_b, &ctx.mul(&c, &c)));
        acc = ctx.mul(&acc, &factor);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lucas::{term, LucasParams};
    use crate::precision::{ln_abs_f64, to_f64};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn fib_poly_examples() {
        assert_eq!(fib_poly(1).coefficients, ints(&[1]));
        assert_eq!(fib_poly(5).coefficients, ints(&[1, -3, 1]));
        assert_eq!(fib_poly(6).coefficients, ints(&[1, -4, 3]));
        assert!(fib_poly(0).coefficients.is_empty());
    }

    #[test]
    fn associated_form_examples() {
        let g5 = associated_form(5);
        assert_eq!((g5.m, g5.coefficients.clone()), (2, ints(&[1, -3, 1])));
        assert_eq!(associated_form(7).m, 3);
        let g6 = associated_form(6);
        assert_eq!((g6.m, g6.coefficients), (2, ints(&[1, -4, 3])));
    }

    #[test]
    fn leading_coefficient_and_coefficient_sum() {
        for n in 2..=200u32 {
            let f = fib_poly(n);
            assert!(f.coefficients[0].is_one());
            let fib = term(LucasParams::new(1, -1), n as u64);
            assert_eq!(f.abs_coefficient_sum(), fib, "n = {n}");
        }
    }

    #[test]
    fn evaluation_matches_terms() {
        for n in 1..=60u32 {
            let f = fib_poly(n);
            for a in (-100..=100).step_by(7) {
                for b in (-100..=100).step_by(9) {
                    let expect = term(LucasParams::new(a, b), n as u64);
                    assert_eq!(f.eval(a, b), expect, "n={n} A={a} B={b}");
                    if let Some(v) = f.eval_i128(a, b) {
                        assert_eq!(BigInt::from(v), expect);
                    }
                }
            }
        }
        for n in 1..=12u32 {
            let f = fib_poly(n);
            for a in -100..=100 {
                for b in -100..=100 {
                    assert_eq!(f.eval(a, b), term(LucasParams::new(a, b), n as u64));
                }
            }
        }
    }

    #[test]
    fn form_identity() {
        for n in 1..=40u32 {
            let g = associated_form(n);
            let f = fib_poly(n);
            for a in -30..=30i64 {
                for b in -30..=30i64 {
                    let mut v = g.eval(a * a, b);
                    if n % 2 == 0 {
                        v *= a;
                    }
                    assert_eq!(v, f.eval(a, b), "n={n} A={a} B={b}");
                }
            }
        }
    }

    #[test]
    fn quintic_pell_identity() {
        let f5 = fib_poly(5);
        for a in -1000..=1000i128 {
            for b in (-1000..=1000i128).step_by(3) {
                let lhs = 4 * f5.eval_i128(a as i64, b as i64).unwrap();
                let rhs = (2 * b - 3 * a * a).pow(2) - 5 * a.pow(4);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn roots_examples() {
        let mut ctx = Ctx::new(256);
        let r4: Vec<f64> = roots_of_section(&mut ctx, 4).iter().map(to_f64).collect();
        let s2 = 2f64.sqrt();
        assert!((r4[0] - s2).abs() < 1e-15 && r4[1].abs() < 1e-15 && (r4[2] + s2).abs() < 1e-15);
        let r2: Vec<f64> = roots_of_section(&mut ctx, 2).iter().map(to_f64).collect();
        assert_eq!(r2.len(), 1);
        assert!(r2[0].abs() < 1e-15);
        let r3: Vec<f64> = roots_of_section(&mut ctx, 3).iter().map(to_f64).collect();
        assert!((r3[0] - 1.0).abs() < 1e-15 && (r3[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn roots_annihilate_the_section() {
        let mut ctx = Ctx::new(256);
        let one = ctx.int(1);
        for n in 2..=60u32 {
            let f = fib_poly(n);
            for r in roots_of_section(&mut ctx, n) {
                let v = f.eval_real(&ctx, &r, &one);
                assert!(v.is_zero() || ln_abs_f64(&v) < -30.0 * 10f64.ln(), "n={n}");
            }
        }
    }

    #[test]
    fn section_roots_are_distinct() {
        // Non-vanishing discriminant of Fₙ(x, 1): all root gaps are positive.
        let mut ctx = Ctx::new(256);
        for n in 2..=60u32 {
            let roots = roots_of_section(&mut ctx, n);
            for w in roots.windows(2) {
                let gap = ctx.sub(&w[0], &w[1]);
                assert!(to_f64(&gap) > 1e-4, "n={n}");
            }
        }
    }

    #[test]
    fn chebyshev_correspondence() {
        // Fₙ(2cos θ, 1) = sin(nθ)/sin θ.
        let mut ctx = Ctx::new(256);
        let theta = ctx.f64(0.7);
        let c = ctx.cos(&theta);
        let x = ctx.mul(&ctx.int(2), &c);
        let one = ctx.int(1);
        for n in 1..=30u32 {
            let v = to_f64(&fib_poly(n).eval_real(&ctx, &x, &one));
            let expect = (n as f64 * 0.7).sin() / 0.7f64.sin();
            assert!((v - expect).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn factored_value_examples() {
        let mut ctx = Ctx::new(256);
        let close = |ctx: &Ctx, v: &Real, expect: i64| {
            let d = ctx.sub(v, &ctx.int(expect));
            d.is_zero() || ln_abs_f64(&d) < -60.0
        };
        let v = factored_value(&mut ctx, 5, 1, 1);
        assert!(close(&ctx, &v, -1));
        let v = factored_value(&mut ctx, 6, 1, 1);
        assert!(close(&ctx, &v, 0));
        let v = factored_value(&mut ctx, 3, 2, 1);
        assert!(close(&ctx, &v, 3));
    }

    #[test]
    fn factored_value_matches_terms() {
        let mut ctx = Ctx::new(256);
        let samples = [-10_000i64, -9_973, -17, -2, -1, 1, 3, 250, 9_999, 10_000];
        for n in 2..=60u32 {
            let f = fib_poly(n);
            for &a in &samples {
                for &b in &samples {
                    let exact = ctx.bigint(&term(LucasParams::new(a, b), n as u64));
                    let approx = factored_value(&mut ctx, n, a, b);
                    let diff = ctx.sub(&approx, &exact);
                    if diff.is_zero() {
                        continue;
                    }
                    let allowed = f.ln_value_scale(a, b) - 20.0 * 10f64.ln();
                    assert!(ln_abs_f64(&diff) < allowed, "n={n} A={a} B={b}");
                }
            }
        }
    }
}

//! Effective lower bounds for `|Uₙ|`, the Laurent bound for linear forms in
//! two logarithms, and the small-ratio indices that show those bounds cannot
//! be replaced by `c·|α|ⁿ`.

use num_bigint::BigInt;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lucas::{dominant_root_abs, Kind, LucasParams};
use crate::precision::{binary_exponent, ln_abs_bigint, ln_abs_f64, to_f64, Ctx, Real};

/// Index beyond which the small-`B` non-real bound switches to `e^{−250(log n)²}`.
pub const SMALL_B_INDEX_SPLIT: u64 = 500_000_000;
/// Index beyond which the large-`B` non-real bound switches to `|α|^{−88(log n)²}`.
pub const LARGE_B_INDEX_SPLIT: u64 = 210_000_000;
/// Largest `B` handled by the small-`B` non-real branch (`e^{2π} ≈ 535.49`).
pub const SMALL_B_MAX: i64 = 535;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GrowthBranch {
    RealNegB,
    RealPosB,
    NonRealSmallB,
    NonRealLargeB,
}

impl GrowthBranch {
    pub fn of(params: LucasParams) -> Result<Self> {
        if !params.is_valid() {
            return Err(Error::InvalidParams {
                a: params.a,
                b: params.b,
            });
        }
        if params.is_degenerate() {
            return Err(Error::Degenerate {
                a: params.a,
                b: params.b,
            });
        }
        Ok(if params.discriminant() > 0 {
            if params.b < 0 {
                GrowthBranch::RealNegB
            } else {
                GrowthBranch::RealPosB
            }
        } else if params.b <= SMALL_B_MAX {
            GrowthBranch::NonRealSmallB
        } else {
            GrowthBranch::NonRealLargeB
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GrowthBranch::RealNegB => "real-negative-B",
            GrowthBranch::RealPosB => "real-positive-B",
            GrowthBranch::NonRealSmallB => "non-real-small-B",
            GrowthBranch::NonRealLargeB => "non-real-large-B",
        }
    }

    /// `ln` of the bound as an affine function of `ln|α|`:
    /// `ln bound = slope·ln|α| + offset`.
    fn affine(self, n: u64) -> (f64, f64) {
        let nf = n as f64;
        let ln4 = 4f64.ln();
        let lnn = nf.ln();
        match self {
            GrowthBranch::RealNegB => (nf - 2.0, -std::f64::consts::LN_2),
            GrowthBranch::RealPosB => (nf - 1.0, 0.0),
            GrowthBranch::NonRealSmallB if n > SMALL_B_INDEX_SPLIT => {
                (nf - 2.0, -ln4 - 250.0 * lnn * lnn)
            }
            GrowthBranch::NonRealSmallB => (nf - 2.0, -ln4 - 100_000.0),
            GrowthBranch::NonRealLargeB if n > LARGE_B_INDEX_SPLIT => {
                (nf - 2.0 - 88.0 * lnn * lnn, -ln4)
            }
            GrowthBranch::NonRealLargeB => (nf - 31_710.0, -ln4),
        }
    }
}

impl std::fmt::Display for GrowthBranch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A lower bound for `|Uₙ|`, kept both as a value and as its logarithm since
/// the non-real bounds underflow any machine float.
#[derive(Debug, Clone)]
pub struct GrowthBound {
    pub n: u64,
    pub branch: GrowthBranch,
    pub ln_value: Real,
    pub value: Real,
}

pub fn growth_lower_bound(ctx: &mut Ctx, params: LucasParams, n: u64) -> Result<GrowthBound> {
    if n < 2 {
        return Err(Error::out_of_range("n", n, "need n ≥ 2"));
    }
    let branch = GrowthBranch::of(params)?;
    let ln_alpha = {
        let alpha = dominant_root_abs(ctx, params);
        ctx.ln(&alpha)
    };
    let nr = ctx.int(n as i64);
    let ln4 = {
        let four = ctx.int(4);
        ctx.ln(&four)
    };
    let ln_n = ctx.ln(&nr);
    let ln_n2 = ctx.mul(&ln_n, &ln_n);
    let ln_value = match branch {
        GrowthBranch::RealNegB => {
            let two = ctx.int(2);
            let ln2 = ctx.ln(&two);
            ctx.sub(&ctx.mul(&ctx.int(n as i64 - 2), &ln_alpha), &ln2)
        }
        GrowthBranch::RealPosB => ctx.mul(&ctx.int(n as i64 - 1), &ln_alpha),
        GrowthBranch::NonRealSmallB => {
            let penalty = if n > SMALL_B_INDEX_SPLIT {
                ctx.mul(&ctx.int(250), &ln_n2)
            } else {
                ctx.int(100_000)
            };
            let main = ctx.mul(&ctx.int(n as i64 - 2), &ln_alpha);
            ctx.sub(&ctx.sub(&main, &penalty), &ln4)
        }
        GrowthBranch::NonRealLargeB => {
            let exponent = if n > LARGE_B_INDEX_SPLIT {
                ctx.sub(&ctx.int(n as i64 - 2), &ctx.mul(&ctx.int(88), &ln_n2))
            } else {
                ctx.int(n as i64 - 31_710)
            };
            ctx.sub(&ctx.mul(&exponent, &ln_alpha), &ln4)
        }
    };
    let value = ctx.exp(&ln_value);
    Ok(GrowthBound {
        n,
        branch,
        ln_value,
        value,
    })
}

/// Decides `|Uₙ| ≥ bound` for many indices of one sequence, caching `ln|α|`.
///
/// An `f64` comparison of logarithms settles all but near-ties; those are
/// recomputed with [`growth_lower_bound`] at the context precision.
pub struct GrowthCertifier {
    params: LucasParams,
    branch: GrowthBranch,
    ln_alpha: f64,
}

/// Relative gap below which the `f64` filter defers to the exact comparison.
const LOG_FILTER_GAP: f64 = 1e-9;

impl GrowthCertifier {
    pub fn new(params: LucasParams) -> Result<Self> {
        let branch = GrowthBranch::of(params)?;
        let ctx = Ctx::new(128);
        let alpha = dominant_root_abs(&ctx, params);
        Ok(GrowthCertifier {
            params,
            branch,
            ln_alpha: ln_abs_f64(&alpha),
        })
    }

    pub fn branch(&self) -> GrowthBranch {
        self.branch
    }

    /// `ln` of the bound in `f64`.
    pub fn ln_bound_f64(&self, n: u64) -> f64 {
        let (slope, offset) = self.branch.affine(n);
        slope * self.ln_alpha + offset
    }

    pub fn holds(&self, ctx: &mut Ctx, n: u64, u_n: &BigInt) -> Result<bool> {
        let lhs = ln_abs_bigint(u_n);
        let rhs = self.ln_bound_f64(n);
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        if lhs - rhs > LOG_FILTER_GAP * scale {
            return Ok(true);
        }
        if rhs - lhs > LOG_FILTER_GAP * scale {
            return Ok(false);
        }
        let bound = growth_lower_bound(ctx, self.params, n)?;
        let u = ctx.bigint(u_n).abs();
        Ok(u.cmp(&bound.value).is_some_and(|o| o >= 0))
    }
}

/// Inputs to the Laurent bound for `Λ = b₂·log α₂ − b₁·log α₁`.
#[derive(Debug, Clone)]
pub struct LinFormParams {
    /// `[ℚ(α₁, α₂) : ℚ] / [ℝ(α₁, α₂) : ℝ]`.
    pub d: Ratio<i64>,
    pub log_a1: Real,
    pub log_a2: Real,
    pub b1: i64,
    pub b2: i64,
    /// `|b₁|/(D·log A₂) + |b₂|/(D·log A₁)`.
    pub b_prime: Real,
}

impl LinFormParams {
    pub fn new(
        ctx: &Ctx,
        d: Ratio<i64>,
        log_a1: Real,
        log_a2: Real,
        b1: i64,
        b2: i64,
    ) -> Result<Self> {
        check_positive("log A1", &log_a1)?;
        check_positive("log A2", &log_a2)?;
        if b1 == 0 || b2 == 0 {
            return Err(Error::out_of_range("b1·b2", 0, "need non-zero b1 and b2"));
        }
        if *d.numer() <= 0 || *d.denom() <= 0 {
            return Err(Error::out_of_range("D", d, "need D > 0"));
        }
        let dr = ratio_to_real(ctx, d);
        let t1 = ctx.div(&ctx.int(b1.abs()), &ctx.mul(&dr, &log_a2));
        let t2 = ctx.div(&ctx.int(b2.abs()), &ctx.mul(&dr, &log_a1));
        let b_prime = ctx.add(&t1, &t2);
        Ok(LinFormParams {
            d,
            log_a1,
            log_a2,
            b1,
            b2,
            b_prime,
        })
    }

    /// Replaces `b′` by a caller-chosen value.
    pub fn with_b_prime(mut self, b_prime: Real) -> Self {
        self.b_prime = b_prime;
        self
    }
}

fn check_positive(name: &'static str, x: &Real) -> Result<()> {
    if x.is_positive() && !x.is_zero() {
        Ok(())
    } else {
        Err(Error::out_of_range(name, format!("{x}"), "must be positive"))
    }
}

fn ratio_to_real(ctx: &Ctx, r: Ratio<i64>) -> Real {
    ctx.div(&ctx.int(*r.numer()), &ctx.int(*r.denom()))
}

/// A bound carried as its logarithm and its value.
#[derive(Debug, Clone)]
pub struct LogBound {
    pub ln_value: Real,
    pub value: Real,
}

fn max3(a: Real, b: Real, c: Real) -> Real {
    let ab = if a.cmp(&b).is_some_and(|o| o >= 0) { a } else { b };
    if ab.cmp(&c).is_some_and(|o| o >= 0) {
        ab
    } else {
        c
    }
}

/// `exp(−25.2·D⁴·(max{log b′ + 0.21, 20/D, 1})²·log A₁·log A₂)`.
pub fn laurent_lower_bound(ctx: &mut Ctx, p: &LinFormParams) -> Result<LogBound> {
    check_positive("log A1", &p.log_a1)?;
    check_positive("log A2", &p.log_a2)?;
    check_positive("b'", &p.b_prime)?;
    let d = ratio_to_real(ctx, p.d);
    let ln_b = ctx.ln(&p.b_prime);
    let c021 = ctx.div(&ctx.int(21), &ctx.int(100));
    let m = max3(
        ctx.add(&ln_b, &c021),
        ctx.div(&ctx.int(20), &d),
        ctx.int(1),
    );
    let d4 = ctx.powi(&d, 4);
    let c252 = ctx.div(&ctx.int(252), &ctx.int(10));
    let mut e = ctx.mul(&c252, &d4);
    e = ctx.mul(&e, &ctx.mul(&m, &m));
    e = ctx.mul(&e, &ctx.mul(&p.log_a1, &p.log_a2));
    let ln_value = e.neg();
    let value = ctx.exp(&ln_value);
    Ok(LogBound { ln_value, value })
}

fn require_non_real(params: LucasParams) -> Result<()> {
    let kind = if !params.is_valid() {
        Kind::Invalid
    } else if params.is_degenerate() {
        Kind::Degenerate
    } else if params.discriminant() < 0 {
        Kind::NonRealCase
    } else {
        Kind::RealCase
    };
    match kind {
        Kind::NonRealCase => Ok(()),
        Kind::Degenerate => Err(Error::Degenerate {
            a: params.a,
            b: params.b,
        }),
        _ => Err(Error::WrongCase {
            a: params.a,
            b: params.b,
            expected: "non-real",
        }),
    }
}

/// `log A_δ` for `δ = β/α`: `π` when `B ≤ 535`, `½·log B` otherwise.
pub fn log_a_delta(ctx: &mut Ctx, params: LucasParams) -> Real {
    if params.b <= SMALL_B_MAX {
        ctx.pi()
    } else {
        let b = ctx.int(params.b);
        let l = ctx.ln(&b);
        ctx.div(&l, &ctx.int(2))
    }
}

/// Lower bound for `|δ^ℓ − 1|` with `δ = β/α`, `D_δ = 1`:
/// `½·exp(−25.2π·(max{log((π + log A_δ)|ℓ|/(π·log A_δ)) + 0.21, 20, 1})²·log A_δ)`.
pub fn delta_power_minus_one_bound(
    ctx: &mut Ctx,
    params: LucasParams,
    ell: i64,
) -> Result<LogBound> {
    require_non_real(params)?;
    if ell == 0 {
        return Err(Error::out_of_range("ell", ell, "must be non-zero"));
    }
    let pi = ctx.pi();
    let log_a = log_a_delta(ctx, params);
    let ratio = ctx.div(
        &ctx.mul(&ctx.add(&pi, &log_a), &ctx.int(ell.abs())),
        &ctx.mul(&pi, &log_a),
    );
    let ln_ratio = ctx.ln(&ratio);
    let c021 = ctx.div(&ctx.int(21), &ctx.int(100));
    let m = max3(ctx.add(&ln_ratio, &c021), ctx.int(20), ctx.int(1));
    let c252 = ctx.div(&ctx.int(252), &ctx.int(10));
    let e = ctx.mul(&ctx.mul(&c252, &pi), &ctx.mul(&ctx.mul(&m, &m), &log_a));
    let two = ctx.int(2);
    let ln2 = ctx.ln(&two);
    let ln_value = ctx.sub(&e.neg(), &ln2);
    let value = ctx.exp(&ln_value);
    Ok(LogBound { ln_value, value })
}

/// `δ = β/α = (A² − 2B)/(2B) − i·A·√(4B − A²)/(2B)` for a non-real pair.
fn delta(ctx: &Ctx, params: LucasParams) -> (Real, Real) {
    let a = params.a as i128;
    let b = params.b as i128;
    let two_b = ctx.i128(2 * b);
    let re = ctx.div(&ctx.i128(a * a - 2 * b), &two_b);
    let root = ctx.sqrt(&ctx.i128(4 * b - a * a));
    let im = ctx.div(&ctx.mul(&ctx.i128(a), &root), &two_b).neg();
    (re, im)
}

fn cmul(ctx: &Ctx, x: &(Real, Real), y: &(Real, Real)) -> (Real, Real) {
    let re = ctx.sub(&ctx.mul(&x.0, &y.0), &ctx.mul(&x.1, &y.1));
    let im = ctx.add(&ctx.mul(&x.0, &y.1), &ctx.mul(&x.1, &y.0));
    (re, im)
}

fn cpow(ctx: &Ctx, base: &(Real, Real), mut e: u64) -> (Real, Real) {
    let mut acc = (ctx.int(1), ctx.int(0));
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = cmul(ctx, &acc, &b);
        }
        e >>= 1;
        if e > 0 {
            b = cmul(ctx, &b, &b);
        }
    }
    acc
}

/// `|z − 1|²`.
fn dist_sq_to_one(ctx: &Ctx, z: &(Real, Real)) -> Real {
    let dr = ctx.sub(&z.0, &ctx.int(1));
    ctx.add(&ctx.mul(&dr, &dr), &ctx.mul(&z.1, &z.1))
}

/// Outcome of checking `|δ^ℓ − 1| ≥ bound` for `ℓ = 1 … ell_max`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeltaSweep {
    pub params: LucasParams,
    pub ell_max: u64,
    pub violations: Vec<u64>,
    /// Smallest observed `ln|δ^ℓ − 1|`.
    pub min_ln_gap: f64,
    /// `ℓ` attaining it.
    pub argmin: u64,
    /// `ln` of the bound, which is constant in `ℓ` on this range when the
    /// `max` is attained by 20.
    pub max_ln_bound: f64,
}

/// Evaluates `δ^ℓ` by repeated multiplication at the context precision and
/// compares each `|δ^ℓ − 1|` with [`delta_power_minus_one_bound`].
pub fn delta_sweep(ctx: &mut Ctx, params: LucasParams, ell_max: u64) -> Result<DeltaSweep> {
    require_non_real(params)?;
    let d = delta(ctx, params);
    let mut z = d.clone();
    let mut violations = Vec::new();
    let mut min_ln_gap = f64::INFINITY;
    let mut argmin = 0;
    let mut max_ln_bound = f64::NEG_INFINITY;
    // The bound is non-increasing in |ℓ| and constant while the max is pinned
    // at 20; when the endpoints agree it is constant on the whole range.
    let first = delta_power_minus_one_bound(ctx, params, 1)?;
    let last = delta_power_minus_one_bound(ctx, params, ell_max.max(1) as i64)?;
    let flat = first.ln_value == last.ln_value;
    let flat_ln = to_f64(&first.ln_value);
    for ell in 1..=ell_max {
        if ell > 1 {
            z = cmul(ctx, &z, &d);
        }
        let gap2 = dist_sq_to_one(ctx, &z);
        let ln_gap = if gap2.is_zero() {
            f64::NEG_INFINITY
        } else {
            0.5 * ln_abs_f64(&gap2)
        };
        if ln_gap < min_ln_gap {
            min_ln_gap = ln_gap;
            argmin = ell;
        }
        let ln_bound = if flat {
            flat_ln
        } else {
            to_f64(&delta_power_minus_one_bound(ctx, params, ell as i64)?.ln_value)
        };
        max_ln_bound = max_ln_bound.max(ln_bound);
        // Accumulated rounding is far below 2^{-400} at 512 bits and ℓ ≤ 10⁴.
        if ln_gap < ln_bound || gap2.is_zero() {
            violations.push(ell);
        }
    }
    Ok(DeltaSweep {
        params,
        ell_max,
        violations,
        min_ln_gap,
        argmin,
        max_ln_bound,
    })
}

/// Continued-fraction indices where `|(β/α)ⁿ − 1|` is `O(1/n)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SmallRatioIndices {
    pub params: LucasParams,
    /// Convergent denominators of `θ` where `β/α = e^{2πiθ}`, `θ ∈ (0, 1)`.
    pub indices: Vec<u64>,
    /// `n·|(β/α)ⁿ − 1|` at each index.
    pub scaled_gaps: Vec<f64>,
    /// `max n·|(β/α)ⁿ − 1|`; at most `2π` by the convergent property.
    pub max_scaled_gap: f64,
}

/// Largest number of convergents accepted by [`small_ratio_indices`].
pub const MAX_CONVERGENTS: usize = 40;

pub fn small_ratio_indices(
    ctx: &mut Ctx,
    params: LucasParams,
    count: usize,
) -> Result<SmallRatioIndices> {
    require_non_real(params)?;
    if count == 0 || count > MAX_CONVERGENTS {
        return Err(Error::out_of_range(
            "count",
            count,
            format!("need 1 ≤ count ≤ {MAX_CONVERGENTS}"),
        ));
    }
    // Enough bits that every reported convergent is a true convergent and
    // n·|δⁿ − 1| is accurate for denominators up to ~2^{2·count}.
    let mut hp = Ctx::new(ctx.prec().max(256 + 8 * count));
    let theta = theta_of(&mut hp, params);
    let indices = convergent_denominators(&hp, &theta, count);
    let d = delta(&hp, params);
    let mut scaled_gaps = Vec::with_capacity(indices.len());
    for &q in &indices {
        let z = cpow(&hp, &d, q);
        let g = dist_sq_to_one(&hp, &z);
        let gap = if g.is_zero() {
            0.0
        } else {
            (0.5 * ln_abs_f64(&g)).exp()
        };
        scaled_gaps.push(q as f64 * gap);
    }
    let max_scaled_gap = scaled_gaps.iter().copied().fold(0.0, f64::max);
    Ok(SmallRatioIndices {
        params,
        indices,
        scaled_gaps,
        max_scaled_gap,
    })
}

/// `θ = 1 − φ/π` with `cos φ = A/(2√B)`, so that `β/α = e^{2πiθ}`.
pub(crate) fn theta_of(ctx: &mut Ctx, params: LucasParams) -> Real {
    let phi = arg_alpha(ctx, params);
    let pi = ctx.pi();
    ctx.sub(&ctx.int(1), &ctx.div(&phi, &pi))
}

/// `φ = arg α ∈ (0, π)` for a non-real pair.
pub(crate) fn arg_alpha(ctx: &mut Ctx, params: LucasParams) -> Real {
    let sb = ctx.sqrt(&ctx.int(params.b));
    let c = ctx.div(&ctx.int(params.a), &ctx.mul(&ctx.int(2), &sb));
    ctx.acos(&c)
}

/// Denominators `q₀ = 1, q₁, …` of the convergents of `x ∈ (0, 1)`.
fn convergent_denominators(ctx: &Ctx, x: &Real, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let (mut q_prev, mut q) = (0u64, 1u64);
    out.push(q);
    let mut frac = x.clone();
    while out.len() < count {
        if frac.is_zero() {
            break;
        }
        let inv = ctx.div(&ctx.int(1), &frac);
        let a = inv.floor();
        let a_u = to_f64(&a).round() as u64;
        let Some(next) = a_u.checked_mul(q).and_then(|v| v.checked_add(q_prev)) else {
            break;
        };
        q_prev = q;
        q = next;
        out.push(q);
        frac = ctx.sub(&inv, &a);
    }
    out
}

/// `h(β/α)` from the Mahler measure of `Bx² − (A² − 2B)x + B`.
pub fn ratio_height(ctx: &mut Ctx, params: LucasParams) -> Result<Real> {
    require_non_real(params)?;
    let a = params.a as i128;
    let b = params.b as i128;
    // Discriminant (A² − 2B)² − 4B² = A²(A² − 4B) < 0: complex-conjugate roots.
    let disc = (a * a - 2 * b).pow(2) - 4 * b * b;
    let two_b = ctx.i128(2 * b);
    let re = ctx.div(&ctx.i128(a * a - 2 * b), &two_b);
    let im = ctx.div(&ctx.sqrt(&ctx.i128(-disc)), &two_b);
    let modulus = ctx.sqrt(&ctx.add(&ctx.mul(&re, &re), &ctx.mul(&im, &im)));
    let one = ctx.int(1);
    let big = if modulus.cmp(&one).is_some_and(|o| o > 0) {
        ctx.ln(&modulus)
    } else {
        ctx.int(0)
    };
    let lead = ctx.int(params.b.abs());
    let ln_lead = ctx.ln(&lead);
    // Both conjugates share the modulus.
    let sum = ctx.add(&ln_lead, &ctx.mul(&ctx.int(2), &big));
    Ok(ctx.div(&sum, &ctx.int(2)))
}

/// `true` when `x ≥ y` for two positive reals, compared through their binary
/// exponents first.
pub fn ge_positive(x: &Real, y: &Real) -> bool {
    match (binary_exponent(x), binary_exponent(y)) {
        (Some(ex), Some(ey)) if ex != ey => ex > ey,
        _ => x.cmp(y).is_some_and(|o| o >= 0),
    }
}

/// Result of checking `|Uₙ| ≥` the growth bound over a box of pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrowthSweep {
    pub a_max: i64,
    pub b_max: i64,
    pub n_max: u64,
    /// Non-degenerate pairs checked.
    pub pairs: u64,
    pub terms: u64,
    /// `(A, B, n)` with `|Uₙ|` below the bound.
    pub violations: Vec<(i64, i64, u64)>,
}

/// Checks every non-degenerate pair with `|A| ≤ a_max`, `|B| ≤ b_max` at all
/// indices `2 ≤ n ≤ n_max`, generating terms by the recurrence.
pub fn growth_sweep(ctx: &mut Ctx, a_max: i64, b_max: i64, n_max: u64) -> Result<GrowthSweep> {
    if a_max < 0 || b_max < 0 {
        return Err(Error::out_of_range("box", format!("({a_max}, {b_max})"), "must be non-negative"));
    }
    let (mut pairs, mut terms, mut violations) = (0, 0, Vec::new());
    for a in -a_max..=a_max {
        for b in -b_max..=b_max {
            let p = LucasParams::new(a, b);
            if !p.is_admissible() {
                continue;
            }
            pairs += 1;
            let cert = GrowthCertifier::new(p)?;
            let (mut u0, mut u1) = (BigInt::from(0), BigInt::from(1));
            for n in 2..=n_max {
                let next = a * &u1 - b * &u0;
                u0 = std::mem::replace(&mut u1, next);
                terms += 1;
                if !cert.holds(ctx, n, &u1)? {
                    violations.push((a, b, n));
                }
            }
        }
    }
    Ok(GrowthSweep {
        a_max,
        b_max,
        n_max,
        pairs,
        terms,
        violations,
    })
}

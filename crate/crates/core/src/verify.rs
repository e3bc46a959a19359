//! The invariant suite: eleven checks with fixed ranges and tolerances,
//! each reporting pass or fail with a one-line summary.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::census::{census, Threshold};
use crate::error::Result;
use crate::growth::{delta_sweep, growth_sweep};
use crate::lucas::{classify, is_degenerate_oracle, term, term_via_ring, Kind, LucasParams};
use crate::numutil::{coprime_pair_count, fibonacci_number};
use crate::oracle::census_naive;
use crate::poly::{factored_value, fib_poly};
use crate::precision::{ln_abs_bigint, ln_abs_f64, Ctx, VERIFY_PRECISION};
use crate::term_sets::{
    case_emptiness, density_check, exponent_regression, ln_ge_set, ln_set, thm22_upper,
};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(serialize_with = "as_millis")]
    pub elapsed: Duration,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_millis())
}

impl std::fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<28} {} ({:.1}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

/// Ranges for each check. [`SuiteConfig::full`] uses the acceptance ranges.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub precision: usize,
    pub seed: u64,
    pub growth_ab: i64,
    pub growth_n_max: u64,
    pub census_t_max: i64,
    pub census_oracle_t_max: i64,
    pub bound_indices: Vec<u32>,
    pub bound_ns: Vec<u64>,
    pub emptiness_indices: Vec<u32>,
    pub emptiness_n: u64,
    pub density_n: u64,
    pub regression_ns: Vec<u64>,
    pub ring_samples: usize,
    pub ring_n_max: u64,
    pub factored_samples: usize,
    pub delta_pairs: usize,
    pub delta_ell: u64,
    /// Largest `B` drawn for the linear-form pairs.
    pub delta_b_max: i64,
    pub coeff_n_max: u32,
    pub coprime_n: u64,
    pub pell_box: i64,
    pub classify_box: i64,
}

impl SuiteConfig {
    pub fn full() -> Self {
        SuiteConfig {
            precision: 256,
            seed: 20_240_601,
            growth_ab: 40,
            growth_n_max: 300,
            census_t_max: 100,
            census_oracle_t_max: 12,
            bound_indices: (5..=12).collect(),
            bound_ns: vec![100, 1_000, 10_000, 100_000],
            emptiness_indices: vec![5, 6, 7],
            emptiness_n: 10_000,
            density_n: 100_000,
            regression_ns: vec![1_000, 10_000, 100_000, 1_000_000],
            ring_samples: 10_000,
            ring_n_max: 500,
            factored_samples: 500,
            delta_pairs: 200,
            delta_ell: 10_000,
            delta_b_max: 10_000,
            coeff_n_max: 200,
            coprime_n: 20,
            pell_box: 1_000,
            classify_box: 200,
        }
    }

    /// Reduced ranges with the same tolerances, for smoke runs.
    pub fn quick() -> Self {
        SuiteConfig {
            growth_ab: 12,
            growth_n_max: 80,
            census_t_max: 20,
            census_oracle_t_max: 6,
            bound_indices: (5..=8).collect(),
            bound_ns: vec![100, 1_000],
            emptiness_n: 1_000,
            regression_ns: vec![1_000, 10_000, 100_000],
            ring_samples: 500,
            factored_samples: 50,
            delta_pairs: 5,
            delta_ell: 500,
            pell_box: 100,
            classify_box: 30,
            ..Self::full()
        }
    }
}

pub const CRITERIA: [(u8, &str); 11] = [
    (1, "growth bound"),
    (2, "census sandwich"),
    (3, "census oracle"),
    (4, "term-set upper bounds"),
    (5, "case emptiness"),
    (6, "small-index density"),
    (7, "exponent regression"),
    (8, "closed-form equivalence"),
    (9, "linear-form bound"),
    (10, "coefficient identities"),
    (11, "degeneracy equivalence"),
];

pub fn run_criterion(id: u8, cfg: &SuiteConfig) -> CriterionOutcome {
    let name = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map(|c| c.1)
        .unwrap_or("unknown");
    let start = Instant::now();
    let outcome = match id {
        1 => growth(cfg),
        2 => census_sandwich(cfg),
        3 => census_oracle(cfg),
        4 => term_set_bounds(cfg),
        5 => emptiness(cfg),
        6 => density(cfg),
        7 => regression(cfg),
        8 => closed_forms(cfg),
        9 => linear_forms(cfg),
        10 => identities(cfg),
        11 => degeneracy(cfg),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionOutcome {
        id,
        name,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> Vec<CriterionOutcome> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id, cfg)).collect()
}

type Check = Result<(bool, String)>;

fn growth(cfg: &SuiteConfig) -> Check {
    let mut ctx = Ctx::new(cfg.precision);
    let r = cfg.growth_ab;
    let s = growth_sweep(&mut ctx, r, r, cfg.growth_n_max)?;
    Ok((
        s.violations.is_empty(),
        format!(
            "{} pairs, {} terms, {} violations{}",
            s.pairs,
            s.terms,
            s.violations.len(),
            first(&s.violations)
        ),
    ))
}

fn first<T: std::fmt::Debug>(v: &[T]) -> String {
    v.first().map(|x| format!(", first {x:?}")).unwrap_or_default()
}

fn census_sandwich(cfg: &SuiteConfig) -> Check {
    let mut bad = Vec::new();
    let mut last = 0;
    for t in 2..=cfg.census_t_max {
        let r = census(Threshold::integer(t))?;
        if !r.within_bounds() {
            bad.push(t);
        }
        last = r.exact_count;
    }
    Ok((
        bad.is_empty(),
        format!(
            "t = 2..={}, {} violations{}, count(t_max) = {last}",
            cfg.census_t_max,
            bad.len(),
            first(&bad)
        ),
    ))
}

fn census_oracle(cfg: &SuiteConfig) -> Check {
    let mut bad = Vec::new();
    let mut n = 0;
    // Integers and half-integers from 2 up to the limit.
    for twice in 4..=2 * cfg.census_oracle_t_max {
        let t = Threshold::new(twice as i128, 2)?;
        n += 1;
        if census(t)?.exact_count != census_naive(t) {
            bad.push(t.to_string());
        }
    }
    Ok((
        bad.is_empty(),
        format!(
            "{n} thresholds up to {}, {} mismatches{}",
            cfg.census_oracle_t_max,
            bad.len(),
            first(&bad)
        ),
    ))
}

fn term_set_bounds(cfg: &SuiteConfig) -> Check {
    let mut bad = Vec::new();
    let mut worst: f64 = 0.0;
    for &n in &cfg.bound_indices {
        for &big_n in &cfg.bound_ns {
            let ub = thm22_upper(n, big_n)?;
            let c = ln_set(n, big_n, false)?.count as f64;
            let g = ln_ge_set(n, big_n)?.count as f64;
            worst = worst.max(c / ub.part_i).max(g / ub.part_ii);
            if c > ub.part_i || g > ub.part_ii {
                bad.push((n, big_n));
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!(
            "{} (n, N) cases, {} violations, largest count/bound {worst:.2e}",
            cfg.bound_indices.len() * cfg.bound_ns.len(),
            bad.len()
        ),
    ))
}

fn emptiness(cfg: &SuiteConfig) -> Check {
    let (mut checked, mut hits) = (0u64, Vec::new());
    for &n in &cfg.emptiness_indices {
        let c = case_emptiness(n, cfg.emptiness_n)?;
        checked += c.large_a_checked + c.negative_b_checked;
        hits.extend(c.large_a_hits.iter().chain(&c.negative_b_hits).map(|&p| (n, p)));
    }
    Ok((
        hits.is_empty(),
        format!(
            "N = {}, {checked} pairs, {} counterexamples{}",
            cfg.emptiness_n,
            hits.len(),
            first(&hits)
        ),
    ))
}

fn density(cfg: &SuiteConfig) -> Check {
    let big_n = cfg.density_n;
    let d2 = density_check(2, big_n)?;
    let d3 = density_check(3, big_n)?;
    let d4 = density_check(4, big_n)?;
    let d4f = *d4.numer() as f64 / *d4.denom() as f64;
    let ok = d2 == 1.into() && d3 == 1.into() && (0.74..=0.76).contains(&d4f);
    Ok((ok, format!("N = {big_n}: n=2 {d2}, n=3 {d3}, n=4 {d4f:.5}")))
}

fn regression(cfg: &SuiteConfig) -> Check {
    let r7 = exponent_regression(7, &cfg.regression_ns)?;
    let r5 = exponent_regression(5, &cfg.regression_ns)?;
    let ok = (r7.slope - 0.5).abs() <= 0.15 && (r5.slope - 0.75).abs() <= 0.15;
    Ok((
        ok,
        format!(
            "slope n=7 {:.4} (target 0.5), n=5 {:.4} (target 0.75); counts {:?} / {:?}",
            r7.slope, r5.slope, r7.counts, r5.counts
        ),
    ))
}

fn closed_forms(cfg: &SuiteConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut ring_bad = Vec::new();
    for _ in 0..cfg.ring_samples {
        let a = rng.random_range(-1000..=1000i64);
        let b = rng.random_range(-1000..=1000i64);
        let n = rng.random_range(0..=cfg.ring_n_max);
        let p = LucasParams::new(a, b);
        if term(p, n) != term_via_ring(p, n) {
            ring_bad.push((a, b, n));
        }
    }
    let mut ctx = Ctx::new(cfg.precision);
    let ln_tol = (1e-20f64).ln();
    let (mut fv_bad, mut worst) = (Vec::new(), f64::NEG_INFINITY);
    let mut done = 0;
    while done < cfg.factored_samples {
        let a = rng.random_range(-100..=100i64);
        let b = rng.random_range(-100..=100i64);
        let n = rng.random_range(2..=60u32);
        let p = LucasParams::new(a, b);
        if !p.is_admissible() {
            continue;
        }
        done += 1;
        let exact = term(p, n as u64);
        let approx = factored_value(&mut ctx, n, a, b);
        let diff = ctx.sub(&approx, &ctx.bigint(&exact));
        let rel = if diff.is_zero() {
            f64::NEG_INFINITY
        } else {
            ln_abs_f64(&diff) - ln_abs_bigint(&exact)
        };
        worst = worst.max(rel);
        if rel > ln_tol {
            fv_bad.push((a, b, n));
        }
    }
    Ok((
        ring_bad.is_empty() && fv_bad.is_empty(),
        format!(
            "{} ring samples, {} mismatches; {} factored samples, worst relative error 1e{:.1}",
            cfg.ring_samples,
            ring_bad.len(),
            cfg.factored_samples,
            worst / std::f64::consts::LN_10
        ),
    ))
}

fn linear_forms(cfg: &SuiteConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9);
    let mut ctx = Ctx::new(VERIFY_PRECISION.max(cfg.precision));
    let (mut done, mut bad) = (0, Vec::new());
    let mut min_margin = f64::INFINITY;
    while done < cfg.delta_pairs {
        let b = rng.random_range(2..=cfg.delta_b_max);
        let a_lim = (2.0 * (b as f64).sqrt()).ceil() as i64;
        let a = rng.random_range(-a_lim..=a_lim);
        let p = LucasParams::new(a, b);
        if !p.is_admissible() || classify(p).kind != Kind::NonRealCase {
            continue;
        }
        done += 1;
        let s = delta_sweep(&mut ctx, p, cfg.delta_ell)?;
        min_margin = min_margin.min(s.min_ln_gap - s.max_ln_bound);
        if !s.violations.is_empty() {
            bad.push((a, b, s.violations[0]));
        }
    }
    Ok((
        bad.is_empty(),
        format!(
            "{} pairs with B ≤ {}, ℓ ≤ {}, {} violations, smallest log margin {min_margin:.1}",
            cfg.delta_pairs,
            cfg.delta_b_max,
            cfg.delta_ell,
            bad.len()
        ),
    ))
}

fn identities(cfg: &SuiteConfig) -> Check {
    let mut coeff_bad = Vec::new();
    for n in 2..=cfg.coeff_n_max {
        let s = fib_poly(n).abs_coefficient_sum();
        let f = term(LucasParams::new(1, -1), n as u64);
        if s != f || s != BigInt::from(fibonacci_number(n as u64)) {
            coeff_bad.push(n);
        }
    }
    let coprime = coprime_pair_count(cfg.coprime_n)?;
    let coprime_ok = cfg.coprime_n != 20 || coprime >= 16_000;
    let coeffs = fib_poly(5).coefficients_i128().expect("small coefficients");
    let mut pell_bad = Vec::new();
    let r = cfg.pell_box as i128;
    for a in -r..=r {
        for b in -r..=r {
            let f5 = coeffs[0] * a.pow(4) + coeffs[1] * a * a * b + coeffs[2] * b * b;
            if 4 * f5 != (2 * b - 3 * a * a).pow(2) - 5 * a.pow(4) {
                pell_bad.push((a, b));
            }
        }
    }
    Ok((
        coeff_bad.is_empty() && coprime_ok && pell_bad.is_empty(),
        format!(
            "coefficient sums n ≤ {}: {} bad; coprime pairs({}) = {coprime}; quintic identity on |A|,|B| ≤ {}: {} bad",
            cfg.coeff_n_max,
            coeff_bad.len(),
            cfg.coprime_n,
            cfg.pell_box,
            pell_bad.len()
        ),
    ))
}

fn degeneracy(cfg: &SuiteConfig) -> Check {
    let r = cfg.classify_box;
    let (mut valid, mut degenerate, mut bad) = (0u64, 0u64, Vec::new());
    for a in -r..=r {
        for b in -r..=r {
            let p = LucasParams::new(a, b);
            if !p.is_valid() {
                continue;
            }
            valid += 1;
            let fast = classify(p).kind == Kind::Degenerate;
            let slow = is_degenerate_oracle(p)?;
            degenerate += fast as u64;
            if fast != slow {
                bad.push((a, b));
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!("{valid} valid pairs, {degenerate} degenerate, {} disagreements", bad.len()),
    ))
}

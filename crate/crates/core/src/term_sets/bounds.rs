//! Published upper bounds, densities for small indices and exponent fits.

use num_rational::Ratio;
use serde::Serialize;

use super::ln_set;
use crate::error::{Error, Result};

/// Upper bounds on `|𝓛ₙ(N)|` (part i) and `|𝓛≥ₙ(N)|` (part ii).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UpperBounds {
    pub part_i: f64,
    pub part_ii: f64,
}

/// `(612 + 2^{20−n}n²)·N^{3/(n−1)}` and
/// `(612 + 2^{22−n}n²)·N^{3/(n−1)} + 1836·N^{3/n}·ln N`, for `n ≥ 5`.
pub fn thm22_upper(n: u32, big_n: u64) -> Result<UpperBounds> {
    if n < 5 {
        return Err(Error::out_of_range("n", n, "must be at least 5"));
    }
    if big_n == 0 {
        return Err(Error::out_of_range("N", big_n, "must be positive"));
    }
    let nf = n as f64;
    let x = big_n as f64;
    let power = x.powf(3.0 / (nf - 1.0));
    let sq = nf * nf;
    let part_i = (612.0 + 2f64.powi(20 - n as i32) * sq) * power;
    let part_ii = (612.0 + 2f64.powi(22 - n as i32) * sq) * power + 1836.0 * x.powf(3.0 / nf) * x.ln();
    Ok(UpperBounds { part_i, part_ii })
}

/// Largest `N` accepted by [`density_check`].
pub const DENSITY_MAX_N: u64 = 1_000_000;

/// `|𝓛ₙ(N)| / N` for `n ∈ {2, 3, 4}`.
pub fn density_check(n: u32, big_n: u64) -> Result<Ratio<u64>> {
    if !(2..=4).contains(&n) {
        return Err(Error::out_of_range("n", n, "must be 2, 3 or 4"));
    }
    if big_n == 0 || big_n > DENSITY_MAX_N {
        return Err(Error::out_of_range(
            "N",
            big_n,
            format!("must lie in 1..={DENSITY_MAX_N}"),
        ));
    }
    let r = ln_set(n, big_n, false)?;
    Ok(Ratio::new(r.count, big_n))
}

/// Least-squares fit of `ln |𝓛ₙ(N)|` against `ln N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Regression {
    pub n: u32,
    pub bounds: Vec<u64>,
    pub counts: Vec<u64>,
    pub slope: f64,
    pub intercept: f64,
    pub residuals: Vec<f64>,
}

pub fn exponent_regression(n: u32, bounds: &[u64]) -> Result<Regression> {
    let mut sorted = bounds.to_vec();
    sorted.sort_unstable();
    let distinct = sorted.windows(2).all(|w| w[0] != w[1]);
    if sorted.len() < 2 || !distinct {
        return Err(Error::DegenerateRegression);
    }
    let counts = sorted
        .iter()
        .map(|&x| ln_set(n, x, false).map(|r| r.count))
        .collect::<Result<Vec<_>>>()?;
    let pts: Vec<(f64, f64)> = sorted
        .iter()
        .zip(&counts)
        .filter(|(_, &c)| c > 0)
        .map(|(&x, &c)| ((x as f64).ln(), (c as f64).ln()))
        .collect();
    if pts.len() < 2 {
        return Err(Error::DegenerateRegression);
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals = pts.iter().map(|p| p.1 - (intercept + slope * p.0)).collect();
    Ok(Regression {
        n,
        bounds: sorted,
        counts,
        slope,
        intercept,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_examples() {
        let b = thm22_upper(5, 1_000_000).unwrap();
        let expected = 819_812.0 * 1e6f64.powf(0.75);
        assert!((b.part_i / expected - 1.0).abs() < 1e-12);
        assert!((b.part_i / 2.593e10 - 1.0).abs() < 1e-3);
        let b20 = thm22_upper(20, 1_000_000).unwrap();
        assert!((b20.part_i / (1012.0 * 1e6f64.powf(3.0 / 19.0)) - 1.0).abs() < 1e-12);
        assert!(thm22_upper(4, 10).is_err());
        let mut prev = 0.0;
        for x in [10u64, 100, 1000, 10_000] {
            let v = thm22_upper(7, x).unwrap();
            assert!(v.part_i > prev && v.part_ii > v.part_i);
            prev = v.part_i;
        }
    }

    #[test]
    fn corollary_bound_on_ge_set() {
        let r = super::super::ln_ge_set(5, 10_000).unwrap();
        let b = thm22_upper(5, 10_000).unwrap();
        assert!((r.count as f64) <= b.part_ii);
        assert!((r.count as f64) <= 3.3e6 * 1e4f64.powf(0.75));
    }

    #[test]
    fn densities() {
        assert_eq!(density_check(2, 1000).unwrap(), Ratio::from_integer(1));
        assert_eq!(density_check(3, 1000).unwrap(), Ratio::from_integer(1));
        let d = density_check(4, 100_000).unwrap();
        let d = *d.numer() as f64 / *d.denom() as f64;
        assert!((d - 0.75).abs() <= 0.01, "{d}");
        assert!(density_check(5, 10).is_err());
    }

    #[test]
    fn regression_rejects_repeated_bounds() {
        assert_eq!(
            exponent_regression(7, &[1000, 1000]).unwrap_err(),
            Error::DegenerateRegression
        );
        assert_eq!(exponent_regression(7, &[1000]).unwrap_err(), Error::DegenerateRegression);
    }

    #[test]
    fn regression_slope_for_index_seven() {
        let r = exponent_regression(7, &[1000, 10_000, 100_000]).unwrap();
        assert!((r.slope - 0.5).abs() <= 0.15, "{r:?}");
        assert_eq!(r.residuals.len(), 3);
    }
}

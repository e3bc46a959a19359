//! Sets of attainable term values.
//!
//! `𝓛ₙ(N)` is the set of `x ∈ [1, N]` with `x = |Uₙ(A, B)|` for some
//! non-degenerate pair, and `𝓛≥ₙ(N)` is the union of `𝓛ₘ(N)` over `m ≥ n`.
//! Zero is never attained by a non-degenerate sequence, so it is never a
//! member. Witnesses are normalised to `A ≥ 1`, since `Uₙ(−A, B) = ±Uₙ(A, B)`.

mod atlas;
mod bounds;
mod level;
mod small;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lucas::LucasParams;

pub use atlas::real_index_cutoff;
pub use bounds::{density_check, exponent_regression, thm22_upper, Regression, UpperBounds};
pub use level::{case_emptiness, ln_c3, tail_half_width_start, CaseEmptiness, TAIL_ROW_BUDGET};

/// Largest `N` accepted for `n ≤ 4`, where the sets have size `Θ(N)`.
pub const SMALL_INDEX_MAX_N: u64 = 10_000_000;
/// Largest `N` accepted for `n ≥ 5`.
pub const MAX_N: u64 = 1_000_000_000;
/// Largest index accepted.
pub const MAX_INDEX: u32 = 1000;

/// A pair and index realising a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Witness {
    pub a: i64,
    pub b: i64,
    pub n: u32,
}

impl Witness {
    pub fn params(&self) -> LucasParams {
        LucasParams::new(self.a, self.b)
    }
}

/// Work counters for a scan.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ScanStats {
    /// Largest `A` in the fully evaluated box.
    pub a_limit: u64,
    /// Largest `|B|` in the fully evaluated box.
    pub b_limit: u64,
    /// First tail row whose root windows have half-width below ½.
    pub tail_b_half: u64,
    /// Tail row at which the scan stopped.
    pub tail_b_stop: u64,
    pub evaluations: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermSetResult {
    pub n: u32,
    pub big_n: u64,
    pub count: u64,
    /// Sorted members, when requested.
    pub members: Option<Vec<u64>>,
    /// One witness per member, when requested.
    pub witnesses: Option<BTreeMap<u64, Witness>>,
    /// Published upper bound on `count`, for `n ≥ 5`.
    pub upper_bound_value: Option<f64>,
    pub stats: ScanStats,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SetOptions {
    pub members: bool,
    pub witnesses: bool,
}

pub(crate) fn check_args(n: u32, big_n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::out_of_range("n", n, "must be at least 2"));
    }
    if n > MAX_INDEX {
        return Err(Error::out_of_range("n", n, format!("must be at most {MAX_INDEX}")));
    }
    if big_n == 0 {
        return Err(Error::out_of_range("N", big_n, "must be positive"));
    }
    let cap = if n <= 4 { SMALL_INDEX_MAX_N } else { MAX_N };
    if big_n > cap {
        return Err(Error::out_of_range("N", big_n, format!("must be at most {cap} for n = {n}")));
    }
    Ok(())
}

/// `𝓛ₙ(N)`, keeping the sorted members when `keep_members` is set.
pub fn ln_set(n: u32, big_n: u64, keep_members: bool) -> Result<TermSetResult> {
    ln_set_with(
        n,
        big_n,
        SetOptions {
            members: keep_members,
            witnesses: false,
        },
    )
}

pub fn ln_set_with(n: u32, big_n: u64, opts: SetOptions) -> Result<TermSetResult> {
    check_args(n, big_n)?;
    if n <= 4 {
        let hit = small::attained(n, big_n);
        return Ok(from_dense(n, big_n, &hit, opts, |x| small::witness(n, x)));
    }
    let scan = level::scan_level(n, big_n)?;
    let upper = thm22_upper(n, big_n)?.part_i;
    Ok(TermSetResult {
        n,
        big_n,
        count: scan.hits.len() as u64,
        members: opts.members.then(|| scan.hits.keys().copied().collect()),
        witnesses: opts.witnesses.then(|| {
            scan.hits
                .iter()
                .map(|(&x, &(a, b))| (x, Witness { a, b, n }))
                .collect()
        }),
        upper_bound_value: Some(upper),
        stats: scan.stats,
    })
}

/// `𝓛≥ₙ(N)`.
pub fn ln_ge_set(n: u32, big_n: u64) -> Result<TermSetResult> {
    ln_ge_set_with(n, big_n, SetOptions::default())
}

pub fn ln_ge_set_with(n: u32, big_n: u64, opts: SetOptions) -> Result<TermSetResult> {
    check_args(n, big_n)?;
    atlas::ge_set(n, big_n, opts)
}

fn from_dense(
    n: u32,
    big_n: u64,
    hit: &[bool],
    opts: SetOptions,
    witness: impl Fn(u64) -> Option<LucasParams>,
) -> TermSetResult {
    let members = || (1..=big_n).filter(|&x| hit[x as usize]);
    TermSetResult {
        n,
        big_n,
        count: members().count() as u64,
        members: opts.members.then(|| members().collect()),
        witnesses: opts.witnesses.then(|| {
            members()
                .map(|x| {
                    let p = witness(x).expect("member has a witness");
                    (x, Witness { a: p.a, b: p.b, n })
                })
                .collect()
        }),
        upper_bound_value: None,
        stats: ScanStats::default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lucas::term;
    use crate::oracle::ln_set_naive;
    use num_bigint::BigInt;

    fn check_witnesses(r: &TermSetResult) {
        let w = r.witnesses.as_ref().unwrap();
        assert_eq!(w.len() as u64, r.count);
        for (&x, wit) in w {
            assert!(x >= 1 && x <= r.big_n);
            assert!(wit.a >= 1);
            assert!(wit.params().is_admissible(), "{wit:?}");
            assert_eq!(term(wit.params(), wit.n as u64).magnitude(), BigInt::from(x).magnitude());
        }
    }

    #[test]
    fn examples() {
        let r = ln_set(2, 10, true).unwrap();
        assert_eq!(r.count, 10);
        assert_eq!(r.members.unwrap(), (1..=10).collect::<Vec<_>>());
        assert_eq!(ln_set(3, 10, false).unwrap().count, 10);
        assert_eq!(ln_ge_set(2, 10).unwrap().count, 10);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(ln_set(1, 10, false).is_err());
        assert!(ln_set(5, 0, false).is_err());
        assert!(ln_set(3, SMALL_INDEX_MAX_N + 1, false).is_err());
        assert!(ln_set(6, MAX_N + 1, false).is_err());
        assert!(ln_set(5, MAX_N, false).is_err(), "tail budget");
    }

    #[test]
    fn matches_naive_scan() {
        for (n, big_n) in [(5u32, 30u64), (5, 100), (6, 200), (6, 500), (7, 300), (7, 500)] {
            let opts = SetOptions {
                members: true,
                witnesses: true,
            };
            let r = ln_set_with(n, big_n, opts).unwrap();
            check_witnesses(&r);
            let b_max = big_n.max(r.stats.tail_b_stop);
            let naive = ln_set_naive(n, big_n, b_max);
            assert_eq!(r.members.as_ref().unwrap(), &naive, "n={n} N={big_n}");
        }
    }

    #[test]
    fn small_index_witnesses() {
        for n in 2..=4 {
            let r = ln_set_with(
                n,
                3000,
                SetOptions {
                    members: true,
                    witnesses: true,
                },
            )
            .unwrap();
            check_witnesses(&r);
            assert_eq!(r.members.unwrap(), ln_set_naive(n, 3000, 3000));
        }
    }

    #[test]
    fn monotone_in_bound() {
        for n in 5..=8 {
            let mut prev = 0;
            for big_n in [10u64, 50, 100, 500, 1000, 5000] {
                let c = ln_set(n, big_n, false).unwrap().count;
                assert!(c >= prev);
                prev = c;
            }
        }
    }

    #[test]
    fn ge_set_contains_levels() {
        let ge = ln_ge_set_with(
            5,
            50,
            SetOptions {
                members: true,
                witnesses: true,
            },
        )
        .unwrap();
        check_witnesses(&ge);
        let members = ge.members.unwrap();
        for m in 5..=12 {
            for x in ln_set(m, 50, true).unwrap().members.unwrap() {
                assert!(members.binary_search(&x).is_ok(), "m={m} x={x}");
            }
        }
    }

    #[test]
    fn ge_sets_are_nested() {
        for big_n in [100u64, 1000] {
            let mut prev: Option<Vec<u64>> = None;
            for n in (4..=10).rev() {
                let cur = ln_ge_set_with(
                    n,
                    big_n,
                    SetOptions {
                        members: true,
                        witnesses: false,
                    },
                )
                .unwrap()
                .members
                .unwrap();
                if let Some(p) = &prev {
                    for x in p {
                        assert!(cur.binary_search(x).is_ok(), "n={n} N={big_n} x={x}");
                    }
                }
                prev = Some(cur);
            }
        }
    }

    #[test]
    fn jobs_invariant() {
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let three = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let opts = SetOptions {
            members: true,
            witnesses: true,
        };
        let a = one.install(|| ln_set_with(6, 3000, opts).unwrap());
        let b = three.install(|| ln_set_with(6, 3000, opts).unwrap());
        assert_eq!(a, b);
    }
}

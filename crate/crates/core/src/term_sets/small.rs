//! Indices 2, 3 and 4, where `U₂ = A`, `U₃ = A² − B` and `U₄ = A(A² − 2B)`
//! give direct descriptions of the attainable values.

use crate::lucas::LucasParams;

/// Marks `x ∈ [1, N]` attained as `|Uₙ|`; index 0 is unused.
pub(crate) fn attained(n: u32, big_n: u64) -> Vec<bool> {
    let mut hit = vec![false; big_n as usize + 1];
    match n {
        2 | 3 => {
            for x in 1..=big_n {
                hit[x as usize] = witness(n, x).is_some();
            }
        }
        4 => {
            // U₄ = A·j with j = A² − 2B, so j ≡ A (mod 2) and B = (A² − j)/2.
            for a in 1..=big_n as i64 {
                let j_max = big_n as i64 / a;
                let mut j = -j_max;
                while j <= j_max {
                    if j != 0 && (j - a).rem_euclid(2) == 0 && u4_pair(a, j).is_some() {
                        hit[(a * j).unsigned_abs() as usize] = true;
                    }
                    j += 1;
                }
            }
        }
        _ => unreachable!("small indices only"),
    }
    hit
}

/// `(A, B)` with `A² − 2B = j`, when it is admissible.
fn u4_pair(a: i64, j: i64) -> Option<LucasParams> {
    let a2 = a.checked_mul(a)?;
    let twice_b = a2.checked_sub(j)?;
    if twice_b % 2 != 0 {
        return None;
    }
    let p = LucasParams::new(a, twice_b / 2);
    p.is_admissible().then_some(p)
}

/// A canonical admissible pair with `|Uₙ| = x`, `A ≥ 1`.
///
/// * `n = 2`: `(x, −1)`.
/// * `n = 3`: smallest `A ≥ 1`, preferring `B = A² − x` over `B = A² + x`.
/// * `n = 4`: smallest divisor `A` of `x`, then the smaller `B`.
pub(crate) fn witness(n: u32, x: u64) -> Option<LucasParams> {
    if x == 0 {
        return None;
    }
    let xi = i64::try_from(x).ok()?;
    match n {
        2 => Some(LucasParams::new(xi, -1)),
        3 => {
            // Each A excludes at most five values of B (0, A²/4, A², A²/2,
            // A²/3), so two candidates per A for A ≤ 5 always suffice.
            for a in 1..=5i64 {
                for b in [a * a - xi, a * a + xi] {
                    let p = LucasParams::new(a, b);
                    if p.is_admissible() {
                        return Some(p);
                    }
                }
            }
            None
        }
        4 => {
            let mut a = 1i64;
            while a * a <= xi || a <= xi {
                if xi % a == 0 {
                    let j = xi / a;
                    // Larger j gives smaller B.
                    for jj in [j, -j] {
                        if (jj - a).rem_euclid(2) == 0 {
                            if let Some(p) = u4_pair(a, jj) {
                                return Some(p);
                            }
                        }
                    }
                }
                a += 1;
                if a > xi {
                    break;
                }
            }
            None
        }
        _ => None,
    }
}

//! Exact big-integer combinatorics used by the Takeuchi analysis.

mod paths;
mod series;

pub use paths::{confined_path_count, confined_paths_between, confined_paths_to_height, PathError};
pub use series::{catalan_series, central_binomial_series, PowerSeries, SeriesError, DEFAULT_ORDER};

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Binomial coefficient, zero whenever `k < 0`, `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n as i64, n as i64) / (n + 1)
}

/// `C_1 + ... + C_n`.
pub fn catalan_partial_sum(n: u64) -> BigUint {
    (1..=n).map(catalan).sum()
}

/// Bell numbers `b_1, ..., b_n` from `b_{n+1} = 1 + sum_{k=0}^{n-1} binom(n, k) b_{n-k}`.
pub fn bell_numbers(n: u64) -> Vec<BigUint> {
    let mut b: Vec<BigUint> = Vec::with_capacity(n as usize);
    if n == 0 {
        return b;
    }
    b.push(BigUint::one());
    for m in 1..n {
        let mut next = BigUint::one();
        for k in 0..m {
            next += binomial(m as i64, k as i64) * &b[(m - k - 1) as usize];
        }
        b.push(next);
    }
    b
}

/// The `n`-th Bell number, `n >= 1`.
pub fn bell(n: u64) -> BigUint {
    assert!(n >= 1, "Bell numbers are indexed from 1");
    bell_numbers(n).pop().unwrap()
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    /// Pascal's triangle, built additively.
    fn pascal(rows: usize) -> Vec<Vec<BigUint>> {
        let mut t: Vec<Vec<BigUint>> = vec![vec![big(1)]];
        for n in 1..rows {
            let prev = &t[n - 1];
            let mut row = vec![big(1)];
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(big(1));
            t.push(row);
        }
        t
    }

    /// Counts Dyck paths of semilength `n` by exhaustive enumeration.
    fn dyck_paths(n: u32) -> u64 {
        (0u64..1 << (2 * n))
            .filter(|bits| {
                let mut h = 0i32;
                for i in 0..2 * n {
                    h += if bits >> i & 1 == 1 { 1 } else { -1 };
                    if h < 0 {
                        return false;
                    }
                }
                h == 0
            })
            .count() as u64
    }

    /// Counts set partitions of `{0..n}` via restricted growth strings.
    fn set_partitions(n: usize) -> u64 {
        fn go(i: usize, n: usize, max: usize) -> u64 {
            if i == n {
                return 1;
            }
            (0..=max + 1).map(|b| go(i + 1, n, max.max(b))).sum()
        }
        if n == 0 {
            1
        } else {
            go(1, n, 0)
        }
    }

    #[test]
    fn binomial_matches_pascal() {
        let t = pascal(41);
        for (n, row) in t.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(&binomial(n as i64, k as i64), v);
            }
        }
        assert_eq!(t[40][20], big(137_846_528_820));
        assert_eq!(binomial(40, 20), big(137_846_528_820));
        assert_eq!(binomial(4, 2), big(6));
    }

    #[test]
    fn binomial_convention_outside_range() {
        assert_eq!(binomial(10, -1), big(0));
        assert_eq!(binomial(3, 4), big(0));
        assert_eq!(binomial(-2, 1), big(0));
        assert_eq!(binomial(0, 0), big(1));
    }

    #[test]
    fn catalan_matches_dyck_paths() {
        for n in 0..=6 {
            assert_eq!(catalan(n as u64), big(dyck_paths(n)), "n = {n}");
        }
        assert_eq!(catalan(0), big(1));
        assert_eq!(catalan(3), big(5));
        assert_eq!(catalan_partial_sum(3), big(8));
    }

    #[test]
    fn catalan_ratio_recurrence() {
        for n in 0..=200u64 {
            assert_eq!(catalan(n + 1) * (n + 2), catalan(n) * (4 * n + 2), "n = {n}");
        }
    }

    #[test]
    fn bell_matches_set_partitions() {
        let b = bell_numbers(7);
        for n in 1..=7 {
            assert_eq!(b[n - 1], big(set_partitions(n)), "n = {n}");
        }
        assert_eq!(bell(1), big(1));
        assert_eq!(bell(3), big(5));
        assert_eq!(bell(5), big(52));
    }

    #[test]
    fn factorial_small() {
        assert_eq!(factorial(0), big(1));
        assert_eq!(factorial(10), big(3_628_800));
    }
}

//! Confined lattice paths, counted by the reflection principle.
//!
//! A lattice path moves by decreasing one coordinate by one at each step. It
//! is confined when every point `(a, b)` it visits satisfies `a > b > 0`.
//! Paths of length zero count.

use num_bigint::BigUint;
use thiserror::Error;

use super::binomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("start ({x},{y}) is outside the region x > y > 0")]
    OutsideRegion { x: i64, y: i64 },
    #[error("target height {height} must satisfy 0 < height <= {y}")]
    BadHeight { y: i64, height: i64 },
}

fn check_start(x: i64, y: i64) -> Result<(), PathError> {
    if x > y && y > 0 {
        Ok(())
    } else {
        Err(PathError::OutsideRegion { x, y })
    }
}

fn difference(plus: BigUint, minus: BigUint) -> BigUint {
    assert!(plus >= minus, "reflection count went negative");
    plus - minus
}

/// Confined paths from `(x, y)` whose final point has second coordinate
/// `height`: all paths to `(height, height - 1)` minus those touching the
/// diagonal, which reflect onto paths to `(height - 1, height)`.
pub fn confined_paths_to_height(x: i64, y: i64, height: i64) -> Result<BigUint, PathError> {
    check_start(x, y)?;
    if height <= 0 || height > y {
        return Err(PathError::BadHeight { y, height });
    }
    let n = x + y + 1 - 2 * height;
    Ok(difference(binomial(n, x - height), binomial(n, y - height)))
}

/// All confined paths starting at `(x, y)`.
pub fn confined_path_count(x: i64, y: i64) -> Result<BigUint, PathError> {
    check_start(x, y)?;
    let gap = x - y - 1;
    Ok((1..=y)
        .map(|k| difference(binomial(gap + 2 * k, k), binomial(gap + 2 * k, k - 1)))
        .sum())
}

/// Confined paths from `(a, b)` to `(a' + 1, 1)`.
pub fn confined_paths_between(a: i64, b: i64, a_prime: i64) -> Result<BigUint, PathError> {
    check_start(a, b)?;
    let n = a + b - a_prime - 2;
    Ok(difference(binomial(n, b - 1), binomial(n, a - 1)))
}

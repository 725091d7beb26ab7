//! Truncated formal power series with exact integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use super::{binomial, catalan};

pub const DEFAULT_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("composition needs an inner series with zero constant term")]
    NonZeroConstant,
    #[error("series is not invertible over the integers (constant term {0})")]
    NotUnit(BigInt),
}

/// `sum_{i < order} c_i z^i`; coefficients at and beyond `order` are unknown
/// and never read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigInt>,
}

impl PowerSeries {
    /// Truncates or zero-pads `coeffs` to exactly `order` terms.
    pub fn new(mut coeffs: Vec<BigInt>, order: usize) -> Self {
        coeffs.resize(order, BigInt::zero());
        PowerSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), order)
    }

    pub fn from_naturals<'a>(coeffs: impl IntoIterator<Item = &'a BigUint>, order: usize) -> Self {
        Self::new(coeffs.into_iter().map(|c| BigInt::from(c.clone())).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, order)
    }

    /// The identity series `z`.
    pub fn z(order: usize) -> Self {
        Self::monomial(1, order)
    }

    pub fn monomial(power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power < order {
            s.coeffs[power] = BigInt::one();
        }
        s
    }

    /// `1 / (1 - z)`
    pub fn geometric(order: usize) -> Self {
        Self::new(vec![BigInt::one(); order], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&BigInt> {
        self.coeffs.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![BigInt::zero(); n];
        if k < n {
            coeffs[k..].clone_from_slice(&self.coeffs[..n - k]);
        }
        PowerSeries { coeffs }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    fn product(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PowerSeries { coeffs }
    }

    /// `self(inner(z))`, by Horner's rule. `inner` must have no constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs.first().is_none_or(Zero::is_zero) {
            return Err(SeriesError::NonZeroConstant);
        }
        let n = self.order().min(inner.order());
        let mut acc = Self::zero(n);
        for c in self.coeffs[..n].iter().rev() {
            acc = acc.product(inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Multiplicative inverse; the constant term must be `1` or `-1`.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let n = self.order();
        let c0 = self.coeffs.first().cloned().unwrap_or_default();
        if !(c0.is_one() || (-&c0).is_one()) {
            return Err(SeriesError::NotUnit(c0));
        }
        let mut inv = vec![BigInt::zero(); n];
        for k in 0..n {
            let mut acc = if k == 0 { BigInt::one() } else { BigInt::zero() };
            for j in 1..=k {
                acc -= &self.coeffs[j] * &inv[k - j];
            }
            inv[k] = acc * &c0;
        }
        Ok(PowerSeries { coeffs: inv })
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: Self) -> PowerSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: Self) -> PowerSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: Self) -> PowerSeries {
        self.product(rhs)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}z")?,
                _ => write!(f, "{c}z^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order())
    }
}

/// `C(z) = sum C_n z^n`.
pub fn catalan_series(order: usize) -> PowerSeries {
    PowerSeries::from_naturals(&(0..order as u64).map(catalan).collect::<Vec<_>>(), order)
}

/// `1 / sqrt(1 - 4z) = sum binom(2n, n) z^n`.
pub fn central_binomial_series(order: usize) -> PowerSeries {
    let c: Vec<BigUint> = (0..order as i64).map(|n| binomial(2 * n, n)).collect();
    PowerSeries::from_naturals(&c, order)
}

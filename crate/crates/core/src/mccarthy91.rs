//! The 91 function and the generalized scheme
//! `f(x) = if x > a then x - b else f^c(x + d)`.
//!
//! Parameters and arguments are exact rationals. The scheme is total exactly
//! when `(c - 1) b < d`; in that case it also satisfies the one-step recurrence
//! `f(x) = if x > a then x - b else f(x + delta)` with `delta = d - (c - 1) b`,
//! and has a closed form in terms of a rational remainder.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rustc_hash::FxHashMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gen91Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parameters {0} do not define a total function")]
    NotTotal(Box<Gen91Params>),
    #[error("fuel exhausted after {0} steps")]
    FuelExhausted(u64),
    #[error("argument {x} is below the supported floor {floor}")]
    BelowFloor { x: i64, floor: i64 },
}

/// Parameters `(a, b, c, d)` of the generalized 91 scheme, with `b, d > 0`
/// and `c >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gen91Params {
    a: BigRational,
    b: BigRational,
    c: u32,
    d: BigRational,
}

impl Gen91Params {
    pub fn new(a: BigRational, b: BigRational, c: u32, d: BigRational) -> Result<Self, Gen91Error> {
        if !b.is_positive() {
            return Err(Gen91Error::InvalidParams(format!("b must be positive, got {b}")));
        }
        if !d.is_positive() {
            return Err(Gen91Error::InvalidParams(format!("d must be positive, got {d}")));
        }
        if c == 0 {
            return Err(Gen91Error::InvalidParams("c must be at least 1".into()));
        }
        Ok(Gen91Params { a, b, c, d })
    }

    pub fn from_ints(a: i64, b: i64, c: u32, d: i64) -> Result<Self, Gen91Error> {
        Self::new(int(a), int(b), c, int(d))
    }

    /// McCarthy's original definition, `(100, 10, 2, 11)`.
    pub fn original() -> Self {
        Self::from_ints(100, 10, 2, 11).unwrap()
    }

    /// The variant with `f^91(x + 901)`, `(100, 10, 91, 901)`.
    pub fn modified() -> Self {
        Self::from_ints(100, 10, 91, 901).unwrap()
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn d(&self) -> &BigRational {
        &self.d
    }

    /// `d - (c - 1) b`
    pub fn delta(&self) -> BigRational {
        &self.d - &self.b * int(self.c as i64 - 1)
    }

    pub fn is_total(&self) -> bool {
        gen91_is_total(self)
    }

    /// The parameters as machine integers, if they are all integral and fit.
    pub fn integral(&self) -> Option<(i64, i64, u32, i64)> {
        let as_i64 = |r: &BigRational| r.is_integer().then(|| r.to_integer().to_i64()).flatten();
        Some((as_i64(&self.a)?, as_i64(&self.b)?, self.c, as_i64(&self.d)?))
    }
}

impl fmt::Display for Gen91Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a, self.b, self.c, self.d)
    }
}

pub(crate) fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Totality criterion: `(c - 1) b < d`.
pub fn gen91_is_total(p: &Gen91Params) -> bool {
    p.delta().is_positive()
}

/// Nonnegative remainder of `x` modulo a positive rational `m`.
fn rational_mod(x: &BigRational, m: &BigRational) -> BigRational {
    x - m * (x / m).floor()
}

/// Closed form of a total scheme:
/// `x - b` above `a`, else `a + d - c b - ((a - x) mod delta)`.
pub fn gen91_closed(p: &Gen91Params, x: &BigRational) -> Result<BigRational, Gen91Error> {
    if !p.is_total() {
        return Err(Gen91Error::NotTotal(Box::new(p.clone())));
    }
    if x > &p.a {
        return Ok(x - &p.b);
    }
    let cb = &p.b * int(p.c as i64);
    Ok(&p.a + &p.d - cb - rational_mod(&(&p.a - x), &p.delta()))
}

/// Iterates `f(x) = if x > a then x - b else f(x + delta)`, one fuel unit per
/// step. Never terminates from below `a` when `delta <= 0`.
pub fn gen91_simplified(p: &Gen91Params, x: &BigRational, fuel: u64) -> Result<BigRational, Gen91Error> {
    // Iterate on numerators over a common denominator to skip gcd work.
    let delta = p.delta();
    let den = [x, &p.a, &delta]
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let scaled = |r: &BigRational| r.numer() * (&den / r.denom());
    let (a, step) = (scaled(&p.a), scaled(&delta));
    let mut cur = scaled(x);
    for _ in 0..fuel {
        if cur > a {
            return Ok(BigRational::new(cur, den) - &p.b);
        }
        cur += &step;
    }
    Err(Gen91Error::FuelExhausted(fuel))
}

/// Number of `x > 100` tests made when the modified 91 definition is expanded
/// without memory: `1` above 100, else `9192 - 91 x`.
pub fn f91_cost_closed(x: i64) -> BigUint {
    if x > 100 {
        BigUint::one()
    } else {
        BigUint::from((9192 - 91 * x as i128) as u128)
    }
}

/// Lowest argument accepted by [`f91_cost_recurrence`].
pub const COST_FLOOR: i64 = -1_000_000;

/// The derived cost function, computed from its defining recurrence
/// `F(x) = 1 + sum_{k=0}^{90} F(f^k(x + 901))` with memoized values of the
/// modified 91 function itself.
pub fn f91_cost_recurrence(x: i64) -> Result<BigUint, Gen91Error> {
    if x < COST_FLOOR {
        return Err(Gen91Error::BelowFloor { x, floor: COST_FLOOR });
    }
    Ok(CostRecurrence::default().cost(x))
}

/// Memo tables for [`f91_cost_recurrence`]; reuse one across many arguments.
#[derive(Debug, Default)]
pub struct CostRecurrence {
    f: FxHashMap<i64, i64>,
    cost: FxHashMap<i64, BigUint>,
}

impl CostRecurrence {
    /// Value of the modified 91 function from its definition.
    pub fn f(&mut self, y: i64) -> i64 {
        if y > 100 {
            return y - 10;
        }
        if let Some(&v) = self.f.get(&y) {
            return v;
        }
        let mut v = y + 901;
        for _ in 0..91 {
            v = self.f(v);
        }
        self.f.insert(y, v);
        v
    }

    pub fn cost(&mut self, x: i64) -> BigUint {
        if x > 100 {
            return BigUint::one();
        }
        if let Some(c) = self.cost.get(&x) {
            return c.clone();
        }
        let mut total = BigUint::one();
        let mut arg = x + 901;
        for k in 0..=90 {
            if k > 0 {
                arg = self.f(arg);
            }
            total += self.cost(arg);
        }
        self.cost.insert(x, total.clone());
        total
    }
}

impl Gen91Params {
    /// Exact value at an integer argument, by the closed form.
    pub fn closed_at(&self, x: i64) -> Result<BigRational, Gen91Error> {
        gen91_closed(self, &int(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: i64, b: i64, c: u32, d: i64) -> Gen91Params {
        Gen91Params::from_ints(a, b, c, d).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Brute-force oracle: the one-step recurrence applied literally.
    fn iterate_simple(a: i64, b: i64, delta: i64, mut x: i64) -> i64 {
        while x <= a {
            x += delta;
        }
        x - b
    }

    #[test]
    fn totality_examples() {
        assert!(gen91_is_total(&p(100, 10, 2, 11)));
        assert!(gen91_is_total(&p(100, 10, 91, 901)));
        assert!(!gen91_is_total(&p(100, 10, 2, 10)));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(p(100, 10, 2, 11).closed_at(50).unwrap(), int(91));
        assert_eq!(p(100, 10, 2, 11).closed_at(150).unwrap(), int(140));
        assert_eq!(iterate_simple(100, 10, 8, 99), 97);
        assert_eq!(p(100, 10, 2, 18).closed_at(99).unwrap(), int(97));
    }

    #[test]
    fn closed_form_rejects_partial_schemes() {
        assert!(matches!(p(100, 10, 2, 10).closed_at(0), Err(Gen91Error::NotTotal(_))));
    }

    #[test]
    fn simplified_examples() {
        let fuel = 10_000_000;
        assert_eq!(
            gen91_simplified(&p(100, 10, 91, 901), &int(-1_000_000), fuel).unwrap(),
            int(91)
        );
        assert_eq!(gen91_simplified(&p(100, 10, 2, 11), &int(101), fuel).unwrap(), int(91));
        assert_eq!(gen91_simplified(&p(100, 10, 2, 18), &int(99), fuel).unwrap(), int(97));
        assert_eq!(
            gen91_simplified(&p(100, 10, 2, 10), &int(95), 1000),
            Err(Gen91Error::FuelExhausted(1000))
        );
    }

    #[test]
    fn rational_parameters() {
        // a = 1/2, b = 1/3, c = 2, d = 1: delta = 2/3.
        let q = Gen91Params::new(rat(1, 2), rat(1, 3), 2, int(1)).unwrap();
        assert_eq!(q.delta(), rat(2, 3));
        assert!(q.integral().is_none());
        for num in -30..=6 {
            let x = rat(num, 5);
            assert_eq!(
                gen91_closed(&q, &x).unwrap(),
                gen91_simplified(&q, &x, 1000).unwrap(),
                "x = {x}"
            );
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(Gen91Params::from_ints(0, 0, 1, 1).is_err());
        assert!(Gen91Params::from_ints(0, 1, 0, 1).is_err());
        assert!(Gen91Params::from_ints(0, 1, 1, -1).is_err());
    }

    #[test]
    fn cost_examples() {
        assert_eq!(f91_cost_closed(101), BigUint::from(1u32));
        assert_eq!(f91_cost_closed(100), BigUint::from(92u32));
        assert_eq!(f91_cost_closed(0), BigUint::from(9192u32));
        assert_eq!(f91_cost_recurrence(101).unwrap(), BigUint::from(1u32));
        assert_eq!(f91_cost_recurrence(91).unwrap(), BigUint::from(911u32));
        assert_eq!(f91_cost_recurrence(-100).unwrap(), BigUint::from(18292u32));
        assert!(f91_cost_recurrence(COST_FLOOR - 1).is_err());
    }

    #[test]
    fn modified_function_values() {
        let mut r = CostRecurrence::default();
        assert_eq!(r.f(-1_000), 91);
        assert_eq!(r.f(100), 91);
        assert_eq!(r.f(101), 91);
        assert_eq!(r.f(150), 140);
    }
}

//! Takeuchi's triple recursion and its cost functions.
//!
//! * `T(x,y,z)` counts else-clause entries under memoryless expansion.
//! * `V(x,y,z)` drops the outer call; it counts the internal nodes of the
//!   ternary tree of inner calls and, for `x > y > 0`, the confined lattice
//!   paths from `(x, y)`.
//! * `K(x,y,z)` counts else-clause entries under call-by-need.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::combinatorics::{
    bell_numbers, binomial, catalan_partial_sum, catalan_series, central_binomial_series, confined_path_count,
    factorial, PathError, PowerSeries,
};
use crate::eval::{evaluate, ArgTuple, EvalError, Outcome, Schema, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl Triple {
    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        Triple { x, y, z }
    }

    /// The three inner calls of one expansion.
    pub fn inner(&self) -> [Triple; 3] {
        let Triple { x, y, z } = *self;
        [
            Triple::new(x - 1, y, z),
            Triple::new(y - 1, z, x),
            Triple::new(z - 1, x, y),
        ]
    }

    pub fn shifted(&self, d: i64) -> Self {
        Triple::new(self.x + d, self.y + d, self.z + d)
    }

    /// All triples in the cube `range^3`, in lexicographic order.
    pub fn cube(range: std::ops::RangeInclusive<i64>) -> impl Iterator<Item = Triple> {
        let r = range.clone();
        r.clone().flat_map(move |x| {
            let r2 = r.clone();
            r.clone()
                .flat_map(move |y| r2.clone().map(move |z| Triple::new(x, y, z)))
        })
    }
}

impl From<(i64, i64, i64)> for Triple {
    fn from((x, y, z): (i64, i64, i64)) -> Self {
        Triple::new(x, y, z)
    }
}

impl From<Triple> for ArgTuple {
    fn from(t: Triple) -> Self {
        ArgTuple::triple(t.x, t.y, t.z)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TakError {
    #[error("{0} is outside the domain {1}")]
    OutOfDomain(Triple, &'static str),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("evaluation at {0} did not finish within fuel")]
    Unfinished(Triple),
}

/// The fixed point of the recursion:
/// `if x <= y then y else if y <= z then z else x`.
pub fn tak_simple(t: Triple) -> i64 {
    if t.x <= t.y {
        t.y
    } else if t.y <= t.z {
        t.z
    } else {
        t.x
    }
}

/// Memo tables for `T` and `V`; reuse across many arguments.
#[derive(Debug, Default)]
pub struct TakeuchiCosts {
    t: FxHashMap<Triple, BigUint>,
    v: FxHashMap<Triple, BigUint>,
}

impl TakeuchiCosts {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn t_count(&mut self, p: Triple) -> BigUint {
        if p.x <= p.y {
            return BigUint::zero();
        }
        if let Some(v) = self.t.get(&p) {
            return v.clone();
        }
        let inner = p.inner();
        let mut total = BigUint::one();
        for q in inner {
            total += self.t_count(q);
        }
        let outer = Triple::new(tak_simple(inner[0]), tak_simple(inner[1]), tak_simple(inner[2]));
        total += self.t_count(outer);
        self.t.insert(p, total.clone());
        total
    }

    pub fn v_count(&mut self, p: Triple) -> BigUint {
        if p.x <= p.y {
            return BigUint::zero();
        }
        if let Some(v) = self.v.get(&p) {
            return v.clone();
        }
        let mut total = BigUint::one();
        for q in p.inner() {
            total += self.v_count(q);
        }
        self.v.insert(p, total.clone());
        total
    }
}

/// `T(x,y,z)`: else-clause entries when `t(x,y,z)` is expanded without memory.
pub fn t_count(p: Triple) -> BigUint {
    TakeuchiCosts::new().t_count(p)
}

/// `V(x,y,z)`: the same recursion without the outer call.
pub fn v_count(p: Triple) -> BigUint {
    TakeuchiCosts::new().v_count(p)
}

/// `V(x, y, 0)` for `x > y > 0`, as a confined lattice path count.
pub fn v_closed(x: i64, y: i64) -> Result<BigUint, TakError> {
    Ok(confined_path_count(x, y)?)
}

/// `V` on the wedge `x > y`, `x >= z >= y`: `1 + x - z + V(z - 1, y, z)`.
///
/// On the edge `z = y` the descent stops at `V(y, y, y) = 0` one step early
/// and the value is `x - y`.
pub fn v_wedge(p: Triple) -> Result<BigUint, TakError> {
    if !(p.x > p.y && p.x >= p.z && p.z >= p.y) {
        return Err(TakError::OutOfDomain(p, "x > y, x >= z >= y"));
    }
    if p.z == p.y {
        return Ok(BigUint::from((p.x - p.y) as u64));
    }
    Ok(BigUint::from((1 + p.x - p.z) as u64) + v_count(Triple::new(p.z - 1, p.y, p.z)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceName {
    /// `V_n = V(n+1, n, 0)`
    Vn,
    /// `T_n = T(n, 0, n+1)`
    Tn,
}

impl fmt::Display for SequenceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SequenceName::Vn => "Vn",
            SequenceName::Tn => "Tn",
        })
    }
}

/// A sequence indexed from `n = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTable {
    pub name: SequenceName,
    pub values: Vec<BigUint>,
}

impl SequenceTable {
    /// The entry for index `n >= 1`.
    pub fn at(&self, n: usize) -> &BigUint {
        &self.values[n - 1]
    }
}

/// `V_1..V_{n_max}` as partial sums of Catalan numbers.
pub fn v_sequence(n_max: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(n_max);
    let mut acc = BigUint::zero();
    for n in 1..=n_max as u64 {
        acc += crate::combinatorics::catalan(n);
        out.push(acc.clone());
    }
    out
}

/// `T_1..T_{n_max}` from
/// `T_{n+1} = V_{n+1} + sum_{k=0}^{n-1} (binom(n+k, n) - binom(n+k, n+1)) T_{n-k}`.
pub fn t_sequence(n_max: usize) -> Vec<BigUint> {
    let v = v_sequence(n_max);
    let mut t: Vec<BigUint> = Vec::with_capacity(n_max);
    if n_max == 0 {
        return t;
    }
    t.push(BigUint::one());
    for n in 1..n_max {
        let mut next = v[n].clone();
        for k in 0..n {
            let (ni, ki) = ((n + k) as i64, n as i64);
            let weight = binomial(ni, ki) - binomial(ni, ki + 1);
            next += weight * &t[n - k - 1];
        }
        t.push(next);
    }
    t
}

/// Both tables up to `n_max`.
pub fn sequences(n_max: usize) -> (SequenceTable, SequenceTable) {
    (
        SequenceTable {
            name: SequenceName::Vn,
            values: v_sequence(n_max),
        },
        SequenceTable {
            name: SequenceName::Tn,
            values: t_sequence(n_max),
        },
    )
}

/// Fuel granted to the call-by-need evaluator inside [`k_count_lazy`]; `K`
/// is quadratic in the argument spread.
const K_FUEL: u64 = 1 << 40;

/// `K(x,y,z)` measured by running the call-by-need evaluator.
pub fn k_count_lazy(p: Triple) -> Result<BigUint, TakError> {
    let out = evaluate(&Schema::Takeuchi3, &p.into(), Strategy::CallByNeed, K_FUEL)?;
    match out.result {
        Outcome::Value(_) => Ok(out.cost.else_expansions),
        _ => Err(TakError::Unfinished(p)),
    }
}

/// Piecewise closed form of `K`.
pub fn k_closed(p: Triple) -> BigUint {
    let Triple { x, y, z } = p;
    let d = (x - y) as i128;
    let v = if x <= y {
        0
    } else if y <= z {
        d
    } else if y > z + 1 {
        d * (y - z) as i128
    } else {
        d * (d + 3) / 2
    };
    BigUint::from(v as u128)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRow {
    pub n: usize,
    /// `b_n <= T_n`
    pub bell_below: bool,
    /// `T_n < 3 n!`
    pub factorial_above: bool,
    /// `V_{n+1} <= 4^n`
    pub v_below_four_pow: bool,
}

impl BoundRow {
    pub fn holds(&self) -> bool {
        self.bell_below && self.factorial_above && self.v_below_four_pow
    }
}

/// Exact checks of the sandwich `b_n <= T_n < 3 n!` for `1 <= n <= n_max`.
pub fn bounds_check(n_max: usize) -> Vec<BoundRow> {
    let t = t_sequence(n_max);
    let v = v_sequence(n_max + 1);
    let bell = bell_numbers(n_max as u64);
    (1..=n_max)
        .map(|n| BoundRow {
            n,
            bell_below: bell[n - 1] <= t[n - 1],
            factorial_above: t[n - 1] < factorial(n as u64) * 3u32,
            v_below_four_pow: v[n] <= BigUint::one() << (2 * n),
        })
        .collect()
}

/// `T_n > n^{n/2}`, compared exactly as `T_n^2 > n^n`.
pub fn superexponential_lower_bound(n: usize) -> bool {
    let t = t_sequence(n).pop().unwrap_or_default();
    &t * &t > BigUint::from(n).pow(n as u32)
}

/// `T(z) - [(C(z)-1)/(1-z) + z(2-C(z))/sqrt(1-4z) * T(zC(z))]` to `order`.
pub fn gf_functional_equation_residual(order: usize) -> PowerSeries {
    let one = PowerSeries::one(order);
    let c = catalan_series(order);
    let mut t_coeffs = vec![BigUint::zero()];
    t_coeffs.extend(t_sequence(order.saturating_sub(1)));
    let t = PowerSeries::from_naturals(&t_coeffs, order);

    let v = &(&c - &one) * &PowerSeries::geometric(order);
    let two_minus_c = &one.scale(&BigInt::from(2)) - &c;
    let zc = c.shift(1);
    let t_of_zc = t.compose(&zc).expect("zC(z) has no constant term");
    let tail = &(&two_minus_c.shift(1) * &central_binomial_series(order)) * &t_of_zc;
    &t - &(&v + &tail)
}

/// `(C(z)-1)/(1-z) - sum V_n z^n` to `order`.
pub fn v_generating_residual(order: usize) -> PowerSeries {
    let c = catalan_series(order);
    let v = &(&c - &PowerSeries::one(order)) * &PowerSeries::geometric(order);
    let mut v_coeffs = vec![BigUint::zero()];
    v_coeffs.extend(v_sequence(order.saturating_sub(1)));
    &v - &PowerSeries::from_naturals(&v_coeffs, order)
}

/// `|V_n 4^{-n} / (4 n^{-3/2} / (3 sqrt(pi))) - 1|`, from the exact `V_n`.
pub fn darboux_relative_error(n: u64) -> f64 {
    assert!(n >= 1, "darboux_relative_error needs n >= 1");
    let vn = catalan_partial_sum(n);
    let shift = vn.bits().saturating_sub(60);
    let mantissa = (&vn >> shift).to_f64().expect("60-bit value fits");
    let scaled = mantissa * 2f64.powi(shift as i32 - 2 * n as i32);
    let nf = n as f64;
    let asymptote = 4.0 * nf.powf(-1.5) / (3.0 * std::f64::consts::PI.sqrt());
    (scaled / asymptote - 1.0).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn bigs(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| big(x)).collect()
    }

    /// Builds the ternary tree of inner calls explicitly and counts the
    /// internal nodes.
    fn tree_internal_nodes(root: Triple) -> u64 {
        let mut stack = vec![root];
        let mut internal = 0;
        while let Some(p) = stack.pop() {
            if p.x > p.y {
                internal += 1;
                stack.extend(p.inner());
            }
        }
        internal
    }

    #[test]
    fn simple_form_examples() {
        assert_eq!(tak_simple(Triple::new(0, 5, 9)), 5);
        assert_eq!(tak_simple(Triple::new(2, 1, 0)), 2);
        assert_eq!(tak_simple(Triple::new(5, 3, 7)), 7);
        assert_eq!(tak_simple(Triple::new(18, 12, 6)), 18);
    }

    #[test]
    fn t_count_examples() {
        assert_eq!(t_count(Triple::new(1, 0, 2)), big(1));
        assert_eq!(t_count(Triple::new(0, 0, 0)), big(0));
        assert_eq!(t_count(Triple::new(2, 0, 3)), big(4));
    }

    #[test]
    fn v_count_examples() {
        assert_eq!(v_count(Triple::new(2, 1, 0)), big(1));
        assert_eq!(v_count(Triple::new(3, 2, 1)), big(1));
        assert_eq!(v_count(Triple::new(0, 7, 3)), big(0));
    }

    #[test]
    fn v_count_equals_tree_size() {
        let mut costs = TakeuchiCosts::new();
        for p in Triple::cube(0..=6) {
            assert_eq!(costs.v_count(p), big(tree_internal_nodes(p)), "{p}");
        }
    }

    #[test]
    fn v_translation_invariance() {
        let mut costs = TakeuchiCosts::new();
        for p in Triple::cube(-3..=6) {
            assert_eq!(costs.v_count(p.shifted(1)), costs.v_count(p), "{p}");
        }
    }

    #[test]
    fn v_node_type_symmetry() {
        let mut costs = TakeuchiCosts::new();
        for x in 2..=8 {
            for y in 1..x {
                let a = costs.v_count(Triple::new(x, y, 0));
                assert_eq!(a, costs.v_count(Triple::new(y, 0, x)));
                assert_eq!(a, v_closed(x, y).unwrap());
            }
        }
        assert_eq!(v_closed(4, 3).unwrap(), big(8));
        assert_eq!(v_closed(2, 1).unwrap(), big(1));
        assert!(v_closed(2, 2).is_err());
    }

    #[test]
    fn v_wedge_matches_recurrence() {
        let mut costs = TakeuchiCosts::new();
        for p in Triple::cube(-3..=7) {
            if p.x > p.y && p.x >= p.z && p.z >= p.y {
                assert_eq!(v_wedge(p).unwrap(), costs.v_count(p), "{p}");
            }
        }
        assert_eq!(
            v_wedge(Triple::new(5, 1, 3)).unwrap(),
            big(3) + v_count(Triple::new(2, 1, 3))
        );
        assert_eq!(v_wedge(Triple::new(3, 1, 1)).unwrap(), big(2));
        assert_eq!(v_count(Triple::new(3, 1, 1)), big(2));
        assert_eq!(
            v_wedge(Triple::new(4, 2, 4)).unwrap(),
            big(1) + v_count(Triple::new(3, 2, 4))
        );
        assert!(v_wedge(Triple::new(4, 2, 5)).is_err());
    }

    #[test]
    fn table_rows() {
        let (v, t) = sequences(9);
        assert_eq!(v.values, bigs(&[1, 3, 8, 22, 64, 196, 625, 2055, 6917]));
        assert_eq!(t.values, bigs(&[1, 4, 14, 53, 223, 1034, 5221, 28437, 165859]));
    }

    #[test]
    fn t_recurrence_matches_direct_count() {
        let t = t_sequence(7);
        let mut costs = TakeuchiCosts::new();
        for n in 1..=7i64 {
            assert_eq!(t[n as usize - 1], costs.t_count(Triple::new(n, 0, n + 1)), "n = {n}");
        }
    }

    #[test]
    fn k_examples() {
        assert_eq!(k_count_lazy(Triple::new(5, 2, 4)).unwrap(), big(3));
        assert_eq!(k_count_lazy(Triple::new(5, 3, 1)).unwrap(), big(4));
        assert_eq!(k_count_lazy(Triple::new(5, 3, 2)).unwrap(), big(5));
        assert_eq!(k_closed(Triple::new(3, 3, 0)), big(0));
        assert_eq!(k_closed(Triple::new(7, 2, 2)), big(5));
        assert_eq!(k_closed(Triple::new(9, 4, 0)), big(20));
        assert_eq!(k_count_lazy(Triple::new(7, 2, 2)).unwrap(), big(5));
        assert_eq!(k_count_lazy(Triple::new(9, 4, 0)).unwrap(), big(20));
    }

    #[test]
    fn bounds_examples() {
        let rows = bounds_check(40);
        assert!(rows.iter().all(BoundRow::holds));
        assert_eq!(rows[0].n, 1);
        assert!(superexponential_lower_bound(10));
    }

    #[test]
    fn generating_function_residuals_vanish() {
        assert!(gf_functional_equation_residual(8).is_zero());
        assert!(gf_functional_equation_residual(16).is_zero());
        assert!(v_generating_residual(16).is_zero());
    }

    #[test]
    fn residual_detects_a_perturbed_sequence() {
        // Sanity check that the residual is not vacuously zero.
        let order = 8;
        let c = catalan_series(order);
        let v = &(&c - &PowerSeries::one(order)) * &PowerSeries::geometric(order);
        let wrong = PowerSeries::from_i64(&[0, 1, 3, 8, 22, 64, 196, 626], order);
        assert!(!(&v - &wrong).is_zero());
    }

    #[test]
    fn darboux_error_decays() {
        let e10 = darboux_relative_error(10);
        let e100 = darboux_relative_error(100);
        let e400 = darboux_relative_error(400);
        assert!(e10.is_finite() && e10 > 0.0);
        assert!(e100 < 0.1);
        assert!(e400 < e100);
        // The correction term is O(1/n); the product settles near 0.61.
        for n in [100u64, 200, 400, 800] {
            let scaled = darboux_relative_error(n) * n as f64;
            assert!((0.55..0.65).contains(&scaled), "n = {n}: {scaled}");
        }
    }
}

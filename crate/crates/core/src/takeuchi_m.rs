//! The `m`-argument Takeuchi recursion
//! `t(x_1..x_m) = if x_1 <= x_2 then x_2 else t(y_1..y_m)` with
//! `y_i = t(x_i - 1, x_{i+1}, ..., x_m, x_1, ..., x_{i-1})`.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rustc_hash::{FxHashMap, FxHashSet};

use crate::eval::{
    evaluate, ArgTuple, CostReport, EvalError, EvalOutcome, Outcome, Schema, Strategy, DEFAULT_MAX_DEPTH,
};

/// The `k` with `x_1 > ... > x_k <= x_{k+1}` (1-based), or `None` when the
/// whole tuple is strictly decreasing.
pub fn first_rise(xs: &[i64]) -> Option<usize> {
    xs.windows(2).position(|w| w[0] <= w[1]).map(|i| i + 1)
}

/// `x_{k+1}` at the first rise, else `x_1`.
pub fn u_function(xs: &[i64]) -> i64 {
    match first_rise(xs) {
        Some(k) => xs[k],
        None => xs[0],
    }
}

/// `g_j(x_1..x_j)` for `j = xs.len() >= 2`.
pub fn g_aux(xs: &[i64]) -> i64 {
    assert!(xs.len() >= 2, "g_j needs j >= 2");
    let mut xs = xs;
    loop {
        let j = xs.len();
        if j == 2 {
            return xs[1];
        }
        if xs[0] == xs[1] + 1 {
            xs = &xs[1..];
        } else if xs[1] == xs[2] + 1 {
            return xs[2].max(xs[j - 1]);
        } else {
            return xs[j - 1];
        }
    }
}

/// The fixed point: `g_{k+1}(x_1..x_{k+1})` at the first rise `k`, else `x_1`.
pub fn f_m(xs: &[i64]) -> i64 {
    match first_rise(xs) {
        Some(k) => g_aux(&xs[..=k]),
        None => xs[0],
    }
}

/// The four-argument simple form: `if w <= x then x else if x <= y then y
/// else if y <= z then z else w`.
pub fn t4_simple(w: i64, x: i64, y: i64, z: i64) -> i64 {
    if w <= x {
        x
    } else if x <= y {
        y
    } else if y <= z {
        z
    } else {
        w
    }
}

/// `(x_i - 1, x_{i+1}, ..., x_{i-1})` for 0-based `i`.
pub fn rotated_decrement(xs: &[i64], i: usize) -> Vec<i64> {
    let m = xs.len();
    let mut out: Vec<i64> = (0..m).map(|j| xs[(i + j) % m]).collect();
    out[0] -= 1;
    out
}

/// A tuple where `f(y_1..y_m) != f(x_1..x_m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem4Witness {
    pub xs: Vec<i64>,
    pub ys: Vec<i64>,
    pub expected: i64,
    pub got: i64,
}

impl fmt::Display for Theorem4Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "f{:?} = {} but f{:?} = {}",
            self.xs, self.expected, self.ys, self.got
        )
    }
}

/// Calls `visit` on every `m`-tuple over `range`, in lexicographic order,
/// stopping at the first `Err`.
pub fn for_each_tuple<E>(
    m: usize,
    range: RangeInclusive<i64>,
    mut visit: impl FnMut(&[i64]) -> Result<(), E>,
) -> Result<u64, E> {
    let (lo, hi) = (*range.start(), *range.end());
    if m == 0 || lo > hi {
        return Ok(0);
    }
    let mut xs = vec![lo; m];
    let mut count = 0u64;
    loop {
        visit(&xs)?;
        count += 1;
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(count);
            }
            i -= 1;
            if xs[i] < hi {
                xs[i] += 1;
                break;
            }
            xs[i] = lo;
        }
    }
}

/// Checks `f(y_1..y_m) = f(x_1..x_m)` with `y_i = f(rotation i)` for every
/// tuple over `range` with `x_1 > x_2`. Returns the number of tuples checked.
pub fn theorem4_verify(m: usize, range: RangeInclusive<i64>) -> Result<u64, Theorem4Witness> {
    assert!(m >= 3, "m must be at least 3");
    let mut checked = 0u64;
    for_each_tuple(m, range, |xs| {
        if xs[0] <= xs[1] {
            return Ok(());
        }
        checked += 1;
        let ys: Vec<i64> = (0..m).map(|i| f_m(&rotated_decrement(xs, i))).collect();
        let (expected, got) = (f_m(xs), f_m(&ys));
        if expected == got {
            Ok(())
        } else {
            Err(Theorem4Witness {
                xs: xs.to_vec(),
                ys,
                expected,
                got,
            })
        }
    })?;
    Ok(checked)
}

fn tuple(xs: &[i64]) -> Result<ArgTuple, EvalError> {
    ArgTuple::new(xs).ok_or_else(|| EvalError::InvalidSchema(format!("unsupported arity {}", xs.len())))
}

/// Call-by-need evaluation of the `m`-argument recursion.
pub fn takm_lazy(xs: &[i64], fuel: u64) -> Result<EvalOutcome, EvalError> {
    evaluate(&Schema::TakeuchiM(xs.len()), &tuple(xs)?, Strategy::CallByNeed, fuel)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostMode {
    /// The count recurrence with inner values taken from [`f_m`].
    Recurrence,
    /// Literal full expansion of the recursion.
    Raw,
}

/// Cost of full expansion. In [`CostMode::Recurrence`] the count is
///
/// `T(xs) = if x_1 <= x_2 then 0 else 1 + sum_i T(rotation i) + T(f(rotation 1), ..., f(rotation m))`
///
/// evaluated with a memo table; each table miss costs one unit of fuel and a
/// dependency on an unfinished entry is reported as a cycle.
pub fn takm_full_cost(xs: &[i64], fuel: u64, mode: CostMode) -> Result<EvalOutcome, EvalError> {
    let args = tuple(xs)?;
    let schema = Schema::TakeuchiM(xs.len());
    match mode {
        CostMode::Raw => evaluate(&schema, &args, Strategy::FullExpansion, fuel),
        CostMode::Recurrence => {
            // Validates arity and fuel the same way as the evaluator.
            if xs.len() < 3 {
                return Err(EvalError::InvalidSchema(format!(
                    "takm arity must be at least 3, got {}",
                    xs.len()
                )));
            }
            if fuel == 0 {
                return Err(EvalError::ZeroFuel);
            }
            let mut c = CostRecurrence {
                fuel,
                used: 0,
                memo: FxHashMap::default(),
                active: FxHashSet::default(),
                stack: Vec::new(),
            };
            let result = c.count(args);
            let m = xs.len() as u32;
            let (result, elses) = match result {
                Ok(t) => (Outcome::Value(f_m(xs)), t),
                Err(Stop::Fuel) => (Outcome::FuelExhausted, BigUint::zero()),
                Err(Stop::Cycle(w)) => (Outcome::CycleDetected(w), BigUint::zero()),
                Err(Stop::Depth) => return Err(EvalError::DepthExceeded(DEFAULT_MAX_DEPTH)),
            };
            let total = BigUint::one() + &elses * (m + 1);
            Ok(EvalOutcome {
                result,
                cost: CostReport {
                    else_expansions: elses,
                    total_expansions: total,
                    fuel_consumed: BigUint::from(c.used),
                },
            })
        }
    }
}

enum Stop {
    Fuel,
    Cycle(Vec<ArgTuple>),
    Depth,
}

struct CostRecurrence {
    fuel: u64,
    used: u64,
    memo: FxHashMap<ArgTuple, BigUint>,
    active: FxHashSet<ArgTuple>,
    stack: Vec<ArgTuple>,
}

impl CostRecurrence {
    fn count(&mut self, xs: ArgTuple) -> Result<BigUint, Stop> {
        if xs.get(0) <= xs.get(1) {
            return Ok(BigUint::zero());
        }
        if let Some(v) = self.memo.get(&xs) {
            return Ok(v.clone());
        }
        if self.active.contains(&xs) {
            let from = self
                .stack
                .iter()
                .position(|q| *q == xs)
                .expect("active tuple is on the stack");
            let mut w = self.stack[from..].to_vec();
            w.push(xs);
            return Err(Stop::Cycle(w));
        }
        if self.used >= self.fuel {
            return Err(Stop::Fuel);
        }
        if self.stack.len() >= DEFAULT_MAX_DEPTH {
            return Err(Stop::Depth);
        }
        self.used += 1;
        self.stack.push(xs);
        self.active.insert(xs);
        let m = xs.arity();
        let mut total = BigUint::one();
        let mut outer = Vec::with_capacity(m);
        for i in 0..m {
            let inner = xs.rotated_decrement(i);
            total += self.count(inner)?;
            outer.push(f_m(inner.as_slice()));
        }
        total += self.count(ArgTuple::new(&outer).expect("same arity"))?;
        self.stack.pop();
        self.active.remove(&xs);
        self.memo.insert(xs, total.clone());
        Ok(total)
    }
}

//! Instrumented evaluation of the recursion schemas.
//!
//! Every schema is evaluated by repeatedly expanding its defining equation.
//! Three strategies are available:
//!
//!   1.  [`Strategy::FullExpansion`] re-derives every subcall and remembers
//!       nothing, the way a plain recursive Lisp program would.
//!   2.  [`Strategy::Memoized`] keeps one table of finished results per
//!       [`evaluate`] call.
//!   3.  [`Strategy::CallByNeed`] passes arguments as shared thunks and only
//!       forces one when a comparison or a base case demands its value.
//!
//! Each body entry costs one unit of fuel and bumps `total_expansions`; each
//! entry into the recursive branch also bumps `else_expansions`. Divergence is
//! reported either as fuel exhaustion or, when an in-progress call recurs with
//! identical arguments, as a cycle with a replayable witness.

mod args;
mod lazy;
mod strict;

pub use args::{ArgTuple, MAX_ARITY};

use num_bigint::BigUint;
use std::fmt;
use thiserror::Error;

use crate::mccarthy91::Gen91Params;
use crate::variants::HSpec;

/// Default bound on the magnitude of any argument or intermediate value.
pub const DEFAULT_GUARD: i64 = 1 << 40;

/// Default limit on nested (non-tail) recursion depth.
pub const DEFAULT_MAX_DEPTH: usize = 20_000;

/// Which recursive definition is being evaluated.
#[derive(Debug, Clone, PartialEq)]
pub enum Schema {
    /// `f(x) = if x > 100 then x - 10 else f(f(x + 11))`
    McCarthy91Original,
    /// `f(x) = if x > 100 then x - 10 else f^91(x + 901)`
    McCarthy91Modified,
    /// `f(x) = if x > a then x - b else f^c(x + d)`; parameters must be
    /// integral to be evaluated here.
    Generalized91(Gen91Params),
    /// Takeuchi's triple recursion, base value `y`.
    Takeuchi3,
    /// Gabriel's variant, base value `z`.
    Gabriel,
    /// Base value `0` if `x = y = z`, else `1`.
    BooleanB,
    /// Base value `x`.
    KScheme,
    /// Base value `h(x, y, z)`.
    VH(HSpec),
    /// The `m`-argument Takeuchi recursion, base value `x_2`.
    TakeuchiM(usize),
}

impl Schema {
    pub fn arity(&self) -> usize {
        match self {
            Schema::McCarthy91Original | Schema::McCarthy91Modified | Schema::Generalized91(_) => 1,
            Schema::TakeuchiM(m) => *m,
            _ => 3,
        }
    }

    /// Short stable identifier, used in reports and on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            Schema::McCarthy91Original => "mc91",
            Schema::McCarthy91Modified => "mc91-modified",
            Schema::Generalized91(_) => "gen91",
            Schema::Takeuchi3 => "tak3",
            Schema::Gabriel => "gabriel",
            Schema::BooleanB => "boolean-b",
            Schema::KScheme => "k",
            Schema::VH(_) => "vh",
            Schema::TakeuchiM(_) => "takm",
        }
    }

    pub fn supports(&self, strategy: Strategy) -> bool {
        match strategy {
            Strategy::FullExpansion | Strategy::Memoized => true,
            Strategy::CallByNeed => !matches!(
                self,
                Schema::McCarthy91Original | Schema::McCarthy91Modified | Schema::Generalized91(_) | Schema::Gabriel
            ),
        }
    }

    pub fn strategies(&self) -> Vec<Strategy> {
        Strategy::ALL.into_iter().filter(|s| self.supports(*s)).collect()
    }

    fn rule(&self) -> Result<Rule<'_>, EvalError> {
        Ok(match self {
            Schema::McCarthy91Original => Rule::Ninety {
                a: 100,
                b: 10,
                c: 2,
                d: 11,
            },
            Schema::McCarthy91Modified => Rule::Ninety {
                a: 100,
                b: 10,
                c: 91,
                d: 901,
            },
            Schema::Generalized91(p) => {
                let (a, b, c, d) = p.integral().ok_or(EvalError::NonIntegralParameters)?;
                Rule::Ninety { a, b, c, d }
            }
            Schema::Takeuchi3 => Rule::Tak {
                arity: 3,
                base: Base::Second,
            },
            Schema::Gabriel => Rule::Tak {
                arity: 3,
                base: Base::Third,
            },
            Schema::BooleanB => Rule::Tak {
                arity: 3,
                base: Base::BooleanB,
            },
            Schema::KScheme => Rule::Tak {
                arity: 3,
                base: Base::First,
            },
            Schema::VH(h) => Rule::Tak {
                arity: 3,
                base: Base::H(h),
            },
            Schema::TakeuchiM(m) => {
                if *m < 3 || *m > MAX_ARITY {
                    return Err(EvalError::InvalidSchema(format!(
                        "takm arity must lie in 3..={MAX_ARITY}, got {m}"
                    )));
                }
                Rule::Tak {
                    arity: *m,
                    base: Base::Second,
                }
            }
        })
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schema::Generalized91(p) => write!(f, "gen91{p}"),
            Schema::TakeuchiM(m) => write!(f, "takm({m})"),
            _ => f.write_str(self.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    FullExpansion,
    Memoized,
    CallByNeed,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::FullExpansion, Strategy::Memoized, Strategy::CallByNeed];

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::FullExpansion => "full",
            Strategy::Memoized => "memo",
            Strategy::CallByNeed => "need",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exact expansion counters for one evaluation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CostReport {
    pub else_expansions: BigUint,
    pub total_expansions: BigUint,
    pub fuel_consumed: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Value(i64),
    FuelExhausted,
    /// Chain of argument tuples whose last element equals the first; each
    /// element arises from its predecessor by one expansion step.
    CycleDetected(Vec<ArgTuple>),
}

impl Outcome {
    pub fn value(&self) -> Option<i64> {
        match self {
            Outcome::Value(v) => Some(*v),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Outcome::Value(_) => "value",
            Outcome::FuelExhausted => "fuel-exhausted",
            Outcome::CycleDetected(_) => "cycle",
        }
    }

    pub fn diverged(&self) -> bool {
        !matches!(self, Outcome::Value(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalOutcome {
    pub result: Outcome,
    pub cost: CostReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("schema {schema} takes {expected} arguments, got {got}")]
    ArityMismatch {
        schema: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("fuel must be positive")]
    ZeroFuel,
    #[error("argument {value} left the guard range |v| <= {guard}")]
    Overflow { value: i128, guard: i64 },
    #[error("strategy {strategy} is not applicable to schema {schema}")]
    StrategyNotApplicable { schema: &'static str, strategy: Strategy },
    #[error("generalized 91 parameters must be integral for evaluation")]
    NonIntegralParameters,
    #[error("invalid schema: {0}")]
    InvalidSchema(String),
    #[error("nested recursion depth exceeded {0}")]
    DepthExceeded(usize),
    #[error("strategies disagree: {first} returned {first_value}, {second} returned {second_value}")]
    StrategyDisagreement {
        first: Strategy,
        first_value: i64,
        second: Strategy,
        second_value: i64,
    },
}

/// Tunables shared by all strategies.
#[derive(Debug, Clone, Copy)]
pub struct EvalConfig {
    /// Every argument and intermediate value must satisfy `|v| <= guard`.
    pub guard: i64,
    /// Limit on nested, non-tail recursion.
    pub max_depth: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            guard: DEFAULT_GUARD,
            max_depth: DEFAULT_MAX_DEPTH,
        }
    }
}

/// A schema lowered to the shape the evaluators work with.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Rule<'a> {
    Ninety { a: i64, b: i64, c: u32, d: i64 },
    Tak { arity: usize, base: Base<'a> },
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum Base<'a> {
    First,
    Second,
    Third,
    BooleanB,
    H(&'a HSpec),
}

impl Base<'_> {
    pub(crate) fn value(&self, args: &ArgTuple) -> i64 {
        let s = args.as_slice();
        match self {
            Base::First => s[0],
            Base::Second => s[1],
            Base::Third => s[2],
            Base::BooleanB => i64::from(!(s[0] == s[1] && s[1] == s[2])),
            Base::H(h) => h.eval(s[0], s[1], s[2]),
        }
    }
}

/// Internal reasons an evaluation stopped early.
#[derive(Debug)]
pub(crate) enum Halt {
    Fuel,
    Cycle(Vec<ArgTuple>),
    Error(EvalError),
}

impl From<EvalError> for Halt {
    fn from(e: EvalError) -> Self {
        Halt::Error(e)
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Counters {
    pub(crate) else_expansions: u64,
    pub(crate) total_expansions: u64,
}

impl Counters {
    /// Records one body entry, failing once the budget is spent.
    #[inline]
    pub(crate) fn enter(&mut self, fuel: u64) -> Result<(), Halt> {
        if self.total_expansions >= fuel {
            return Err(Halt::Fuel);
        }
        self.total_expansions += 1;
        Ok(())
    }

    fn report(&self) -> CostReport {
        CostReport {
            else_expansions: self.else_expansions.into(),
            total_expansions: self.total_expansions.into(),
            fuel_consumed: self.total_expansions.into(),
        }
    }
}

#[inline]
pub(crate) fn check_guard(v: i128, guard: i64) -> Result<i64, EvalError> {
    if v.unsigned_abs() > guard.unsigned_abs() as u128 {
        Err(EvalError::Overflow { value: v, guard })
    } else {
        Ok(v as i64)
    }
}

/// Evaluates `schema` at `args` with the default configuration.
pub fn evaluate(schema: &Schema, args: &ArgTuple, strategy: Strategy, fuel: u64) -> Result<EvalOutcome, EvalError> {
    evaluate_with(&EvalConfig::default(), schema, args, strategy, fuel)
}

pub fn evaluate_with(
    config: &EvalConfig,
    schema: &Schema,
    args: &ArgTuple,
    strategy: Strategy,
    fuel: u64,
) -> Result<EvalOutcome, EvalError> {
    let rule = schema.rule()?;
    if args.arity() != schema.arity() {
        return Err(EvalError::ArityMismatch {
            schema: schema.name(),
            expected: schema.arity(),
            got: args.arity(),
        });
    }
    if fuel == 0 {
        return Err(EvalError::ZeroFuel);
    }
    if !schema.supports(strategy) {
        return Err(EvalError::StrategyNotApplicable {
            schema: schema.name(),
            strategy,
        });
    }
    for &v in args.as_slice() {
        check_guard(v as i128, config.guard)?;
    }

    let (halt, counters) = match strategy {
        Strategy::FullExpansion | Strategy::Memoized => {
            let mut m = strict::Machine::new(rule, config, fuel, strategy == Strategy::Memoized);
            let r = m.call(*args);
            (r, m.counters)
        }
        Strategy::CallByNeed => {
            let mut m = lazy::Machine::new(rule, config, fuel);
            let r = m.run(args);
            (r, m.counters)
        }
    };
    let result = match halt {
        Ok(v) => Outcome::Value(v),
        Err(Halt::Fuel) => Outcome::FuelExhausted,
        Err(Halt::Cycle(w)) => Outcome::CycleDetected(w),
        Err(Halt::Error(e)) => return Err(e),
    };
    Ok(EvalOutcome {
        result,
        cost: counters.report(),
    })
}

/// Runs every strategy applicable to `schema` and checks that all returned
/// values agree.
pub fn compare_strategies(
    schema: &Schema,
    args: &ArgTuple,
    fuel: u64,
) -> Result<Vec<(Strategy, EvalOutcome)>, EvalError> {
    let mut out: Vec<(Strategy, EvalOutcome)> = Vec::new();
    for strategy in schema.strategies() {
        let outcome = evaluate(schema, args, strategy, fuel)?;
        if let Some(v) = outcome.result.value() {
            let prior = out.iter().find_map(|(s, o)| o.result.value().map(|pv| (*s, pv)));
            if let Some((first, first_value)) = prior {
                if first_value != v {
                    return Err(EvalError::StrategyDisagreement {
                        first,
                        first_value,
                        second: strategy,
                        second_value: v,
                    });
                }
            }
        }
        out.push((strategy, outcome));
    }
    Ok(out)
}

/// The argument tuples one expansion of `args` calls, in evaluation order.
/// The last entry is the outermost (tail) call when the inner values could be
/// computed within `fuel`; it is omitted otherwise. Base cases have none.
pub fn expansion_children(schema: &Schema, args: &ArgTuple, fuel: u64) -> Result<Vec<ArgTuple>, EvalError> {
    let rule = schema.rule()?;
    let value_of = |t: &ArgTuple| -> Result<Option<i64>, EvalError> {
        Ok(evaluate(schema, t, Strategy::FullExpansion, fuel)?.result.value())
    };
    let mut out = Vec::new();
    match rule {
        Rule::Ninety { a, d, c, .. } => {
            let x = args.get(0);
            if x > a {
                return Ok(out);
            }
            let mut cur = ArgTuple::one(x + d);
            out.push(cur);
            for _ in 1..c {
                match value_of(&cur)? {
                    Some(v) => {
                        cur = ArgTuple::one(v);
                        out.push(cur);
                    }
                    None => break,
                }
            }
        }
        Rule::Tak { arity, .. } => {
            if args.get(0) <= args.get(1) {
                return Ok(out);
            }
            let mut vals = Vec::with_capacity(arity);
            for i in 0..arity {
                let inner = args.rotated_decrement(i);
                out.push(inner);
                vals.push(value_of(&inner)?);
            }
            if let Some(vals) = vals.into_iter().collect::<Option<Vec<i64>>>() {
                out.push(ArgTuple::new(&vals).expect("arity fits"));
            }
        }
    }
    Ok(out)
}

/// Checks a cycle witness: it closes on itself and every step is one
/// expansion of its predecessor.
pub fn replay_witness(schema: &Schema, witness: &[ArgTuple], fuel: u64) -> bool {
    if witness.len() < 2 || witness.first() != witness.last() {
        return false;
    }
    witness.windows(2).all(|w| {
        expansion_children(schema, &w[0], fuel)
            .map(|kids| kids.contains(&w[1]))
            .unwrap_or(false)
    })
}

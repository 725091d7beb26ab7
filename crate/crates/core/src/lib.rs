//! Recursion-schema laboratory: instrumented evaluation of the 91 function,
//! Takeuchi's function and their relatives, with the exact combinatorics
//! needed to check their cost functions.

pub mod combinatorics;
pub mod eval;
pub mod mccarthy91;
pub mod takeuchi3;
pub mod takeuchi_m;
pub mod variants;

pub use combinatorics::PowerSeries;
pub use eval::{
    compare_strategies, evaluate, evaluate_with, replay_witness, ArgTuple, CostReport, EvalConfig, EvalError,
    EvalOutcome, Outcome, Schema, Strategy,
};
pub use mccarthy91::Gen91Params;
pub use takeuchi3::{SequenceName, SequenceTable, Triple};
pub use variants::{HDefault, HSpec, TotalityVerdict};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

//! Call-by-need evaluation of the Takeuchi-shaped schemas.
//!
//! Arguments are references into a thunk arena, each carrying an integer
//! offset so that `x - 1` never needs its own thunk. A thunk is forced at most
//! once; its value is then shared by every reference.

use rustc_hash::FxHashMap;

use super::{check_guard, ArgTuple, Base, Counters, EvalConfig, EvalError, Halt, Rule};

#[derive(Debug, Clone, Copy)]
struct ArgRef {
    thunk: usize,
    offset: i64,
}

enum Thunk {
    Value(i64),
    Pending(Vec<ArgRef>),
    Forcing,
}

pub(super) struct Machine<'a> {
    arity: usize,
    base: Base<'a>,
    config: &'a EvalConfig,
    fuel: u64,
    arena: Vec<Thunk>,
    depth: usize,
    pub(super) counters: Counters,
}

impl<'a> Machine<'a> {
    pub(super) fn new(rule: Rule<'a>, config: &'a EvalConfig, fuel: u64) -> Self {
        let (arity, base) = match rule {
            Rule::Tak { arity, base } => (arity, base),
            Rule::Ninety { .. } => unreachable!("call-by-need is rejected for the 91 family"),
        };
        Machine {
            arity,
            base,
            config,
            fuel,
            arena: Vec::new(),
            depth: 0,
            counters: Counters::default(),
        }
    }

    pub(super) fn run(&mut self, args: &ArgTuple) -> Result<i64, Halt> {
        let refs = args
            .as_slice()
            .iter()
            .map(|&v| {
                self.arena.push(Thunk::Value(v));
                ArgRef {
                    thunk: self.arena.len() - 1,
                    offset: 0,
                }
            })
            .collect();
        self.call(refs)
    }

    fn peek(&self, r: ArgRef) -> Option<i64> {
        match self.arena[r.thunk] {
            Thunk::Value(v) => Some(v + r.offset),
            _ => None,
        }
    }

    fn force(&mut self, r: ArgRef) -> Result<i64, Halt> {
        let raw = match std::mem::replace(&mut self.arena[r.thunk], Thunk::Forcing) {
            Thunk::Value(v) => {
                self.arena[r.thunk] = Thunk::Value(v);
                v
            }
            Thunk::Pending(call) => {
                self.depth += 1;
                if self.depth > self.config.max_depth {
                    return Err(EvalError::DepthExceeded(self.config.max_depth).into());
                }
                let v = self.call(call)?;
                self.depth -= 1;
                self.arena[r.thunk] = Thunk::Value(v);
                v
            }
            // A thunk only refers to thunks created before it, so it can never
            // demand itself.
            Thunk::Forcing => unreachable!("thunk forced re-entrantly"),
        };
        Ok(check_guard(raw as i128 + r.offset as i128, self.config.guard)?)
    }

    fn base_value(&mut self, args: &[ArgRef], x: i64, y: i64) -> Result<i64, Halt> {
        let v = match self.base {
            Base::First => x,
            Base::Second => y,
            Base::Third => self.force(args[2])?,
            Base::BooleanB => {
                if x == y {
                    i64::from(self.force(args[2])? != x)
                } else {
                    1
                }
            }
            Base::H(h) => {
                let z = self.force(args[2])?;
                h.eval(x, y, z)
            }
        };
        Ok(check_guard(v as i128, self.config.guard)?)
    }

    fn call(&mut self, mut args: Vec<ArgRef>) -> Result<i64, Halt> {
        // Tail-chain bookkeeping for cycle detection. Entries are compared by
        // value once all of their arguments have been forced; resolution runs
        // in order, so a reported cycle is a contiguous run of the chain.
        let mut chain: Vec<Vec<ArgRef>> = Vec::new();
        let mut resolved: Vec<ArgTuple> = Vec::new();
        let mut seen: FxHashMap<ArgTuple, usize> = FxHashMap::default();

        loop {
            self.counters.enter(self.fuel)?;
            let x = self.force(args[0])?;
            let y = self.force(args[1])?;
            if x <= y {
                return self.base_value(&args, x, y);
            }
            self.counters.else_expansions += 1;

            chain.push(args.clone());
            while resolved.len() < chain.len() {
                let entry = &chain[resolved.len()];
                let vals: Option<Vec<i64>> = entry.iter().map(|r| self.peek(*r)).collect();
                let Some(vals) = vals else { break };
                let t = ArgTuple::new(&vals).expect("arity within bounds");
                if let Some(&first) = seen.get(&t) {
                    let mut witness = resolved[first..].to_vec();
                    witness.push(t);
                    return Err(Halt::Cycle(witness));
                }
                seen.insert(t, resolved.len());
                resolved.push(t);
            }

            let m = self.arity;
            let next = (0..m)
                .map(|i| {
                    let mut inner: Vec<ArgRef> = (0..m).map(|j| args[(i + j) % m]).collect();
                    inner[0].offset -= 1;
                    self.arena.push(Thunk::Pending(inner));
                    ArgRef {
                        thunk: self.arena.len() - 1,
                        offset: 0,
                    }
                })
                .collect();
            args = next;
        }
    }
}

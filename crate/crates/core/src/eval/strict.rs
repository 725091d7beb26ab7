//! Eager evaluation, with or without a memo table.

use rustc_hash::FxHashMap;

use super::{check_guard, ArgTuple, Counters, EvalConfig, EvalError, Halt, Rule};

/// Path length above which the full-expansion machine starts indexing the
/// in-progress calls. Any real cycle makes the path grow without bound, so it
/// is caught once the path is this deep; shallow evaluations pay nothing.
const TRACK_DEPTH: usize = 256;

pub(super) struct Machine<'a> {
    rule: Rule<'a>,
    config: &'a EvalConfig,
    fuel: u64,
    memo: Option<FxHashMap<ArgTuple, i64>>,
    /// Every call currently in progress, outermost first. A frame contributes
    /// one entry per step of its tail chain.
    path: Vec<ArgTuple>,
    /// Position of each path entry, maintained only while `tracking`.
    index: FxHashMap<ArgTuple, usize>,
    tracking: bool,
    track_from: usize,
    depth: usize,
    pub(super) counters: Counters,
}

impl<'a> Machine<'a> {
    pub(super) fn new(rule: Rule<'a>, config: &'a EvalConfig, fuel: u64, memoize: bool) -> Self {
        Machine {
            rule,
            config,
            fuel,
            memo: memoize.then(FxHashMap::default),
            path: Vec::new(),
            index: FxHashMap::default(),
            tracking: false,
            // The memo table already pays for hashing, so track from the start.
            track_from: if memoize { 0 } else { TRACK_DEPTH },
            depth: 0,
            counters: Counters::default(),
        }
    }

    fn push(&mut self, t: ArgTuple) -> Result<(), Halt> {
        let pos = self.path.len();
        self.path.push(t);
        if self.tracking {
            if let Some(&first) = self.index.get(&t) {
                return Err(Halt::Cycle(self.path[first..].to_vec()));
            }
            self.index.insert(t, pos);
        } else if self.path.len() > self.track_from {
            self.tracking = true;
            self.index.clear();
            for (i, p) in self.path.iter().enumerate() {
                if let Some(&first) = self.index.get(p) {
                    return Err(Halt::Cycle(self.path[first..=i].to_vec()));
                }
                self.index.insert(*p, i);
            }
        }
        Ok(())
    }

    fn truncate(&mut self, len: usize) {
        if self.tracking {
            for t in &self.path[len..] {
                self.index.remove(t);
            }
            if len < self.track_from / 2 {
                self.tracking = false;
                self.index.clear();
            }
        }
        self.path.truncate(len);
    }

    fn guard(&self, v: i128) -> Result<i64, Halt> {
        Ok(check_guard(v, self.config.guard)?)
    }

    pub(super) fn call(&mut self, args: ArgTuple) -> Result<i64, Halt> {
        self.depth += 1;
        if self.depth > self.config.max_depth {
            return Err(EvalError::DepthExceeded(self.config.max_depth).into());
        }
        let base_len = self.path.len();
        let r = self.run_chain(args);
        if let (Ok(v), Some(memo)) = (&r, self.memo.as_mut()) {
            for t in &self.path[base_len..] {
                memo.insert(*t, *v);
            }
        }
        self.truncate(base_len);
        self.depth -= 1;
        r
    }

    /// Follows the tail chain of one call until a base case or a memo hit.
    fn run_chain(&mut self, mut cur: ArgTuple) -> Result<i64, Halt> {
        loop {
            if let Some(v) = self.memo.as_ref().and_then(|m| m.get(&cur)) {
                return Ok(*v);
            }
            self.push(cur)?;
            self.counters.enter(self.fuel)?;
            match self.rule {
                Rule::Ninety { a, b, c, d } => {
                    let x = cur.get(0);
                    if x > a {
                        return self.guard(x as i128 - b as i128);
                    }
                    self.counters.else_expansions += 1;
                    let mut v = self.guard(x as i128 + d as i128)?;
                    for _ in 1..c {
                        v = self.call(ArgTuple::one(v))?;
                    }
                    cur = ArgTuple::one(v);
                }
                Rule::Tak { arity, base } => {
                    if cur.get(0) <= cur.get(1) {
                        return self.guard(base.value(&cur) as i128);
                    }
                    self.counters.else_expansions += 1;
                    let mut vals = [0i64; super::MAX_ARITY];
                    for (i, slot) in vals.iter_mut().enumerate().take(arity) {
                        let inner = cur.rotated_decrement(i);
                        self.guard(inner.get(0) as i128)?;
                        *slot = self.call(inner)?;
                    }
                    cur = ArgTuple::new(&vals[..arity]).expect("arity within bounds");
                }
            }
        }
    }
}

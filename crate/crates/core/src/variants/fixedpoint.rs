//! Bounded search for total solutions of `v_h`.
//!
//! Values are computed on demand by expanding the recurrence. Base points
//! (`x <= y`) take their value from `h` directly, wherever they lie; other
//! points must lie in the search box. When a point is needed while its own
//! expansion is still in progress, the search branches on a hypothesis for
//! its value, drawn from a finite candidate range, and rejects the branch
//! when the finished expansion disagrees with the hypothesis.

use std::fmt;
use std::ops::RangeInclusive;

use rustc_hash::{FxHashMap, FxHashSet};

use super::{HDefault, HSpec};
use crate::takeuchi3::Triple;

/// Nesting limit for hypotheses within one root.
const MAX_NESTED_HYPOTHESES: usize = 3;

/// An axis-aligned box of triples, bounds inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleBox {
    pub lo: Triple,
    pub hi: Triple,
}

impl TripleBox {
    pub fn new(lo: Triple, hi: Triple) -> Self {
        TripleBox { lo, hi }
    }

    /// `[lo..hi]^3`
    pub fn cube(lo: i64, hi: i64) -> Self {
        TripleBox::new(Triple::new(lo, lo, lo), Triple::new(hi, hi, hi))
    }

    /// The cube of half-width `radius` centred on `c`.
    pub fn around(c: Triple, radius: i64) -> Self {
        TripleBox::new(c.shifted(-radius), c.shifted(radius))
    }

    pub fn contains(&self, t: Triple) -> bool {
        (self.lo.x..=self.hi.x).contains(&t.x)
            && (self.lo.y..=self.hi.y).contains(&t.y)
            && (self.lo.z..=self.hi.z).contains(&t.z)
    }

    pub fn points(&self) -> impl Iterator<Item = Triple> + '_ {
        (self.lo.x..=self.hi.x).flat_map(move |x| {
            (self.lo.y..=self.hi.y).flat_map(move |y| (self.lo.z..=self.hi.z).map(move |z| Triple::new(x, y, z)))
        })
    }

    pub fn len(&self) -> usize {
        let side = |a: i64, b: i64| (b - a + 1).max(0) as usize;
        side(self.lo.x, self.hi.x) * side(self.lo.y, self.hi.y) * side(self.lo.z, self.hi.z)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for TripleBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

/// Why a hypothesis was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseOutcome {
    /// Expanding `point` under the hypothesis produced `computed` instead.
    Clash { point: Triple, computed: i64 },
    /// Every value of a further, nested hypothesis was rejected.
    Nested(Box<Derivation>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefutedCase {
    pub hypothesis: i64,
    pub outcome: CaseOutcome,
}

/// A proof that `point` has no consistent value in the candidate range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub point: Triple,
    /// Calls from `point` back to itself; first and last entries are `point`.
    pub chain: Vec<Triple>,
    pub cases: Vec<RefutedCase>,
}

impl Derivation {
    /// `computed - hypothesis`, when every case clashes at `point` itself by
    /// the same amount.
    pub fn self_offset(&self) -> Option<i64> {
        let mut offset = None;
        for case in &self.cases {
            match case.outcome {
                CaseOutcome::Clash { point, computed } if point == self.point => {
                    let d = computed - case.hypothesis;
                    if offset.is_some_and(|o| o != d) {
                        return None;
                    }
                    offset = Some(d);
                }
                _ => return None,
            }
        }
        offset
    }

    /// `(hypothesis, computed)` pairs for cases that clash directly at
    /// `point`.
    pub fn direct_clashes(&self) -> Vec<(i64, i64)> {
        self.cases
            .iter()
            .filter_map(|c| match c.outcome {
                CaseOutcome::Clash { point, computed } if point == self.point => Some((c.hypothesis, computed)),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chain: Vec<String> = self.chain.iter().map(|t| format!("v{t}")).collect();
        write!(f, "{}", chain.join(" -> "))?;
        if let Some(d) = self.self_offset() {
            return write!(f, "; v{p} = {d} + v{p} for every candidate", p = self.point);
        }
        for case in &self.cases {
            match &case.outcome {
                CaseOutcome::Clash { point, computed } => write!(
                    f,
                    "; v{} = {} gives v{} = {}",
                    self.point, case.hypothesis, point, computed
                )?,
                CaseOutcome::Nested(d) => write!(f, "; v{} = {} gives [{}]", self.point, case.hypothesis, d)?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixpointVerdict {
    /// Values for every non-base point of the box satisfying the recurrence.
    Consistent(std::collections::BTreeMap<Triple, i64>),
    /// Some point has no value in the candidate range.
    Inconsistent(Derivation),
    /// The search left the box or ran out of nesting; `at` is where.
    Inconclusive { at: Triple, reason: String },
}

impl FixpointVerdict {
    pub fn kind(&self) -> &'static str {
        match self {
            FixpointVerdict::Consistent(_) => "consistent",
            FixpointVerdict::Inconsistent(_) => "inconsistent",
            FixpointVerdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

enum Stop {
    Guess(Triple, Vec<Triple>),
    Escape(Triple),
    Clash(Triple, i64),
}

struct Branch<'a> {
    h: &'a HSpec,
    region: &'a TripleBox,
    committed: &'a FxHashMap<Triple, i64>,
    hyp: &'a FxHashMap<Triple, i64>,
    memo: FxHashMap<Triple, i64>,
    stack: Vec<Triple>,
    active: FxHashSet<Triple>,
}

impl Branch<'_> {
    fn eval(&mut self, p: Triple) -> Result<i64, Stop> {
        if p.x <= p.y {
            return Ok(self.h.at(p));
        }
        if let Some(&v) = self.committed.get(&p).or_else(|| self.memo.get(&p)) {
            return Ok(v);
        }
        if !self.region.contains(p) {
            return Err(Stop::Escape(p));
        }
        if self.active.contains(&p) {
            if let Some(&v) = self.hyp.get(&p) {
                return Ok(v);
            }
            let from = self
                .stack
                .iter()
                .position(|&q| q == p)
                .expect("active point is on the stack");
            let mut chain = self.stack[from..].to_vec();
            chain.push(p);
            return Err(Stop::Guess(p, chain));
        }
        self.stack.push(p);
        self.active.insert(p);
        let [a, b, c] = p.inner();
        let (a, b, c) = (self.eval(a)?, self.eval(b)?, self.eval(c)?);
        let v = self.eval(Triple::new(a, b, c))?;
        self.stack.pop();
        self.active.remove(&p);
        if let Some(&hv) = self.hyp.get(&p) {
            if hv != v {
                return Err(Stop::Clash(p, v));
            }
        }
        self.memo.insert(p, v);
        Ok(v)
    }
}

enum RootResult {
    Consistent(FxHashMap<Triple, i64>),
    Partial(Triple, String),
    Refuted(Derivation),
}

struct Search<'a> {
    h: &'a HSpec,
    region: &'a TripleBox,
    values: RangeInclusive<i64>,
}

impl Search<'_> {
    fn root(
        &self,
        root: Triple,
        committed: &FxHashMap<Triple, i64>,
        hyp: &mut FxHashMap<Triple, i64>,
    ) -> Result<RootResult, (Triple, i64)> {
        let mut br = Branch {
            h: self.h,
            region: self.region,
            committed,
            hyp,
            memo: FxHashMap::default(),
            stack: Vec::new(),
            active: FxHashSet::default(),
        };
        match br.eval(root) {
            Ok(_) => Ok(RootResult::Consistent(br.memo)),
            Err(Stop::Escape(q)) => Ok(RootResult::Partial(q, format!("needs v{q}, outside the box"))),
            Err(Stop::Clash(q, v)) => Err((q, v)),
            Err(Stop::Guess(q, chain)) => {
                if hyp.len() >= MAX_NESTED_HYPOTHESES {
                    return Ok(RootResult::Partial(q, "hypothesis nesting limit reached".into()));
                }
                let mut cases = Vec::new();
                let mut partial = None;
                for guess in self.values.clone() {
                    hyp.insert(q, guess);
                    let r = self.root(root, committed, hyp);
                    hyp.remove(&q);
                    match r {
                        Ok(RootResult::Consistent(m)) => return Ok(RootResult::Consistent(m)),
                        Ok(RootResult::Partial(at, why)) => {
                            partial.get_or_insert((at, why));
                        }
                        Ok(RootResult::Refuted(d)) => cases.push(RefutedCase {
                            hypothesis: guess,
                            outcome: CaseOutcome::Nested(Box::new(d)),
                        }),
                        Err((point, computed)) => cases.push(RefutedCase {
                            hypothesis: guess,
                            outcome: CaseOutcome::Clash { point, computed },
                        }),
                    }
                }
                Ok(match partial {
                    Some((at, why)) => RootResult::Partial(at, why),
                    None => RootResult::Refuted(Derivation { point: q, chain, cases }),
                })
            }
        }
    }

    fn root_fresh(&self, root: Triple, committed: &FxHashMap<Triple, i64>) -> RootResult {
        match self.root(root, committed, &mut FxHashMap::default()) {
            Ok(r) => r,
            // Without hypotheses a finished expansion cannot clash.
            Err((q, _)) => unreachable!("clash at {q} with no hypotheses"),
        }
    }
}

/// Looks for values of `v_h` on the non-base points of `region`, with
/// hypotheses for self-dependent points drawn from `values`.
///
/// Roots are visited in lexicographic order and each consistent root commits
/// its values. A root refuted under the committed values is retried from
/// scratch; if it is refuted again the verdict is [`FixpointVerdict::Inconsistent`],
/// which holds for every solution whose self-dependent values lie in
/// `values`.
pub fn fixedpoint_search(h: &HSpec, region: &TripleBox, values: RangeInclusive<i64>) -> FixpointVerdict {
    let search = Search { h, region, values };
    let empty = FxHashMap::default();
    let mut committed: FxHashMap<Triple, i64> = FxHashMap::default();
    let mut open: Option<(Triple, String)> = None;
    for root in region.points().filter(|t| t.x > t.y) {
        if committed.contains_key(&root) {
            continue;
        }
        match search.root_fresh(root, &committed) {
            RootResult::Consistent(m) => committed.extend(m),
            RootResult::Partial(at, why) => {
                open.get_or_insert((at, why));
            }
            RootResult::Refuted(d) => match search.root_fresh(root, &empty) {
                RootResult::Refuted(d0) => return FixpointVerdict::Inconsistent(d0),
                _ => {
                    open.get_or_insert((root, format!("conflicts with earlier choices: {d}")));
                }
            },
        }
    }
    match open {
        Some((at, reason)) => FixpointVerdict::Inconclusive { at, reason },
        None => FixpointVerdict::Consistent(committed.into_iter().filter(|(t, _)| region.contains(*t)).collect()),
    }
}

#[derive(Debug, Clone)]
pub struct ExploreEntry {
    pub label: String,
    pub h: HSpec,
    pub verdict: FixpointVerdict,
}

#[derive(Debug, Clone)]
pub struct ExploreReport {
    pub entries: Vec<ExploreEntry>,
    /// Size of the full family before sampling.
    pub family_size: u128,
}

impl ExploreReport {
    pub fn count(&self, kind: &str) -> usize {
        self.entries.iter().filter(|e| e.verdict.kind() == kind).count()
    }
}

/// Runs [`fixedpoint_search`] over auxiliary functions strictly below
/// `max(x,y,z)`.
///
/// The family assigns each base point of `[1..box_size]^3` a value in
/// `[max - max_val, max - 1]` and uses `max(x,y,z) - 1` elsewhere. At most
/// `limit` members are searched, evenly spaced through the family, followed
/// by two reference functions (`h = y` and `h = 0`).
pub fn open_problem3_explore(max_val: i64, box_size: i64, limit: usize) -> ExploreReport {
    let max_val = max_val.max(1);
    let base_points: Vec<Triple> = TripleBox::cube(1, box_size).points().filter(|t| t.x <= t.y).collect();
    let radix = max_val as u128;
    let family_size = radix.checked_pow(base_points.len() as u32).unwrap_or(u128::MAX);
    let samples = (limit as u128).min(family_size).max(1);
    let stride = (family_size / samples).max(1);
    let region = TripleBox::cube(0, box_size + 1);
    let values = -1..=box_size + 1;

    let mut entries = Vec::new();
    for i in 0..samples {
        let mut code = i * stride;
        let mut h = HSpec::new(HDefault::MaxMinusOne);
        for &t in &base_points {
            let below = (code % radix) as i64 + 1;
            code /= radix;
            h.insert(t, t.x.max(t.y).max(t.z) - below);
        }
        let verdict = fixedpoint_search(&h, &region, values.clone());
        entries.push(ExploreEntry {
            label: format!("member {}", i * stride),
            h,
            verdict,
        });
    }
    for d in [HDefault::TakY, HDefault::Zero] {
        let h = HSpec::new(d);
        let verdict = fixedpoint_search(&h, &region, values.clone());
        entries.push(ExploreEntry {
            label: format!("reference {d}"),
            h,
            verdict,
        });
    }
    ExploreReport { entries, family_size }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::takeuchi3::tak_simple;

    #[test]
    fn takeuchi_base_is_consistent() {
        let region = TripleBox::cube(-2, 4);
        match fixedpoint_search(&HSpec::new(HDefault::TakY), &region, -3..=5) {
            FixpointVerdict::Consistent(table) => {
                assert_eq!(table.len(), region.points().filter(|t| t.x > t.y).count());
                for (t, v) in table {
                    assert_eq!(v, tak_simple(t), "{t}");
                }
            }
            other => panic!("expected a consistent table, got {other:?}"),
        }
    }

    #[test]
    fn zero_base_is_consistent() {
        let verdict = fixedpoint_search(&HSpec::new(HDefault::Zero), &TripleBox::cube(-2, 3), 0..=1);
        let FixpointVerdict::Consistent(table) = verdict else {
            panic!("expected consistent");
        };
        assert!(table.values().all(|&v| v == 0));
    }

    #[test]
    fn polynomial_base_has_offset_sixteen() {
        let region = TripleBox::cube(-1, 5);
        let FixpointVerdict::Inconsistent(d) = fixedpoint_search(&HSpec::new(HDefault::Poly2xy), &region, -20..=20)
        else {
            panic!("expected inconsistent");
        };
        assert_eq!(d.point, Triple::new(2, 1, 4));
        assert_eq!(d.self_offset(), Some(16));
        assert_eq!(d.chain.first(), d.chain.last());
    }

    #[test]
    fn bounded_base_has_no_fixed_point() {
        let region = TripleBox::cube(-1, 5);
        let FixpointVerdict::Inconsistent(d) =
            fixedpoint_search(&HSpec::new(HDefault::BoundedContrived), &region, -1..=5)
        else {
            panic!("expected inconsistent");
        };
        // v(2,1,4) = v(4,3,1) = v(3, v(2,1,4), 3), and v(3,y,3) is 2 at y = 3
        // and 3 elsewhere.
        assert_eq!(d.point, Triple::new(2, 1, 4));
        assert!(d.chain.contains(&Triple::new(4, 3, 1)));
        let clashes = d.direct_clashes();
        assert_eq!(clashes.len(), 7);
        for (y, computed) in clashes {
            assert_ne!(y, computed);
            assert_eq!(computed, if y == 3 { 2 } else { 3 });
        }
    }

    #[test]
    fn escape_is_inconclusive() {
        // With h = x, v(1,0,0) calls v(0,-1,-1), which lies outside.
        let h = HSpec::new(HDefault::IdX);
        let verdict = fixedpoint_search(&h, &TripleBox::cube(0, 2), 0..=2);
        assert_ne!(verdict.kind(), "consistent");
    }

    #[test]
    fn box_helpers() {
        let b = TripleBox::around(Triple::new(0, 0, 0), 1);
        assert_eq!(b.len(), 27);
        assert_eq!(b.points().count(), 27);
        assert!(b.contains(Triple::new(1, -1, 0)));
        assert!(!b.contains(Triple::new(2, 0, 0)));
    }
}

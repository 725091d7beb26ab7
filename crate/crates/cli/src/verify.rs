use std::ops::RangeInclusive;

use recurselab_core::combinatorics::{catalan_partial_sum, confined_path_count};
use recurselab_core::mccarthy91::{gen91_closed, gen91_simplified, CostRecurrence, Gen91Params, COST_FLOOR};
use recurselab_core::takeuchi3::{
    bounds_check, gf_functional_equation_residual, k_closed, k_count_lazy, superexponential_lower_bound, v_closed,
    v_generating_residual, v_wedge, TakeuchiCosts, Triple,
};
use recurselab_core::takeuchi_m::theorem4_verify;
use recurselab_core::variants::{
    k_partial_demo, kc_function, parity_h, recurrence_substitution_check, ve_completion, vh_classify_boolean, VeTag,
    PROBE_POINTS,
};
use recurselab_core::{
    evaluate, ArgTuple, BigRational, BigUint, EvalError, HDefault, HSpec, Outcome, Schema, Strategy,
};

use crate::{parse_range, CliError, Report, Suite, Table, VerifyArgs};

struct Checks {
    suite: &'static str,
    report: Report,
}

impl Checks {
    fn new(suite: &'static str) -> Self {
        Checks {
            suite,
            report: Table::new(&["suite", "check", "checked", "status", "witness"]).into(),
        }
    }

    fn record(&mut self, check: &str, checked: u64, result: Result<(), String>) {
        let witness = result.err();
        if let (None, Some(w)) = (&self.report.failure, &witness) {
            self.report.failure = Some(format!("{} / {check}: {w}", self.suite));
        }
        let status = if witness.is_some() { "fail" } else { "pass" };
        self.report.table.push([
            Some(self.suite.to_string()),
            Some(check.to_string()),
            Some(checked.to_string()),
            Some(status.to_string()),
            witness,
        ]);
    }
}

/// Runs `check` on every item, stopping at the first witness.
fn each<T>(
    items: impl IntoIterator<Item = T>,
    mut check: impl FnMut(T) -> Result<(), String>,
) -> (u64, Result<(), String>) {
    let mut n = 0;
    for item in items {
        n += 1;
        if let Err(w) = check(item) {
            return (n, Err(w));
        }
    }
    (n, Ok(()))
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Lemma1 => "lemma1",
        Suite::Theorem1 => "theorem1",
        Suite::Theorem3 => "theorem3",
        Suite::Theorem4 => "theorem4",
        Suite::Lemma4 => "lemma4",
        Suite::Gf => "gf",
        Suite::Bounds => "bounds",
        Suite::Kclosed => "kclosed",
        Suite::Vclosed => "vclosed",
    }
}

fn default_range(s: Suite) -> Option<RangeInclusive<i64>> {
    Some(match s {
        Suite::Lemma1 => -500..=150,
        Suite::Theorem1 => 1..=13,
        Suite::Theorem3 => -6..=6,
        Suite::Theorem4 => 0..=6,
        Suite::Bounds => 1..=40,
        Suite::Kclosed => -2..=9,
        Suite::Vclosed => 1..=8,
        Suite::Lemma4 | Suite::Gf => return None,
    })
}

pub(crate) fn run(a: &VerifyArgs, fuel: u64) -> Result<Report, CliError> {
    let range = match (&a.range, default_range(a.suite)) {
        (Some(_), None) => {
            return Err(CliError::Usage(format!(
                "suite {} takes no --range",
                suite_name(a.suite)
            )));
        }
        (Some(r), Some(_)) => parse_range(r)?,
        (None, Some(r)) => r,
        (None, None) => 0..=0,
    };
    let mut c = Checks::new(suite_name(a.suite));
    match a.suite {
        Suite::Lemma1 => lemma1(&mut c, range)?,
        Suite::Theorem1 => theorem1(&mut c, range, fuel)?,
        Suite::Theorem3 => theorem3(&mut c, range, fuel),
        Suite::Theorem4 => {
            if a.m < 3 {
                return Err(CliError::Usage("--m must be at least 3".into()));
            }
            let r = theorem4_verify(a.m, range).map_err(|w| w.to_string());
            let n = *r.as_ref().unwrap_or(&0);
            c.record(&format!("f_m fixed point, m = {}", a.m), n, r.map(|_| ()));
        }
        Suite::Lemma4 => lemma4(&mut c, fuel),
        Suite::Gf => {
            for (name, residual) in [
                ("functional equation for T(z)", gf_functional_equation_residual(a.order)),
                ("V(z) = (C(z) - 1)/(1 - z)", v_generating_residual(a.order)),
            ] {
                let r = if residual.is_zero() {
                    Ok(())
                } else {
                    Err(format!("residual {residual}"))
                };
                c.record(name, a.order as u64, r);
            }
        }
        Suite::Bounds => bounds(&mut c, range)?,
        Suite::Kclosed => {
            let (n, r) = each(Triple::cube(range), |t| {
                let lazy = k_count_lazy(t).map_err(|e| e.to_string())?;
                let closed = k_closed(t);
                if lazy == closed {
                    Ok(())
                } else {
                    Err(format!("K{t}: lazy {lazy}, closed {closed}"))
                }
            });
            c.record("call-by-need count = closed form", n, r);
        }
        Suite::Vclosed => vclosed(&mut c, range),
    }
    Ok(c.report)
}

fn lemma1(c: &mut Checks, range: RangeInclusive<i64>) -> Result<(), CliError> {
    if *range.start() < COST_FLOOR {
        return Err(CliError::Usage(format!("range starts below {COST_FLOOR}")));
    }
    let mut rec = CostRecurrence::default();
    let (n, r) = each(range, |x| {
        let expected = if x > 100 {
            BigUint::from(1u32)
        } else {
            BigUint::from((9192 - 91 * x) as u64)
        };
        let got = rec.cost(x);
        if got == expected {
            Ok(())
        } else {
            Err(format!("F({x}) = {got}, expected {expected}"))
        }
    });
    c.record("F(x) = 9192 - 91x below 101, 1 above", n, r);
    Ok(())
}

fn theorem1(c: &mut Checks, d_range: RangeInclusive<i64>, fuel: u64) -> Result<(), CliError> {
    if *d_range.start() < 1 {
        return Err(CliError::Usage("d must be positive".into()));
    }
    let mut grid = Vec::new();
    for a in [0i64, 100] {
        for b in 1..=4i64 {
            for cc in 1..=4u32 {
                for d in d_range.clone() {
                    grid.push(Gen91Params::from_ints(a, b, cc, d).map_err(|e| CliError::Usage(e.to_string()))?);
                }
            }
        }
    }
    let (n, r) = each(&grid, |p| {
        let (_, b, cc, d) = p.integral().expect("integral grid");
        if p.is_total() == ((cc as i64 - 1) * b < d) {
            Ok(())
        } else {
            Err(format!("{p}: criterion disagrees"))
        }
    });
    c.record("totality iff (c-1)b < d", n, r);

    let total: Vec<&Gen91Params> = grid.iter().filter(|p| p.is_total()).collect();
    let partial: Vec<&Gen91Params> = grid.iter().filter(|p| !p.is_total()).collect();
    let (n, r) = each(total, |p| {
        let (a, _, _, d) = p.integral().expect("integral grid");
        let schema = Schema::Generalized91(p.clone());
        for x in a - 3 * d..=a + 3 {
            let closed = gen91_closed(p, &int(x)).map_err(|e| e.to_string())?;
            let simple = gen91_simplified(p, &int(x), fuel).map_err(|e| format!("{p} at {x}: {e}"))?;
            let full = evaluate(&schema, &ArgTuple::one(x), Strategy::FullExpansion, fuel)
                .map_err(|e| format!("{p} at {x}: {e}"))?;
            let agree = closed == simple && full.result.value().map(int) == Some(closed.clone());
            if !agree {
                return Err(format!(
                    "{p} at {x}: closed {closed}, simplified {simple}, full {}",
                    full.result.kind()
                ));
            }
        }
        Ok(())
    });
    c.record("closed = simplified = full expansion (total sets)", n, r);

    let (n, r) = each(partial, |p| {
        let (a, b, _, _) = p.integral().expect("integral grid");
        let schema = Schema::Generalized91(p.clone());
        for x in a - b + 1..=a {
            let out = evaluate(&schema, &ArgTuple::one(x), Strategy::FullExpansion, fuel).map_err(|e| e.to_string())?;
            if out.result.diverged() {
                return Ok(());
            }
        }
        Err(format!("{p}: every x in (a-b, a] terminated"))
    });
    c.record("some x in (a-b, a] diverges (partial sets)", n, r);
    Ok(())
}

fn diverges(r: Result<recurselab_core::EvalOutcome, EvalError>) -> Result<bool, String> {
    match r {
        Ok(o) => Ok(o.result.diverged()),
        Err(EvalError::DepthExceeded(_)) => Ok(true),
        Err(e) => Err(e.to_string()),
    }
}

fn theorem3(c: &mut Checks, range: RangeInclusive<i64>, fuel: u64) {
    let e = parity_h();
    for tag in VeTag::ALL {
        let points = || Triple::cube(range.clone());
        let r = recurrence_substitution_check(|t| ve_completion(tag, t), &e, points()).map_err(|f| f.to_string());
        c.record(
            &format!("completion {tag} satisfies the parity recurrence"),
            points().count() as u64,
            r,
        );
    }

    let id = HSpec::new(HDefault::IdX);
    let (n, r) = each(-3..=5, |k| {
        recurrence_substitution_check(|t| kc_function(k, t), &id, Triple::cube(range.clone()))
            .map_err(|f| format!("c = {k}: {f}"))
    });
    c.record("k_c satisfies the base-x recurrence, c in -3..5", n, r);

    let (n, r) = each(Triple::cube(range.clone()).filter(|t| t.x > t.y), |t| {
        if kc_function(t.y, t) != t.y {
            Err(format!("k_c{t} with c = y is not y"))
        } else if kc_function(t.y - 1, t) == t.y {
            Err(format!("k_c{t} with c = y-1 is y"))
        } else {
            Ok(())
        }
    });
    c.record("c = y returns y, c = y-1 does not", n, r);

    let (n, r) = each(range, |x| {
        let t = Triple::new(x + 1, x, x);
        match diverges(k_partial_demo(t, fuel)) {
            Ok(true) => Ok(()),
            Ok(false) => Err(format!("full expansion of k{t} returned a value")),
            Err(e) => Err(e),
        }
    });
    c.record("full expansion of k(x+1,x,x) diverges", n, r);
}

fn lemma4(c: &mut Checks, fuel: u64) {
    let (n, r) = each(0u32..64, |bits| {
        let mut h = HSpec::new(HDefault::Zero);
        for (i, p) in PROBE_POINTS.iter().enumerate() {
            h.insert(*p, i64::from(bits >> i & 1));
        }
        let verdict = vh_classify_boolean(&h).map_err(|e| e.to_string())?;
        let schema = Schema::VH(h.clone());
        let mut cyc = false;
        for t in [Triple::new(1, 0, 0), Triple::new(1, 0, 1)] {
            let out = evaluate(&schema, &t.into(), Strategy::FullExpansion, fuel).map_err(|e| e.to_string())?;
            match out.result {
                Outcome::CycleDetected(_) => cyc = true,
                Outcome::Value(_) => {}
                Outcome::FuelExhausted => return Err(format!("{h}: fuel exhausted at {t}")),
            }
        }
        if verdict.is_total() == !cyc {
            Ok(())
        } else {
            Err(format!("{h}: classifier says {verdict}, evaluation cycles = {cyc}"))
        }
    });
    c.record("classifier agrees with cycle detection", n, r);
}

fn bounds(c: &mut Checks, range: RangeInclusive<i64>) -> Result<(), CliError> {
    let (lo, hi) = (*range.start(), *range.end());
    if lo < 1 {
        return Err(CliError::Usage("bounds needs n >= 1".into()));
    }
    let rows = bounds_check(hi as usize);
    let rows: Vec<_> = rows.into_iter().filter(|r| r.n as i64 >= lo).collect();
    let (n, r) = each(&rows, |row| {
        if row.bell_below {
            Ok(())
        } else {
            Err(format!("n = {}", row.n))
        }
    });
    c.record("bell(n) <= T_n", n, r);
    let (n, r) = each(&rows, |row| {
        if row.factorial_above {
            Ok(())
        } else {
            Err(format!("n = {}", row.n))
        }
    });
    c.record("T_n < 3 n!", n, r);
    let (n, r) = each(&rows, |row| {
        if row.v_below_four_pow {
            Ok(())
        } else {
            Err(format!("n = {}", row.n))
        }
    });
    c.record("V_{n+1} <= 4^n", n, r);
    let (n, r) = each(lo.max(10)..=hi, |k| {
        if superexponential_lower_bound(k as usize) {
            Ok(())
        } else {
            Err(format!("n = {k}"))
        }
    });
    c.record("T_n^2 > n^n for n >= 10", n, r);
    Ok(())
}

fn vclosed(c: &mut Checks, range: RangeInclusive<i64>) {
    let mut costs = TakeuchiCosts::new();
    let (lo, hi) = (*range.start(), *range.end());
    let pairs: Vec<(i64, i64)> = (lo..=hi).flat_map(|x| (lo.max(1)..x).map(move |y| (x, y))).collect();
    let (n, r) = each(pairs, |(x, y)| {
        let closed = v_closed(x, y).map_err(|e| e.to_string())?;
        let count = costs.v_count(Triple::new(x, y, 0));
        if closed == count {
            Ok(())
        } else {
            Err(format!("V({x},{y},0): paths {closed}, count {count}"))
        }
    });
    c.record("V(x,y,0) = confined lattice paths", n, r);

    let (n, r) = each(1..=30i64, |k| {
        let paths = confined_path_count(k + 1, k).map_err(|e| e.to_string())?;
        let sum = catalan_partial_sum(k as u64);
        if paths != sum {
            return Err(format!("n = {k}: paths {paths}, Catalan sum {sum}"));
        }
        if k <= 12 && costs.v_count(Triple::new(k + 1, k, 0)) != sum {
            return Err(format!("n = {k}: V(n+1,n,0) differs from the Catalan sum"));
        }
        Ok(())
    });
    c.record("V(n+1,n,0) = C_0 + ... + C_n", n, r);

    let wedge = Triple::cube(range).filter(|t| t.x > t.y && t.x >= t.z && t.z >= t.y);
    let (n, r) = each(wedge, |t| {
        let w = v_wedge(t).map_err(|e| e.to_string())?;
        let count = costs.v_count(t);
        if w == count {
            Ok(())
        } else {
            Err(format!("V{t}: wedge formula {w}, count {count}"))
        }
    });
    c.record("wedge formula = V", n, r);
}

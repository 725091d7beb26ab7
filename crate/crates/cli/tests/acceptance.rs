//! Acceptance suite: one PASS/FAIL line per criterion, each with a pinned
//! wall-clock limit. Exits nonzero if any criterion fails or runs over.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use recurselab_core::eval::{evaluate, ArgTuple, Outcome, Schema, Strategy};
use recurselab_core::mccarthy91::{gen91_closed, gen91_simplified, Gen91Params};
use recurselab_core::takeuchi3::{darboux_relative_error, sequences, TakeuchiCosts, Triple};
use recurselab_core::takeuchi_m::{f_m, for_each_tuple, takm_lazy, theorem4_verify, u_function};
use recurselab_core::variants::{
    boolean_b_simple, fixedpoint_search, gabriel_simple, FixpointVerdict, HDefault, HSpec, TripleBox,
};
use recurselab_core::{BigRational, BigUint};

type Check = fn() -> Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs the CLI in-process and requires exit status 0.
fn cli(args: &[&str]) -> Result<String, String> {
    let mut argv = vec!["recurselab", "--deterministic", "--format", "csv"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = recurselab::run(argv, &mut out, &mut err);
    let out = String::from_utf8_lossy(&out).into_owned();
    ensure(code == 0, || {
        format!(
            "`{}` exited {code}: {}",
            args.join(" "),
            String::from_utf8_lossy(&err).trim()
        )
    })?;
    Ok(out)
}

fn column(csv_text: &str, name: &str) -> Result<Vec<String>, String> {
    let mut r = csv::Reader::from_reader(csv_text.as_bytes());
    let idx = r
        .headers()
        .map_err(|e| e.to_string())?
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| format!("no column {name}"))?;
    r.records()
        .map(|rec| rec.map(|r| r[idx].to_string()).map_err(|e| e.to_string()))
        .collect()
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn table_reproduction() -> Result<(), String> {
    let out = cli(&["sequence", "--max", "9"])?;
    let v = column(&out, "Vn")?.join(",");
    let t = column(&out, "Tn")?.join(",");
    ensure(v == "1,3,8,22,64,196,625,2055,6917", || format!("Vn = {v}"))?;
    ensure(t == "1,4,14,53,223,1034,5221,28437,165859", || format!("Tn = {t}"))
}

fn ninety_one_property() -> Result<(), String> {
    let defs = [
        (Gen91Params::original(), Schema::McCarthy91Original),
        (Gen91Params::modified(), Schema::McCarthy91Modified),
    ];
    for (p, schema) in &defs {
        for x in -1000..=200i64 {
            let expected = if x <= 101 { 91 } else { x - 10 };
            let closed = gen91_closed(p, &int(x)).map_err(|e| e.to_string())?;
            let simple = gen91_simplified(p, &int(x), 1_000_000).map_err(|e| e.to_string())?;
            let memo = evaluate(schema, &ArgTuple::one(x), Strategy::Memoized, 1_000_000).map_err(|e| e.to_string())?;
            ensure(closed == int(expected) && simple == int(expected), || {
                format!("{schema} at {x}")
            })?;
            ensure(memo.result == Outcome::Value(expected), || {
                format!("{schema} memoized at {x}")
            })?;
        }
    }
    Ok(())
}

fn cost_closed_form() -> Result<(), String> {
    cli(&["verify", "lemma1", "--range", "-500..150"]).map(drop)
}

fn totality_grid() -> Result<(), String> {
    cli(&["verify", "theorem1", "--fuel", "10000000"]).map(drop)
}

fn instrumentation_identity() -> Result<(), String> {
    let mut costs = TakeuchiCosts::new();
    for t in Triple::cube(-3..=8) {
        let out =
            evaluate(&Schema::Takeuchi3, &t.into(), Strategy::FullExpansion, 1 << 32).map_err(|e| e.to_string())?;
        let expected = BigUint::from(1u32) + costs.t_count(t) * 4u32;
        ensure(out.cost.total_expansions == expected, || format!("{t}"))?;
    }
    Ok(())
}

fn lattice_paths() -> Result<(), String> {
    cli(&["verify", "vclosed", "--range", "1..8"]).map(drop)
}

fn t_recurrence_vs_direct() -> Result<(), String> {
    let (_, t) = sequences(7);
    let mut costs = TakeuchiCosts::new();
    for n in 1..=7usize {
        let direct = costs.t_count(Triple::new(n as i64, 0, n as i64 + 1));
        ensure(t.at(n) == &direct, || format!("n = {n}: {} vs {direct}", t.at(n)))?;
    }
    Ok(())
}

fn k_closed_forms() -> Result<(), String> {
    cli(&["verify", "kclosed", "--range", "-2..9"]).map(drop)
}

fn bounds_sandwich() -> Result<(), String> {
    cli(&["verify", "bounds", "--range", "1..40"]).map(drop)
}

fn functional_equation() -> Result<(), String> {
    cli(&["verify", "gf", "--order", "16"]).map(drop)
}

fn darboux() -> Result<(), String> {
    let (e100, e400) = (darboux_relative_error(100), darboux_relative_error(400));
    ensure(e100 < 0.1 && e400 < e100, || {
        format!("err(100) = {e100}, err(400) = {e400}")
    })
}

fn gabriel() -> Result<(), String> {
    let t = Triple::new(18, 12, 6);
    ensure(gabriel_simple(t) == 7, || "closed form".into())?;
    for t in std::iter::once(t).chain(Triple::cube(-2..=8)) {
        let out =
            evaluate(&Schema::Gabriel, &t.into(), Strategy::FullExpansion, 100_000_000).map_err(|e| e.to_string())?;
        ensure(out.result == Outcome::Value(gabriel_simple(t)), || {
            format!("{t}: {:?}", out.result)
        })?;
    }
    Ok(())
}

fn boolean_b() -> Result<(), String> {
    for t in Triple::cube(-4..=8) {
        let v = boolean_b_simple(t);
        let out =
            evaluate(&Schema::BooleanB, &t.into(), Strategy::FullExpansion, 100_000_000).map_err(|e| e.to_string())?;
        ensure((v == 0 || v == 1) && out.result == Outcome::Value(v), || format!("{t}"))?;
    }
    Ok(())
}

fn totality_classifier() -> Result<(), String> {
    cli(&["verify", "lemma4"]).map(drop)
}

fn completions() -> Result<(), String> {
    cli(&["verify", "theorem3", "--range", "-6..6", "--fuel", "100000"]).map(drop)
}

fn incompletability() -> Result<(), String> {
    let region = TripleBox::cube(-1, 5);
    match fixedpoint_search(&HSpec::new(HDefault::Poly2xy), &region, -20..=20) {
        FixpointVerdict::Inconsistent(d) => ensure(d.self_offset() == Some(16), || format!("poly2xy: {d}"))?,
        other => return Err(format!("poly2xy: {}", other.kind())),
    }
    match fixedpoint_search(&HSpec::new(HDefault::BoundedContrived), &region, -1..=5) {
        FixpointVerdict::Inconsistent(d) => {
            let clashes = d.direct_clashes();
            ensure(clashes.len() == 7 && clashes.iter().all(|(h, c)| h != c), || {
                format!("bounded: {d}")
            })
        }
        other => Err(format!("bounded-contrived: {}", other.kind())),
    }
}

fn m_dimensional() -> Result<(), String> {
    theorem4_verify(4, 0..=6).map_err(|w| w.to_string())?;
    theorem4_verify(5, 0..=4).map_err(|w| w.to_string())?;
    let xs = [5, 3, 2, 0, 1];
    ensure(f_m(&xs) == 2 && u_function(&xs) == 1, || "f_m(5,3,2,0,1)".into())?;
    for_each_tuple(5, 0..=5, |xs| {
        let out = takm_lazy(xs, 1_000_000).map_err(|e| e.to_string())?;
        ensure(out.result == Outcome::Value(f_m(xs)), || {
            format!("{xs:?}: {:?}", out.result)
        })
    })
    .map(drop)
}

fn main() {
    let criteria: [(u32, &str, u64, Check); 17] = [
        (1, "V_n and T_n tables", 1, table_reproduction),
        (2, "91 property on -1000..200", 1, ninety_one_property),
        (3, "cost recurrence closed form", 5, cost_closed_form),
        (4, "generalized 91 totality grid", 30, totality_grid),
        (
            5,
            "total expansions = 1 + 4T on [-3..8]^3",
            30,
            instrumentation_identity,
        ),
        (6, "lattice-path formula and Catalan sums", 5, lattice_paths),
        (7, "T_n recurrence vs direct count", 60, t_recurrence_vs_direct),
        (8, "K closed forms on [-2..9]^3", 5, k_closed_forms),
        (9, "Bell and 3n! sandwich for n <= 40", 5, bounds_sandwich),
        (10, "generating-function residuals", 1, functional_equation),
        (11, "asymptotic relative error", 1, darboux),
        (12, "Gabriel closed form on [-2..8]^3", 60, gabriel),
        (13, "boolean b on [-4..8]^3", 10, boolean_b),
        (14, "totality classifier, 64 assignments", 5, totality_classifier),
        (15, "completions, k_c family, argmin", 10, completions),
        (16, "incompletable auxiliary functions", 10, incompletability),
        (17, "m-dimensional fixed point and laziness", 60, m_dimensional),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(limit);
        let verdict = match result {
            Ok(()) if elapsed <= limit => "PASS".to_string(),
            Ok(()) => format!("FAIL (over time limit {}s)", limit.as_secs()),
            Err(e) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!(
            "{verdict:<4} {id:>2}  {name}  [{:.3}s / {}s]",
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("{} of 17 criteria passed", 17 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

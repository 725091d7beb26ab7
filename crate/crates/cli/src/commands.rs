use recurselab_core::combinatorics::{catalan_series, central_binomial_series};
use recurselab_core::mccarthy91::{f91_cost_closed, Gen91Params};
use recurselab_core::takeuchi3::{
    gf_functional_equation_residual, k_closed, sequences, t_count, v_count, v_generating_residual, Triple,
};
use recurselab_core::variants::{vh_classify_boolean, VariantError};
use recurselab_core::{
    compare_strategies, evaluate, ArgTuple, BigRational, BigUint, EvalError, EvalOutcome, HDefault, HSpec, Outcome,
    PowerSeries, Schema, Strategy,
};

use crate::hspec_file::load_hspec;
use crate::{
    parse_ints, CliError, CostArgs, CostFunction, EvalArgs, HSource, Report, SequenceArgs, SequenceChoice, SeriesArgs,
    SeriesName, Table,
};

pub(crate) fn load_h(src: &HSource) -> Result<HSpec, CliError> {
    match (&src.hspec, &src.rule) {
        (Some(path), _) => load_hspec(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display()))),
        (None, Some(rule)) => rule
            .parse::<HDefault>()
            .map(HSpec::new)
            .map_err(|e| CliError::Usage(e.to_string())),
        (None, None) => Err(CliError::Usage(
            "an auxiliary function is required: pass --hspec FILE or --rule NAME".into(),
        )),
    }
}

pub(crate) fn eval_error(e: EvalError) -> CliError {
    match e {
        EvalError::ArityMismatch { .. }
        | EvalError::ZeroFuel
        | EvalError::StrategyNotApplicable { .. }
        | EvalError::NonIntegralParameters
        | EvalError::InvalidSchema(_) => CliError::Usage(e.to_string()),
        _ => CliError::Runtime(e.to_string()),
    }
}

fn parse_params(s: &str) -> Result<Gen91Params, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, c, d] = parts.as_slice() else {
        return Err(CliError::Usage(format!("--params needs a,b,c,d, got {s:?}")));
    };
    let rat = |p: &str| {
        p.parse::<BigRational>()
            .map_err(|_| CliError::Usage(format!("invalid rational {p:?}")))
    };
    let c: u32 = c
        .parse()
        .map_err(|_| CliError::Usage(format!("c must be a positive integer, got {c:?}")))?;
    Gen91Params::new(rat(a)?, rat(b)?, c, rat(d)?).map_err(|e| CliError::Usage(e.to_string()))
}

fn parse_schema(a: &EvalArgs, arity: usize) -> Result<Schema, CliError> {
    Ok(match a.schema.as_str() {
        "mc91" => Schema::McCarthy91Original,
        "mc91-modified" => Schema::McCarthy91Modified,
        "gen91" => {
            let p = a
                .params
                .as_deref()
                .ok_or_else(|| CliError::Usage("gen91 needs --params a,b,c,d".into()))?;
            Schema::Generalized91(parse_params(p)?)
        }
        "tak3" => Schema::Takeuchi3,
        "gabriel" => Schema::Gabriel,
        "boolean-b" => Schema::BooleanB,
        "k" => Schema::KScheme,
        "vh" => Schema::VH(load_h(&a.h)?),
        "takm" => Schema::TakeuchiM(arity),
        other => return Err(CliError::Usage(format!("unknown schema {other:?}"))),
    })
}

pub(crate) fn parse_strategy(s: &str) -> Result<Strategy, CliError> {
    Strategy::ALL
        .into_iter()
        .find(|st| st.name() == s)
        .ok_or_else(|| CliError::Usage(format!("unknown strategy {s:?}; expected full, memo, need or all")))
}

pub(crate) fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub(crate) fn witness_text(w: &[ArgTuple]) -> String {
    w.iter().map(ToString::to_string).collect::<Vec<_>>().join(" -> ")
}

const EVAL_COLUMNS: [&str; 9] = [
    "schema",
    "args",
    "strategy",
    "result",
    "value",
    "else_expansions",
    "total_expansions",
    "fuel_consumed",
    "witness",
];

fn eval_row(table: &mut Table, schema: &Schema, args: &[i64], strategy: Strategy, o: &EvalOutcome) {
    let witness = match &o.result {
        Outcome::CycleDetected(w) => Some(witness_text(w)),
        _ => None,
    };
    table.push([
        Some(schema.to_string()),
        Some(join(args)),
        Some(strategy.name().to_string()),
        Some(o.result.kind().to_string()),
        o.result.value().map(|v| v.to_string()),
        Some(o.cost.else_expansions.to_string()),
        Some(o.cost.total_expansions.to_string()),
        Some(o.cost.fuel_consumed.to_string()),
        witness,
    ]);
}

pub(crate) fn eval(a: &EvalArgs, fuel: u64) -> Result<Report, CliError> {
    let args = parse_ints(&a.args)?;
    let tuple =
        ArgTuple::new(&args).ok_or_else(|| CliError::Usage(format!("unsupported argument count {}", args.len())))?;
    let schema = parse_schema(a, args.len())?;
    let mut table = Table::new(&EVAL_COLUMNS);
    if a.strategy == "all" {
        for (s, o) in compare_strategies(&schema, &tuple, fuel).map_err(eval_error)? {
            eval_row(&mut table, &schema, &args, s, &o);
        }
    } else {
        let s = parse_strategy(&a.strategy)?;
        let o = evaluate(&schema, &tuple, s, fuel).map_err(eval_error)?;
        eval_row(&mut table, &schema, &args, s, &o);
    }
    Ok(table.into())
}

fn triple_arg(args: &[i64]) -> Result<Triple, CliError> {
    match *args {
        [x, y, z] => Ok(Triple::new(x, y, z)),
        _ => Err(CliError::Usage(format!("expected 3 arguments, got {}", args.len()))),
    }
}

pub(crate) fn cost(a: &CostArgs) -> Result<Report, CliError> {
    let args = parse_ints(&a.args)?;
    let mut table = Table::new(&["function", "args", "value", "total_expansions"]);
    let (name, value, total): (&str, BigUint, Option<BigUint>) = match a.function {
        CostFunction::F => {
            let &[x] = args.as_slice() else {
                return Err(CliError::Usage(format!("F takes 1 argument, got {}", args.len())));
            };
            ("F", f91_cost_closed(x), None)
        }
        CostFunction::T => {
            let t = t_count(triple_arg(&args)?);
            let total = BigUint::from(1u32) + &t * 4u32;
            ("T", t, Some(total))
        }
        CostFunction::V => ("V", v_count(triple_arg(&args)?), None),
        CostFunction::K => ("K", k_closed(triple_arg(&args)?), None),
    };
    table.push([
        Some(name.to_string()),
        Some(join(&args)),
        Some(value.to_string()),
        total.map(|t| t.to_string()),
    ]);
    Ok(table.into())
}

pub(crate) fn sequence(a: &SequenceArgs) -> Table {
    let (v, t) = sequences(a.max);
    let mut cols = vec!["n"];
    let show_v = a.name != SequenceChoice::Tn;
    let show_t = a.name != SequenceChoice::Vn;
    if show_v {
        cols.push("Vn");
    }
    if show_t {
        cols.push("Tn");
    }
    let mut table = Table::new(&cols);
    for n in 1..=a.max {
        let mut row = vec![n.to_string()];
        if show_v {
            row.push(v.at(n).to_string());
        }
        if show_t {
            row.push(t.at(n).to_string());
        }
        table.push_all(row);
    }
    table
}

pub(crate) fn classify(h: &HSource) -> Result<Report, CliError> {
    let spec = load_h(h)?;
    let verdict = vh_classify_boolean(&spec).map_err(|e| match e {
        VariantError::NotBoolean { .. } => CliError::Usage(e.to_string()),
        other => CliError::Runtime(other.to_string()),
    })?;
    let mut table = Table::new(&["h", "verdict", "total"]);
    table.push_all([spec.to_string(), verdict.to_string(), verdict.is_total().to_string()]);
    Ok(table.into())
}

fn naturals_series(values: &[BigUint], order: usize) -> PowerSeries {
    let mut coeffs = vec![BigUint::default()];
    coeffs.extend_from_slice(values);
    PowerSeries::from_naturals(&coeffs, order)
}

pub(crate) fn series(a: &SeriesArgs) -> Table {
    let order = a.order;
    let n = order.saturating_sub(1);
    let s = match a.name {
        SeriesName::Catalan => catalan_series(order),
        SeriesName::CentralBinomial => central_binomial_series(order),
        SeriesName::Vn => naturals_series(&sequences(n).0.values, order),
        SeriesName::Tn => naturals_series(&sequences(n).1.values, order),
        SeriesName::GfResidual => gf_functional_equation_residual(order),
        SeriesName::VResidual => v_generating_residual(order),
    };
    let mut table = Table::new(&["k", "coefficient"]);
    for (k, c) in s.coeffs().iter().enumerate() {
        table.push_all([k.to_string(), c.to_string()]);
    }
    table
}

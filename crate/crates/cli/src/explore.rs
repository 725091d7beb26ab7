use recurselab_core::takeuchi3::darboux_relative_error;
use recurselab_core::takeuchi_m::{takm_full_cost, CostMode};
use recurselab_core::variants::{
    fixedpoint_search, gabriel_cost, gabriel_growth_bound, open_problem3_explore, FixpointVerdict, TripleBox,
};

use crate::commands::{eval_error, join, load_h};
use crate::output::six_significant;
use crate::{parse_ints, parse_range, CliError, ExploreCommand, Report, Table};

fn verdict_detail(v: &FixpointVerdict) -> (Option<String>, Option<String>, Option<String>) {
    match v {
        FixpointVerdict::Consistent(values) => (None, None, Some(format!("{} values", values.len()))),
        FixpointVerdict::Inconsistent(d) => (
            Some(d.point.to_string()),
            d.self_offset().map(|o| o.to_string()),
            Some(d.to_string()),
        ),
        FixpointVerdict::Inconclusive { at, reason } => (Some(at.to_string()), None, Some(reason.clone())),
    }
}

pub(crate) fn run(cmd: &ExploreCommand, fuel: u64) -> Result<Report, CliError> {
    match cmd {
        ExploreCommand::Fixedpoint { h, region, values } => {
            let h = load_h(h)?;
            let r = parse_range(region)?;
            let values = parse_range(values)?;
            let region = TripleBox::cube(*r.start(), *r.end());
            let verdict = fixedpoint_search(&h, &region, values);
            let mut table = Table::new(&["h", "box", "verdict", "point", "self_offset", "detail"]);
            let (point, offset, detail) = verdict_detail(&verdict);
            table.push([
                Some(h.to_string()),
                Some(region.to_string()),
                Some(verdict.kind().to_string()),
                point,
                offset,
                detail,
            ]);
            Ok(table.into())
        }
        ExploreCommand::OpenProblem3 {
            max_val,
            box_size,
            limit,
        } => {
            if *max_val < 1 || *box_size < 1 {
                return Err(CliError::Usage("--max-val and --box must be positive".into()));
            }
            let report = open_problem3_explore(*max_val, *box_size, *limit);
            let mut table = Table::new(&["label", "family_size", "verdict", "point", "self_offset", "detail"]);
            for e in &report.entries {
                let (point, offset, detail) = verdict_detail(&e.verdict);
                table.push([
                    Some(e.label.clone()),
                    Some(report.family_size.to_string()),
                    Some(e.verdict.kind().to_string()),
                    point,
                    offset,
                    detail,
                ]);
            }
            Ok(table.into())
        }
        ExploreCommand::TakmCost { args, mode } => {
            let xs = parse_ints(args)?;
            let mode = match mode.as_str() {
                "recurrence" => CostMode::Recurrence,
                "raw" => CostMode::Raw,
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown mode {other:?}; expected recurrence or raw"
                    )))
                }
            };
            let out = takm_full_cost(&xs, fuel, mode).map_err(eval_error)?;
            let mut table = Table::new(&["args", "mode", "result", "value", "else_expansions", "total_expansions"]);
            table.push([
                Some(join(&xs)),
                Some(format!("{mode:?}").to_lowercase()),
                Some(out.result.kind().to_string()),
                out.result.value().map(|v| v.to_string()),
                Some(out.cost.else_expansions.to_string()),
                Some(out.cost.total_expansions.to_string()),
            ]);
            Ok(table.into())
        }
        ExploreCommand::Darboux { n } => {
            let ns = parse_ints(n)?;
            let mut table = Table::new(&["n", "relative_error", "n_times_error"]);
            for k in ns {
                if k < 1 {
                    return Err(CliError::Usage(format!("n must be positive, got {k}")));
                }
                let err = darboux_relative_error(k as u64);
                table.push_all([k.to_string(), six_significant(err), six_significant(err * k as f64)]);
            }
            Ok(table.into())
        }
        ExploreCommand::GabrielGrowth { max } => {
            let mut table = Table::new(&["n", "else_expansions", "bound", "within_bound"]);
            let mut report = Report::default();
            for n in 1..=*max {
                let out = gabriel_cost(n as i64, fuel).map_err(eval_error)?;
                let bound = gabriel_growth_bound(n);
                let within = out.result.value().is_some() && out.cost.else_expansions <= bound;
                if !within && report.failure.is_none() {
                    report.failure = Some(format!(
                        "n = {n}: {} with {} expansions, bound {bound}",
                        out.result.kind(),
                        out.cost.else_expansions
                    ));
                }
                table.push_all([
                    n.to_string(),
                    out.cost.else_expansions.to_string(),
                    bound.to_string(),
                    within.to_string(),
                ]);
            }
            report.table = table;
            Ok(report)
        }
    }
}

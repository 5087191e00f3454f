//! Subcommand implementations. Each returns the rendered output; nothing
//! here touches the process streams.

use rayon::prelude::*;
use vfrac_core::special_functions::{ml_eval, TruncationSpec};
use vfrac_core::v_integral::{integrate, integrate_general};
use vfrac_core::v_operator::{deriv_closed, deriv_limit_estimate};
use vfrac_core::verifier::{default_suite, default_tolerance};
use vfrac_core::{verify, FnSpec, IntervalSpec, Order, RuleId, VerificationReport};

use crate::args::{Cli, Command, DerivArgs, IntegralArgs, Method, MlArgs, TableArgs, VerifyArgs};
use crate::output::{emit_table, Cell, Format, Table};
use crate::{CliError, Outcome};

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Ml(a) => ml(a, cli.format),
        Command::Deriv(a) => deriv(a, cli.format),
        Command::Integral(a) => integral(a, cli.format),
        Command::Verify(a) => verify_rules(a, cli.format),
        Command::Table(a) => table(a, cli.format),
    }
}

fn table_outcome(table: &Table, format: Format) -> Outcome {
    Outcome {
        text: emit_table(table, format),
        passed: true,
    }
}

/// Evaluates `row` at every point in parallel, keeping grid order.
fn rows<F>(points: &[f64], row: F) -> Result<Vec<Vec<Cell>>, CliError>
where
    F: Fn(f64) -> Result<Vec<Cell>, CliError> + Sync,
{
    points.par_iter().map(|&x| row(x)).collect()
}

fn parse_fn(src: &str) -> Result<FnSpec, CliError> {
    FnSpec::parse(src).map_err(|e| CliError::numeric(format!("expression '{src}'"), e))
}

fn ml(a: &MlArgs, format: Format) -> Result<Outcome, CliError> {
    let params = a.params.params()?;
    let trunc = match a.trunc_i {
        Some(i) => TruncationSpec::fixed(i),
        None => TruncationSpec::adaptive(a.tol),
    };
    let points = match (a.z, a.grid) {
        (Some(z), _) => vec![z],
        (None, Some(g)) => g.points(),
        (None, None) => return Err(CliError::Usage("one of --z and --grid is required".into())),
    };
    let mut table = Table::new(["z", "value"]);
    table.rows = rows(&points, |z| {
        let v = ml_eval(params, z, trunc).map_err(|e| CliError::numeric(format!("ml at z = {z}"), e))?;
        Ok(vec![z.into(), v.into()])
    })?;
    Ok(table_outcome(&table, format))
}

fn deriv(a: &DerivArgs, format: Format) -> Result<Outcome, CliError> {
    let f = parse_fn(&a.expr)?;
    let cfg = a.kernel.config(a.params.params()?, a.order.order()?)?;
    if !(a.tol > 0.0) {
        return Err(CliError::Usage(format!("--tol must be > 0, got {}", a.tol)));
    }
    let points = a.point.points();
    let context = |t: f64| format!("deriv of '{}' at t = {t}", a.expr);
    let mut table = match a.method {
        Method::Closed => Table::new(["t", "value"]),
        Method::Limit => Table::new(["t", "value", "err_estimate"]),
        Method::Both => Table::new(["t", "closed", "limit", "limit_err", "agree"]),
    };
    table.rows = rows(&points, |t| {
        let closed = || deriv_closed(&f, t, &cfg).map_err(|e| CliError::numeric(context(t), e));
        let limit = || deriv_limit_estimate(&f, t, &cfg).map_err(|e| CliError::numeric(context(t), e));
        Ok(match a.method {
            Method::Closed => vec![t.into(), closed()?.into()],
            Method::Limit => {
                let l = limit()?;
                vec![t.into(), l.value.into(), l.err_estimate.into()]
            }
            Method::Both => {
                let (c, l) = (closed()?, limit()?);
                let agree = (l.value - c).abs() <= a.tol * (1.0 + c.abs());
                vec![t.into(), c.into(), l.value.into(), l.err_estimate.into(), agree.into()]
            }
        })
    })?;
    Ok(table_outcome(&table, format))
}

fn integral(a: &IntegralArgs, format: Format) -> Result<Outcome, CliError> {
    let f = parse_fn(&a.expr)?;
    let params = a.params.params()?;
    let order = Order::base(a.alpha).map_err(|e| CliError::numeric("order", e))?;
    let points = a.point.points();
    let mut table = Table::new(["t", "value", "err_estimate"]);
    table.rows = rows(&points, |t| {
        let context = || format!("integral of '{}' over [{}, {t}]", a.expr, a.a);
        let iv = IntervalSpec::new(a.a, t).map_err(|e| CliError::numeric(context(), e))?;
        let q = integrate(&f, iv, order, &params, a.tol).map_err(|e| CliError::numeric(context(), e))?;
        Ok(vec![t.into(), q.value.into(), q.err_estimate.into()])
    })?;
    Ok(table_outcome(&table, format))
}

fn run_rule(rule: RuleId, tol: Option<f64>) -> Result<VerificationReport, CliError> {
    let suite = default_suite(rule).map_err(|e| CliError::numeric(format!("suite for {rule}"), e))?;
    let tol = tol.unwrap_or_else(|| default_tolerance(rule));
    verify(rule, &suite, tol).map_err(|e| CliError::numeric(format!("rule {rule}"), e))
}

fn verify_rules(a: &VerifyArgs, format: Format) -> Result<Outcome, CliError> {
    if a.list {
        let mut table = Table::new(["rule", "default_tolerance", "description"]);
        for &r in RuleId::all() {
            table.push(vec![
                r.name().into(),
                default_tolerance(r).into(),
                r.description().into(),
            ]);
        }
        return Ok(table_outcome(&table, format));
    }
    if let Some(tol) = a.tol {
        if !(tol > 0.0) {
            return Err(CliError::Usage(format!("--tol must be > 0, got {tol}")));
        }
    }
    let rules: Vec<RuleId> = match &a.rule {
        Some(name) => vec![name.parse().map_err(|e| CliError::Usage(format!("{e}; try --list")))?],
        None => RuleId::all().to_vec(),
    };
    let reports: Vec<VerificationReport> = rules
        .par_iter()
        .map(|&r| run_rule(r, a.tol))
        .collect::<Result<_, _>>()?;
    let passed = reports.iter().all(|r| r.passed);
    let text = match format {
        Format::Json => {
            let value = if a.rule.is_some() {
                serde_json::to_value(&reports[0])
            } else {
                serde_json::to_value(&reports)
            }
            .map_err(|e| CliError::Usage(format!("serializing report: {e}")))?;
            let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut table = Table::new(["rule", "cases", "max_residual", "tolerance", "passed", "warnings"]);
            for r in &reports {
                table.push(vec![
                    r.rule.name().into(),
                    r.cases.len().into(),
                    r.max_residual.into(),
                    r.tolerance.into(),
                    r.passed.into(),
                    r.warnings.len().into(),
                ]);
            }
            emit_table(&table, Format::Csv)
        }
    };
    Ok(Outcome { text, passed })
}

fn table(a: &TableArgs, format: Format) -> Result<Outcome, CliError> {
    let f = parse_fn(&a.expr)?;
    let params = a.params.params()?;
    let order = a.order.order()?;
    let cfg = a.kernel.config(params, order)?;
    if !(a.grid.start > 0.0) {
        return Err(CliError::Usage(format!(
            "table grid must start above 0, got {}",
            a.grid.start
        )));
    }
    let points = a.grid.points();
    let mut table = Table::new(["t", "f", "closed", "limit", "limit_err", "integral"]);
    table.rows = rows(&points, |t| {
        let context = || format!("'{}' at t = {t}", a.expr);
        let wrap = |e| CliError::numeric(context(), e);
        let fv = f.eval(t).map_err(wrap)?;
        let closed = deriv_closed(&f, t, &cfg).map_err(wrap)?;
        let limit = deriv_limit_estimate(&f, t, &cfg).map_err(wrap)?;
        // t below the lower limit has no integral
        let integral = if t >= a.a {
            let iv = IntervalSpec::new(a.a, t).map_err(wrap)?;
            integrate_general(&f, iv, order.alpha, &params, a.tol)
                .map_err(wrap)?
                .value
        } else {
            f64::NAN
        };
        Ok(vec![
            t.into(),
            fv.into(),
            closed.into(),
            limit.value.into(),
            limit.err_estimate.into(),
            integral.into(),
        ])
    })?;
    Ok(table_outcome(&table, format))
}

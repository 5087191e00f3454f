//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use vfrac_cli::run_with;
use vfrac_core::special_functions::{
    gamma, h_terms, ml_eval, ml_five, ml_four, ml_one, ml_three, ml_two, MLParams, TruncationSpec,
};
use vfrac_core::v_integral::rl_integral_bridge_factor;
use vfrac_core::v_operator::{compose_orders, deriv_closed, deriv_limit, generalized_operator, log_coefficient};
use vfrac_core::verifier::{default_suite, find_mean_value_point, param_sets, MeanValueMode};
use vfrac_core::{verify, Catalog, FnSpec, IntervalSpec, OperatorConfig, Order, RuleId};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn within_time(start: Instant, limit: Duration, detail: String) -> Check {
    let elapsed = start.elapsed();
    if elapsed <= limit {
        Ok(format!("{detail} in {:.3} s", elapsed.as_secs_f64()))
    } else {
        Err(format!(
            "{detail} but took {:.3} s > {} s",
            elapsed.as_secs_f64(),
            limit.as_secs_f64()
        ))
    }
}

/// Runs `rules` at `tol` and returns the largest residual.
fn max_residual(rules: &[RuleId], tol: f64) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for &rule in rules {
        let suite = default_suite(rule).map_err(|e| format!("{rule}: {e}"))?;
        let report = verify(rule, &suite, tol).map_err(|e| format!("{rule}: {e}"))?;
        if !report.passed {
            return Err(format!("{rule}: max residual {:.3e} > {tol:e}", report.max_residual));
        }
        worst = worst.max(report.max_residual);
    }
    Ok(worst)
}

fn ml_reduction_chain() -> Check {
    let start = Instant::now();
    let tol = TruncationSpec::adaptive(1e-16);
    let (g, b, r, d, q) = (0.75, 1.4, 1.6, 1.3, 0.9);
    let mut worst: f64 = 0.0;
    for z in [-2.0, -1.0, 0.5, 1.0, 5.0] {
        let e = |x: Result<f64, _>| x.map_err(|err| format!("z = {z}: {err}"));
        let six = |p: MLParams| e(ml_eval(p, z, tol));
        let pairs = [
            (
                e(ml_five(g, b, r, d, q, z, tol))?,
                six(MLParams::five(g, b, r, d, q).map_err(|x| x.to_string())?)?,
            ),
            (
                e(ml_four(g, b, r, q, z, tol))?,
                six(MLParams::four(g, b, r, q).map_err(|x| x.to_string())?)?,
            ),
            (
                e(ml_three(g, b, r, z, tol))?,
                six(MLParams::three(g, b, r).map_err(|x| x.to_string())?)?,
            ),
            (
                e(ml_two(g, b, z, tol))?,
                six(MLParams::two(g, b).map_err(|x| x.to_string())?)?,
            ),
            (
                e(ml_one(g, z, tol))?,
                six(MLParams::one(g).map_err(|x| x.to_string())?)?,
            ),
            // each level with its extra parameter set to 1 is the level below
            (e(ml_five(g, b, r, 1.0, q, z, tol))?, e(ml_four(g, b, r, q, z, tol))?),
            (e(ml_four(g, b, r, 1.0, z, tol))?, e(ml_three(g, b, r, z, tol))?),
            (e(ml_three(g, b, 1.0, z, tol))?, e(ml_two(g, b, z, tol))?),
            (e(ml_two(g, 1.0, z, tol))?, e(ml_one(g, z, tol))?),
            (e(ml_one(1.0, z, tol))?, z.exp()),
        ];
        for (x, y) in pairs {
            let dev = (x - y).abs() / y.abs().max(1.0);
            worst = worst.max(dev);
            if dev > 1e-12 {
                return Err(format!("z = {z}: {x} vs {y} (deviation {dev:.3e})"));
            }
        }
    }
    let e1 = ml_eval(MLParams::ones(), 1.0, tol).map_err(|e| e.to_string())?;
    if (e1 - std::f64::consts::E).abs() > 1e-12 {
        return Err(format!("all-ones at z = 1 gave {e1}"));
    }
    within_time(
        start,
        Duration::from_secs(1),
        format!("max deviation {worst:.2e}, E(1) = {e1}"),
    )
}

fn closed_vs_limit() -> Check {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for params in param_sets() {
        for alpha in [0.1, 0.5, 0.9] {
            let order = Order::base(alpha).map_err(|e| e.to_string())?;
            let mut fns: Vec<FnSpec> = ["t^2", "exp(t)", "sin(t)", "(t-1)*(t-3)"]
                .iter()
                .map(|s| FnSpec::parse(s).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            fns.push(FnSpec::catalog(Catalog::TAlphaOverAlpha { alpha }).map_err(|e| e.to_string())?);
            for f in &fns {
                for t in [0.5, 1.0, 2.0, 5.0] {
                    for i in [1, 2, 5] {
                        let cfg = OperatorConfig::new(params, order).with_trunc(i);
                        let closed = deriv_closed(f, t, &cfg).map_err(|e| e.to_string())?;
                        let limit = deriv_limit(f, t, &cfg).map_err(|e| format!("{} t = {t}: {e}", f.label()))?;
                        let dev = (limit - closed).abs() / (1.0 + closed.abs());
                        worst = worst.max(dev);
                        count += 1;
                        if dev > 1e-6 {
                            return Err(format!(
                                "{} at t = {t}, alpha = {alpha}, i = {i}: {limit} vs {closed}",
                                f.label()
                            ));
                        }
                    }
                }
            }
        }
    }
    within_time(
        start,
        Duration::from_secs(10),
        format!("{count} cases, max deviation {worst:.2e}"),
    )
}

fn calculus_rules() -> Check {
    let start = Instant::now();
    let rules = [
        RuleId::LinearityD,
        RuleId::Product,
        RuleId::Quotient,
        RuleId::ConstantZero,
        RuleId::ChainComposition,
        RuleId::ElementaryCatalog,
    ];
    let worst = max_residual(&rules, 1e-10)?;
    within_time(start, Duration::from_secs(1), format!("max residual {worst:.2e}"))
}

fn order_composition() -> Check {
    let worst = max_residual(&[RuleId::OrderComposition], 1e-9)?;
    let f = FnSpec::parse("t").map_err(|e| e.to_string())?;
    let half = Order::base(0.5).map_err(|e| e.to_string())?;
    let ones = MLParams::ones();
    for t in [0.5, 1.0, 3.0] {
        let c = compose_orders(&f, t, half, half, &ones).map_err(|e| e.to_string())?;
        let naive = generalized_operator(&f, t, 1.0, &ones).map_err(|e| e.to_string())?;
        if (c.lhs - 0.5).abs() > 1e-15 || (naive - 1.0).abs() > 1e-15 {
            return Err(format!("t = {t}: lhs {} (want 0.5), naive {naive} (want 1)", c.lhs));
        }
    }
    Ok(format!("max residual {worst:.2e}; f = t gives lhs 0.5 vs naive 1"))
}

fn integral_suite() -> Check {
    let start = Instant::now();
    let w1 = max_residual(&[RuleId::Ftc, RuleId::Inverse, RuleId::Parts], 1e-7)?;
    let w2 = max_residual(&[RuleId::AbsBound], 1e-8)?;
    let w3 = max_residual(&[RuleId::SupBound], 1e-8)?;
    let w4 = max_residual(&[RuleId::IntegralComposition], 1e-6)?;
    within_time(
        start,
        Duration::from_secs(30),
        format!(
            "roundtrips {w1:.2e}, bound slack {:.2e}, composition {w4:.2e}",
            w2.max(w3)
        ),
    )
}

fn existence_witnesses() -> Check {
    let ones = MLParams::ones();
    let half = Order::base(0.5).map_err(|e| e.to_string())?;
    let parse = |s: &str| FnSpec::parse(s).map_err(|e| e.to_string());
    let iv = |a, b| IntervalSpec::new(a, b).map_err(|e| e.to_string());

    let rolle_f = parse("(t-1)*(t-3)")?;
    let c = find_mean_value_point(MeanValueMode::Rolle, &rolle_f, None, iv(1.0, 3.0)?, half, &ones)
        .map_err(|e| format!("rolle: {e}"))?;
    let d = deriv_closed(&rolle_f, c, &OperatorConfig::new(ones, half)).map_err(|e| e.to_string())?;
    if (c - 2.0).abs() > 1e-8 || d.abs() > 1e-8 {
        return Err(format!("rolle witness {c}, residual {d:.3e}"));
    }

    let mvt = find_mean_value_point(MeanValueMode::Mvt, &parse("t^2")?, None, iv(1.0, 4.0)?, half, &ones)
        .map_err(|e| format!("mvt: {e}"))?;
    let want = 3.75f64.powf(2.0 / 3.0);
    if (mvt - want).abs() > 1e-6 {
        return Err(format!("mvt witness {mvt}, expected {want}"));
    }

    // unit weight; the average-value form must land on the same point
    let unit = parse("1")?;
    let x0 = find_mean_value_point(
        MeanValueMode::IntegralMvt,
        &parse("t")?,
        Some(&unit),
        iv(0.0, 1.0)?,
        half,
        &ones,
    )
    .map_err(|e| format!("integral mvt: {e}"))?;
    let avg = find_mean_value_point(
        MeanValueMode::AverageValue,
        &parse("t")?,
        None,
        iv(0.0, 1.0)?,
        half,
        &ones,
    )
    .map_err(|e| format!("average value: {e}"))?;
    if (x0 - 1.0 / 3.0).abs() > 1e-8 || (avg - 1.0 / 3.0).abs() > 1e-8 {
        return Err(format!(
            "integral mean value point {x0}, average value point {avg}, expected 1/3"
        ));
    }
    Ok(format!("rolle c = {c}, mvt c = {mvt:.9}, integral x0 = {x0:.12}"))
}

fn rl_bridges() -> Check {
    let worst = max_residual(&[RuleId::RlIntegralBridge, RuleId::RlDerivativeBridge], 1e-6)?;
    for alpha in [0.25, 0.5, 0.75] {
        let factor = rl_integral_bridge_factor(alpha, &MLParams::ones()).map_err(|e| e.to_string())?;
        let g = gamma(alpha).map_err(|e| e.to_string())?;
        if (factor - g).abs() > 1e-12 {
            return Err(format!("all-ones bridge factor {factor} vs gamma({alpha}) = {g}"));
        }
    }
    Ok(format!("max residual {worst:.2e}; all-ones factor equals gamma(alpha)"))
}

fn ml_identities() -> Check {
    let tol = TruncationSpec::adaptive(1e-17);
    let mut worst: f64 = 0.0;
    for k in 0..=100 {
        let t = 0.05 * k as f64;
        let v = ml_three(1.0, 2.0, 2.0, t, tol).map_err(|e| e.to_string())?;
        worst = worst.max((v - t.exp()).abs());
        if (v - t.exp()).abs() > 1e-10 {
            return Err(format!("E^2_(1,2)({t}) = {v} vs exp = {}", t.exp()));
        }
    }
    let w_d = max_residual(&[RuleId::MlDerivIdentity], 1e-9)?;
    let w_i = max_residual(&[RuleId::MlIntegralIdentity], 1e-7)?;
    Ok(format!(
        "E^2_(1,2) vs exp {worst:.2e}, derivative {w_d:.2e}, integral {w_i:.2e}"
    ))
}

fn reductions() -> Check {
    let mut worst: f64 = 0.0;
    for g in [0.5, 1.0, 1.7, 3.0] {
        let params = MLParams::one(g).map_err(|e| e.to_string())?;
        for z in [-1.5, 0.3, 2.0] {
            for i in 1..=5 {
                let terms = h_terms(params, z, i).map_err(|e| e.to_string())?;
                for (k, term) in terms.iter().enumerate() {
                    let reference = z.powi(k as i32) / gamma(g * k as f64 + 1.0).map_err(|e| e.to_string())?;
                    let dev = rel(*term, reference);
                    worst = worst.max(dev);
                    if dev > 1e-14 {
                        return Err(format!("gamma = {g}, z = {z}, k = {k}: {term} vs {reference}"));
                    }
                }
            }
        }
    }
    let log_c = log_coefficient(&MLParams::ones()).map_err(|e| e.to_string())?;
    if log_c.abs() > 1e-14 {
        return Err(format!("all-ones log C = {log_c:e}"));
    }
    Ok(format!("term deviation {worst:.2e}, all-ones log C = {log_c}"))
}

fn cli_examples() -> Check {
    let run = |args: &[&str]| {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(std::iter::once("vfrac").chain(args.iter().copied()), &mut out, &mut err);
        (
            code,
            String::from_utf8_lossy(&out).into_owned(),
            String::from_utf8_lossy(&err).into_owned(),
        )
    };

    let (code, out, err) = run(&["ml", "--z", "1", "--tol", "1e-12"]);
    if code != 0 || !out.contains("2.718281828459") {
        return Err(format!("ml example: exit {code}, output {out:?}, stderr {err:?}"));
    }

    let (code, out, err) = run(&["deriv", "--fn", "t^2", "--alpha", "0.5", "--t", "1", "--method", "both"]);
    let fields: Vec<&str> = out.lines().nth(1).unwrap_or("").split(',').collect();
    let ok = code == 0
        && out.starts_with("t,closed,limit,limit_err,agree\n")
        && fields.len() == 5
        && fields[1] == "2"
        && fields[2].parse::<f64>().is_ok_and(|l| (l - 2.0).abs() <= 1e-6)
        && fields[4] == "true";
    if !ok {
        return Err(format!("deriv example: exit {code}, output {out:?}, stderr {err:?}"));
    }

    let (code, out, err) = run(&["verify", "--rule", "ftc", "--format", "json"]);
    let report: serde_json::Value = serde_json::from_str(&out).map_err(|e| format!("verify json: {e}"))?;
    if code != 0 || report["passed"] != serde_json::Value::Bool(true) || report["rule"] != "ftc" {
        return Err(format!("verify example: exit {code}, stderr {err:?}"));
    }

    let start = Instant::now();
    let (code, out, err) = run(&["verify", "--all"]);
    if code != 0 {
        return Err(format!("verify --all exit {code}: {out}{err}"));
    }
    let rules = out.lines().count() - 1;
    within_time(
        start,
        Duration::from_secs(60),
        format!("examples match; verify --all passed {rules} rules"),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Mittag-Leffler reduction chain", ml_reduction_chain),
        ("closed vs limit derivative", closed_vs_limit),
        ("calculus rule residuals", calculus_rules),
        ("order composition", order_composition),
        ("integral suite", integral_suite),
        ("existence witnesses", existence_witnesses),
        ("Riemann-Liouville bridges", rl_bridges),
        ("Mittag-Leffler operator identities", ml_identities),
        ("parameter reductions", reductions),
        ("command-line examples", cli_examples),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("AC-{} PASS {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("AC-{} FAIL {name}: {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

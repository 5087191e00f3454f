use std::f64::consts::FRAC_PI_4;

use crate::error::Result;
use crate::function::{Catalog, FnSpec};
use crate::special_functions::MLParams;

use super::case::Case;
use super::RuleId;

/// All-ones parameters plus two admissible non-trivial sets.
pub fn param_sets() -> [MLParams; 3] {
    [
        MLParams::ones(),
        MLParams {
            gamma: 0.5,
            beta: 1.5,
            rho: 2.0,
            delta: 1.2,
            p: 0.8,
            q: 1.1,
        },
        MLParams {
            gamma: 2.0,
            beta: 0.7,
            rho: 0.9,
            delta: 2.5,
            p: 1.5,
            q: 3.0,
        },
    ]
}

fn two_sets() -> [MLParams; 2] {
    let [a, b, _] = param_sets();
    [a, b]
}

/// Default tolerance tier for each rule.
pub fn default_tolerance(rule: RuleId) -> f64 {
    use RuleId::*;
    match rule {
        ConstantZero | LinearityD | Product | ElementaryCatalog => 1e-10,
        Quotient | ChainComposition | OrderComposition | MlDerivIdentity => 1e-9,
        Rolle | IntegralMvt | AverageValue | AbsBound | SupBound => 1e-8,
        LinearityI | Inverse | Ftc | Parts | RlIntegralBridge | MlIntegralIdentity => 1e-7,
        ClosedForm | Continuity | Mvt | ExtendedMvt | IntegralComposition | RlDerivativeBridge => 1e-6,
        ReductionMFractional | ReductionConformable => 1e-14,
    }
}

fn p(src: &str) -> Result<FnSpec> {
    FnSpec::parse(src)
}

/// The standard function list: t², eᵗ, sin t, (t−1)(t−3), t^α/α.
fn standard(alpha: f64) -> Result<Vec<FnSpec>> {
    Ok(vec![
        p("t^2")?,
        p("exp(t)")?,
        p("sin(t)")?,
        p("(t-1)*(t-3)")?,
        FnSpec::catalog(Catalog::TAlphaOverAlpha { alpha })?,
    ])
}

fn pairs(alpha: f64) -> Result<Vec<(FnSpec, FnSpec)>> {
    let fs = standard(alpha)?;
    let mut out = Vec::new();
    for i in 0..fs.len() {
        for j in (i + 1)..fs.len() {
            out.push((fs[i].clone(), fs[j].clone()));
        }
    }
    Ok(out)
}

fn elementary(alpha: f64) -> Result<Vec<FnSpec>> {
    [
        Catalog::ExpAt { a: 1.3 },
        Catalog::ExpAt { a: -0.7 },
        Catalog::SinAt { a: 2.0 },
        Catalog::CosAt { a: 0.5 },
        Catalog::Power { a: 2.5 },
        Catalog::Power { a: 0.5 },
        Catalog::Const { c: 4.0 },
        Catalog::TAlphaOverAlpha { alpha },
        Catalog::SinTAlphaOverAlpha { alpha },
        Catalog::CosTAlphaOverAlpha { alpha },
        Catalog::ExpTAlphaOverAlpha { alpha },
    ]
    .into_iter()
    .map(FnSpec::catalog)
    .collect()
}

const ML_PAIRS: [(f64, f64); 4] = [(1.0, 1.0), (0.5, 1.0), (0.8, 1.3), (1.5, 0.7)];

/// The built-in cases for `rule`.
pub fn default_suite(rule: RuleId) -> Result<Vec<Case>> {
    use RuleId::*;
    let mut cases = Vec::new();
    match rule {
        ClosedForm => {
            for alpha in [0.1, 0.5, 0.9] {
                for params in param_sets() {
                    for f in standard(alpha)? {
                        for t in [0.5, 1.0, 2.0, 5.0] {
                            for i in [1, 2, 5] {
                                cases.push(Case::new(alpha, params).f(f.clone()).at(t).trunc(i));
                            }
                        }
                    }
                }
            }
        }
        ElementaryCatalog | ReductionConformable => {
            let sets: Vec<MLParams> = if rule == ReductionConformable {
                vec![MLParams::ones()]
            } else {
                param_sets().to_vec()
            };
            for alpha in [0.1, 0.5, 0.9] {
                let fs = if rule == ElementaryCatalog {
                    elementary(alpha)?
                } else {
                    standard(alpha)?
                };
                for &params in &sets {
                    for f in &fs {
                        for t in [0.5, 1.0, 2.0, 5.0] {
                            cases.push(Case::new(alpha, params).f(f.clone()).at(t));
                        }
                    }
                }
            }
        }
        LinearityD | Product => {
            for alpha in [0.3, 0.7] {
                for params in two_sets() {
                    for (f, g) in pairs(alpha)? {
                        for t in [0.5, 1.0, 2.0] {
                            cases.push(Case::new(alpha, params).f(f.clone()).g(g.clone()).at(t));
                        }
                    }
                }
            }
        }
        Quotient => {
            let denominators = [p("exp(t)")?, p("t^2 + 1")?, p("cos(t) + 2")?];
            for alpha in [0.3, 0.7] {
                for params in two_sets() {
                    for f in standard(alpha)? {
                        for g in &denominators {
                            for t in [0.5, 1.0, 2.0] {
                                cases.push(Case::new(alpha, params).f(f.clone()).g(g.clone()).at(t));
                            }
                        }
                    }
                }
            }
        }
        ConstantZero => {
            for c in ["7", "-2.5", "0"] {
                for alpha in [0.1, 0.5, 0.9] {
                    for params in param_sets() {
                        for t in [0.5, 1.0, 2.0] {
                            cases.push(Case::new(alpha, params).f(p(c)?).at(t));
                        }
                    }
                }
            }
        }
        ChainComposition => {
            let outer = [p("sin(t)")?, p("exp(t)")?, p("t^2")?, p("ln(t)")?];
            for alpha in [0.3, 0.7] {
                let inner = [
                    p("t^2")?,
                    p("sin(t) + 2")?,
                    FnSpec::catalog(Catalog::TAlphaOverAlpha { alpha })?,
                ];
                for params in two_sets() {
                    for f in &outer {
                        for g in &inner {
                            for t in [0.5, 1.0, 2.0] {
                                cases.push(Case::new(alpha, params).f(f.clone()).g(g.clone()).at(t));
                            }
                        }
                    }
                }
            }
        }
        OrderComposition => {
            for (alpha, mu) in [(0.3, 0.4), (0.5, 0.5), (0.7, 0.9)] {
                for params in two_sets() {
                    for f in standard(0.5)? {
                        for t in [0.5, 1.0, 2.0] {
                            cases.push(Case::new(alpha, params).f(f.clone()).at(t).mu(mu));
                        }
                    }
                }
            }
        }
        Continuity => {
            for alpha in [0.1, 0.5, 0.9] {
                for params in two_sets() {
                    for f in standard(alpha)? {
                        for t in [0.5, 1.0, 2.0] {
                            for i in [1, 3] {
                                cases.push(Case::new(alpha, params).f(f.clone()).at(t).trunc(i));
                            }
                        }
                    }
                }
            }
        }
        Rolle => {
            let fs = [
                (p("(x-1)*(x-3)")?, 1.0, 3.0),
                (p("exp(x) + exp(4-x)")?, 1.0, 3.0),
                (p("sin(x)")?, FRAC_PI_4, 3.0 * FRAC_PI_4),
            ];
            for alpha in [0.3, 0.5, 0.9] {
                for params in two_sets() {
                    for (f, a, b) in &fs {
                        cases.push(Case::new(alpha, params).f(f.clone()).on(*a, *b));
                    }
                }
            }
        }
        Mvt => {
            let fs = [
                (p("x^2")?, 1.0, 4.0),
                (p("exp(x)")?, 0.5, 2.0),
                (p("sin(x)")?, 0.5, 1.5),
            ];
            for alpha in [0.5, 0.9] {
                for params in two_sets() {
                    for (f, a, b) in &fs {
                        cases.push(Case::new(alpha, params).f(f.clone()).on(*a, *b));
                    }
                }
            }
            cases.push(Case::new(1.0, MLParams::ones()).f(p("x^2")?).on(1.0, 2.0));
        }
        ExtendedMvt => {
            let fs = [
                (p("x^2")?, p("x^3")?, 1.0, 2.0),
                (p("exp(x)")?, p("x^2")?, 0.5, 1.5),
                (p("sin(x)")?, p("x")?, 0.2, 1.2),
            ];
            for alpha in [0.5, 0.9] {
                for params in two_sets() {
                    for (f, g, a, b) in &fs {
                        cases.push(Case::new(alpha, params).f(f.clone()).g(g.clone()).on(*a, *b));
                    }
                }
            }
        }
        IntegralMvt => {
            let fs = [
                (p("x")?, p("1")?, 0.0, 1.0),
                (p("x^2")?, p("exp(x)")?, 0.5, 2.0),
                (p("sin(x)")?, p("x")?, 0.0, 2.0),
                (p("3")?, p("x^2")?, 1.0, 2.0),
            ];
            for alpha in [0.5, 0.8] {
                for params in two_sets() {
                    for (f, g, a, b) in &fs {
                        cases.push(Case::new(alpha, params).f(f.clone()).g(g.clone()).on(*a, *b));
                    }
                }
            }
        }
        AverageValue => {
            let fs = [
                (p("x")?, 0.0, 1.0),
                (p("exp(x)")?, 1.0, 2.0),
                (p("(x-1)*(x-3)")?, 0.0, 4.0),
                (p("x^2")?, 0.5, 3.0),
                (p("2")?, 0.5, 3.0),
            ];
            for alpha in [0.5, 0.8] {
                for (f, a, b) in &fs {
                    cases.push(Case::new(alpha, MLParams::ones()).f(f.clone()).on(*a, *b));
                }
            }
        }
        LinearityI => {
            for alpha in [0.3, 0.7] {
                for params in two_sets() {
                    for (f, g) in pairs(alpha)? {
                        for (a, t) in [(0.0, 1.0), (0.5, 2.0)] {
                            cases.push(Case::new(alpha, params).f(f.clone()).g(g.clone()).on(a, t).at(t));
                        }
                    }
                }
            }
        }
        Inverse => {
            for alpha in [0.3, 0.7] {
                for params in two_sets() {
                    for f in standard(alpha)? {
                        for (a, t) in [(0.0, 1.0), (0.5, 2.0)] {
                            cases.push(Case::new(alpha, params).f(f.clone()).on(a, t).at(t));
                        }
                    }
                }
            }
        }
        Ftc => {
            for alpha in [0.3, 0.5, 0.7] {
                for params in two_sets() {
                    for f in standard(alpha)? {
                        for (a, t) in [(0.0, 2.0), (1.0, 2.0), (1.0, 3.0)] {
                            cases.push(Case::new(alpha, params).f(f.clone()).on(a, t).at(t));
                        }
                    }
                }
            }
        }
        Parts => {
            for alpha in [0.3, 0.7] {
                for params in two_sets() {
                    for (f, g) in pairs(alpha)? {
                        for (a, b) in [(0.5, 2.0), (0.0, 1.0)] {
                            cases.push(Case::new(alpha, params).f(f.clone()).g(g.clone()).on(a, b));
                        }
                    }
                }
            }
        }
        AbsBound | SupBound => {
            let mut fs = vec![p("sin(3*t)")?, p("(t-1)*(t-3)")?, p("t^2")?, p("cos(t)*exp(-t)")?];
            if rule == SupBound {
                fs.push(p("2")?);
            }
            for alpha in [0.3, 0.7] {
                for params in param_sets() {
                    for f in &fs {
                        for (a, t) in [(0.0, 4.0), (0.5, 3.0)] {
                            cases.push(Case::new(alpha, params).f(f.clone()).on(a, t).at(t));
                        }
                    }
                }
            }
        }
        IntegralComposition => {
            let fs = [p("1")?, p("t^2")?, p("exp(t)")?, p("sin(t)")?];
            for (alpha, mu) in [(0.5, 0.5), (0.3, 0.6)] {
                for params in two_sets() {
                    for f in &fs {
                        for (a, t) in [(0.0, 1.0), (0.5, 2.0)] {
                            cases.push(Case::new(alpha, params).f(f.clone()).on(a, t).at(t).mu(mu));
                        }
                    }
                }
            }
        }
        RlIntegralBridge | RlDerivativeBridge => {
            for mu in [0.0, 0.5, 1.0, 2.0] {
                for alpha in [0.25, 0.5, 0.75] {
                    for params in two_sets() {
                        for t in [1.0, 2.0] {
                            cases.push(Case::new(alpha, params).at(t).mu(mu));
                        }
                    }
                }
            }
        }
        ReductionMFractional => {
            for gamma in [0.5, 1.0, 1.7, 3.0] {
                let params = MLParams::one(gamma)?;
                for z in [-2.0, -0.5, 0.3, 1.0, 2.0] {
                    for i in 1..=5 {
                        cases.push(Case::new(0.5, params).at(z).trunc(i));
                    }
                }
            }
        }
        MlDerivIdentity => {
            for alpha in [0.3, 0.9, 1.5] {
                for params in two_sets() {
                    for (mu, kappa) in ML_PAIRS {
                        for t in [0.5, 1.0, 2.0] {
                            cases.push(Case::new(alpha, params).mu(mu).kappa(kappa).at(t));
                        }
                    }
                }
            }
        }
        MlIntegralIdentity => {
            for alpha in [0.25, 0.5, 0.9] {
                for params in two_sets() {
                    for (mu, kappa) in ML_PAIRS {
                        for (a, t) in [(0.0, 1.0), (0.5, 2.0)] {
                            cases.push(Case::new(alpha, params).mu(mu).kappa(kappa).on(a, t).at(t));
                        }
                    }
                }
            }
        }
    }
    Ok(cases)
}

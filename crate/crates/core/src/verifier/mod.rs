//! Executable checks of the operators' calculus rules.
//!
//! Each [`RuleId`] names one identity, inequality or existence statement.
//! [`verify`] evaluates it on a list of [`Case`]s and reports per-case
//! residuals; existence rules also record the witness point they located.

mod case;
mod rules;
mod suites;
mod witness;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use case::{Case, CaseInputs};
pub use suites::{default_suite, default_tolerance, param_sets};
pub use witness::{find_mean_value_point, MeanValueMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleId {
    LinearityD,
    Product,
    Quotient,
    ConstantZero,
    ChainComposition,
    ClosedForm,
    ElementaryCatalog,
    OrderComposition,
    Continuity,
    Rolle,
    Mvt,
    ExtendedMvt,
    LinearityI,
    Inverse,
    Ftc,
    Parts,
    AbsBound,
    SupBound,
    IntegralComposition,
    IntegralMvt,
    AverageValue,
    RlIntegralBridge,
    RlDerivativeBridge,
    ReductionMFractional,
    ReductionConformable,
    MlDerivIdentity,
    MlIntegralIdentity,
}

impl RuleId {
    pub const ALL: [RuleId; 27] = [
        RuleId::LinearityD,
        RuleId::Product,
        RuleId::Quotient,
        RuleId::ConstantZero,
        RuleId::ChainComposition,
        RuleId::ClosedForm,
        RuleId::ElementaryCatalog,
        RuleId::OrderComposition,
        RuleId::Continuity,
        RuleId::Rolle,
        RuleId::Mvt,
        RuleId::ExtendedMvt,
        RuleId::LinearityI,
        RuleId::Inverse,
        RuleId::Ftc,
        RuleId::Parts,
        RuleId::AbsBound,
        RuleId::SupBound,
        RuleId::IntegralComposition,
        RuleId::IntegralMvt,
        RuleId::AverageValue,
        RuleId::RlIntegralBridge,
        RuleId::RlDerivativeBridge,
        RuleId::ReductionMFractional,
        RuleId::ReductionConformable,
        RuleId::MlDerivIdentity,
        RuleId::MlIntegralIdentity,
    ];

    pub fn all() -> &'static [RuleId] {
        &Self::ALL
    }

    pub fn name(self) -> &'static str {
        match self {
            RuleId::LinearityD => "linearity_d",
            RuleId::Product => "product",
            RuleId::Quotient => "quotient",
            RuleId::ConstantZero => "constant_zero",
            RuleId::ChainComposition => "chain_composition",
            RuleId::ClosedForm => "closed_form",
            RuleId::ElementaryCatalog => "elementary_catalog",
            RuleId::OrderComposition => "order_composition",
            RuleId::Continuity => "continuity",
            RuleId::Rolle => "rolle",
            RuleId::Mvt => "mvt",
            RuleId::ExtendedMvt => "extended_mvt",
            RuleId::LinearityI => "linearity_i",
            RuleId::Inverse => "inverse",
            RuleId::Ftc => "ftc",
            RuleId::Parts => "parts",
            RuleId::AbsBound => "abs_bound",
            RuleId::SupBound => "sup_bound",
            RuleId::IntegralComposition => "integral_composition",
            RuleId::IntegralMvt => "integral_mvt",
            RuleId::AverageValue => "average_value",
            RuleId::RlIntegralBridge => "rl_integral_bridge",
            RuleId::RlDerivativeBridge => "rl_derivative_bridge",
            RuleId::ReductionMFractional => "reduction_m_fractional",
            RuleId::ReductionConformable => "reduction_conformable",
            RuleId::MlDerivIdentity => "ml_deriv_identity",
            RuleId::MlIntegralIdentity => "ml_integral_identity",
        }
    }

    /// One-line statement of what the rule checks.
    pub fn description(self) -> &'static str {
        match self {
            RuleId::LinearityD => "D(a f + b g) = a Df + b Dg",
            RuleId::Product => "D(f g) = f Dg + g Df",
            RuleId::Quotient => "D(f/g) = (g Df - f Dg)/g^2",
            RuleId::ConstantZero => "D c = 0",
            RuleId::ChainComposition => "D(f o g)(t) = f'(g(t)) Dg(t)",
            RuleId::ClosedForm => "limit definition equals C t^(1-alpha) f'(t)",
            RuleId::ElementaryCatalog => "closed forms for exp, sin, cos, powers and t^alpha/alpha families",
            RuleId::OrderComposition => "D^alpha(D^mu f) = C[(1-mu) G_(alpha+mu) f + t G_(alpha+mu) f']",
            RuleId::Continuity => "f(t H(eps t^-alpha)) - f(t) -> 0",
            RuleId::Rolle => "f(a) = f(b) implies Df(c) = 0 for some c in (a, b)",
            RuleId::Mvt => "Df(c) = C (f(b) - f(a)) / ((b^alpha - a^alpha)/alpha)",
            RuleId::ExtendedMvt => "Df(c)/Dg(c) = (f(b) - f(a))/(g(b) - g(a))",
            RuleId::LinearityI => "I(a f + b g) = a If + b Ig",
            RuleId::Inverse => "D(I f)(t) = f(t)",
            RuleId::Ftc => "I(Df)(t) = f(t) - f(a)",
            RuleId::Parts => "int f Dg dw = fg|_a^b - int g Df dw",
            RuleId::AbsBound => "|I f| <= I |f|",
            RuleId::SupBound => "|I f(t)| <= (1/C) N (t^alpha - a^alpha)/alpha",
            RuleId::IntegralComposition => "I_alpha(I_mu f) = (1/C)[(t^alpha/alpha) I_mu f - (1/alpha) I_(alpha+mu) f]",
            RuleId::IntegralMvt => "int f g dw = f(x0) int g dw for some x0",
            RuleId::AverageValue => "f(x0) = alpha/(b^alpha - a^alpha) int f(x) x^(alpha-1) dx",
            RuleId::RlIntegralBridge => "I[(t-x)^mu](t) = (Gamma(alpha)/C) J^alpha t^mu",
            RuleId::RlDerivativeBridge => "D I[(t-x)^mu](t) = k(mu, alpha, t) D_RL^alpha t^mu",
            RuleId::ReductionMFractional => "H with beta=rho=delta=p=q=1 equals the one-parameter truncated series",
            RuleId::ReductionConformable => "all-ones parameters give C = 1 and D f = t^(1-alpha) f'",
            RuleId::MlDerivIdentity => "D E_(mu,kappa) = C t^(n+1-alpha) Gamma(n+2) E^(n+2)_(mu,kappa+mu(n+1))",
            RuleId::MlIntegralIdentity => "series integral of E_(mu,kappa) equals quadrature",
        }
    }

    /// Rules whose cases carry a witness point.
    pub fn has_witness(self) -> bool {
        matches!(
            self,
            RuleId::Rolle | RuleId::Mvt | RuleId::ExtendedMvt | RuleId::IntegralMvt | RuleId::AverageValue
        )
    }

    /// Inequality rules: the residual is the amount by which the bound is
    /// exceeded, and the tolerance is quadrature slack.
    pub fn is_inequality(self) -> bool {
        matches!(self, RuleId::AbsBound | RuleId::SupBound)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RuleId::ALL
            .iter()
            .copied()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown rule '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub inputs: CaseInputs,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub rule: RuleId,
    pub tolerance: f64,
    pub cases: Vec<CaseReport>,
    pub max_residual: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

/// Evaluates `rule` on every case. A case whose witness cannot be bracketed
/// is skipped with a warning; any other numerical failure aborts.
pub fn verify(rule: RuleId, suite: &[Case], tol: f64) -> Result<VerificationReport> {
    if suite.is_empty() {
        return Err(Error::InvalidParameter(format!("empty suite for rule {rule}")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tol must be > 0, got {tol}")));
    }
    let mut cases = Vec::with_capacity(suite.len());
    let mut warnings = Vec::new();
    for case in suite {
        match rules::check(rule, case) {
            Ok(out) => cases.push(CaseReport {
                inputs: case.inputs(),
                residual: out.residual,
                witness: out.witness,
            }),
            Err(e @ (Error::NoWitness(_) | Error::NoBracket { .. })) if rule.has_witness() => {
                warnings.push(format!("{}: {e}", case.inputs().summary()));
            }
            Err(e) => return Err(e),
        }
    }
    let max_residual = cases.iter().map(|c| c.residual).fold(0.0, f64::max);
    let nan = cases.iter().any(|c| c.residual.is_nan());
    Ok(VerificationReport {
        rule,
        tolerance: tol,
        passed: !nan && max_residual <= tol,
        max_residual: if nan { f64::NAN } else { max_residual },
        cases,
        warnings,
    })
}

/// Runs the default suite of `rule` at its default tolerance.
pub fn verify_default(rule: RuleId) -> Result<VerificationReport> {
    verify(rule, &default_suite(rule)?, default_tolerance(rule))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::FnSpec;
    use crate::special_functions::MLParams;

    #[test]
    fn rule_names_round_trip() {
        for &r in RuleId::all() {
            assert_eq!(r.name().parse::<RuleId>().unwrap(), r);
            assert_eq!(serde_json::to_string(&r).unwrap(), format!("\"{}\"", r.name()));
        }
        assert!("nope".parse::<RuleId>().is_err());
    }

    #[test]
    fn constant_zero_example() {
        let suite: Vec<Case> = [0.5, 1.0, 2.0]
            .iter()
            .map(|&t| Case::new(0.5, MLParams::ones()).f(FnSpec::parse("7").unwrap()).at(t))
            .collect();
        let r = verify(RuleId::ConstantZero, &suite, 1e-10).unwrap();
        assert_eq!(r.max_residual, 0.0);
        assert!(r.passed);
    }

    #[test]
    fn ftc_example() {
        let case = Case::new(0.5, MLParams::ones())
            .f(FnSpec::parse("t^2").unwrap())
            .on(1.0, 2.0)
            .at(2.0);
        let r = verify(RuleId::Ftc, &[case], 1e-7).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn mvt_example_records_witness() {
        let case = Case::new(0.5, MLParams::ones())
            .f(FnSpec::parse("x^2").unwrap())
            .on(1.0, 4.0);
        let r = verify(RuleId::Mvt, &[case], 1e-6).unwrap();
        assert!(r.passed);
        let c = r.cases[0].witness.unwrap();
        assert!((c - 3.75f64.powf(2.0 / 3.0)).abs() < 1e-6);
    }

    #[test]
    fn rolle_precondition_is_an_error() {
        let case = Case::new(0.5, MLParams::ones())
            .f(FnSpec::parse("x^2").unwrap())
            .on(1.0, 3.0);
        assert!(matches!(
            verify(RuleId::Rolle, &[case], 1e-8),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn failing_tolerance_reports_failure() {
        let case = Case::new(0.5, MLParams::ones())
            .f(FnSpec::parse("exp(t)").unwrap())
            .at(2.0);
        let r = verify(RuleId::ClosedForm, &[case], 1e-300).unwrap();
        assert_eq!(r.passed, r.max_residual <= 1e-300);
    }

    #[test]
    fn every_default_suite_passes() {
        for &rule in RuleId::all() {
            let start = std::time::Instant::now();
            let r = verify_default(rule).unwrap_or_else(|e| panic!("{rule}: {e}"));
            eprintln!(
                "{rule:<24} cases={:<4} max={:.3e} tol={:.0e} {:?}",
                r.cases.len(),
                r.max_residual,
                r.tolerance,
                start.elapsed()
            );
            assert!(r.passed, "{rule}: max residual {} > {}", r.max_residual, r.tolerance);
            assert!(r.warnings.is_empty(), "{rule}: {:?}", r.warnings);
            if rule.has_witness() {
                assert!(r.cases.iter().all(|c| c.witness.is_some()));
            }
        }
    }
}

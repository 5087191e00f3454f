//! Function carriers handed to the operators: parsed expressions, a catalog
//! of closed-form families with hand-coded derivatives, and opaque callables.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{self, Expr, Func};
use crate::numerics::central_derivative;
use crate::special_functions::{gamma, sum_series, TruncationSpec};

/// Relative tolerance for the Mittag-Leffler catalog series.
const MLF_TOL: f64 = 1e-17;

/// Built-in families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Catalog {
    Const {
        c: f64,
    },
    /// t^a
    Power {
        a: f64,
    },
    /// e^(a t)
    ExpAt {
        a: f64,
    },
    /// sin(a t)
    SinAt {
        a: f64,
    },
    /// cos(a t)
    CosAt {
        a: f64,
    },
    /// Two-parameter Mittag-Leffler function E_{μ,κ}(t).
    Mlf {
        mu: f64,
        kappa: f64,
    },
    /// t^α/α
    TAlphaOverAlpha {
        alpha: f64,
    },
    /// sin(t^α/α)
    SinTAlphaOverAlpha {
        alpha: f64,
    },
    /// cos(t^α/α)
    CosTAlphaOverAlpha {
        alpha: f64,
    },
    /// exp(t^α/α)
    ExpTAlphaOverAlpha {
        alpha: f64,
    },
}

impl Catalog {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Catalog::Const { c } => c.is_finite(),
            Catalog::Power { a } | Catalog::ExpAt { a } | Catalog::SinAt { a } | Catalog::CosAt { a } => a.is_finite(),
            Catalog::Mlf { mu, kappa } => mu > 0.0 && kappa > 0.0 && mu.is_finite() && kappa.is_finite(),
            Catalog::TAlphaOverAlpha { alpha }
            | Catalog::SinTAlphaOverAlpha { alpha }
            | Catalog::CosTAlphaOverAlpha { alpha }
            | Catalog::ExpTAlphaOverAlpha { alpha } => alpha > 0.0 && alpha.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("catalog entry {self:?}")))
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Catalog::Const { c } => format!("{c}"),
            Catalog::Power { a } => format!("t^{a}"),
            Catalog::ExpAt { a } => format!("exp({a}*t)"),
            Catalog::SinAt { a } => format!("sin({a}*t)"),
            Catalog::CosAt { a } => format!("cos({a}*t)"),
            Catalog::Mlf { mu, kappa } => format!("E_{{{mu},{kappa}}}(t)"),
            Catalog::TAlphaOverAlpha { alpha } => format!("t^{alpha}/{alpha}"),
            Catalog::SinTAlphaOverAlpha { alpha } => format!("sin(t^{alpha}/{alpha})"),
            Catalog::CosTAlphaOverAlpha { alpha } => format!("cos(t^{alpha}/{alpha})"),
            Catalog::ExpTAlphaOverAlpha { alpha } => format!("exp(t^{alpha}/{alpha})"),
        }
    }

    /// Expression form, for every entry except the Mittag-Leffler series.
    pub fn to_expr(&self) -> Option<Expr> {
        let t = || Box::new(Expr::Var);
        let scaled = |a: f64| Box::new(Expr::Binary(expr::BinOp::Mul, Box::new(Expr::Const(a)), t()));
        let t_alpha = |alpha: f64| {
            Box::new(Expr::Binary(
                expr::BinOp::Div,
                Box::new(Expr::Pow(t(), alpha)),
                Box::new(Expr::Const(alpha)),
            ))
        };
        Some(match *self {
            Catalog::Const { c } => Expr::Const(c),
            Catalog::Power { a } => Expr::Pow(t(), a),
            Catalog::ExpAt { a } => Expr::Call(Func::Exp, scaled(a)),
            Catalog::SinAt { a } => Expr::Call(Func::Sin, scaled(a)),
            Catalog::CosAt { a } => Expr::Call(Func::Cos, scaled(a)),
            Catalog::Mlf { .. } => return None,
            Catalog::TAlphaOverAlpha { alpha } => *t_alpha(alpha),
            Catalog::SinTAlphaOverAlpha { alpha } => Expr::Call(Func::Sin, t_alpha(alpha)),
            Catalog::CosTAlphaOverAlpha { alpha } => Expr::Call(Func::Cos, t_alpha(alpha)),
            Catalog::ExpTAlphaOverAlpha { alpha } => Expr::Call(Func::Exp, t_alpha(alpha)),
        })
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        let v = match *self {
            Catalog::Const { c } => c,
            Catalog::Power { a } => real_pow(t, a)?,
            Catalog::ExpAt { a } => (a * t).exp(),
            Catalog::SinAt { a } => (a * t).sin(),
            Catalog::CosAt { a } => (a * t).cos(),
            Catalog::Mlf { mu, kappa } => mlf_derivative(mu, kappa, t, 0)?,
            Catalog::TAlphaOverAlpha { alpha } => real_pow(t, alpha)? / alpha,
            Catalog::SinTAlphaOverAlpha { alpha } => (real_pow(t, alpha)? / alpha).sin(),
            Catalog::CosTAlphaOverAlpha { alpha } => (real_pow(t, alpha)? / alpha).cos(),
            Catalog::ExpTAlphaOverAlpha { alpha } => (real_pow(t, alpha)? / alpha).exp(),
        };
        finite(v, self, t)
    }

    /// Hand-coded first derivative.
    pub fn derivative(&self, t: f64) -> Result<f64> {
        let v = match *self {
            Catalog::Const { .. } => 0.0,
            Catalog::Power { a: 0.0 } => 0.0,
            Catalog::Power { a } => a * real_pow(t, a - 1.0)?,
            Catalog::ExpAt { a } => a * (a * t).exp(),
            Catalog::SinAt { a } => a * (a * t).cos(),
            Catalog::CosAt { a } => -a * (a * t).sin(),
            Catalog::Mlf { mu, kappa } => mlf_derivative(mu, kappa, t, 1)?,
            Catalog::TAlphaOverAlpha { alpha } => real_pow(t, alpha - 1.0)?,
            Catalog::SinTAlphaOverAlpha { alpha } => (real_pow(t, alpha)? / alpha).cos() * real_pow(t, alpha - 1.0)?,
            Catalog::CosTAlphaOverAlpha { alpha } => -(real_pow(t, alpha)? / alpha).sin() * real_pow(t, alpha - 1.0)?,
            Catalog::ExpTAlphaOverAlpha { alpha } => (real_pow(t, alpha)? / alpha).exp() * real_pow(t, alpha - 1.0)?,
        };
        finite(v, self, t)
    }

    fn nth_derivative(&self, m: usize, t: f64) -> Result<f64> {
        match (m, self) {
            (0, _) => self.eval(t),
            (1, _) => self.derivative(t),
            (_, Catalog::Mlf { mu, kappa }) => mlf_derivative(*mu, *kappa, t, m),
            _ => {
                let e = self
                    .to_expr()
                    .expect("every non-series catalog entry has an expression");
                nth_symbolic(&e, m).eval(t)
            }
        }
    }
}

fn finite(v: f64, what: &Catalog, t: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("{} at t = {t}", what.label())))
    }
}

fn real_pow(t: f64, a: f64) -> Result<f64> {
    if t < 0.0 && a != a.trunc() {
        return Err(Error::Domain(format!("({t})^{a} with non-integer exponent")));
    }
    if t == 0.0 && a < 0.0 {
        return Err(Error::Domain(format!("0^{a}")));
    }
    Ok(t.powf(a))
}

/// m-th derivative of E_{μ,κ}(t) by term-wise differentiation:
/// Σ_{k≥m} k!/(k−m)! · t^(k−m) / Γ(μk + κ).
pub fn mlf_derivative(mu: f64, kappa: f64, t: f64, m: usize) -> Result<f64> {
    let term = |j: usize| -> Result<f64> {
        let k = j + m;
        let falling: f64 = ((j + 1)..=k).map(|i| i as f64).product();
        let g = gamma(mu * k as f64 + kappa);
        match g {
            Ok(g) if g.is_finite() => Ok(falling * t.powi(j as i32) / g),
            // Γ beyond f64 range: the term underflows.
            Err(Error::Overflow(_)) => Ok(0.0),
            Ok(_) => Ok(0.0),
            Err(e) => Err(e),
        }
    };
    sum_series(term, TruncationSpec::adaptive(MLF_TOL), t)
}

fn nth_symbolic(e: &Expr, m: usize) -> Expr {
    (0..m).fold(e.clone(), |acc, _| acc.differentiate())
}

#[derive(Clone)]
enum Body {
    Expr(Expr),
    Catalog(Catalog),
    Opaque(Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>),
}

/// A real function of one variable together with, when available, its
/// analytic derivative.
#[derive(Clone)]
pub struct FnSpec {
    body: Body,
    derivative: Option<Expr>,
    label: String,
}

impl fmt::Debug for FnSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.body {
            Body::Expr(_) => "expr",
            Body::Catalog(_) => "catalog",
            Body::Opaque(_) => "opaque",
        };
        f.debug_struct("FnSpec")
            .field("kind", &kind)
            .field("label", &self.label)
            .finish()
    }
}

impl FnSpec {
    pub fn parse(src: &str) -> Result<Self> {
        let e = expr::parse(src)?;
        let mut spec = Self::from_expr(e);
        spec.label = src.trim().to_string();
        Ok(spec)
    }

    pub fn from_expr(e: Expr) -> Self {
        let derivative = Some(e.differentiate());
        let label = e.to_string();
        Self {
            body: Body::Expr(e),
            derivative,
            label,
        }
    }

    pub fn catalog(c: Catalog) -> Result<Self> {
        c.validate()?;
        Ok(Self {
            body: Body::Catalog(c),
            derivative: None,
            label: c.label(),
        })
    }

    /// A callable without an analytic derivative. The operators only
    /// differentiate it when finite differences are explicitly enabled.
    pub fn opaque<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> Result<f64> + Send + Sync + 'static,
    {
        Self {
            body: Body::Opaque(Arc::new(f)),
            derivative: None,
            label: label.into(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        match &self.body {
            Body::Expr(e) => e.eval(t),
            Body::Catalog(c) => c.eval(t),
            Body::Opaque(f) => f(t),
        }
    }

    pub fn has_derivative(&self) -> bool {
        !matches!(self.body, Body::Opaque(_))
    }

    /// Analytic first derivative.
    pub fn derivative(&self, t: f64) -> Result<f64> {
        match (&self.body, &self.derivative) {
            (_, Some(d)) => d.eval(t),
            (Body::Catalog(c), None) => c.derivative(t),
            _ => Err(Error::MissingDerivative(self.label.clone())),
        }
    }

    /// Analytic m-th derivative (iterated symbolic differentiation for
    /// expressions).
    pub fn nth_derivative(&self, m: usize, t: f64) -> Result<f64> {
        match (m, &self.body) {
            (0, _) => self.eval(t),
            (1, _) => self.derivative(t),
            (_, Body::Expr(e)) => nth_symbolic(e, m).eval(t),
            (_, Body::Catalog(c)) => c.nth_derivative(m, t),
            (_, Body::Opaque(_)) => Err(Error::MissingDerivative(self.label.clone())),
        }
    }

    /// Richardson-extrapolated central difference, for callers that opted
    /// into numerical derivatives. The initial step is 1 % of |t| so the
    /// stencil stays on the same side of 0.
    pub fn fd_derivative(&self, t: f64) -> Result<f64> {
        let h0 = if t == 0.0 { 1e-2 } else { 1e-2 * t.abs() };
        Ok(central_derivative(|x| self.eval(x), t, h0, 6)?.value)
    }

    /// Symbolic form when one exists.
    pub fn to_expr(&self) -> Option<Expr> {
        match &self.body {
            Body::Expr(e) => Some(e.clone()),
            Body::Catalog(c) => c.to_expr(),
            Body::Opaque(_) => None,
        }
    }

    pub fn as_catalog(&self) -> Option<Catalog> {
        match self.body {
            Body::Catalog(c) => Some(c),
            _ => None,
        }
    }
}

//! Command-line grammar.

use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use vfrac_core::{EpsilonSchedule, MLParams, OperatorConfig, Order};

use crate::output::Format;
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "vfrac",
    version,
    about = "Truncated V-fractional derivative and integral, Mittag-Leffler functions and rule verification"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Csv)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the six-parameter Mittag-Leffler function.
    Ml(MlArgs),
    /// Apply the derivative to an expression.
    Deriv(DerivArgs),
    /// Apply the integral to an expression.
    Integral(IntegralArgs),
    /// Check calculus rules on their default suites.
    Verify(VerifyArgs),
    /// Function value, derivative (both forms) and integral over a grid.
    Table(TableArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Mittag-Leffler parameter gamma (> 0).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub gamma: f64,
    /// Mittag-Leffler parameter beta (> 0).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub beta: f64,
    /// Mittag-Leffler parameter rho (> 0).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub rho: f64,
    /// Mittag-Leffler parameter delta (> 0).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub delta: f64,
    /// Mittag-Leffler parameter p (> 0).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub p: f64,
    /// Mittag-Leffler parameter q (> 0, gamma + p >= q).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub q: f64,
}

impl ParamArgs {
    pub fn params(&self) -> Result<MLParams, CliError> {
        MLParams::new(self.gamma, self.beta, self.rho, self.delta, self.p, self.q)
            .map_err(|e| CliError::numeric("parameters", e))
    }
}

#[derive(Debug, Clone, Args)]
pub struct OrderArgs {
    /// Operator order; n < alpha <= n + 1.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Integer part of the order; inferred from --alpha when omitted.
    #[arg(long)]
    pub n: Option<u32>,
}

impl OrderArgs {
    pub fn order(&self) -> Result<Order, CliError> {
        match self.n {
            Some(n) => Order::extended(n, self.alpha),
            None => Order::from_alpha(self.alpha),
        }
        .map_err(|e| CliError::numeric("order", e))
    }
}

#[derive(Debug, Clone, Args)]
pub struct KernelArgs {
    /// Truncation index of the H kernel (>= 1).
    #[arg(long, default_value_t = 3)]
    pub trunc_i: usize,
    /// First step of the epsilon schedule; defaults to 1e-3 * t^(alpha - n).
    #[arg(long)]
    pub eps0: Option<f64>,
    /// Number of extrapolation levels (needs --eps0).
    #[arg(long, requires = "eps0")]
    pub eps_levels: Option<usize>,
}

impl KernelArgs {
    pub fn config(&self, params: MLParams, order: Order) -> Result<OperatorConfig, CliError> {
        let mut cfg = OperatorConfig::new(params, order).with_trunc(self.trunc_i);
        if let Some(eps0) = self.eps0 {
            let s = EpsilonSchedule::new(
                eps0,
                EpsilonSchedule::DEFAULT_RATIO,
                self.eps_levels.unwrap_or(EpsilonSchedule::DEFAULT_LEVELS),
            )
            .map_err(|e| CliError::numeric("epsilon schedule", e))?;
            cfg = cfg.with_schedule(s);
        }
        cfg.validate()
            .map_err(|e| CliError::numeric("operator configuration", e))?;
        Ok(cfg)
    }
}

/// Evaluation points `start:stop:count`, evenly spaced, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k + 1 == self.count {
                    self.stop
                } else {
                    self.start + step * k as f64
                }
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, count] = parts.as_slice() else {
            return Err(format!("expected start:stop:count, got '{s}'"));
        };
        let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("'{x}': {e}"));
        let (start, stop) = (num(start)?, num(stop)?);
        let count: usize = count.trim().parse().map_err(|e| format!("'{count}': {e}"))?;
        if count < 1 {
            return Err("grid count must be >= 1".into());
        }
        if !(start.is_finite() && stop.is_finite()) || stop < start {
            return Err(format!("grid needs finite start <= stop, got {start}:{stop}"));
        }
        Ok(Grid { start, stop, count })
    }
}

/// Either a single point or a grid.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct PointArgs {
    /// Single evaluation point.
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
    /// Evaluation grid start:stop:count.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<Grid>,
}

impl PointArgs {
    pub fn points(&self) -> Vec<f64> {
        match (self.t, self.grid) {
            (Some(t), _) => vec![t],
            (None, Some(g)) => g.points(),
            (None, None) => unreachable!("clap enforces one of --t and --grid"),
        }
    }
}

#[derive(Debug, Args)]
pub struct MlArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Single argument.
    #[arg(
        long,
        allow_negative_numbers = true,
        required_unless_present = "grid",
        conflicts_with = "grid"
    )]
    pub z: Option<f64>,
    /// Argument grid start:stop:count.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<Grid>,
    /// Relative tolerance of the adaptive series.
    #[arg(long, default_value_t = 1e-15)]
    pub tol: f64,
    /// Sum exactly the terms k = 0..=i instead of the adaptive series.
    #[arg(long, conflicts_with = "tol")]
    pub trunc_i: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Limit,
    Both,
}

#[derive(Debug, Args)]
pub struct DerivArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub order: OrderArgs,
    #[command(flatten)]
    pub kernel: KernelArgs,
    #[command(flatten)]
    pub point: PointArgs,
    /// Expression in t.
    #[arg(long = "fn")]
    pub expr: String,
    /// Closed form, extrapolated limit definition, or both side by side.
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    pub method: Method,
    /// Relative agreement tolerance for --method both.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct IntegralArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Integral order, 0 < alpha <= 1.
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[command(flatten)]
    pub point: PointArgs,
    /// Expression in t.
    #[arg(long = "fn")]
    pub expr: String,
    /// Lower limit.
    #[arg(long, default_value_t = 0.0)]
    pub a: f64,
    /// Absolute quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("which").required(true).multiple(false).args(["rule", "all", "list"])))]
pub struct VerifyArgs {
    /// Rule name, e.g. ftc.
    #[arg(long)]
    pub rule: Option<String>,
    /// Every rule.
    #[arg(long)]
    pub all: bool,
    /// Tolerance override for every selected rule.
    #[arg(long)]
    pub tol: Option<f64>,
    /// List the rule names and exit.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub order: OrderArgs,
    #[command(flatten)]
    pub kernel: KernelArgs,
    /// Expression in t.
    #[arg(long = "fn")]
    pub expr: String,
    /// Grid start:stop:count; start must be > 0.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Grid,
    /// Lower integration limit.
    #[arg(long, default_value_t = 0.0)]
    pub a: f64,
    /// Absolute quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

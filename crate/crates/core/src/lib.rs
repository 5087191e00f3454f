//! Truncated V-fractional derivative, V-fractional integral and the
//! six-parameter Mittag-Leffler family, with an executable verifier for the
//! calculus rules these operators satisfy.
//!
//! Module map:
//!
//! - [`special_functions`]: gamma, generalized Pochhammer symbol, the
//!   (truncated) Mittag-Leffler family and the `H` kernel.
//! - [`numerics`]: Richardson extrapolation, adaptive Simpson quadrature,
//!   bracketed root finding.
//! - [`expr`]: expression parser, evaluator and symbolic differentiation.
//! - [`function`]: [`FnSpec`], the function carrier used by the operators.
//! - [`v_operator`]: the derivative (closed form, limit form, n-th order,
//!   order composition, Mittag-Leffler formulas).
//! - [`v_integral`]: the integral, its composition law, the Mittag-Leffler
//!   integral and the Riemann-Liouville power formulas.
//! - [`verifier`]: residual checks and witness search for every rule.

// Checks are written as !(x > 0.0) so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod expr;
pub mod function;
pub mod numerics;
pub mod special_functions;
pub mod v_integral;
pub mod v_operator;
pub mod verifier;

pub use error::{Error, Result};
pub use expr::Expr;
pub use function::{Catalog, FnSpec};
pub use numerics::{EpsilonSchedule, QuadratureResult};
pub use special_functions::{MLParams, TruncationSpec};
pub use v_integral::IntervalSpec;
pub use v_operator::{DerivativeSource, OperatorConfig, Order};
pub use verifier::{verify, Case, RuleId, VerificationReport};

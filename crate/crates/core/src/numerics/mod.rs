//! Numerical kernels shared by the operators and the verifier.

mod extrapolation;
mod quadrature;
mod roots;

pub use extrapolation::{central_derivative, extrapolated_limit, EpsilonSchedule, Extrapolated};
pub use quadrature::{adaptive_quad, weighted_quad, QuadratureResult, MAX_DEPTH};
pub use roots::{find_root_bracketed, find_root_scan, sign_change_brackets, SCAN_CELLS};

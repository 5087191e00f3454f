//! Gamma function, generalized Pochhammer symbol and the Mittag-Leffler
//! family from one to six parameters, full and truncated.

mod gamma;
mod mittag_leffler;
mod params;
mod series;

pub use gamma::{factorial, gamma, ln_gamma, log_gamma};
pub use mittag_leffler::{gen_pochhammer, h_eval, h_terms, ml_eval, ml_five, ml_four, ml_one, ml_three, ml_two};
pub use params::{MLParams, TruncationSpec};
pub use series::{sum_series, NeumaierSum};

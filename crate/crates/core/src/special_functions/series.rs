use crate::error::{Error, Result};

use super::params::TruncationSpec;

/// Compensated (Neumaier) running sum.
#[derive(Debug, Default, Clone, Copy)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Sums `term(k)` for k = 0, 1, … under the given truncation rule.
///
/// `z` is the series argument; it is only used for the adaptive-mode range
/// guard and for error reporting.
pub fn sum_series<F>(mut term: F, trunc: TruncationSpec, z: f64) -> Result<f64>
where
    F: FnMut(usize) -> Result<f64>,
{
    trunc.validate()?;
    let mut acc = NeumaierSum::default();
    match trunc {
        TruncationSpec::Fixed(i) => {
            for k in 0..=i {
                acc.add(term(k)?);
            }
            let v = acc.value();
            if !v.is_finite() {
                return Err(Error::Overflow(format!("partial sum with {} terms at z = {z}", i + 1)));
            }
            Ok(v)
        }
        TruncationSpec::Adaptive { tol, k_max, z_max } => {
            if z.abs() > z_max {
                return Err(Error::OutOfRange { z, z_max });
            }
            let mut quiet = 0;
            let mut prev = f64::NAN;
            for k in 0..=k_max {
                let t = term(k)?;
                acc.add(t);
                let s = acc.value();
                if !s.is_finite() {
                    return Err(Error::NonConvergence { terms: k + 1, z });
                }
                // Geometric tail bound from the last term ratio; a slowly
                // decaying series can stay far from its limit after a small term.
                let ratio = (t / prev).abs();
                let tail = if ratio < 1.0 {
                    t.abs() * ratio / (1.0 - ratio)
                } else {
                    0.0
                };
                prev = t;
                let bound = tol * s.abs().max(1.0);
                if t.abs() < bound && tail < bound {
                    quiet += 1;
                    if quiet == 3 {
                        return Ok(s);
                    }
                } else {
                    quiet = 0;
                }
            }
            Err(Error::NonConvergence { terms: k_max + 1, z })
        }
    }
}

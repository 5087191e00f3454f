use crate::error::{Error, Result};

/// Cells in the sign-change pre-scan.
pub const SCAN_CELLS: usize = 256;

/// Bisection on a bracket with g(lo)·g(hi) ≤ 0.
///
/// Returns x with |g(x)| ≤ tol or with the final bracket no wider than tol.
pub fn find_root_bracketed<G>(mut g: G, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    G: FnMut(f64) -> Result<f64>,
{
    if !(tol > 0.0) || !(lo <= hi) {
        return Err(Error::InvalidParameter(format!(
            "bisection needs lo <= hi and tol > 0 (lo = {lo}, hi = {hi}, tol = {tol})"
        )));
    }
    let (mut lo, mut hi) = (lo, hi);
    let mut glo = g(lo)?;
    let ghi = g(hi)?;
    if glo == 0.0 {
        return Ok(lo);
    }
    if ghi == 0.0 {
        return Ok(hi);
    }
    if glo.signum() == ghi.signum() || glo.is_nan() || ghi.is_nan() {
        return Err(Error::NoBracket { lo, hi });
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let gm = g(mid)?;
        if gm == 0.0 || gm.abs() <= tol {
            return Ok(mid);
        }
        if gm.signum() == glo.signum() {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
}

/// Brackets of every sign change of g on a uniform grid of `cells` cells.
/// A grid node where g vanishes exactly is returned as the bracket (x, x).
pub fn sign_change_brackets<G>(mut g: G, lo: f64, hi: f64, cells: usize) -> Result<Vec<(f64, f64)>>
where
    G: FnMut(f64) -> Result<f64>,
{
    if !(lo < hi) || cells == 0 {
        return Err(Error::InvalidParameter(format!(
            "scan needs lo < hi and cells > 0 (lo = {lo}, hi = {hi})"
        )));
    }
    let h = (hi - lo) / cells as f64;
    let node = |j: usize| if j == cells { hi } else { lo + h * j as f64 };
    let mut out = Vec::new();
    let mut x0 = lo;
    let mut g0 = g(x0)?;
    if g0 == 0.0 {
        out.push((x0, x0));
    }
    for j in 1..=cells {
        let x1 = node(j);
        let g1 = g(x1)?;
        if g1 == 0.0 {
            out.push((x1, x1));
        } else if g0 != 0.0 && g0.signum() != g1.signum() {
            out.push((x0, x1));
        }
        x0 = x1;
        g0 = g1;
    }
    Ok(out)
}

/// Grid pre-scan with [`SCAN_CELLS`] cells followed by bisection on the
/// leftmost sign change, for callers without a bracket.
pub fn find_root_scan<G>(mut g: G, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    G: FnMut(f64) -> Result<f64>,
{
    let brackets = sign_change_brackets(&mut g, lo, hi, SCAN_CELLS)?;
    match brackets.first() {
        Some(&(a, b)) if a == b => Ok(a),
        Some(&(a, b)) => find_root_bracketed(g, a, b, tol),
        None => Err(Error::NoBracket { lo, hi }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let x = find_root_bracketed(|x| Ok(x * x - 2.0), 1.0, 2.0, 1e-12).unwrap();
        assert!((x - 2f64.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn odd_function_at_origin() {
        let x = find_root_bracketed(Ok, -1.0, 1.0, 1e-12).unwrap();
        assert_eq!(x, 0.0);
    }

    #[test]
    fn closed_form_inversion() {
        // 2x^1.5 = 7.5 ⇔ x = 3.75^(2/3)
        let x = find_root_bracketed(|x: f64| Ok(2.0 * x.powf(1.5) - 7.5), 1.0, 4.0, 1e-12).unwrap();
        assert!((x - 3.75f64.powf(2.0 / 3.0)).abs() < 1e-6);
        assert!((x - 2.413723).abs() < 1e-6);
    }

    #[test]
    fn no_bracket() {
        let err = find_root_bracketed(|x| Ok(x * x + 1.0), -1.0, 1.0, 1e-10).unwrap_err();
        assert_eq!(err, Error::NoBracket { lo: -1.0, hi: 1.0 });
        assert!(find_root_scan(|x| Ok(x * x + 1.0), -1.0, 1.0, 1e-10).is_err());
    }

    #[test]
    fn scan_finds_interior_root() {
        let x = find_root_scan(|x: f64| Ok(x.cos()), 0.0, 3.0, 1e-13).unwrap();
        assert!((x - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        // exact zero on a grid node
        let x = find_root_scan(|x| Ok((x - 1.0) * (x - 3.0) * 0.0 + (x - 2.0)), 1.0, 3.0, 1e-13).unwrap();
        assert_eq!(x, 2.0);
    }
}

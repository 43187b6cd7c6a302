//! Sign-change scanning with bisection refinement.
//!
//! Only roots where the function changes sign between grid points are
//! found; tangential roots are out of reach of a bracketing method.

use crate::tol;

/// Bisect a bracket `[lo, hi]` with `f(lo) f(hi) < 0` until
/// `|f| <= 1e-10` or 80 halvings.
pub fn bisect(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = f(lo);
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..tol::ROOT_MAX_ITER {
        mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid.abs() <= tol::ROOT_RESIDUAL || mid <= lo || mid >= hi {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    mid
}

/// Roots of `f` between consecutive grid values, refined by bisection.
///
/// Non-finite values break brackets. An exact zero at an interior grid
/// point counts when its neighbours have opposite signs.
pub fn find_roots(mut f: impl FnMut(f64) -> f64, grid: &[f64]) -> Vec<f64> {
    let values: Vec<f64> = grid.iter().map(|&t| f(t)).collect();
    scan(&mut f, grid, &values, None)
}

/// As [`find_roots`], for a periodic function sampled on a grid that omits
/// the right endpoint `grid[0] + period`. Roots are reported in
/// `[grid[0], grid[0] + period)`.
pub fn find_roots_periodic(mut f: impl FnMut(f64) -> f64, grid: &[f64], period: f64) -> Vec<f64> {
    let values: Vec<f64> = grid.iter().map(|&t| f(t)).collect();
    scan(&mut f, grid, &values, Some(period))
}

fn scan(
    f: &mut impl FnMut(f64) -> f64,
    grid: &[f64],
    values: &[f64],
    period: Option<f64>,
) -> Vec<f64> {
    let n = grid.len();
    if n < 2 {
        return vec![];
    }
    let start = grid[0];
    let pairs = if period.is_some() { n } else { n - 1 };
    let at = |i: usize| -> (f64, f64) {
        match period {
            Some(p) if i >= n => (grid[i - n] + p, values[i - n]),
            _ => (grid[i], values[i]),
        }
    };
    let mut roots = Vec::new();
    for i in 0..pairs {
        let (ta, fa) = at(i);
        let (tb, fb) = at(i + 1);
        if !(fa.is_finite() && fb.is_finite()) {
            continue;
        }
        if fa * fb < 0.0 {
            roots.push(bisect(&mut *f, ta, tb));
        } else if fb == 0.0 {
            let fc = match period {
                Some(_) => values[(i + 2) % n],
                None if i + 2 < n => values[i + 2],
                None => continue,
            };
            if fa * fc < 0.0 {
                roots.push(tb);
            }
        }
    }
    if let Some(p) = period {
        for r in roots.iter_mut() {
            if *r >= start + p - 1e-12 * p {
                *r -= p;
            }
        }
        roots.sort_by(f64::total_cmp);
    }
    roots
}

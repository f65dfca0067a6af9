//! Grid search for `g_K(p)` on small CRGs, independent of the solvers.
//!
//! Weights range over the compositions of `r` into `k` parts. For the last
//! two coordinates the objective is a quadratic in one integer variable, so
//! its discrete minimum is found in O(1) from the vertex and the endpoints.

use crate::crg::Crg;
use crate::error::{Error, Result};
use crate::scalar::Probability;

/// Largest order the grid oracle accepts.
pub const MAX_GRID_ORDER: usize = 6;

/// Bound on `grid_g - g` for a grid of resolution `r`: the true minimizer
/// is within `(k-1)/r` in l1 of a grid point, and the gradient of
/// `u^T M u` is at most `2 max|M|` in sup norm.
pub fn grid_error_bound(crg: &Crg, p: f64, resolution: usize) -> f64 {
    let k = crg.order() as f64;
    let m = crg.weighted_matrix(&Probability::new(p).expect("valid probability"));
    let max = m.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
    4.0 * (k - 1.0) * max / resolution as f64
}

/// Minimum of `u^T M u` over `u` with coordinates in `{0, 1/r, .., 1}`.
/// The value is an upper bound on `g_K(p)` (up to float rounding).
pub fn grid_g(crg: &Crg, p: f64, resolution: usize) -> Result<f64> {
    let k = crg.order();
    if k > MAX_GRID_ORDER {
        return Err(Error::TooLarge { order: k, limit: MAX_GRID_ORDER });
    }
    if resolution == 0 {
        return Err(Error::Parameter("grid resolution must be positive".into()));
    }
    let m = crg.weighted_matrix(&Probability::new(p)?);
    let r = resolution as i64;
    // work with integer counts c, u = c / r
    let mut counts = vec![0i64; k];
    let mut best = f64::INFINITY;
    enumerate(&m, &mut counts, 0, r, &mut best);
    Ok(best / (r * r) as f64)
}

fn enumerate(m: &[Vec<f64>], counts: &mut [i64], pos: usize, left: i64, best: &mut f64) {
    let k = counts.len();
    if k == 1 {
        counts[0] = left;
        *best = best.min(m[0][0] * (left * left) as f64);
        return;
    }
    if pos == k - 2 {
        *best = best.min(last_two(m, counts, pos, left));
        return;
    }
    for c in 0..=left {
        counts[pos] = c;
        enumerate(m, counts, pos + 1, left - c, best);
    }
    counts[pos] = 0;
}

/// Minimizes over `counts[a] = s`, `counts[a+1] = left - s`, `s` integer.
fn last_two(m: &[Vec<f64>], counts: &[i64], a: usize, left: i64) -> f64 {
    let b = a + 1;
    let fixed = &counts[..a];
    let mut base = 0.0;
    let (mut la, mut lb) = (0.0, 0.0);
    for (i, &ci) in fixed.iter().enumerate() {
        for (j, &cj) in fixed.iter().enumerate() {
            base += m[i][j] * (ci * cj) as f64;
        }
        la += m[i][a] * ci as f64;
        lb += m[i][b] * ci as f64;
    }
    let n = left as f64;
    // value(s) = base + 2 la s + 2 lb (n - s) + maa s² + 2 mab s (n - s) + mbb (n - s)²
    let value = |s: f64| {
        let u = n - s;
        base + 2.0 * la * s + 2.0 * lb * u + m[a][a] * s * s + 2.0 * m[a][b] * s * u + m[b][b] * u * u
    };
    let quad = m[a][a] - 2.0 * m[a][b] + m[b][b];
    let lin = 2.0 * la - 2.0 * lb + 2.0 * m[a][b] * n - 2.0 * m[b][b] * n;
    let mut best = value(0.0).min(value(n));
    if quad > 0.0 {
        let s = (-lin / (2.0 * quad)).clamp(0.0, n);
        best = best.min(value(s.floor())).min(value(s.ceil()));
    }
    best
}

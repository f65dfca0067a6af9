//! Lower bounds on `ed(p)` for `p < 1/2`.
//!
//! The general bound `p - c[3p - 2 + 2√(1 - 3p + (t+1)p²)]` with
//! `c = (t-1)/(4t-5)` applies to the p-core CRGs that can beat both trivial
//! constructions; a valid bound on `ed(p)` itself is therefore the minimum
//! of it and the two trivial functions.

use super::exact::exact_value;
use super::Value;
use crate::error::{param, Result};
use crate::scalar::{rat, rat_int, rational_sqrt, Scalar};
use crate::Rational;

/// `1 - 3p + (t+1)p²`; positive for every `p` when `t >= 2`.
pub fn genlb_radicand(t: usize, p: &Rational) -> Rational {
    rat_int(1) - rat_int(3) * p + rat_int(t as i64 + 1) * p * p
}

fn genlb_coefficient(t: usize) -> Rational {
    rat(t as i64 - 1, 4 * t as i64 - 5)
}

/// The general lower bound, exact when the radicand is a rational square.
pub fn lower_genlb(t: usize, p: &Rational) -> Result<Value> {
    if t < 3 {
        return Err(param(format!("the general lower bound needs t >= 3, got {t}")));
    }
    if *p < rat_int(0) || *p >= rat(1, 2) {
        return Err(param(format!("the general lower bound needs 0 <= p < 1/2, got {p}")));
    }
    let c = genlb_coefficient(t);
    Ok(match rational_sqrt(&genlb_radicand(t, p)) {
        Some(root) => Value::Exact(p - c * (rat_int(3) * p - rat_int(2) + rat_int(2) * root)),
        None => Value::Approx(lower_genlb_f64(t, p.to_f64())),
    })
}

/// The same expression in floating point, without domain checks.
pub fn lower_genlb_f64(t: usize, p: f64) -> f64 {
    let t = t as f64;
    let root = (1.0 - 3.0 * p + (t + 1.0) * p * p).sqrt();
    p - (t - 1.0) / (4.0 * t - 5.0) * (3.0 * p - 2.0 + 2.0 * root)
}

/// `(2p + 6 - 6√(1 - 3p + 5p²))/11`, the `t = 4` case written out.
pub fn lower_k24_conclusion(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 0.5) {
        return Err(param(format!("needs 0 < p < 1/2, got {p}")));
    }
    Ok((2.0 * p + 6.0 - 6.0 * (1.0 - 3.0 * p + 5.0 * p * p).sqrt()) / 11.0)
}

/// `(p(t-2) + 2(t-1))/(4t-5) - (2(t-1)/(4t-5))√(1 - 3p + (t+1)p²)`, the
/// best value a strongly regular construction could reach at `p`.
pub fn srg_theoretical_min(t: usize, p: f64) -> f64 {
    let tf = t as f64;
    let root = (1.0 - 3.0 * p + (tf + 1.0) * p * p).sqrt();
    (p * (tf - 2.0) + 2.0 * (tf - 1.0)) / (4.0 * tf - 5.0) - 2.0 * (tf - 1.0) / (4.0 * tf - 5.0) * root
}

/// Pointwise lower bound on `ed(p)`: the exact value where known, otherwise
/// `min{p(1-p), (1-p)/(t-1), general bound}`.
pub fn lower_bound(t: usize, p: &Rational) -> Result<Value> {
    if let Some(v) = exact_value(t, p) {
        return Ok(Value::Exact(v));
    }
    let trivial = {
        let a = p * (rat_int(1) - p);
        let b = (rat_int(1) - p) / rat_int(t as i64 - 1);
        if a < b {
            a
        } else {
            b
        }
    };
    Ok(match lower_genlb(t, p)? {
        Value::Exact(g) => Value::Exact(if g < trivial { g } else { trivial }),
        Value::Approx(g) => Value::Approx(g.min(trivial.to_f64())),
    })
}

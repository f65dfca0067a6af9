//! Values of `ed(p)` that are known exactly.

use super::Line;
use crate::error::{param, Result};
use crate::scalar::{rat, rat_int};
use crate::Rational;

fn parabola(p: &Rational) -> Rational {
    p * (rat_int(1) - p)
}

fn min_of(values: impl IntoIterator<Item = Rational>) -> Rational {
    values.into_iter().reduce(|a, b| if b < a { b } else { a }).expect("nonempty")
}

fn check_probability(p: &Rational) -> Result<()> {
    if *p < rat_int(0) || *p > rat_int(1) {
        return Err(crate::error::Error::Probability(p.to_string()));
    }
    Ok(())
}

/// The full function for `t = 3` and `t = 4`.
pub fn exact_ed(t: usize, p: &Rational) -> Result<Rational> {
    check_probability(p)?;
    match t {
        3 => Ok(min_of([parabola(p), Line::ratio(1, -1, 2).eval(p)])),
        4 => Ok(min_of([parabola(p), Line::ratio(1, 7, 15).eval(p), Line::ratio(1, -1, 3).eval(p)])),
        _ => Err(param(format!("the complete function is known for t = 3, 4 only, got {t}"))),
    }
}

/// `(1-p)/(t-1)`, exact for `t >= 4` and `p >= 2/(t+1)`.
pub fn exact_tail(t: usize, p: &Rational) -> Result<Rational> {
    check_probability(p)?;
    if t < 4 {
        return Err(param(format!("the tail formula needs t >= 4, got {t}")));
    }
    let threshold = tail_start(t);
    if *p < threshold {
        return Err(param(format!("the tail formula needs p >= {threshold}, got {p}")));
    }
    Ok(Line::ratio(1, -1, t as i64 - 1).eval(p))
}

/// `2/(t+1)`.
pub fn tail_start(t: usize) -> Rational {
    rat(2, t as i64 + 1)
}

/// `(2t-1)/(t(t+1))`, where the general lower bound peaks at `1/(t+1)`.
pub fn odd_plateau_start(t: usize) -> Rational {
    let t = t as i64;
    rat(2 * t - 1, t * (t + 1))
}

/// Left end of the region on which `ed(p)` is known exactly; the region
/// always extends to `p = 1`.
pub fn exact_region_start(t: usize) -> Rational {
    match t {
        3 | 4 => rat_int(0),
        _ if t % 2 == 1 => odd_plateau_start(t),
        _ => tail_start(t),
    }
}

/// `ed(p)` where it is known exactly, `None` elsewhere.
pub fn exact_value(t: usize, p: &Rational) -> Option<Rational> {
    if t == 3 || t == 4 {
        return exact_ed(t, p).ok();
    }
    if t < 3 {
        return None;
    }
    if *p >= tail_start(t) {
        return exact_tail(t, p).ok();
    }
    (t % 2 == 1 && *p >= odd_plateau_start(t)).then(|| rat(1, t as i64 + 1))
}

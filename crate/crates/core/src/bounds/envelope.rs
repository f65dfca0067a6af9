//! Pointwise envelopes of the upper and lower bounds.
//!
//! `ed(p)` is concave, so any chord between two valid lower-bound points is
//! again a lower bound; the lower envelope is the upper concave hull of the
//! sampled pointwise bound.

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::exact::{exact_value, odd_plateau_start, tail_start};
use super::furedi::{furedi_curve, furedi_q_list};
use super::lower::lower_bound;
use super::{BoundCurve, Line, Shape, Source, Value};
use crate::constructions::registry::{srg_f_line, BUILTIN_SRGS};
use crate::constructions::ConstructionSpec;
use crate::error::{param, Result};
use crate::scalar::{rat, rational_sqrt, Scalar};
use crate::Rational;

use super::catalog::chart;

/// Grid used for the concave hull of the lower bound.
pub const HULL_RESOLUTION: usize = 2001;

/// Every upper bound known for `t`: the trivial CRGs, the cycle square,
/// the matching for odd `t`, eligible SRG lines (built-in or tabulated), and
/// Füredi lines (feasible `q` for `5 <= t <= 8`, any `q` that beats `p(1-p)`
/// somewhere for `t >= 9`).
pub fn upper_curves(t: usize) -> Result<Vec<BoundCurve>> {
    if t < 3 {
        return Err(param(format!("envelopes are defined for t >= 3, got {t}")));
    }
    let ti = t as i64;
    let mut out = vec![
        BoundCurve::parabola(),
        BoundCurve::upper_line(
            format!("K(0,{})", t - 1),
            Line::ratio(1, -1, ti - 1),
            Source::Trivial,
            Some(ConstructionSpec::GrayClique { w: 0, b: t - 1 }),
        ),
        BoundCurve::upper_line(
            format!("cycle C({},2)", t + 5),
            Line::ratio(1, 3, ti + 5),
            Source::CyclePower,
            Some(ConstructionSpec::CyclePower { k: t + 5, r: 2 }),
        ),
    ];
    if t % 2 == 1 {
        out.push(BoundCurve::upper_line(
            "matching",
            Line::ratio(1, 0, ti + 1),
            Source::Matching,
            Some(ConstructionSpec::Matching { t }),
        ));
    }
    let mut srgs: Vec<(crate::constructions::SrgParams, Option<ConstructionSpec>)> = BUILTIN_SRGS
        .iter()
        .filter_map(|s| s.srg_params().map(|p| (p, Some(s.clone()))))
        .collect();
    for r in chart() {
        if !srgs.iter().any(|(p, _)| *p == r.params) {
            srgs.push((r.params, None));
        }
    }
    for (params, spec) in srgs {
        if params.eligible_for(t) {
            out.push(BoundCurve::upper_line(format!("srg {params}"), srg_f_line(params), Source::Srg(params), spec));
        }
    }
    let qs = furedi_q_list(t)?;
    for q in qs {
        out.push(furedi_curve(q, t)?);
    }
    Ok(out)
}

/// Minimum over `curves` at `p` and the index of the first minimizer.
pub fn upper_min(curves: &[BoundCurve], p: &Rational) -> (Rational, usize) {
    let mut best: Option<(Rational, usize)> = None;
    for (i, c) in curves.iter().enumerate() {
        let v = c.eval(p);
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, i));
        }
    }
    best.expect("at least one curve")
}

fn upper_min_f64(curves: &[BoundCurve], p: f64) -> f64 {
    curves.iter().map(|c| c.eval_f64(p)).fold(f64::INFINITY, f64::min)
}

/// Upper concave hull of sampled lower-bound points, evaluated by linear
/// interpolation.
#[derive(Debug, Clone)]
pub struct LowerHull {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl LowerHull {
    /// Hull over a uniform grid, the exactness breakpoints, and `extra`.
    pub fn build(t: usize, extra: &[Rational]) -> Result<Self> {
        let mut ps: Vec<Rational> =
            (0..HULL_RESOLUTION).map(|i| rat(i as i64, HULL_RESOLUTION as i64 - 1)).collect();
        ps.extend([odd_plateau_start(t), tail_start(t), rat(1, 2)]);
        ps.extend(extra.iter().cloned());
        ps.retain(|p| *p >= Rational::zero() && *p <= Rational::one());
        ps.sort();
        ps.dedup();
        let points: Vec<(f64, f64)> = ps
            .par_iter()
            .map(|p| lower_bound(t, p).map(|v| (p.to_f64(), v.to_f64())))
            .collect::<Result<_>>()?;
        let mut hull: Vec<(f64, f64)> = Vec::new();
        for pt in points {
            while hull.len() >= 2 {
                let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                let cross = (a.0 - o.0) * (pt.1 - o.1) - (a.1 - o.1) * (pt.0 - o.0);
                if cross >= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        Ok(LowerHull { xs: hull.iter().map(|h| h.0).collect(), ys: hull.iter().map(|h| h.1).collect() })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let i = self.xs.partition_point(|&v| v < x);
        if i < self.xs.len() && self.xs[i] == x {
            return self.ys[i];
        }
        if i == 0 {
            return self.ys[0];
        }
        if i == self.xs.len() {
            return self.ys[i - 1];
        }
        let (x0, x1, y0, y1) = (self.xs[i - 1], self.xs[i], self.ys[i - 1], self.ys[i]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }
}

fn lower_at(t: usize, p: &Rational, hull: &LowerHull) -> Result<Value> {
    if let Some(v) = exact_value(t, p) {
        return Ok(Value::Exact(v));
    }
    let base = lower_bound(t, p)?;
    let chord = hull.eval(p.to_f64());
    Ok(if chord > base.to_f64() { Value::Approx(chord) } else { base })
}

fn is_exact(t: usize, p: &Rational, upper: &Rational, lower: &Value) -> bool {
    exact_value(t, p).is_some() || (upper.to_f64() - lower.to_f64()).abs() <= 1e-9
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsAt {
    pub t: usize,
    pub p: Rational,
    pub upper: Rational,
    pub lower: Value,
    pub exact: bool,
    pub active_upper: String,
    pub active_formula: String,
}

/// Best known upper and lower bound at a single `p`.
pub fn bounds_at(t: usize, p: &Rational) -> Result<BoundsAt> {
    if *p < Rational::zero() || *p > Rational::one() {
        return Err(crate::error::Error::Probability(p.to_string()));
    }
    let curves = upper_curves(t)?;
    let (upper, idx) = upper_min(&curves, p);
    let lower = if let Some(v) = exact_value(t, p) {
        Value::Exact(v)
    } else {
        lower_at(t, p, &LowerHull::build(t, std::slice::from_ref(p))?)?
    };
    let exact = is_exact(t, p, &upper, &lower);
    Ok(BoundsAt {
        t,
        p: p.clone(),
        upper,
        lower,
        exact,
        active_upper: curves[idx].name.clone(),
        active_formula: curves[idx].formula(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeRow {
    pub p: Rational,
    pub upper: Rational,
    pub lower: Value,
    pub exact: bool,
    pub active_upper: String,
}

/// Maximum of the upper envelope and where it is attained.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremePoint {
    /// Interval on which the upper envelope attains its maximum.
    pub p_star: (Value, Value),
    pub d_star: Value,
    /// Part of `p_star` on which the maximum is known to be `ed` itself.
    pub exact_interval: Option<(Rational, Rational)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    pub t: usize,
    pub rows: Vec<EnvelopeRow>,
    pub extreme: ExtremePoint,
    pub curves: Vec<BoundCurve>,
}

/// Samples both envelopes on `resolution` evenly spaced points of `[0, 1]`.
pub fn assemble_envelope(t: usize, resolution: usize) -> Result<Envelope> {
    assemble_envelope_on(t, &Rational::zero(), &Rational::one(), resolution)
}

/// Samples both envelopes on `samples` evenly spaced points of `[from, to]`.
/// The extreme point is always taken over all of `[0, 1]`.
pub fn assemble_envelope_on(t: usize, from: &Rational, to: &Rational, samples: usize) -> Result<Envelope> {
    if samples < 2 {
        return Err(param("need at least 2 samples"));
    }
    if *from < Rational::zero() || *to > Rational::one() || from >= to {
        return Err(param(format!("need 0 <= from < to <= 1, got [{from}, {to}]")));
    }
    let curves = upper_curves(t)?;
    let width = to - from;
    let grid: Vec<Rational> =
        (0..samples).map(|i| from + &width * rat(i as i64, samples as i64 - 1)).collect();
    let hull = LowerHull::build(t, &grid)?;
    let rows = grid
        .into_par_iter()
        .map(|p| {
            let (upper, idx) = upper_min(&curves, &p);
            let lower = lower_at(t, &p, &hull)?;
            let exact = is_exact(t, &p, &upper, &lower);
            Ok(EnvelopeRow { p, upper, lower, exact, active_upper: curves[idx].name.clone() })
        })
        .collect::<Result<Vec<_>>>()?;
    let extreme = extreme_point(t, &curves);
    Ok(Envelope { t, rows, extreme, curves })
}

/// Breakpoints of the upper envelope: endpoints, `1/2`, line crossings, and
/// crossings of lines with `p(1-p)` (exact when rational).
fn breakpoints(curves: &[BoundCurve]) -> Vec<Value> {
    let mut out: Vec<Value> = vec![Value::Exact(Rational::zero()), Value::Exact(Rational::one()), Value::Exact(rat(1, 2))];
    let lines: Vec<&Line> = curves.iter().filter_map(|c| c.line()).collect();
    let in_unit = |x: &Rational| *x >= Rational::zero() && *x <= Rational::one();
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            if let Some(x) = a.intersection(b) {
                if in_unit(&x) {
                    out.push(Value::Exact(x));
                }
            }
        }
    }
    if curves.iter().any(|c| matches!(c.shape, Shape::Parabola)) {
        for l in &lines {
            // p² + (b-1)p + a = 0
            let b1 = &l.slope - Rational::one();
            let disc = &b1 * &b1 - Rational::from_integer(4.into()) * &l.intercept;
            if disc < Rational::zero() {
                continue;
            }
            match rational_sqrt(&disc) {
                Some(root) => {
                    for x in [(-&b1 - &root) / rat(2, 1), (-&b1 + &root) / rat(2, 1)] {
                        if in_unit(&x) {
                            out.push(Value::Exact(x));
                        }
                    }
                }
                None => {
                    let (bf, r) = (b1.to_f64(), disc.to_f64().sqrt());
                    for x in [(-bf - r) / 2.0, (-bf + r) / 2.0] {
                        if (0.0..=1.0).contains(&x) {
                            out.push(Value::Approx(x));
                        }
                    }
                }
            }
        }
    }
    out
}

fn extreme_point(t: usize, curves: &[BoundCurve]) -> ExtremePoint {
    let points = breakpoints(curves);
    let values: Vec<(Value, Value)> = points
        .iter()
        .map(|p| match p {
            Value::Exact(x) => (p.clone(), Value::Exact(upper_min(curves, x).0)),
            Value::Approx(x) => (p.clone(), Value::Approx(upper_min_f64(curves, *x))),
        })
        .collect();
    let exact_max = values.iter().filter_map(|(_, v)| v.exact().cloned()).max().expect("endpoints are exact");
    let approx_max = values.iter().map(|(_, v)| v.to_f64()).fold(f64::NEG_INFINITY, f64::max);
    let d_star =
        if approx_max > exact_max.to_f64() + 1e-12 { Value::Approx(approx_max) } else { Value::Exact(exact_max.clone()) };
    let attains = |v: &Value| match (&d_star, v) {
        (Value::Exact(d), Value::Exact(x)) => x == d,
        _ => (v.to_f64() - d_star.to_f64()).abs() <= 1e-12,
    };
    let mut hits: Vec<&Value> = values.iter().filter(|(_, v)| attains(v)).map(|(p, _)| p).collect();
    hits.sort_by(|a, b| a.to_f64().partial_cmp(&b.to_f64()).expect("finite"));
    let lo = (*hits.first().expect("maximum is attained")).clone();
    let hi = (*hits.last().expect("maximum is attained")).clone();

    let exact_interval = match (&d_star, &lo, &hi) {
        (Value::Exact(d), _, Value::Exact(h)) => {
            let start = super::exact::exact_region_start(t);
            let from = match &lo {
                Value::Exact(l) if *l >= start => l.clone(),
                _ => start,
            };
            (from <= *h && exact_value(t, &from).as_ref() == Some(d) && exact_value(t, h).as_ref() == Some(d))
                .then(|| (from, h.clone()))
        }
        _ => None,
    };
    ExtremePoint { p_star: (lo, hi), d_star, exact_interval }
}

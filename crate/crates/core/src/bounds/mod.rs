//! Closed-form bounds on `ed(p)` for `Forb(K_{2,t})` and their assembly into
//! upper and lower envelopes.

pub mod catalog;
pub mod envelope;
pub mod exact;
pub mod furedi;
pub mod lower;
pub mod srg;

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::constructions::{ConstructionSpec, SrgParams};
use crate::scalar::{rat, rat_int, Scalar};
use crate::Rational;

pub use catalog::{chart, derive_thm_sum, thm_sum_catalog, ChartRow};
pub use envelope::{assemble_envelope, assemble_envelope_on, bounds_at, upper_curves, BoundsAt, Envelope, EnvelopeRow, ExtremePoint};
pub use exact::{exact_ed, exact_tail};
pub use furedi::{
    furedi_feasible_q, furedi_improvement_interval, furedi_improvement_vs_envelope, furedi_line, furedi_monotone_check,
    furedi_q_list,
};
pub use lower::{lower_bound, lower_genlb, lower_genlb_f64, lower_k24_conclusion, srg_theoretical_min};
pub use srg::{srg_equality_line, srg_feasible, srg_line, srg_tangency_p, tangency_check, EqualityLine, Tangency};

/// A bound value: exact when every step was rational, a float otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Rational),
    Approx(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => Scalar::to_f64(q),
            Value::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(q) => Some(q),
            Value::Approx(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) => write!(f, "{q}"),
            Value::Approx(x) => write!(f, "{x:.17}"),
        }
    }
}

/// `intercept + slope·p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line {
    pub intercept: Rational,
    pub slope: Rational,
}

impl Line {
    pub fn new(intercept: Rational, slope: Rational) -> Self {
        Line { intercept, slope }
    }

    /// `(a + b·p) / c`.
    pub fn ratio(a: i64, b: i64, c: i64) -> Self {
        Line { intercept: rat(a, c), slope: rat(b, c) }
    }

    pub fn constant(value: Rational) -> Self {
        Line { intercept: value, slope: Rational::zero() }
    }

    pub fn eval(&self, p: &Rational) -> Rational {
        &self.intercept + &self.slope * p
    }

    pub fn eval_f64(&self, p: f64) -> f64 {
        Scalar::to_f64(&self.intercept) + Scalar::to_f64(&self.slope) * p
    }

    /// Abscissa where the two lines meet, if they are not parallel.
    pub fn intersection(&self, other: &Line) -> Option<Rational> {
        let ds = &self.slope - &other.slope;
        (!ds.is_zero()).then(|| (&other.intercept - &self.intercept) / ds)
    }

    /// Canonical text `(A+Bp)/D` with integer `A`, `B`, `D`.
    pub fn formula(&self) -> String {
        let den = self.intercept.denom().lcm(self.slope.denom());
        let a = (&self.intercept * Rational::from_integer(den.clone())).to_integer();
        let b = (&self.slope * Rational::from_integer(den.clone())).to_integer();
        let p_term = |coef: &num_bigint::BigInt| {
            if coef.abs().is_one() {
                "p".to_string()
            } else {
                format!("{}p", coef.abs())
            }
        };
        let numer = match (a.is_zero(), b.is_zero()) {
            (_, true) => a.to_string(),
            (true, false) => format!("{}{}", if b.is_negative() { "-" } else { "" }, p_term(&b)),
            (false, false) => format!("{}{}{}", a, if b.is_negative() { "-" } else { "+" }, p_term(&b)),
        };
        if den.is_one() {
            numer
        } else if a.is_zero() || b.is_zero() {
            format!("{numer}/{den}")
        } else {
            format!("({numer})/{den}")
        }
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.formula())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Upper,
    Lower,
    Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Shape {
    Line(Line),
    /// `p(1-p)`.
    Parabola,
}

/// Where a curve comes from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Source {
    /// `K(1,1)` or `K(0, t-1)`.
    Trivial,
    CyclePower,
    Matching,
    Srg(SrgParams),
    Furedi { q: u32 },
    /// An equality line with no verified SRG behind it.
    Hypothetical,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Trivial => f.write_str("trivial"),
            Source::CyclePower => f.write_str("cycle power"),
            Source::Matching => f.write_str("matching"),
            Source::Srg(params) => write!(f, "srg {params}"),
            Source::Furedi { q } => write!(f, "furedi q={q}"),
            Source::Hypothetical => f.write_str("hypothetical"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundCurve {
    pub name: String,
    pub side: Side,
    pub interval: (Rational, Rational),
    pub shape: Shape,
    pub source: Source,
    pub construction: Option<ConstructionSpec>,
}

impl BoundCurve {
    pub fn upper_line(name: impl Into<String>, line: Line, source: Source, construction: Option<ConstructionSpec>) -> Self {
        BoundCurve {
            name: name.into(),
            side: Side::Upper,
            interval: (Rational::zero(), Rational::one()),
            shape: Shape::Line(line),
            source,
            construction,
        }
    }

    pub fn parabola() -> Self {
        BoundCurve {
            name: "K(1,1)".into(),
            side: Side::Upper,
            interval: (Rational::zero(), Rational::one()),
            shape: Shape::Parabola,
            source: Source::Trivial,
            construction: Some(ConstructionSpec::GrayClique { w: 1, b: 1 }),
        }
    }

    pub fn eval(&self, p: &Rational) -> Rational {
        match &self.shape {
            Shape::Line(line) => line.eval(p),
            Shape::Parabola => p * (rat_int(1) - p),
        }
    }

    pub fn eval_f64(&self, p: f64) -> f64 {
        match &self.shape {
            Shape::Line(line) => line.eval_f64(p),
            Shape::Parabola => p * (1.0 - p),
        }
    }

    pub fn line(&self) -> Option<&Line> {
        match &self.shape {
            Shape::Line(line) => Some(line),
            Shape::Parabola => None,
        }
    }

    pub fn formula(&self) -> String {
        match &self.shape {
            Shape::Line(line) => line.formula(),
            Shape::Parabola => "p(1-p)".into(),
        }
    }

    pub fn contains(&self, p: &Rational) -> bool {
        *p >= self.interval.0 && *p <= self.interval.1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formulas() {
        assert_eq!(Line::ratio(1, 7, 15).formula(), "(1+7p)/15");
        assert_eq!(Line::ratio(1, -1, 4).formula(), "(1-p)/4");
        assert_eq!(Line::ratio(1, 0, 6).formula(), "1/6");
        assert_eq!(Line::ratio(4, 20, 48).formula(), "(1+5p)/12");
        assert_eq!(Line::ratio(0, 3, 4).formula(), "3p/4");
        assert_eq!(Line::ratio(1, -1, 1).formula(), "1-p");
        assert_eq!(Line::ratio(2, 6, 4).formula(), "(1+3p)/2");
    }

    #[test]
    fn intersections() {
        let a = Line::ratio(1, 7, 15);
        let b = Line::ratio(1, -1, 3);
        assert_eq!(a.intersection(&b), Some(rat(1, 3)));
        assert_eq!(a.intersection(&a), None);
        assert_eq!(BoundCurve::parabola().eval(&rat(1, 2)), rat(1, 4));
    }
}

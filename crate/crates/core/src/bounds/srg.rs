//! Strongly regular graph lines, their feasibility, and the tangency of the
//! best-case line with the general lower bound.

use num_traits::Zero;

use super::lower::{genlb_radicand, lower_genlb_f64};
use super::{BoundCurve, Line, Source, Value};
use crate::constructions::registry::{srg_f_line, BUILTIN_SRGS};
use crate::constructions::{ConstructionSpec, SrgParams};
use crate::error::{param, Error, Result};
use crate::scalar::{rat, rat_int, rational_sqrt, Scalar};
use crate::Rational;

pub fn srg_feasible(params: SrgParams) -> bool {
    params.is_feasible()
}

/// `1/k + ((k-d-2)/k) p` as an upper bound for `Forb(K_{2,t})`.
pub fn srg_line(params: SrgParams, t: usize) -> Result<BoundCurve> {
    if !params.is_feasible() {
        return Err(param(format!("{params} violates d(d-λ-1) = μ(k-d-1)")));
    }
    if !params.eligible_for(t) {
        return Err(Error::Ineligible(format!("{params} needs λ <= t-3 and μ <= t-1, t = {t}")));
    }
    let construction = BUILTIN_SRGS.iter().find(|s| s.srg_params() == Some(params)).cloned();
    Ok(BoundCurve::upper_line(format!("srg {params}"), srg_f_line(params), Source::Srg(params), construction))
}

/// Line of a hypothetical `(k, d, t-3, t-1)` SRG, where
/// `k = (t - 1 + d(d+1))/(t - 1)` is forced by the feasibility identity.
#[derive(Debug, Clone, PartialEq)]
pub struct EqualityLine {
    pub t: usize,
    pub d: usize,
    pub k: Rational,
    pub integral: bool,
    pub line: Line,
    /// A built-in generator with exactly these parameters, when one exists.
    pub realized_by: Option<ConstructionSpec>,
}

impl EqualityLine {
    pub fn hypothetical(&self) -> bool {
        self.realized_by.is_none()
    }

    pub fn curve(&self) -> BoundCurve {
        let source = match &self.realized_by {
            Some(spec) => Source::Srg(spec.srg_params().expect("SRG spec")),
            None => Source::Hypothetical,
        };
        BoundCurve::upper_line(
            format!("srg equality t={} d={}", self.t, self.d),
            self.line.clone(),
            source,
            self.realized_by.clone(),
        )
    }
}

pub fn srg_equality_line(t: usize, d: usize) -> Result<EqualityLine> {
    if d < 1 {
        return Err(param("degree d must be at least 1"));
    }
    if t < 3 {
        return Err(param(format!("needs t >= 3, got {t}")));
    }
    let (ti, di) = (t as i64, d as i64);
    let total = ti - 1 + di * (di + 1);
    let k = rat(total, ti - 1);
    let line = Line::new(rat(ti - 1, total), rat_int(1) - rat((di + 2) * (ti - 1), total));
    let integral = k.is_integer();
    let realized_by = integral
        .then(|| {
            let params = SrgParams::new(k.to_integer().try_into().ok()?, d, t - 3, t - 1);
            BUILTIN_SRGS.iter().find(|s| s.srg_params() == Some(params)).cloned()
        })
        .flatten();
    Ok(EqualityLine { t, d, k, integral, line, realized_by })
}

/// `(2d+1)/((d+1)(d+3) - t)`, where the equality line touches the general
/// lower bound.
pub fn srg_tangency_p(t: usize, d: usize) -> Result<Rational> {
    let (ti, di) = (t as i64, d as i64);
    let den = (di + 1) * (di + 3) - ti;
    if den <= 0 {
        return Err(param(format!("(d+1)(d+3) - t = {den} is not positive")));
    }
    Ok(rat(2 * di + 1, den))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tangency {
    pub p: Rational,
    pub line_value: Rational,
    pub lower: Value,
    /// Equality confirmed in exact arithmetic after clearing the radical.
    pub equal: bool,
}

/// Evaluates both sides at the tangency point. With `c = (t-1)/(4t-5)`,
/// `line = p - c(3p - 2 + 2√R)` is equivalent to `A = 2c√R` with
/// `A = p - line - c(3p - 2)`, which holds iff `A >= 0` and `A² = 4c²R`.
pub fn tangency_check(t: usize, d: usize) -> Result<Tangency> {
    let p = srg_tangency_p(t, d)?;
    let eq = srg_equality_line(t, d)?;
    let line_value = eq.line.eval(&p);
    let c = rat(t as i64 - 1, 4 * t as i64 - 5);
    let radicand = genlb_radicand(t, &p);
    let a = &p - &line_value - &c * (rat_int(3) * &p - rat_int(2));
    let equal = !(a < Rational::zero()) && &a * &a == rat_int(4) * &c * &c * &radicand;
    let lower = match rational_sqrt(&radicand) {
        Some(root) => Value::Exact(&p - &c * (rat_int(3) * &p - rat_int(2) + rat_int(2) * root)),
        None => Value::Approx(lower_genlb_f64(t, p.to_f64())),
    };
    Ok(Tangency { p, line_value, lower, equal })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines() {
        assert_eq!(srg_line(SrgParams::new(15, 6, 1, 3), 4).unwrap().formula(), "(1+7p)/15");
        assert_eq!(srg_line(SrgParams::new(13, 6, 2, 3), 5).unwrap().formula(), "(1+5p)/13");
        assert!(matches!(srg_line(SrgParams::new(15, 6, 1, 3), 3), Err(Error::Ineligible(_))));
        assert!(srg_line(SrgParams::new(10, 3, 0, 2), 5).is_err());
    }

    #[test]
    fn feasibility() {
        assert!(srg_feasible(SrgParams::new(15, 6, 1, 3)));
        assert!(srg_feasible(SrgParams::new(10, 3, 0, 1)));
        assert!(!srg_feasible(SrgParams::new(10, 3, 0, 2)));
    }

    #[test]
    fn equality_lines() {
        let gq = srg_equality_line(4, 6).unwrap();
        assert_eq!(gq.k, rat_int(15));
        assert_eq!(gq.line, Line::ratio(1, 7, 15));
        assert_eq!(gq.realized_by, Some(ConstructionSpec::TriangularComplement { m: 6 }));
        let degenerate = srg_equality_line(5, 3).unwrap();
        assert_eq!(degenerate.k, rat_int(4));
        assert_eq!(degenerate.line, Line::ratio(1, -1, 4));
        assert!(degenerate.hypothetical());
        assert_eq!(srg_equality_line(4, 2).unwrap().line, Line::ratio(1, -1, 3));
        let rook = srg_equality_line(7, 9).unwrap();
        assert_eq!(rook.realized_by, Some(ConstructionSpec::RookComplement { m: 4 }));
        assert!(!srg_equality_line(5, 5).unwrap().integral);
        assert!(srg_equality_line(5, 0).is_err());
    }

    #[test]
    fn tangency_points() {
        assert_eq!(srg_tangency_p(4, 6).unwrap(), rat(13, 59));
        assert_eq!(srg_tangency_p(5, 6).unwrap(), rat(13, 58));
        assert_eq!(srg_tangency_p(7, 4).unwrap(), rat(9, 28));
        assert!(srg_tangency_p(8, 1).is_err());

        let gq = tangency_check(4, 6).unwrap();
        assert!(gq.equal);
        assert_eq!(gq.line_value, rat(10, 59));
        assert_eq!(gq.lower, Value::Exact(rat(10, 59)));

        // the t = 5, d = 6 equality line touches at 13/58 with value 9/58;
        // the (13,6,2,3) line sits higher there
        let t5 = tangency_check(5, 6).unwrap();
        assert!(t5.equal);
        assert_eq!(t5.line_value, rat(9, 58));
        assert_eq!(Line::ratio(1, 5, 13).eval(&rat(13, 58)), rat(123, 754));

        let t7 = tangency_check(7, 4).unwrap();
        assert!(t7.equal);
        assert_eq!(t7.lower, Value::Exact(t7.line_value.clone()));
    }

    #[test]
    fn tangency_holds_everywhere() {
        for t in 3..=12 {
            for d in 1..=40 {
                let Ok(check) = tangency_check(t, d) else { continue };
                assert!(check.equal, "t={t} d={d}");
                let p = check.p.to_f64();
                assert!((check.line_value.to_f64() - lower_genlb_f64(t, p)).abs() < 1e-12);
            }
        }
    }
}

//! Upper bounds from bipartite doubles of Füredi graphs.

use num_traits::Zero;

use super::{BoundCurve, Line, Source};
use crate::constructions::ConstructionSpec;
use crate::error::{param, Result};
use crate::field::prime_power;
use crate::scalar::rat;
use crate::Rational;

fn check_pair(q: u32, t: usize) -> Result<()> {
    if t < 3 {
        return Err(param(format!("the Füredi construction needs t >= 3, got {t}")));
    }
    if prime_power(q as u64).is_none() {
        return Err(param(format!("q = {q} is not a prime power")));
    }
    if !(q as usize - 1).is_multiple_of(t - 1) {
        return Err(param(format!("t - 1 = {} does not divide q - 1 = {}", t - 1, q - 1)));
    }
    Ok(())
}

/// `(t - 1 + p(2q² - q(t-1) - 2t)) / (2(q² - 1))`.
pub fn furedi_line(q: u32, t: usize) -> Result<Line> {
    check_pair(q, t)?;
    let (q, t) = (q as i64, t as i64);
    let den = 2 * (q * q - 1);
    Ok(Line::ratio(t - 1, 2 * q * q - q * (t - 1) - 2 * t, den))
}

pub fn furedi_curve(q: u32, t: usize) -> Result<BoundCurve> {
    Ok(BoundCurve::upper_line(
        format!("furedi q={q}"),
        furedi_line(q, t)?,
        Source::Furedi { q },
        Some(ConstructionSpec::Furedi { q, t }),
    ))
}

/// Open interval where the Füredi line lies strictly below `p(1-p)`: the
/// roots of `2(q²-1)p² - (t-1)(q+2)p + (t-1)`.
pub fn furedi_improvement_interval(q: u32, t: usize) -> Result<Option<(f64, f64)>> {
    check_pair(q, t)?;
    let (qf, tf) = (q as f64, t as f64);
    let a = 2.0 * (qf * qf - 1.0);
    let b = -(tf - 1.0) * (qf + 2.0);
    let c = tf - 1.0;
    let disc = b * b - 4.0 * a * c;
    if disc <= 0.0 {
        return Ok(None);
    }
    let root = disc.sqrt();
    Ok(Some(((-b - root) / (2.0 * a), (-b + root) / (2.0 * a))))
}

/// Open interval where the Füredi line beats every standing bound
/// `p(1-p)`, `(3p+1)/(t+5)` and `(1-p)/(t-1)`.
pub fn furedi_improvement_vs_envelope(q: u32, t: usize) -> Result<Option<(f64, f64)>> {
    let Some((mut lo, mut hi)) = furedi_improvement_interval(q, t)? else {
        return Ok(None);
    };
    let line = furedi_line(q, t)?;
    let ti = t as i64;
    for other in [Line::ratio(1, 3, ti + 5), Line::ratio(1, -1, ti - 1)] {
        // line < other  <=>  (line.slope - other.slope) p < other.intercept - line.intercept
        let ds = &line.slope - &other.slope;
        let di = &other.intercept - &line.intercept;
        if ds.is_zero() {
            if di <= Rational::zero() {
                return Ok(None);
            }
            continue;
        }
        let cut = crate::scalar::Scalar::to_f64(&(di / &ds));
        if ds > Rational::zero() {
            hi = hi.min(cut);
        } else {
            lo = lo.max(cut);
        }
    }
    Ok((lo < hi).then_some((lo, hi)))
}

/// Prime powers `q` with `(t-1) | (q-1)` below
/// `((t-1) + √((t-1)² + (9-t)(t+1))) / ((9-t)/2)`, for `5 <= t <= 8`.
pub fn furedi_feasible_q(t: usize) -> Result<Vec<u32>> {
    if !(5..=8).contains(&t) {
        return Err(param(format!("the q bound is stated for 5 <= t <= 8, got {t}")));
    }
    let ti = t as i64;
    let disc = (ti - 1) * (ti - 1) + (9 - ti) * (ti + 1);
    // q < 2((t-1) + √disc)/(9-t)  <=>  (9-t)q - 2(t-1) < 2√disc
    let below = |q: i64| {
        let lhs = (9 - ti) * q - 2 * (ti - 1);
        lhs < 0 || lhs * lhs < 4 * disc
    };
    Ok((2..)
        .take_while(|&q| below(q))
        .filter(|&q| (q - 1) % (ti - 1) == 0 && prime_power(q as u64).is_some())
        .map(|q| q as u32)
        .collect())
}

/// Largest `q` tried for Füredi lines when `t >= 9`.
pub const FUREDI_Q_LIMIT: u32 = 256;

/// The `q` whose Füredi lines enter the upper envelope: the feasible `q`
/// for `5 <= t <= 8`, and for `t >= 9` every admissible `q` below
/// [`FUREDI_Q_LIMIT`] that beats `p(1-p)` somewhere. Empty for `t < 5`.
pub fn furedi_q_list(t: usize) -> Result<Vec<u32>> {
    if (5..=8).contains(&t) {
        return furedi_feasible_q(t);
    }
    if t < 9 {
        return Ok(Vec::new());
    }
    Ok((2..FUREDI_Q_LIMIT)
        .filter(|&q| prime_power(q as u64).is_some() && (q as usize - 1).is_multiple_of(t - 1))
        .filter(|&q| matches!(furedi_improvement_interval(q, t), Ok(Some(_))))
        .collect())
}

/// Whether the `q0` line stays at or below the `q` line on `samples` evenly
/// spaced points of `[2/(4+q0), 1/3)`.
pub fn furedi_monotone_check(q0: u32, q: u32, t: usize, samples: usize) -> Result<bool> {
    if q0 >= q {
        return Err(param(format!("need q0 < q, got q0 = {q0}, q = {q}")));
    }
    if samples == 0 {
        return Err(param("need at least one sample"));
    }
    let small = furedi_line(q0, t)?;
    let large = furedi_line(q, t)?;
    let lo = rat(2, 4 + q0 as i64);
    let hi = rat(1, 3);
    if lo >= hi {
        return Ok(true);
    }
    let width = &hi - &lo;
    Ok((0..samples).all(|i| {
        let p = &lo + &width * rat(i as i64, samples as i64);
        small.eval(&p) <= large.eval(&p)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    #[test]
    fn closed_forms() {
        assert_eq!(furedi_line(5, 5).unwrap(), Line::ratio(1, 5, 12));
        assert_eq!(furedi_line(13, 7).unwrap(), Line::ratio(1, 41, 56));
        assert_eq!(furedi_line(7, 4).unwrap(), Line::ratio(1, 23, 32));
        assert_eq!(furedi_line(29, 8).unwrap(), Line::ratio(7, 1463, 1680));
        assert_eq!(furedi_line(8, 8).unwrap(), Line::ratio(1, 8, 18));
        assert!(furedi_line(13, 6).is_err());
        assert!(furedi_line(12, 3).is_err());
    }

    #[test]
    fn endpoints() {
        for (q, t) in [(5u32, 5usize), (13, 7), (29, 8)] {
            let at0 = furedi_line(q, t).unwrap().eval(&Rational::zero());
            let q = q as i64;
            assert_eq!(at0, rat(t as i64 - 1, 2 * (q * q - 1)));
        }
    }

    #[test]
    fn raw_interval_t9_q17() {
        let (lo, hi) = furedi_improvement_interval(17, 9).unwrap().unwrap();
        let root = 4672f64.sqrt();
        assert!((lo - (152.0 - root) / 1152.0).abs() < 1e-12);
        assert!((hi - (152.0 + root) / 1152.0).abs() < 1e-12);
        let line = furedi_line(17, 9).unwrap();
        let mid = rat(19, 144);
        assert!(line.eval(&mid) < &mid * (rat_int(1) - &mid));
        for p in [0.05, 0.2, 0.5] {
            assert!(line.eval_f64(p) >= p * (1.0 - p));
        }
    }

    #[test]
    fn envelope_interval_t7_q13() {
        let (lo, hi) = furedi_improvement_vs_envelope(13, 7).unwrap().unwrap();
        assert!((lo - 0.125).abs() < 1e-12);
        assert!((hi - 44.0 / 324.0).abs() < 1e-12);
    }

    #[test]
    fn no_improvement_t5_q5() {
        assert_eq!(furedi_improvement_vs_envelope(5, 5).unwrap(), None);
        let line = furedi_line(5, 5).unwrap();
        for i in 0..=1000 {
            let p = i as f64 / 1000.0;
            let standing = (p * (1.0 - p)).min((3.0 * p + 1.0) / 10.0).min((1.0 - p) / 4.0);
            assert!(standing <= line.eval_f64(p) + 1e-15, "p={p}");
        }
    }

    #[test]
    fn feasible_q_lists() {
        assert_eq!(furedi_feasible_q(5).unwrap(), vec![5]);
        assert_eq!(furedi_feasible_q(6).unwrap(), Vec::<u32>::new());
        assert_eq!(furedi_feasible_q(7).unwrap(), vec![7, 13]);
        assert_eq!(furedi_feasible_q(8).unwrap(), vec![8, 29]);
        assert!(furedi_feasible_q(9).is_err());
    }

    #[test]
    fn monotonicity() {
        assert!(furedi_monotone_check(7, 13, 7, 100).unwrap());
        assert!(furedi_monotone_check(5, 13, 5, 100).unwrap());
        assert!(furedi_monotone_check(13, 7, 7, 100).is_err());
    }

    #[test]
    fn intervals_approach_zero_for_t9() {
        let lefts: Vec<f64> =
            [17u32, 41, 73].iter().map(|&q| furedi_improvement_interval(q, 9).unwrap().unwrap().0).collect();
        assert!(lefts.windows(2).all(|w| w[1] < w[0]), "{lefts:?}");
    }
}

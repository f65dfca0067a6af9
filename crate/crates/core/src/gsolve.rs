//! Minimization of `u^T M_K(p) u` over the probability simplex.
//!
//! `M_K(p)` is indefinite in general, so the exact solver enumerates every
//! support `S`, solves the stationarity system `M_S x = ν·1, Σx = 1`, and keeps
//! the solutions that are strictly positive on `S`. The least `ν` over those
//! candidates is `g_K(p)`.
//!
//! A minimizer of minimal support always has a nonsingular stationarity
//! system: a kernel direction `(dx, dν)` forces `dν = 0` and `Σdx = 0`, so
//! moving along it keeps the value and shrinks the support. Singular systems
//! therefore never hide the minimum value, and a minimizer whose stationarity
//! system is singular always coexists with a second minimizer of strictly
//! smaller support. The p-core verdict is read off the nonsingular
//! minimizers alone.

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;

use crate::crg::{mat_vec, quadratic_form, Crg, EdgeColor, Matrix};
use crate::error::{Error, Result};
use crate::scalar::{Probability, Scalar};

/// Largest CRG order the support-enumeration solver accepts by default.
pub const DEFAULT_EXACT_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct Minimizer<S> {
    pub support: Vec<usize>,
    pub x: Vec<S>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    /// Support enumeration; the value is the global minimum.
    Exact,
    /// Projected gradient descent; the value is an upper bound on the minimum.
    Iterative { converged: bool },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GSolution<S> {
    pub p: S,
    pub g: S,
    /// Optimal weights, length `k`.
    pub x: Vec<S>,
    pub support: Vec<usize>,
    /// Every minimizer with a nonsingular stationarity system, smallest
    /// support first. Empty for iterative solutions.
    pub all_minimizers: Vec<Minimizer<S>>,
    /// Supports whose stationarity system was singular (exact solver only).
    pub degenerate_supports: usize,
    /// `None` when the method cannot certify p-coreness.
    pub is_pcore: Option<bool>,
    pub method: SolveMethod,
}

impl<S: Scalar> GSolution<S> {
    /// `(M x)(v) >= g` everywhere, with equality on the support, and
    /// `x` on the simplex.
    pub fn kkt_holds(&self, m: &Matrix<S>) -> bool {
        let mx = mat_vec(m, &self.x);
        let sum = self.x.iter().fold(S::zero(), |a, b| a + b.clone());
        sum.approx_eq(&S::one())
            && self.x.iter().all(|v| *v >= S::zero() || v.is_negligible())
            && quadratic_form(m, &self.x).approx_eq(&self.g)
            && mx.iter().enumerate().all(|(v, val)| {
                if self.support.contains(&v) {
                    val.approx_eq(&self.g)
                } else {
                    *val >= self.g || val.approx_eq(&self.g)
                }
            })
    }
}

enum Stationary<S> {
    Unique { x: Vec<S>, value: S },
    Singular,
}

/// Solves `[M_S  -1; 1^T 0] [x; ν] = [0; 1]`.
fn solve_stationary<S: Scalar>(m: &Matrix<S>, support: &[usize]) -> Stationary<S> {
    let s = support.len();
    let mut a: Vec<Vec<S>> = Vec::with_capacity(s + 1);
    for &i in support {
        let mut row: Vec<S> = support.iter().map(|&j| m[i][j].clone()).collect();
        row.push(-S::one());
        row.push(S::zero());
        a.push(row);
    }
    let mut last = vec![S::one(); s];
    last.push(S::zero());
    last.push(S::one());
    a.push(last);
    match S::solve_augmented(a) {
        Some(mut x) => {
            let value = x.pop().expect("nu is the last unknown");
            Stationary::Unique { x, value }
        }
        None => Stationary::Singular,
    }
}

fn support_of(mask: u64, k: usize) -> Vec<usize> {
    (0..k).filter(|&v| mask >> v & 1 == 1).collect()
}

struct Candidate<S> {
    support: Vec<usize>,
    x: Vec<S>,
    value: S,
}

/// Exact `g_K(p)` by support enumeration, with the default size limit.
pub fn g_exact<S: Scalar>(crg: &Crg, p: &Probability<S>) -> Result<GSolution<S>> {
    g_exact_with_limit(crg, p, DEFAULT_EXACT_LIMIT)
}

pub fn g_exact_with_limit<S: Scalar>(crg: &Crg, p: &Probability<S>, limit: usize) -> Result<GSolution<S>> {
    let k = crg.order();
    if k > limit || k > 62 {
        return Err(Error::TooLarge { order: k, limit });
    }
    let m = crg.weighted_matrix(p);
    let outcomes: Vec<Option<Candidate<S>>> = (1u64..1u64 << k)
        .into_par_iter()
        .filter_map(|mask| {
            let support = support_of(mask, k);
            match solve_stationary(&m, &support) {
                Stationary::Singular => Some(None),
                Stationary::Unique { x, value } => {
                    x.iter().all(|v| v.is_strictly_positive()).then_some(Some(Candidate { support, x, value }))
                }
            }
        })
        .collect();
    let degenerate_supports = outcomes.iter().filter(|o| o.is_none()).count();

    let mut candidates: Vec<Candidate<S>> = outcomes.into_iter().flatten().collect();
    let best = candidates
        .iter()
        .map(|c| c.value.clone())
        .reduce(|a, b| if b < a { b } else { a })
        .expect("every singleton support is nonsingular");
    candidates.retain(|c| c.value.approx_eq(&best));
    candidates.sort_by_key(|c| c.support.len());

    let all_minimizers: Vec<Minimizer<S>> = candidates
        .into_iter()
        .map(|c| {
            let mut x = vec![S::zero(); k];
            for (&v, w) in c.support.iter().zip(c.x) {
                x[v] = w;
            }
            Minimizer { support: c.support, x }
        })
        .collect();
    let is_pcore = all_minimizers.len() == 1 && all_minimizers[0].support.len() == k;
    let first = all_minimizers[0].clone();
    Ok(GSolution {
        p: p.value().clone(),
        g: best,
        x: first.x,
        support: first.support,
        all_minimizers,
        degenerate_supports,
        is_pcore: Some(is_pcore),
        method: SolveMethod::Exact,
    })
}

/// `K` is p-core iff its minimizer is unique and has full support.
pub fn is_pcore<S: Scalar>(crg: &Crg, p: &Probability<S>) -> Result<bool> {
    Ok(g_exact(crg, p)?.is_pcore == Some(true))
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterativeOptions {
    pub restarts: usize,
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for IterativeOptions {
    fn default() -> Self {
        IterativeOptions { restarts: 8, tol: 1e-9, max_iter: 200_000, seed: 0x5eed }
    }
}

/// Euclidean projection onto the probability simplex.
fn project_simplex(y: &[f64]) -> Vec<f64> {
    let mut sorted = y.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (i, &u) in sorted.iter().enumerate() {
        cumulative += u;
        let candidate = (cumulative - 1.0) / (i as f64 + 1.0);
        if u - candidate > 0.0 {
            theta = candidate;
        }
    }
    y.iter().map(|&v| (v - theta).max(0.0)).collect()
}

fn descend(m: &Matrix<f64>, start: Vec<f64>, step: f64, opts: &IterativeOptions) -> (Vec<f64>, bool) {
    let mut x = start;
    for _ in 0..opts.max_iter {
        let grad = mat_vec(m, &x);
        let y: Vec<f64> = x.iter().zip(&grad).map(|(xi, gi)| xi - 2.0 * step * gi).collect();
        let next = project_simplex(&y);
        let moved = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        x = next;
        if moved < opts.tol * 1e-3 {
            return (x, true);
        }
    }
    (x, false)
}

/// Re-solves the stationarity system on the numerical support of `x` and
/// keeps the result if it is feasible and no worse.
fn polish(m: &Matrix<f64>, x: &[f64]) -> Option<(Vec<f64>, f64)> {
    let k = x.len();
    let support: Vec<usize> = (0..k).filter(|&v| x[v] > 1e-9).collect();
    match solve_stationary(m, &support) {
        Stationary::Unique { x: xs, value } if xs.iter().all(|&v| v > 0.0) => {
            let mut full = vec![0.0; k];
            for (&v, w) in support.iter().zip(xs) {
                full[v] = w;
            }
            Some((full, value))
        }
        _ => None,
    }
}

/// Approximate `g_K(p)` for CRGs beyond the exact solver's reach:
/// projected gradient descent from the uniform vector and `restarts` random
/// starting points, each polished on its numerical support. Never certifies
/// p-coreness.
pub fn g_iterative(crg: &Crg, p: &Probability<f64>, opts: &IterativeOptions) -> Result<GSolution<f64>> {
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::Parameter("tolerance must be positive".into()));
    }
    let k = crg.order();
    let m = crg.weighted_matrix(p);
    let lipschitz = m.iter().map(|row| row.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);
    let step = if lipschitz > 0.0 { 0.5 / lipschitz } else { 1.0 };

    let mut rng = SplitMix64::seed_from_u64(opts.seed);
    let mut starts = vec![vec![1.0 / k as f64; k]];
    for _ in 0..opts.restarts {
        let raw: Vec<f64> = (0..k).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
        let total: f64 = raw.iter().sum();
        starts.push(raw.into_iter().map(|v| v / total).collect());
    }

    let mut best: Option<(Vec<f64>, f64, bool)> = None;
    for start in starts {
        let (x, converged) = descend(&m, start, step, opts);
        let mut value = quadratic_form(&m, &x);
        let mut x = x;
        if let Some((px, pv)) = polish(&m, &x) {
            if pv <= value + 1e-12 {
                x = px;
                value = pv;
            }
        }
        if best.as_ref().is_none_or(|(_, v, _)| value < *v) {
            best = Some((x, value, converged));
        }
    }
    let (x, g, converged) = best.expect("at least the uniform start");
    let support = (0..k).filter(|&v| x[v] > 1e-9).collect();
    Ok(GSolution {
        p: *p.value(),
        g,
        x,
        support,
        all_minimizers: Vec::new(),
        degenerate_supports: 0,
        is_pcore: None,
        method: SolveMethod::Iterative { converged },
    })
}

/// Per-vertex gray degree `d_G(v)` (total weight of gray neighbors) next to
/// the value `(p - g)/p + ((1 - 2p)/p) x(v)` it must equal for all-black
/// p-core CRGs, plus the weight bound `g/(1-p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayDegreeReport<S> {
    pub gray_degree: Vec<S>,
    /// `None` at `p = 0`, where the formula divides by zero.
    pub predicted: Option<Vec<S>>,
    /// `g / (1 - p)`; `None` at `p = 1`.
    pub weight_bound: Option<S>,
    /// All-black and p-core: the identities are theorems here.
    pub applies: bool,
}

impl<S: Scalar> GrayDegreeReport<S> {
    pub fn degree_identity_holds(&self) -> bool {
        match &self.predicted {
            Some(pred) => pred.iter().zip(&self.gray_degree).all(|(a, b)| a.approx_eq(b)),
            None => false,
        }
    }

    pub fn weight_bound_holds(&self, x: &[S]) -> bool {
        match &self.weight_bound {
            Some(bound) => x.iter().all(|v| *v <= *bound || v.approx_eq(bound)),
            None => false,
        }
    }
}

pub fn gray_degree_report<S: Scalar>(crg: &Crg, sol: &GSolution<S>) -> GrayDegreeReport<S> {
    let k = crg.order();
    let gray_degree: Vec<S> = (0..k)
        .map(|v| {
            (0..k)
                .filter(|&u| u != v && crg.edge(u, v) == EdgeColor::Gray)
                .fold(S::zero(), |acc, u| acc + sol.x[u].clone())
        })
        .collect();
    let p = sol.p.clone();
    let predicted = (!p.is_zero()).then(|| {
        let base = (p.clone() - sol.g.clone()) / p.clone();
        let slope = (S::one() - p.clone() - p.clone()) / p.clone();
        sol.x.iter().map(|xv| base.clone() + slope.clone() * xv.clone()).collect()
    });
    let one_minus = S::one() - p;
    let weight_bound = (!one_minus.is_zero()).then(|| sol.g.clone() / one_minus);
    GrayDegreeReport {
        gray_degree,
        predicted,
        weight_bound,
        applies: crg.is_all_black() && sol.is_pcore == Some(true),
    }
}

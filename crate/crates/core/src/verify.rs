//! Self-check suites: each criterion recomputes a known identity or
//! cross-check and reports pass/fail together with its runtime budget.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::bounds::catalog::compare_thm_sum;
use crate::bounds::envelope::{assemble_envelope, bounds_at};
use crate::bounds::exact::{exact_ed, odd_plateau_start, tail_start};
use crate::bounds::furedi::{furedi_feasible_q, furedi_improvement_interval, furedi_improvement_vs_envelope, furedi_line};
use crate::bounds::lower::lower_genlb;
use crate::bounds::srg::tangency_check;
use crate::bounds::Value;
use crate::constructions::furedi::gen_furedi;
use crate::constructions::gen_matching;
use crate::constructions::registry::{srg_f_line, ConstructionSpec};
use crate::crg::{Crg, EdgeColor, VertexColor};
use crate::forbid::{forbids_k2t, ForbParameter};
use crate::graph::SimpleGraph;
use crate::gsolve::{g_exact, gray_degree_report};
use crate::oracle::{brute_edit_distance, grid_g, sample_gnp_distance, scan_small_pcores};
use crate::scalar::{rat, Probability, Scalar};
use crate::Rational;

type Check = fn() -> std::result::Result<String, String>;

#[derive(Debug, Clone, Copy)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    /// `None` when only correctness is required.
    pub budget: Option<Duration>,
    check: Check,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Option<Duration>,
}

impl Criterion {
    pub fn run(&self) -> CriterionReport {
        let start = Instant::now();
        let outcome = (self.check)();
        let elapsed = start.elapsed();
        let in_time = self.budget.is_none_or(|b| elapsed <= b);
        let (passed, mut detail) = match outcome {
            Ok(d) => (in_time, d),
            Err(d) => (false, d),
        };
        if !in_time {
            detail = format!("{detail}; over budget ({elapsed:.2?} > {:.2?})", self.budget.unwrap_or_default());
        }
        CriterionReport { id: self.id, title: self.title, passed, detail, elapsed, budget: self.budget }
    }
}

impl std::fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {}. {} ({:.2?}): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed,
            self.detail
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Fast identities, a few seconds in debug builds.
    Quick,
    /// Every criterion, oracle cross-checks included.
    Full,
}

pub fn criteria() -> Vec<Criterion> {
    let secs = |s| Some(Duration::from_secs(s));
    vec![
        Criterion { id: 1, title: "exact functions for t = 3, 4", budget: secs(1), check: exact_functions },
        Criterion { id: 2, title: "GQ(2,2) pipeline", budget: secs(1), check: gq22_pipeline },
        Criterion { id: 3, title: "odd-t plateau", budget: secs(5), check: odd_plateau },
        Criterion { id: 4, title: "g solver vs closed forms", budget: secs(5), check: solver_closed_forms },
        Criterion { id: 5, title: "oracle equivalence", budget: secs(120), check: oracle_equivalence },
        Criterion { id: 6, title: "summary-list drift", budget: None, check: summary_drift },
        Criterion { id: 7, title: "Füredi suite", budget: secs(30), check: furedi_suite },
        Criterion { id: 8, title: "edit-distance ground truth", budget: secs(120), check: edit_ground_truth },
    ]
}

pub fn suite(which: Suite) -> Vec<Criterion> {
    let all = criteria();
    match which {
        Suite::Full => all,
        Suite::Quick => all.into_iter().filter(|c| matches!(c.id, 1 | 2 | 4 | 6)).collect(),
    }
}

pub fn run_suite(which: Suite) -> Vec<CriterionReport> {
    suite(which).iter().map(Criterion::run).collect()
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn lift<T>(r: crate::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn min_rat(values: &[Rational]) -> Rational {
    values.iter().min().expect("nonempty").clone()
}

fn exact_functions() -> std::result::Result<String, String> {
    for i in 0..=100 {
        let p = rat(i, 100);
        let q = Rational::from_integer(1.into()) - &p;
        let expected = [
            (3, min_rat(&[&p * &q, &q / rat(2, 1)])),
            (4, min_rat(&[&p * &q, (rat(1, 1) + rat(7, 1) * &p) / rat(15, 1), &q / rat(3, 1)])),
        ];
        for (t, want) in expected {
            let b = lift(bounds_at(t, &p))?;
            ensure(b.upper == want && b.lower == Value::Exact(want.clone()) && b.exact, || {
                format!("t = {t}, p = {p}: upper {} lower {:?}, want {want}", b.upper, b.lower)
            })?;
        }
    }
    for (t, p, d) in [(3, rat(1, 2), rat(1, 4)), (4, rat(1, 3), rat(2, 9))] {
        let e = lift(assemble_envelope(t, 101))?.extreme;
        ensure(
            e.p_star == (Value::Exact(p.clone()), Value::Exact(p.clone())) && e.d_star == Value::Exact(d.clone()),
            || format!("t = {t}: extreme point {:?}", e),
        )?;
    }
    Ok("101 grid points exact for t = 3, 4; extreme points (1/2, 1/4), (1/3, 2/9)".into())
}

fn gq22_pipeline() -> std::result::Result<String, String> {
    let spec = lift(ConstructionSpec::parse_call("triangular_complement(6)"))?;
    let crg = lift(spec.build())?;
    let params = spec.srg_params().ok_or("no SRG parameters")?;
    ensure(params.to_string() == "(15,6,1,3)", || format!("parameters {params}"))?;
    ensure(forbids_k2t(&crg, lift(ForbParameter::new(4))?), || "K_{2,4} embeds".into())?;
    for (n, d) in [(0, 1), (1, 5), (1, 2), (1, 1)] {
        let p = rat(n, d);
        let f = crg.f_value(&lift(Probability::new(p.clone()))?);
        let want = (rat(1, 1) + rat(7, 1) * &p) / rat(15, 1);
        ensure(f == want, || format!("f({p}) = {f}, want {want}"))?;
    }
    ensure(srg_f_line(params).formula() == "(1+7p)/15", || "line formula".into())?;
    let tan = lift(tangency_check(4, 6))?;
    let lower = lift(lower_genlb(4, &tan.p))?;
    ensure(
        tan.p == rat(13, 59) && tan.line_value == rat(10, 59) && tan.equal && lower == Value::Exact(rat(10, 59)),
        || format!("tangency {:?}, lower {:?}", tan, lower),
    )?;
    Ok("(15,6,1,3) verified, forbids K_{2,4}, f = (1+7p)/15, tangent at 13/59 with value 10/59".into())
}

fn odd_plateau() -> std::result::Result<String, String> {
    for t in [5usize, 7, 9] {
        let level = rat(1, t as i64 + 1);
        let m = lift(gen_matching(t))?;
        ensure(forbids_k2t(&m, lift(ForbParameter::new(t))?), || format!("matching embeds K_(2,{t})"))?;
        for p in [rat(0, 1), rat(1, 3), rat(1, 1)] {
            ensure(m.f_value(&lift(Probability::new(p))?) == level, || format!("matching f for t = {t}"))?;
        }
        let (a, b) = (odd_plateau_start(t), tail_start(t));
        ensure(lift(lower_genlb(t, &a))? == Value::Exact(level.clone()), || format!("lower bound at {a}"))?;
        for p in [&a, &b] {
            let at = lift(bounds_at(t, p))?;
            ensure(at.upper == level && at.lower == Value::Exact(level.clone()), || {
                format!("t = {t}, p = {p}: {} / {:?}", at.upper, at.lower)
            })?;
        }
        let env = lift(assemble_envelope(t, 1001))?;
        let level_f = level.to_f64();
        let inside: Vec<_> = env.rows.iter().filter(|r| r.p >= a && r.p <= b).collect();
        ensure(!inside.is_empty(), || "no grid points on the plateau".into())?;
        for r in inside {
            ensure(
                (r.upper.to_f64() - level_f).abs() <= 1e-9 && (r.lower.to_f64() - level_f).abs() <= 1e-9,
                || format!("t = {t}, p = {}: {} / {:?}", r.p, r.upper, r.lower),
            )?;
        }
    }
    Ok("plateau 1/(t+1) for t = 5, 7, 9".into())
}

fn solver_closed_forms() -> std::result::Result<String, String> {
    let mut identity_cases = 0;
    for n in 1..=9 {
        let p = rat(n, 10);
        let prob = lift(Probability::new(p.clone()))?;
        let q = rat(1, 1) - &p;
        let k11 = lift(Crg::new(vec![VertexColor::White, VertexColor::Black]))?;
        let g = lift(g_exact(&k11, &prob))?.g;
        ensure(g == &p * &q, || format!("K(1,1) at {p}: {g}"))?;
        for m in 2..=6 {
            let crg = lift(Crg::all_black(m))?;
            let sol = lift(g_exact(&crg, &prob))?;
            ensure(sol.g == &q / rat(m as i64, 1), || format!("K(0,{m}) at {p}: {}", sol.g))?;
            let report = gray_degree_report(&crg, &sol);
            if report.applies {
                identity_cases += 1;
                ensure(report.degree_identity_holds() && report.weight_bound_holds(&sol.x), || {
                    format!("weight identities fail for K(0,{m}) at {p}")
                })?;
            }
        }
    }
    ensure(identity_cases > 0, || "no all-black p-core case".into())?;
    Ok(format!("closed forms exact; weight identities on {identity_cases} p-core cases"))
}

fn random_crg(rng: &mut SplitMix64, k: usize) -> Crg {
    let colors = (0..k).map(|_| if rng.gen::<bool>() { VertexColor::Black } else { VertexColor::White }).collect();
    let mut crg = Crg::new(colors).expect("k >= 1");
    for i in 0..k {
        for j in i + 1..k {
            crg.set_edge(i, j, [EdgeColor::Black, EdgeColor::White, EdgeColor::Gray][rng.gen_range(0..3)]);
        }
    }
    crg
}

fn oracle_equivalence() -> std::result::Result<String, String> {
    let mut rng = SplitMix64::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let k = rng.gen_range(1..=5);
        let crg = random_crg(&mut rng, k);
        for p in [0.2, 0.35, 0.45] {
            let exact = lift(g_exact(&crg, &lift(Probability::new(p))?))?.g;
            let grid = lift(grid_g(&crg, p, 200))?;
            worst = worst.max((grid - exact).abs());
        }
    }
    ensure(worst <= 5e-3, || format!("grid and exact differ by {worst:.3e}"))?;
    let t = lift(ForbParameter::new(3))?;
    let mut counts = Vec::new();
    for p in [rat(3, 10), rat(7, 10)] {
        let scan = lift(scan_small_pcores(4, &p, t))?;
        ensure(scan.structure_holds(), || format!("{} edge-structure violations at p = {p}", scan.violations.len()))?;
        counts.push(scan.pcores.len());
    }
    Ok(format!("max grid gap {worst:.2e}; p-cores on <= 4 vertices obey the edge rule ({counts:?})"))
}

fn summary_drift() -> std::result::Result<String, String> {
    for t in 5..=8 {
        let report = lift(compare_thm_sum(t))?;
        ensure(report.mismatches() == 0, || format!("t = {t}: {report:?}"))?;
    }
    Ok("t = 5..8 lists re-derived with zero mismatches".into())
}

fn furedi_suite() -> std::result::Result<String, String> {
    for (q, t) in [(5u32, 5usize), (7, 4), (13, 7), (8, 8)] {
        let crg = lift(gen_furedi(q, t))?;
        let line = lift(furedi_line(q, t))?;
        for p in [rat(0, 1), rat(1, 7), rat(1, 1)] {
            let f = crg.f_value(&lift(Probability::new(p.clone()))?);
            ensure(f == line.eval(&p), || format!("q = {q}, t = {t}: f({p}) = {f}"))?;
        }
    }
    let expected: [(usize, &[u32]); 4] = [(5, &[5]), (6, &[]), (7, &[7, 13]), (8, &[8, 29])];
    for (t, want) in expected {
        let got = lift(furedi_feasible_q(t))?;
        ensure(got == want, || format!("t = {t}: feasible q {got:?}"))?;
    }
    let (lo, hi) = lift(furedi_improvement_vs_envelope(13, 7))?.ok_or("empty interval for t = 7, q = 13")?;
    ensure(
        lo > 0.12 && hi < 0.14 && (lo - 0.125).abs() <= 0.005 && (hi - 0.1358).abs() <= 0.005,
        || format!("t = 7, q = 13: ({lo}, {hi})"),
    )?;
    let mut lefts = Vec::new();
    for q in [17u32, 41, 73] {
        let (l, _) = lift(furedi_improvement_interval(q, 9))?.ok_or(format!("empty interval for t = 9, q = {q}"))?;
        lefts.push(l);
    }
    ensure(lefts.windows(2).all(|w| w[1] < w[0]), || format!("left endpoints {lefts:?}"))?;
    Ok(format!("constructions verified; t = 7, q = 13 improves on ({lo:.4}, {hi:.4}); t = 9 lefts {lefts:.4?}"))
}

fn edit_ground_truth() -> std::result::Result<String, String> {
    for t in [3usize, 4] {
        let g = SimpleGraph::complete_bipartite(2, t);
        let d = lift(brute_edit_distance(&g, lift(ForbParameter::new(t))?, 4))?.distance();
        ensure(d == Some(1), || format!("K_(2,{t}) distance {d:?}"))?;
    }
    let samples = lift(sample_gnp_distance(8, 0.5, lift(ForbParameter::new(3))?, 50, 42, 28))?;
    let mut worst = f64::NEG_INFINITY;
    for s in &samples {
        let density = rat(s.edges as i64, 28);
        let limit = lift(exact_ed(3, &density))?.to_f64();
        let normalized = s.normalized.ok_or("budget exhausted")?;
        worst = worst.max(normalized - limit);
    }
    ensure(worst <= 0.15, || format!("a sample exceeds the limit curve by {worst:.4}"))?;
    Ok(format!("K_(2,3), K_(2,4) at distance 1; 50 samples, max excess {worst:.4}"))
}

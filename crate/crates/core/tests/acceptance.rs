//! Acceptance gate. Runs every criterion with its own reference
//! computations, prints one PASS/FAIL line each, and exits non-zero if any
//! criterion fails or overruns its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use edcrg_core::bounds::catalog::compare_thm_sum;
use edcrg_core::bounds::envelope::{assemble_envelope, bounds_at};
use edcrg_core::bounds::furedi::{furedi_feasible_q, furedi_improvement_interval, furedi_improvement_vs_envelope};
use edcrg_core::bounds::lower::lower_genlb;
use edcrg_core::bounds::srg::tangency_check;
use edcrg_core::bounds::Value;
use edcrg_core::constructions::furedi::{furedi_graph, gen_furedi};
use edcrg_core::constructions::gen_matching;
use edcrg_core::constructions::registry::ConstructionSpec;
use edcrg_core::field::prime_power;
use edcrg_core::forbid::forbids_k2t;
use edcrg_core::gsolve::{g_exact, gray_degree_report};
use edcrg_core::oracle::{brute_edit_distance, grid_g, sample_gnp_distance, scan_small_pcores};
use edcrg_core::{Crg, EdgeColor, ForbParameter, Probability, Rational, SimpleGraph, VertexColor};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

type Outcome = Result<String, String>;

/// Id, title, time budget, check.
type Criterion = (u8, &'static str, Option<Duration>, fn() -> Outcome);

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn f(q: &Rational) -> f64 {
    q.to_f64().unwrap()
}

fn prob(q: &Rational) -> Probability<Rational> {
    Probability::new(q.clone()).unwrap()
}

fn t_(t: usize) -> ForbParameter {
    ForbParameter::new(t).unwrap()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn min3(a: Rational, b: Rational, c: Rational) -> Rational {
    a.min(b).min(c)
}

fn c1_exact_functions() -> Outcome {
    for i in 0..=100 {
        let p = r(i, 100);
        let q = r(1, 1) - &p;
        let want3 = (&p * &q).min(&q / r(2, 1));
        let want4 = min3(&p * &q, (r(1, 1) + r(7, 1) * &p) / r(15, 1), &q / r(3, 1));
        for (t, want) in [(3, want3), (4, want4)] {
            let b = bounds_at(t, &p).map_err(|e| e.to_string())?;
            check(b.upper == want && b.lower == Value::Exact(want.clone()), || {
                format!("t={t} p={p}: {} / {:?} vs {want}", b.upper, b.lower)
            })?;
        }
    }
    for (t, p, d) in [(3, r(1, 2), r(1, 4)), (4, r(1, 3), r(2, 9))] {
        let e = assemble_envelope(t, 101).map_err(|e| e.to_string())?.extreme;
        check(e.d_star == Value::Exact(d.clone()), || format!("t={t} d* {:?}", e.d_star))?;
        check(e.p_star.0 == Value::Exact(p.clone()) && e.p_star.1 == Value::Exact(p.clone()), || {
            format!("t={t} p* {:?}", e.p_star)
        })?;
    }
    Ok("t=3,4 exact at 101 points; extremes (1/2,1/4), (1/3,2/9)".into())
}

/// Parameters of a regular graph read off by counting.
fn srg_parameters(g: &SimpleGraph) -> Option<(usize, usize, usize, usize)> {
    let n = g.order();
    let d = g.degree(0);
    let (mut lambda, mut mu) = (None, None);
    for u in 0..n {
        if g.degree(u) != d {
            return None;
        }
        for v in u + 1..n {
            let c = (0..n).filter(|&w| w != u && w != v && g.has_edge(u, w) && g.has_edge(v, w)).count();
            let slot = if g.has_edge(u, v) { &mut lambda } else { &mut mu };
            if *slot.get_or_insert(c) != c {
                return None;
            }
        }
    }
    Some((n, d, lambda?, mu?))
}

fn c2_gq22() -> Outcome {
    let spec = ConstructionSpec::parse_call("triangular_complement(6)").map_err(|e| e.to_string())?;
    let crg = spec.build().map_err(|e| e.to_string())?;
    // the CRG is all black with the SRG as its gray graph
    check(crg.is_black_white_gray(), || "not an all-black white/gray CRG".into())?;
    let params = srg_parameters(&crg.gray_graph());
    check(params == Some((15, 6, 1, 3)), || format!("counted parameters {params:?}"))?;
    check(forbids_k2t(&crg, t_(4)), || "K_{2,4} embeds".into())?;
    for i in 0..=10 {
        let p = r(i, 10);
        let want = (r(1, 1) + r(7, 1) * &p) / r(15, 1);
        check(crg.f_value(&prob(&p)) == want, || format!("f({p})"))?;
    }
    let tan = tangency_check(4, 6).map_err(|e| e.to_string())?;
    let p = r(13, 59);
    check(tan.p == p, || format!("tangency at {}", tan.p))?;
    let line = (r(1, 1) + r(7, 1) * &p) / r(15, 1);
    check(line == r(10, 59), || format!("line value {line}"))?;
    // genLB(4, 13/59) = p - (3/11)(3p - 2 + 2 sqrt(1 - 3p + 5p^2)); radicand is (45/59)^2
    let radicand = r(1, 1) - r(3, 1) * &p + r(5, 1) * &p * &p;
    check(radicand == r(45 * 45, 59 * 59), || format!("radicand {radicand}"))?;
    let by_hand = &p - r(3, 11) * (r(3, 1) * &p - r(2, 1) + r(2, 1) * r(45, 59));
    check(by_hand == r(10, 59), || format!("hand value {by_hand}"))?;
    let lower = lower_genlb(4, &p).map_err(|e| e.to_string())?;
    check(lower == Value::Exact(r(10, 59)) && tan.equal, || format!("library lower {lower:?}"))?;
    Ok("(15,6,1,3) counted, forbids K_{2,4}, f=(1+7p)/15, tangent at 13/59 = 10/59".into())
}

fn genlb_float(t: f64, p: f64) -> f64 {
    p - (t - 1.0) / (4.0 * t - 5.0) * (3.0 * p - 2.0 + 2.0 * (1.0 - 3.0 * p + (t + 1.0) * p * p).sqrt())
}

fn c3_odd_plateau() -> Outcome {
    for t in [5i64, 7, 9] {
        let tu = t as usize;
        let level = r(1, t + 1);
        let m = gen_matching(tu).map_err(|e| e.to_string())?;
        check(forbids_k2t(&m, t_(tu)), || format!("matching t={t} embeds K_2,t"))?;
        for i in 0..=4 {
            check(m.f_value(&prob(&r(i, 4))) == level, || format!("matching f t={t}"))?;
        }
        let a = r(2 * t - 1, t * (t + 1));
        let b = r(2, t + 1);
        check((genlb_float(t as f64, f(&a)) - f(&level)).abs() < 1e-12, || "float genLB at start".into())?;
        let lower = lower_genlb(tu, &a).map_err(|e| e.to_string())?;
        check(lower == Value::Exact(level.clone()), || format!("t={t} genLB({a}) = {lower:?}"))?;
        for p in [&a, &b] {
            let at = bounds_at(tu, p).map_err(|e| e.to_string())?;
            check(at.upper == level && at.lower == Value::Exact(level.clone()), || {
                format!("t={t} p={p}: {} / {:?}", at.upper, at.lower)
            })?;
        }
        let env = assemble_envelope(tu, 1001).map_err(|e| e.to_string())?;
        let mut seen = 0;
        for row in env.rows.iter().filter(|row| row.p >= a && row.p <= b) {
            seen += 1;
            check(
                (f(&row.upper) - f(&level)).abs() <= 1e-9 && (row.lower.to_f64() - f(&level)).abs() <= 1e-9,
                || format!("t={t} p={}: {} / {:?}", row.p, row.upper, row.lower),
            )?;
        }
        check(seen > 0, || "empty plateau sample".into())?;
    }
    Ok("upper = lower = 1/(t+1) on the plateau for t=5,7,9".into())
}

fn c4_solver() -> Outcome {
    let mut identities = 0;
    for i in 1..=9 {
        let p = r(i, 10);
        let q = r(1, 1) - &p;
        let k11 = Crg::new(vec![VertexColor::White, VertexColor::Black]).unwrap();
        let g = g_exact(&k11, &prob(&p)).map_err(|e| e.to_string())?;
        check(g.g == &p * &q, || format!("K(1,1) at {p}"))?;
        for m in 2..=6i64 {
            let crg = Crg::all_black(m as usize).unwrap();
            let sol = g_exact(&crg, &prob(&p)).map_err(|e| e.to_string())?;
            check(sol.g == &q / r(m, 1), || format!("K(0,{m}) at {p}: {}", sol.g))?;
            check(sol.is_pcore == Some(true), || format!("K(0,{m}) not p-core at {p}"))?;
            // every gray degree is 1 - 1/m; the identity predicts (p - g)/p + ((1-2p)/p)/m
            let predicted = (&p - &sol.g) / &p + (r(1, 1) - r(2, 1) * &p) / &p / r(m, 1);
            check(predicted == r(m - 1, m), || format!("degree identity K(0,{m}) at {p}"))?;
            check(r(1, m) <= &sol.g / &q, || format!("weight bound K(0,{m}) at {p}"))?;
            let report = gray_degree_report(&crg, &sol);
            check(report.applies && report.degree_identity_holds() && report.weight_bound_holds(&sol.x), || {
                format!("library identities K(0,{m}) at {p}")
            })?;
            identities += 1;
        }
    }
    Ok(format!("closed forms exact; identities hold on {identities} p-core cases"))
}

fn c5_oracles() -> Outcome {
    let mut rng = SplitMix64::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let k = rng.gen_range(1..=5usize);
        let colors = (0..k).map(|_| if rng.gen() { VertexColor::Black } else { VertexColor::White }).collect();
        let mut crg = Crg::new(colors).unwrap();
        for i in 0..k {
            for j in i + 1..k {
                crg.set_edge(i, j, [EdgeColor::Black, EdgeColor::White, EdgeColor::Gray][rng.gen_range(0..3)]);
            }
        }
        for p in [0.2, 0.35, 0.45] {
            let exact = g_exact(&crg, &Probability::new(p).unwrap()).map_err(|e| e.to_string())?.g;
            let grid = grid_g(&crg, p, 200).map_err(|e| e.to_string())?;
            worst = worst.max((grid - exact).abs());
        }
    }
    check(worst <= 5e-3, || format!("grid gap {worst:e}"))?;
    let mut pcores = Vec::new();
    for p in [r(3, 10), r(7, 10)] {
        let scan = scan_small_pcores(4, &p, t_(3)).map_err(|e| e.to_string())?;
        check(scan.violations.is_empty(), || format!("{} violations at {p}", scan.violations.len()))?;
        pcores.push(scan.pcores.len());
    }
    Ok(format!("grid gap {worst:.2e}; p-cores {pcores:?}, zero violations"))
}

fn c6_drift() -> Outcome {
    let mut rows = 0;
    for t in 5..=8 {
        let report = compare_thm_sum(t).map_err(|e| e.to_string())?;
        check(report.mismatches() == 0, || format!("t={t}: {report:?}"))?;
        rows += report.file_rows.len();
    }
    Ok(format!("t=5..8 match; {rows} file-only rows checked against the chart"))
}

fn c7_furedi() -> Outcome {
    for (q, t) in [(5u32, 5i64), (7, 4), (13, 7), (8, 8)] {
        let g = furedi_graph(q, t as usize).map_err(|e| e.to_string())?;
        let n = ((q * q - 1) as i64) / (t - 1);
        check(g.order() as i64 == n, || format!("q={q} t={t}: order {}", g.order()))?;
        let crg = gen_furedi(q, t as usize).map_err(|e| e.to_string())?;
        let q_ = q as i64;
        let line = |p: &Rational| {
            (r(t - 1, 1) + r(2 * q_ * q_ - q_ * (t - 1) - 2 * t, 1) * p) / r(2 * (q_ * q_ - 1), 1)
        };
        for p in [r(0, 1), r(1, 5), r(1, 1)] {
            check(crg.f_value(&prob(&p)) == line(&p), || format!("q={q} t={t}: f({p})"))?;
        }
    }
    let bound = |t: f64| ((t - 1.0) + ((t - 1.0).powi(2) + (9.0 - t) * (t + 1.0)).sqrt()) / ((9.0 - t) / 2.0);
    for (t, want) in [(5usize, vec![5u32]), (6, vec![]), (7, vec![7, 13]), (8, vec![8, 29])] {
        let by_hand: Vec<u32> = (2..(bound(t as f64).ceil() as u32))
            .filter(|&q| (q as f64) < bound(t as f64) && (q - 1) % (t as u32 - 1) == 0 && prime_power(q as u64).is_some())
            .collect();
        let got = furedi_feasible_q(t).map_err(|e| e.to_string())?;
        check(got == want && by_hand == want, || format!("t={t}: {got:?} / {by_hand:?}"))?;
    }
    let (lo, hi) = furedi_improvement_vs_envelope(13, 7).map_err(|e| e.to_string())?.ok_or("empty")?;
    check(lo > 0.12 && hi < 0.14 && (lo - 0.125).abs() <= 0.005 && (hi - 0.1358).abs() <= 0.005, || {
        format!("t=7 q=13: ({lo}, {hi})")
    })?;
    let mut lefts = Vec::new();
    for q in [17u32, 41, 73] {
        let (l, h) = furedi_improvement_interval(q, 9).map_err(|e| e.to_string())?.ok_or("empty")?;
        check(l < h, || format!("q={q}"))?;
        lefts.push(l);
    }
    check(lefts[0] > lefts[1] && lefts[1] > lefts[2], || format!("lefts {lefts:?}"))?;
    Ok(format!("t=7 q=13 interval ({lo:.4}, {hi:.4}); t=9 lefts {lefts:.4?}"))
}

fn c8_edit() -> Outcome {
    for t in [3usize, 4] {
        let d = brute_edit_distance(&SimpleGraph::complete_bipartite(2, t), t_(t), 3).map_err(|e| e.to_string())?;
        check(d.distance() == Some(1), || format!("K_(2,{t}): {d:?}"))?;
    }
    let samples = sample_gnp_distance(8, 0.5, t_(3), 50, 42, 28).map_err(|e| e.to_string())?;
    check(samples.len() == 50, || "sample count".into())?;
    let mut worst = f64::NEG_INFINITY;
    for s in samples {
        let p = s.density;
        let limit = (p * (1.0 - p)).min((1.0 - p) / 2.0);
        worst = worst.max(s.normalized.ok_or("budget exhausted")? - limit);
    }
    check(worst <= 0.15, || format!("excess {worst}"))?;
    Ok(format!("K_(2,3), K_(2,4) at distance 1; max excess over the limit {worst:.4}"))
}

fn main() -> ExitCode {
    let secs = |s: u64| Some(Duration::from_secs(s));
    let criteria: [Criterion; 8] = [
        (1, "exact functions t=3,4", secs(1), c1_exact_functions),
        (2, "GQ(2,2) pipeline", secs(1), c2_gq22),
        (3, "odd-t plateau", secs(5), c3_odd_plateau),
        (4, "g solver vs closed forms", secs(5), c4_solver),
        (5, "oracle equivalence", secs(120), c5_oracles),
        (6, "summary-list drift", None, c6_drift),
        (7, "Füredi suite", secs(30), c7_furedi),
        (8, "edit-distance ground truth", secs(120), c8_edit),
    ];
    let mut failed = 0;
    for (id, title, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let late = budget.is_some_and(|b| elapsed > b);
        let (ok, detail) = match outcome {
            Ok(d) if late => (false, format!("{d}; over budget {:?}", budget.unwrap())),
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if !ok {
            failed += 1;
        }
        println!("criterion {id} {} ({elapsed:.2?}) {title}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

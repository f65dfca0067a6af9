//! Command handlers. Each returns its output and whether the command
//! succeeded as a check (only `verify` can report a failed check).

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Map, Value as Json};

use edcrg_core::bounds::catalog::compare_thm_sum;
use edcrg_core::bounds::{
    assemble_envelope_on, bounds_at, furedi_improvement_interval, furedi_improvement_vs_envelope, furedi_q_list,
    srg_equality_line, tangency_check, thm_sum_catalog, upper_curves, Value,
};
use edcrg_core::constructions::ConstructionSpec;
use edcrg_core::forbid::{find_embedding, forbids_k2t, lemma_forbids_k2t};
use edcrg_core::gsolve::{g_exact, g_iterative, gray_degree_report, IterativeOptions, DEFAULT_EXACT_LIMIT};
use edcrg_core::oracle::{brute_edit_distance, find_induced_k2t, grid_g, grid_error_bound, sample_gnp_distance, scan_small_pcores, EditOutcome};
use edcrg_core::scalar::parse_rational;
use edcrg_core::verify::{run_suite, Suite};
use edcrg_core::{Crg, EdgeColor, ForbParameter, GSolution, Probability, Rational, Scalar, SimpleGraph, VertexColor};

use crate::output::{num, Output};
use crate::{BoundsCommand, Command, CrgCommand, CrgProb, GenArgs, OracleCommand, SuiteArg};

pub fn run(command: &Command) -> Result<(Output, bool)> {
    let out = match command {
        Command::Crg(CrgCommand::Eval(args)) => crg_eval(args)?,
        Command::Crg(CrgCommand::Pcore(args)) => crg_pcore(args)?,
        Command::Crg(CrgCommand::Forbid { crg, t }) => crg_forbid(crg, *t)?,
        Command::Gen(args) => generate(args)?,
        Command::Bounds(cmd) => bounds(cmd)?,
        Command::Oracle(cmd) => oracle(cmd)?,
        Command::Verify { suite } => return verify(*suite),
    };
    Ok((out, true))
}

fn read_crg(path: &Path) -> Result<Crg> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Crg::parse(&text).with_context(|| format!("in {}", path.display()))
}

fn read_graph(path: &Path) -> Result<SimpleGraph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    SimpleGraph::parse(&text, false).with_context(|| format!("in {}", path.display()))
}

fn probability(text: &str) -> Result<Rational> {
    let p = parse_rational(text).with_context(|| format!("bad probability `{text}`"))?;
    Probability::new(p.clone())?;
    Ok(p)
}

fn forb(t: usize) -> Result<ForbParameter> {
    Ok(ForbParameter::new(t)?)
}

fn value_json(v: &Value) -> Json {
    match v {
        Value::Exact(q) => q.to_string().into(),
        Value::Approx(x) => num(*x),
    }
}

/// Vertex colors then the upper triangle of edge colors, e.g. `BBW|gwg`.
fn compact(crg: &Crg) -> String {
    let k = crg.order();
    let vertices: String =
        crg.vertex_colors().iter().map(|c| if *c == VertexColor::Black { 'B' } else { 'W' }).collect();
    let edges: String = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .map(|(i, j)| match crg.edge(i, j) {
            EdgeColor::Black => 'b',
            EdgeColor::White => 'w',
            EdgeColor::Gray => 'g',
        })
        .collect();
    format!("{vertices}|{edges}")
}

/// Solution fields shared by `crg eval` and `crg pcore`.
fn solution_fields<S: Scalar>(out: Output, sol: &GSolution<S>, render: impl Fn(&S) -> Json, method: &str) -> Output {
    out.field("g", render(&sol.g))
        .field("g_method", method)
        .field("support", sol.support.clone())
        .field("x", sol.x.iter().map(&render).collect::<Vec<_>>())
}

enum Solved {
    Exact(GSolution<Rational>),
    Float(GSolution<f64>, &'static str),
}

fn solve(crg: &Crg, p: &Rational, exact: bool) -> Result<Solved> {
    if exact {
        return Ok(Solved::Exact(g_exact(crg, &Probability::new(p.clone())?)?));
    }
    let pf = Probability::new(p.to_f64())?;
    if crg.order() <= DEFAULT_EXACT_LIMIT {
        Ok(Solved::Float(g_exact(crg, &pf)?, "support enumeration"))
    } else {
        Ok(Solved::Float(g_iterative(crg, &pf, &IterativeOptions::default())?, "projected gradient"))
    }
}

fn crg_eval(args: &CrgProb) -> Result<Output> {
    let crg = read_crg(&args.crg)?;
    let p = probability(&args.p)?;
    let f = crg.f_value(&Probability::new(p.clone())?);
    let out = Output::new().field("order", crg.order()).field("p", p.to_string()).field("f", f.to_string());
    Ok(match solve(&crg, &p, args.exact)? {
        Solved::Exact(sol) => {
            solution_fields(out, &sol, |q| q.to_string().into(), "support enumeration (rational)").field("pcore", sol.is_pcore)
        }
        Solved::Float(sol, method) => solution_fields(out, &sol, |x| num(*x), method).field("pcore", sol.is_pcore),
    })
}

fn crg_pcore(args: &CrgProb) -> Result<Output> {
    let crg = read_crg(&args.crg)?;
    let p = probability(&args.p)?;
    if crg.order() > DEFAULT_EXACT_LIMIT {
        bail!("p-core detection needs the exact solver, which accepts at most {DEFAULT_EXACT_LIMIT} vertices");
    }
    let out = Output::new().field("order", crg.order()).field("p", p.to_string());
    macro_rules! finish {
        ($sol:expr, $render:expr, $method:expr) => {{
            let sol = $sol;
            let report = gray_degree_report(&crg, &sol);
            solution_fields(out, &sol, $render, $method)
                .field("pcore", sol.is_pcore)
                .field("minimizers", sol.all_minimizers.len())
                .field("degenerate_supports", sol.degenerate_supports)
                .field("identities_apply", report.applies)
                .field("degree_identity", report.applies.then(|| report.degree_identity_holds()))
                .field("weight_bound", report.applies.then(|| report.weight_bound_holds(&sol.x)))
        }};
    }
    Ok(match solve(&crg, &p, args.exact)? {
        Solved::Exact(sol) => finish!(sol, |q: &Rational| Json::from(q.to_string()), "support enumeration (rational)"),
        Solved::Float(sol, method) => finish!(sol, |x: &f64| num(*x), method),
    })
}

fn crg_forbid(path: &Path, t: usize) -> Result<Output> {
    let crg = read_crg(path)?;
    let tp = forb(t)?;
    let method = if lemma_forbids_k2t(&crg, tp).is_some() { "gray-subgraph criterion" } else { "homomorphism search" };
    let forbids = forbids_k2t(&crg, tp);
    let witness = if forbids { None } else { find_embedding(&SimpleGraph::complete_bipartite(2, t), &crg) };
    Ok(Output::new().field("t", t).field("forbids", forbids).field("method", method).field("embedding", witness))
}

fn generate(args: &GenArgs) -> Result<Output> {
    let spec = match (&args.call, &args.construction) {
        (Some(call), _) => ConstructionSpec::parse_call(call)?,
        (None, Some(name)) => {
            let mut pairs = Vec::new();
            for item in args.params.as_deref().unwrap_or("").split(',').filter(|s| !s.trim().is_empty()) {
                let (k, v) = item.split_once('=').with_context(|| format!("expected key=value, got `{item}`"))?;
                pairs.push((k.trim().to_string(), v.trim().to_string()));
            }
            ConstructionSpec::parse(name, &pairs)?
        }
        (None, None) => bail!("name a construction, e.g. `gen paley(13)`"),
    };
    let crg = spec.build()?;
    let line = spec.expected_line()?;
    Ok(Output::new()
        .field("construction", spec.to_string())
        .field("order", crg.order())
        .field("line", line.formula())
        .field("srg", spec.srg_params().map(|p| p.to_string()))
        .field("crg", crg.to_text())
        .text(crg.to_text()))
}

fn bounds(cmd: &BoundsCommand) -> Result<Output> {
    match cmd {
        BoundsCommand::At { t, p } => {
            let b = bounds_at(*t, &probability(p)?)?;
            Ok(Output::new()
                .field("t", b.t)
                .field("p", b.p.to_string())
                .field("upper", b.upper.to_string())
                .field("lower", value_json(&b.lower))
                .field("exact", b.exact)
                .field("active_upper", b.active_upper)
                .field("active_formula", b.active_formula))
        }
        BoundsCommand::Envelope { t, from, to, samples } => {
            let env = assemble_envelope_on(*t, &parse_rational(from)?, &parse_rational(to)?, *samples)?;
            let rows = env
                .rows
                .iter()
                .map(|r| {
                    let mut row = Map::new();
                    row.insert("p".into(), num(r.p.to_f64()));
                    row.insert("upper".into(), num(r.upper.to_f64()));
                    row.insert("lower".into(), num(r.lower.to_f64()));
                    row.insert("exact".into(), r.exact.into());
                    row.insert("active_upper".into(), r.active_upper.clone().into());
                    row.insert("p_rational".into(), r.p.to_string().into());
                    row.insert("upper_rational".into(), r.upper.to_string().into());
                    row.insert("lower_rational".into(), r.lower.exact().map(|q| q.to_string()).into());
                    row
                })
                .collect();
            let e = &env.extreme;
            Ok(Output::new()
                .field("t", *t)
                .field("p_star", vec![value_json(&e.p_star.0), value_json(&e.p_star.1)])
                .field("d_star", value_json(&e.d_star))
                .field(
                    "exact_interval",
                    e.exact_interval.as_ref().map(|(a, b)| vec![a.to_string(), b.to_string()]),
                )
                .table(&["p", "upper", "lower", "exact", "active_upper"], rows))
        }
        BoundsCommand::Qlist { t } => {
            let qs = furedi_q_list(*t)?;
            let mut rows = Vec::new();
            for &q in &qs {
                let pair = |iv: Option<(f64, f64)>| iv.map(|(a, b)| vec![num(a), num(b)]);
                let mut row = Map::new();
                row.insert("q".into(), q.into());
                row.insert("improves_on_parabola".into(), pair(furedi_improvement_interval(q, *t)?).into());
                row.insert("improves_on_envelope".into(), pair(furedi_improvement_vs_envelope(q, *t)?).into());
                rows.push(row);
            }
            Ok(Output::new()
                .field("t", *t)
                .field("q", qs)
                .table(&["q", "improves_on_parabola", "improves_on_envelope"], rows))
        }
        BoundsCommand::Tangency { t, d } => {
            let eq = srg_equality_line(*t, *d)?;
            let tan = tangency_check(*t, *d)?;
            Ok(Output::new()
                .field("t", *t)
                .field("d", *d)
                .field("k", eq.k.to_string())
                .field("integral", eq.integral)
                .field("hypothetical", eq.hypothetical())
                .field("line", eq.line.formula())
                .field("p", tan.p.to_string())
                .field("line_value", tan.line_value.to_string())
                .field("lower", value_json(&tan.lower))
                .field("equal", tan.equal))
        }
        BoundsCommand::Catalog { t } => {
            let rows = upper_curves(*t)?
                .iter()
                .map(|c| {
                    let mut row = Map::new();
                    row.insert("name".into(), c.name.clone().into());
                    row.insert("formula".into(), c.formula().into());
                    row.insert("source".into(), c.source.to_string().into());
                    row.insert("construction".into(), c.construction.as_ref().map(|s| s.to_string()).into());
                    row
                })
                .collect();
            let mut out = Output::new().field("t", *t);
            if (5..=8).contains(t) {
                let stored: Vec<String> = thm_sum_catalog(*t)?.iter().map(|c| c.formula()).collect();
                let drift = compare_thm_sum(*t)?;
                out = out
                    .field("summary", stored)
                    .field("drift_mismatches", drift.mismatches())
                    .field("missing", drift.missing.clone())
                    .field("extra", drift.extra.clone());
            }
            Ok(out.table(&["name", "formula", "source"], rows))
        }
    }
}

fn oracle(cmd: &OracleCommand) -> Result<Output> {
    match cmd {
        OracleCommand::Dist { graph, t, budget } => {
            let g = read_graph(graph)?;
            let tp = forb(*t)?;
            let copy = find_induced_k2t(&g, tp)?;
            let pairs = (g.order() * g.order().saturating_sub(1) / 2).max(1);
            let out = Output::new().field("order", g.order()).field("t", *t).field("induced_copy", copy);
            Ok(match brute_edit_distance(&g, tp, *budget)? {
                EditOutcome::Exact(r) => out
                    .field("distance", r.distance)
                    .field("normalized", num(r.distance as f64 / pairs as f64))
                    .field("witness_edges", r.witness.edges().map(|(i, j)| vec![i, j]).collect::<Vec<_>>()),
                EditOutcome::ExceedsBudget { budget } => out.field("distance", Json::Null).field("exceeds_budget", budget),
            })
        }
        OracleCommand::Gnp { n, p, t, trials, seed, budget } => {
            let pf = probability(p)?.to_f64();
            let samples = sample_gnp_distance(*n, pf, forb(*t)?, *trials, *seed, *budget)?;
            let done: Vec<f64> = samples.iter().filter_map(|s| s.normalized).collect();
            let mean = if done.is_empty() { f64::NAN } else { done.iter().sum::<f64>() / done.len() as f64 };
            let rows = samples
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let mut row = Map::new();
                    row.insert("trial".into(), i.into());
                    row.insert("edges".into(), s.edges.into());
                    row.insert("density".into(), num(s.density));
                    row.insert("distance".into(), s.distance.into());
                    row.insert("normalized".into(), s.normalized.map_or(Json::Null, num));
                    row
                })
                .collect();
            Ok(Output::new()
                .field("n", *n)
                .field("p", pf)
                .field("t", *t)
                .field("seed", *seed)
                .field("mean_normalized", num(mean))
                .field("over_budget", samples.len() - done.len())
                .table(&["trial", "edges", "density", "distance", "normalized"], rows))
        }
        OracleCommand::G { crg, p, resolution } => {
            let crg = read_crg(crg)?;
            let pf = probability(p)?.to_f64();
            let value = grid_g(&crg, pf, *resolution)?;
            let exact = g_exact(&crg, &Probability::new(pf)?)?.g;
            Ok(Output::new()
                .field("p", pf)
                .field("resolution", *resolution)
                .field("grid_g", num(value))
                .field("error_bound", num(grid_error_bound(&crg, pf, *resolution)))
                .field("exact_g", num(exact)))
        }
        OracleCommand::Scan { max_k, p, t } => {
            let p = probability(p)?;
            let scan = scan_small_pcores(*max_k, &p, forb(*t)?)?;
            let rows = scan
                .pcores
                .iter()
                .map(|e| {
                    let mut row = Map::new();
                    row.insert("crg".into(), compact(&e.crg).into());
                    row.insert("g".into(), e.g.to_string().into());
                    row.insert("forbids".into(), e.forbids.into());
                    row
                })
                .collect();
            Ok(Output::new()
                .field("p", p.to_string())
                .field("t", *t)
                .field("max_k", *max_k)
                .field("classes", scan.classes)
                .field("forbidding", scan.forbidding)
                .field("pcores", scan.pcores.len())
                .field("min_g", scan.min_g.to_string())
                .field("argmin", compact(&scan.argmin))
                .field("violations", scan.violations.iter().map(compact).collect::<Vec<_>>())
                .field("structure_holds", scan.structure_holds())
                .table(&["crg", "g", "forbids"], rows))
        }
    }
}

fn verify(suite: SuiteArg) -> Result<(Output, bool)> {
    let which = match suite {
        SuiteArg::Quick => Suite::Quick,
        SuiteArg::Paper => Suite::Full,
    };
    let reports = run_suite(which);
    let passed = reports.iter().filter(|r| r.passed).count();
    let all = passed == reports.len();
    let rows = reports
        .iter()
        .map(|r| {
            let mut row = Map::new();
            row.insert("id".into(), r.id.into());
            row.insert("status".into(), if r.passed { "PASS" } else { "FAIL" }.into());
            row.insert("title".into(), r.title.into());
            row.insert("seconds".into(), num(r.elapsed.as_secs_f64()));
            row.insert("detail".into(), r.detail.clone().into());
            row
        })
        .collect();
    let out = Output::new()
        .field("passed", json!(passed))
        .field("total", reports.len())
        .table(&["id", "status", "title", "seconds", "detail"], rows);
    Ok((out, all))
}

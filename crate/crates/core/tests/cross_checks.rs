//! Checks that tie several modules together: constructions against their
//! promised lines, scanned CRGs against the lower bounds, and the two
//! solvers against each other on constructed CRGs.

use edcrg_core::bounds::exact::exact_ed;
use edcrg_core::bounds::lower::lower_bound;
use edcrg_core::constructions::registry::{registry_for, ConstructionSpec};
use edcrg_core::forbid::forbids_k2t;
use edcrg_core::gsolve::{g_exact, g_iterative, gray_degree_report, IterativeOptions};
use edcrg_core::oracle::scan_small_pcores;
use edcrg_core::{Crg, ForbParameter, Probability, Rational};
use num_traits::ToPrimitive;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[test]
fn registry_constructions_match_their_lines() {
    for t in 3..=6 {
        for spec in registry_for(t).unwrap() {
            let crg = spec.build().unwrap();
            assert!(forbids_k2t(&crg, ForbParameter::new(t).unwrap()), "{spec} embeds K_(2,{t})");
            let line = spec.expected_line().unwrap();
            for i in 0..=6 {
                let p = r(i, 6);
                assert_eq!(crg.f_value(&Probability::new(p.clone()).unwrap()), line.eval(&p), "{spec} at {p}");
            }
            assert_eq!(Crg::parse(&crg.to_text()).unwrap(), crg);
            assert_eq!(ConstructionSpec::parse_call(&spec.to_string()).unwrap(), spec);
        }
    }
}

#[test]
fn forbidding_crgs_never_beat_the_lower_bound() {
    for t in [3usize, 4, 5] {
        for i in 1..10 {
            let p = r(i, 20);
            let scan = scan_small_pcores(3, &p, ForbParameter::new(t).unwrap()).unwrap();
            let lower = lower_bound(t, &p).unwrap();
            assert!(scan.min_g.to_f64().unwrap() >= lower.to_f64() - 1e-12, "t={t} p={p}");
            if t <= 4 {
                assert!(scan.min_g >= exact_ed(t, &p).unwrap(), "t={t} p={p}");
            }
        }
    }
}

#[test]
fn iterative_solver_tracks_exact_on_constructions() {
    let specs = ["petersen_complement", "rook_complement(3)", "cycle_power(8,2)", "matching(5)", "furedi(5,5)"];
    for name in specs {
        let crg = ConstructionSpec::parse_call(name).unwrap().build().unwrap();
        for p in [0.15, 0.3, 0.45] {
            let prob = Probability::new(p).unwrap();
            let exact = g_exact(&crg, &prob).unwrap();
            let approx = g_iterative(&crg, &prob, &IterativeOptions::default()).unwrap();
            assert!(approx.g >= exact.g - 1e-9, "{name} at {p}");
            assert!(approx.g - exact.g < 1e-6, "{name} at {p}: {} vs {}", approx.g, exact.g);
            let report = gray_degree_report(&crg, &exact);
            if report.applies {
                assert!(report.degree_identity_holds() && report.weight_bound_holds(&exact.x), "{name} at {p}");
            }
        }
    }
}

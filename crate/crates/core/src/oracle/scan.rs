//! Exhaustive scan of small CRGs: which are p-core, which forbid
//! `K_{2,t}`, and whether every p-core has the predicted edge colors.

use rayon::prelude::*;

use crate::crg::{Crg, EdgeColor, VertexColor};
use crate::error::{Error, Result};
use crate::forbid::{forbids_k2t, ForbParameter};
use crate::gsolve::g_exact;
use crate::scalar::Probability;
use crate::Rational;

pub const MAX_SCAN_ORDER: usize = 4;

#[derive(Debug, Clone)]
pub struct PcoreEntry {
    pub crg: Crg,
    pub g: Rational,
    pub forbids: bool,
}

#[derive(Debug, Clone)]
pub struct ScanReport {
    pub p: Rational,
    pub t: usize,
    pub max_k: usize,
    /// CRGs examined, one per isomorphism class.
    pub classes: usize,
    /// Classes that forbid `K_{2,t}`.
    pub forbidding: usize,
    pub pcores: Vec<PcoreEntry>,
    /// Least `g` over forbidding classes, with a class attaining it.
    pub min_g: Rational,
    pub argmin: Crg,
    /// p-cores whose non-gray edges break the color rule.
    pub violations: Vec<Crg>,
}

impl ScanReport {
    pub fn structure_holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn build(k: usize, code: usize) -> Crg {
    let mut rest = code;
    let vertices = (0..k)
        .map(|_| {
            let c = if rest.is_multiple_of(2) { VertexColor::Black } else { VertexColor::White };
            rest /= 2;
            c
        })
        .collect();
    let mut crg = Crg::new(vertices).expect("k >= 1");
    for i in 0..k {
        for j in i + 1..k {
            let c = [EdgeColor::Gray, EdgeColor::White, EdgeColor::Black][rest % 3];
            rest /= 3;
            crg.set_edge(i, j, c);
        }
    }
    crg
}

fn encode(crg: &Crg, perm: &[usize]) -> Vec<u8> {
    let k = crg.order();
    let mut out: Vec<u8> = perm.iter().map(|&v| crg.vertex(v) as u8).collect();
    for i in 0..k {
        for j in i + 1..k {
            out.push(crg.edge(perm[i], perm[j]) as u8);
        }
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..k {
            if !cur.contains(&v) {
                cur.push(v);
                rec(cur, k, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), k, &mut out);
    out
}

/// Non-gray edges of a p-core: for `p < 1/2` only white edges between
/// black vertices, for `p > 1/2` only black edges between white vertices,
/// at `p = 1/2` none.
pub fn pcore_edges_admissible(crg: &Crg, p: &Rational) -> bool {
    let half = Rational::new(1.into(), 2.into());
    let k = crg.order();
    (0..k).all(|i| {
        (i + 1..k).all(|j| match crg.edge(i, j) {
            EdgeColor::Gray => true,
            c => {
                let ends = (crg.vertex(i), crg.vertex(j));
                if *p < half {
                    c == EdgeColor::White && ends == (VertexColor::Black, VertexColor::Black)
                } else if *p > half {
                    c == EdgeColor::Black && ends == (VertexColor::White, VertexColor::White)
                } else {
                    false
                }
            }
        })
    })
}

/// Scans every CRG on at most `max_k` vertices up to isomorphism.
pub fn scan_small_pcores(max_k: usize, p: &Rational, t: ForbParameter) -> Result<ScanReport> {
    if max_k == 0 || max_k > MAX_SCAN_ORDER {
        return Err(Error::Parameter(format!("scan order must be in 1..={MAX_SCAN_ORDER}, got {max_k}")));
    }
    let prob = Probability::new(p.clone())?;
    let mut classes = Vec::new();
    for k in 1..=max_k {
        let perms = permutations(k);
        let identity: Vec<usize> = (0..k).collect();
        let total = (1usize << k) * 3usize.pow((k * (k - 1) / 2) as u32);
        let canonical: Vec<Crg> = (0..total)
            .into_par_iter()
            .map(|code| build(k, code))
            .filter(|crg| {
                let own = encode(crg, &identity);
                perms.iter().all(|perm| encode(crg, perm) >= own)
            })
            .collect();
        classes.extend(canonical);
    }
    let results: Vec<(Crg, bool, Rational, bool)> = classes
        .into_par_iter()
        .map(|crg| {
            let forbids = forbids_k2t(&crg, t);
            let sol = g_exact(&crg, &prob)?;
            let pcore = sol.is_pcore == Some(true);
            Ok((crg, forbids, sol.g, pcore))
        })
        .collect::<Result<_>>()?;

    let classes = results.len();
    let forbidding = results.iter().filter(|r| r.1).count();
    let (argmin, min_g) = results
        .iter()
        .filter(|r| r.1)
        .min_by(|a, b| a.2.cmp(&b.2))
        .map(|r| (r.0.clone(), r.2.clone()))
        .ok_or_else(|| Error::Integrity("no scanned CRG forbids K_{2,t}".into()))?;
    let pcores: Vec<PcoreEntry> = results
        .into_iter()
        .filter(|r| r.3)
        .map(|(crg, forbids, g, _)| PcoreEntry { crg, g, forbids })
        .collect();
    let violations = pcores.iter().filter(|e| !pcore_edges_admissible(&e.crg, p)).map(|e| e.crg.clone()).collect();
    Ok(ScanReport { p: p.clone(), t: t.get(), max_k, classes, forbidding, pcores, min_g, argmin, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn t(v: usize) -> ForbParameter {
        ForbParameter::new(v).unwrap()
    }

    #[test]
    fn class_counts() {
        // one class on 1 vertex per color; on 2 vertices 3 color pairs x 3 edges
        let r = scan_small_pcores(2, &rat(1, 3), t(3)).unwrap();
        assert_eq!(r.classes, 2 + 9);
    }

    #[test]
    fn k11_wins_for_t3() {
        let r = scan_small_pcores(2, &rat(3, 10), t(3)).unwrap();
        assert_eq!(r.min_g, rat(21, 100));
        let k11 = Crg::new(vec![VertexColor::Black, VertexColor::White]).unwrap();
        assert_eq!(r.argmin.count_vertices(VertexColor::White), 1);
        assert_eq!(r.argmin.count_edges(EdgeColor::Gray), 1);
        assert_eq!(r.argmin.order(), k11.order());
        assert!(r.structure_holds());
    }

    #[test]
    fn three_gray_blacks_for_t4() {
        let r = scan_small_pcores(3, &rat(2, 5), t(4)).unwrap();
        assert_eq!(r.min_g, rat(1, 5));
        assert!(r.pcores.iter().any(|e| e.forbids && e.crg == Crg::all_black(3).unwrap() && e.g == rat(1, 5)));
        assert!(r.structure_holds());
    }

    #[test]
    fn structure_on_all_sides_of_one_half() {
        for p in [rat(1, 10), rat(1, 2), rat(7, 10), rat(9, 10)] {
            let r = scan_small_pcores(3, &p, t(3)).unwrap();
            assert!(r.structure_holds(), "p = {p}: {:?}", r.violations);
            assert!(!r.pcores.is_empty());
        }
    }

    #[test]
    fn admissibility_rule() {
        let white_pair = Crg::all_black(2).unwrap().with_edge(0, 1, EdgeColor::White);
        assert!(pcore_edges_admissible(&white_pair, &rat(1, 3)));
        assert!(!pcore_edges_admissible(&white_pair, &rat(2, 3)));
        assert!(!pcore_edges_admissible(&white_pair, &rat(1, 2)));
        assert!(scan_small_pcores(5, &rat(1, 3), t(3)).is_err());
    }
}

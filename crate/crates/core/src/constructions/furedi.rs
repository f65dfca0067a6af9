//! Füredi's `K_{2,t}`-free graphs over `GF(q)` and their bipartite doubles.
//!
//! Let `H` be the multiplicative subgroup of order `t - 1`. Vertices are the
//! orbits of `GF(q)² \ {0}` under `(a, b) -> (ha, hb)`, numbered by their
//! lexicographically least member; `<(a,b)>` and `<(x,y)>` are adjacent when
//! `ax + by ∈ H`, which includes loops.

use crate::bounds::furedi::furedi_line;
use crate::crg::Crg;
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::forbid::{forbids_k2t, ForbParameter};
use crate::graph::SimpleGraph;
use crate::scalar::Probability;
use crate::Rational;

/// The looped Füredi graph on `(q² - 1)/(t - 1)` vertices.
pub fn furedi_graph(q: u32, t: usize) -> Result<SimpleGraph> {
    furedi_line(q, t)?;
    let field = FiniteField::new(q)?;
    let h = field.subgroup_of_order(t as u32 - 1)?;
    let mut in_h = vec![false; q as usize];
    for &x in &h {
        in_h[x as usize] = true;
    }

    let qq = q as usize;
    let mut orbit_of = vec![usize::MAX; qq * qq];
    let mut reps: Vec<(u32, u32)> = Vec::new();
    for code in 1..qq * qq {
        if orbit_of[code] != usize::MAX {
            continue;
        }
        let (a, b) = ((code / qq) as u32, (code % qq) as u32);
        for &s in &h {
            let image = field.mul(s, a) as usize * qq + field.mul(s, b) as usize;
            orbit_of[image] = reps.len();
        }
        reps.push((a, b));
    }

    let n = reps.len();
    let mut g = SimpleGraph::empty(n);
    for (i, &(a, b)) in reps.iter().enumerate() {
        for (j, &(x, y)) in reps.iter().enumerate().skip(i) {
            if in_h[field.add(field.mul(a, x), field.mul(b, y)) as usize] {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// Bipartite double of the Füredi graph, after checking q-regularity, the
/// common-neighbor bound, the forbid check and the closed-form `f` line.
pub fn gen_furedi(q: u32, t: usize) -> Result<Crg> {
    let g = furedi_graph(q, t)?;
    let n = g.order();
    let expected_n = (q as usize * q as usize - 1) / (t - 1);
    if n != expected_n {
        return Err(Error::Integrity(format!("{n} orbits, expected {expected_n}")));
    }
    if let Some(v) = (0..n).find(|&v| g.degree(v) != q as usize) {
        return Err(Error::Integrity(format!("vertex {v} has degree {}, expected {q}", g.degree(v))));
    }
    for u in 0..n {
        for v in u + 1..n {
            let common = g.common_neighbors(u, v);
            if common > t - 1 {
                return Err(Error::Integrity(format!("vertices {u},{v} share {common} neighbors")));
            }
        }
    }
    let crg = Crg::bipartite_double(&g);
    if !forbids_k2t(&crg, ForbParameter::new(t)?) {
        return Err(Error::Integrity(format!("doubled graph admits K_(2,{t})")));
    }
    let line = furedi_line(q, t)?;
    for p in [Rational::from_integer(0.into()), Rational::from_integer(1.into())] {
        let f = crg.f_value(&Probability::new(p.clone())?);
        if f != line.eval(&p) {
            return Err(Error::Integrity(format!("f({p}) = {f}, closed form gives {}", line.eval(&p))));
        }
    }
    Ok(crg)
}

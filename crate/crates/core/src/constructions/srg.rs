//! Strongly regular graphs and the CRGs built from them.
//!
//! An SRG becomes an all-black CRG by coloring its edges gray and its
//! non-edges white.

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::crg::Crg;
use crate::error::{param, Error, Result};
use crate::field::FiniteField;
use crate::graph::SimpleGraph;

/// `(k, d, λ, μ)`: order, degree, common neighbors of adjacent and of
/// non-adjacent pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SrgParams {
    pub k: usize,
    pub d: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl SrgParams {
    pub const fn new(k: usize, d: usize, lambda: usize, mu: usize) -> Self {
        SrgParams { k, d, lambda, mu }
    }

    /// `d(d - λ - 1) = μ(k - d - 1)`, the edge count between a vertex's
    /// neighborhood and its non-neighborhood taken both ways.
    pub fn is_feasible(&self) -> bool {
        let (k, d, lambda, mu) = (self.k as i64, self.d as i64, self.lambda as i64, self.mu as i64);
        d < k && lambda <= d && d * (d - lambda - 1) == mu * (k - d - 1)
    }

    /// The SRG's CRG forbids `K_{2,t}` exactly when `λ <= t - 3` and `μ <= t - 1`.
    pub fn eligible_for(&self, t: usize) -> bool {
        t >= 3 && self.lambda + 3 <= t && self.mu < t
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.k, self.d, self.lambda, self.mu)
    }
}

/// Checks every vertex degree and every pair's common-neighbor count.
pub fn verify_srg(graph: &SimpleGraph, declared: SrgParams) -> Result<()> {
    let fail = |msg: String| Err(Error::NotStronglyRegular(msg));
    if graph.has_loops() {
        return fail("graph has loops".into());
    }
    if graph.order() != declared.k {
        return fail(format!("order {} but declared k = {}", graph.order(), declared.k));
    }
    for v in 0..graph.order() {
        if graph.degree(v) != declared.d {
            return fail(format!("vertex {v} has degree {}, declared {}", graph.degree(v), declared.d));
        }
    }
    for u in 0..graph.order() {
        for v in u + 1..graph.order() {
            let (want, kind) = if graph.has_edge(u, v) { (declared.lambda, "λ") } else { (declared.mu, "μ") };
            let got = graph.common_neighbors(u, v);
            if got != want {
                return fail(format!("pair ({u},{v}) has {got} common neighbors, declared {kind} = {want}"));
            }
        }
    }
    Ok(())
}

/// Built-in SRG families plus externally supplied graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SrgSource {
    /// Elements of `GF(q)`, adjacent when their difference is a square.
    Paley(u32),
    /// 2-subsets of an `m`-set, adjacent when disjoint.
    TriangularComplement(usize),
    /// Cells of an `m × m` board, adjacent when in different rows and columns.
    RookComplement(usize),
    /// Complement of the Petersen graph: 2-subsets of a 5-set meeting in a point.
    PetersenComplement,
    /// A graph read from a file with its declared parameters.
    File { path: PathBuf, graph: SimpleGraph, params: SrgParams },
}

fn pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect()
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl SrgSource {
    /// The graph together with the parameters its family predicts.
    pub fn graph(&self) -> Result<(SimpleGraph, SrgParams)> {
        match self {
            SrgSource::Paley(q) => {
                if q % 4 != 1 {
                    return Err(param(format!("Paley graphs need q ≡ 1 mod 4, got {q}")));
                }
                let field = FiniteField::new(*q)?;
                let n = *q as usize;
                let mut g = SimpleGraph::empty(n);
                for a in 0..*q {
                    for b in a + 1..*q {
                        if field.is_square(field.sub(a, b))? {
                            g.add_edge(a as usize, b as usize);
                        }
                    }
                }
                Ok((g, SrgParams::new(n, (n - 1) / 2, (n - 5) / 4, (n - 1) / 4)))
            }
            SrgSource::TriangularComplement(m) => {
                if *m < 4 {
                    return Err(param(format!("triangular_complement needs m >= 4, got {m}")));
                }
                let vs = pairs(*m);
                let mut g = SimpleGraph::empty(vs.len());
                for (i, &(a, b)) in vs.iter().enumerate() {
                    for (j, &(c, d)) in vs.iter().enumerate().skip(i + 1) {
                        if a != c && a != d && b != c && b != d {
                            g.add_edge(i, j);
                        }
                    }
                }
                Ok((g, SrgParams::new(choose2(*m), choose2(m - 2), choose2(m - 4), choose2(m - 3))))
            }
            SrgSource::RookComplement(m) => {
                if *m < 3 {
                    return Err(param(format!("rook_complement needs m >= 3, got {m}")));
                }
                let m = *m;
                let mut g = SimpleGraph::empty(m * m);
                for i in 0..m * m {
                    for j in i + 1..m * m {
                        if i / m != j / m && i % m != j % m {
                            g.add_edge(i, j);
                        }
                    }
                }
                Ok((g, SrgParams::new(m * m, (m - 1) * (m - 1), (m - 2) * (m - 2), (m - 1) * (m - 2))))
            }
            SrgSource::PetersenComplement => {
                let vs = pairs(5);
                let mut g = SimpleGraph::empty(10);
                for (i, &(a, b)) in vs.iter().enumerate() {
                    for (j, &(c, d)) in vs.iter().enumerate().skip(i + 1) {
                        if a == c || a == d || b == c || b == d {
                            g.add_edge(i, j);
                        }
                    }
                }
                Ok((g, SrgParams::new(10, 6, 3, 4)))
            }
            SrgSource::File { graph, params, .. } => Ok((graph.clone(), *params)),
        }
    }
}

/// Builds and verifies the SRG, then colors it: gray edges, white non-edges.
pub fn gen_srg(source: &SrgSource) -> Result<(Crg, SrgParams)> {
    let (graph, params) = source.graph()?;
    verify_srg(&graph, params)?;
    Ok((Crg::black_from_gray_graph(&graph)?, params))
}

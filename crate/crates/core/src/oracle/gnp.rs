//! Edit distances of sampled `G(n, p)` graphs.

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forbid::ForbParameter;
use crate::graph::SimpleGraph;
use crate::oracle::edit::{brute_edit_distance, EditOutcome};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GnpSample {
    pub edges: usize,
    /// Edge density `|E| / C(n, 2)`.
    pub density: f64,
    /// `None` when the distance exceeds the budget.
    pub distance: Option<usize>,
    /// `distance / C(n, 2)`.
    pub normalized: Option<f64>,
}

/// `trials` graphs from `G(n, p)`, drawn one after another from a single
/// seeded stream so the sample does not depend on the thread count.
pub fn sample_gnp(n: usize, p: f64, trials: usize, seed: u64) -> Result<Vec<SimpleGraph>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Probability(p.to_string()));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    Ok((0..trials)
        .map(|_| {
            let mut g = SimpleGraph::empty(n);
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen::<f64>() < p {
                        g.add_edge(i, j);
                    }
                }
            }
            g
        })
        .collect())
}

pub fn sample_gnp_distance(
    n: usize,
    p: f64,
    t: ForbParameter,
    trials: usize,
    seed: u64,
    budget: usize,
) -> Result<Vec<GnpSample>> {
    if n < 2 {
        return Err(Error::Parameter(format!("need at least two vertices, got {n}")));
    }
    let pairs = (n * (n - 1) / 2) as f64;
    let graphs = sample_gnp(n, p, trials, seed)?;
    graphs
        .par_iter()
        .map(|g| {
            let distance = match brute_edit_distance(g, t, budget)? {
                EditOutcome::Exact(r) => Some(r.distance),
                EditOutcome::ExceedsBudget { .. } => None,
            };
            Ok(GnpSample {
                edges: g.edge_count(),
                density: g.edge_count() as f64 / pairs,
                distance,
                normalized: distance.map(|d| d as f64 / pairs),
            })
        })
        .collect()
}

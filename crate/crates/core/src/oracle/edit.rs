//! Exact edit distance to `Forb(K_{2,t})` for small graphs.
//!
//! Bounded search tree: any edit set that destroys an induced `K_{2,t}`
//! must change one of the copy's `C(t+2, 2)` vertex pairs. Branch `i`
//! changes the copy's `i`-th pair and freezes pairs `0..i`, so every edit
//! set is visited once. Iterative deepening on the budget makes the first
//! success a minimum.

use crate::error::{Error, Result};
use crate::forbid::ForbParameter;
use crate::graph::SimpleGraph;

/// Largest graph order accepted by the exact search.
pub const MAX_EDIT_ORDER: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EditResult {
    pub distance: usize,
    /// The edited graph, induced-`K_{2,t}`-free.
    pub witness: SimpleGraph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EditOutcome {
    Exact(EditResult),
    /// No edit set of size at most `budget` works.
    ExceedsBudget { budget: usize },
}

impl EditOutcome {
    pub fn distance(&self) -> Option<usize> {
        match self {
            EditOutcome::Exact(r) => Some(r.distance),
            EditOutcome::ExceedsBudget { .. } => None,
        }
    }
}

/// Vertex pairs `(i, j)`, `i < j`, numbered row by row.
struct PairIndex {
    n: usize,
    index: Vec<Vec<usize>>,
}

impl PairIndex {
    fn new(n: usize) -> Self {
        let mut index = vec![vec![usize::MAX; n]; n];
        let mut next = 0;
        for i in 0..n {
            for j in i + 1..n {
                index[i][j] = next;
                index[j][i] = next;
                next += 1;
            }
        }
        PairIndex { n, index }
    }

    fn rows(&self, edges: u64) -> Vec<u32> {
        let mut rows = vec![0u32; self.n];
        for i in 0..self.n {
            for j in i + 1..self.n {
                if edges >> self.index[i][j] & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
        }
        rows
    }

    fn copy_mask(&self, vertices: &[usize]) -> u64 {
        let mut mask = 0;
        for (a, &u) in vertices.iter().enumerate() {
            for &v in &vertices[a + 1..] {
                mask |= 1 << self.index[u][v];
            }
        }
        mask
    }
}

/// Calls `visit` with `[u, v, w_1, .., w_t]` for every induced `K_{2,t}`
/// (`u < v` the non-adjacent pair, `w` increasing) until it returns `false`.
fn for_each_copy(rows: &[u32], t: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn extend(rows: &[u32], cand: u32, need: usize, stack: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if need == 0 {
            return visit(stack);
        }
        let mut rest = cand;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (rest.count_ones() as usize) + 1 < need {
                break;
            }
            stack.push(w);
            let ok = extend(rows, rest & !rows[w], need - 1, stack, visit);
            stack.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    let n = rows.len();
    for u in 0..n {
        for v in u + 1..n {
            if rows[u] >> v & 1 == 1 {
                continue;
            }
            let common = rows[u] & rows[v];
            if (common.count_ones() as usize) < t {
                continue;
            }
            let mut stack = vec![u, v];
            if !extend(rows, common, t, &mut stack, visit) {
                return;
            }
        }
    }
}

/// Some induced `K_{2,t}` as `[u, v, w_1, .., w_t]`, if `g` has one.
pub fn find_induced_k2t(g: &SimpleGraph, t: ForbParameter) -> Result<Option<Vec<usize>>> {
    if g.order() > 32 {
        return Err(Error::TooLarge { order: g.order(), limit: 32 });
    }
    let mut rows = vec![0u32; g.order()];
    for (i, j) in g.edges() {
        rows[i] |= 1 << j;
        rows[j] |= 1 << i;
    }
    let mut found = None;
    for_each_copy(&rows, t.get(), &mut |copy| {
        found = Some(copy.to_vec());
        false
    });
    Ok(found)
}

struct EditSearch {
    pairs: PairIndex,
    t: usize,
}

impl EditSearch {
    /// Edits (as a pair mask) of size at most `budget` that make `edges`
    /// induced-`K_{2,t}`-free without touching `frozen`.
    fn solve(&self, edges: u64, frozen: u64, budget: usize) -> Option<u64> {
        let rows = self.pairs.rows(edges);
        let mut copies: Vec<u64> = Vec::new();
        let mut dead = false;
        for_each_copy(&rows, self.t, &mut |copy| {
            let free = self.pairs.copy_mask(copy) & !frozen;
            if free == 0 {
                dead = true;
                return false;
            }
            copies.push(free);
            true
        });
        if copies.is_empty() {
            return Some(0);
        }
        if dead || budget == 0 {
            return None;
        }
        copies.sort_by_key(|m| m.count_ones());
        copies.dedup();
        // pairwise disjoint copies each need their own edit
        let mut used = 0u64;
        let mut packing = 0;
        for &m in &copies {
            if m & used == 0 {
                used |= m;
                packing += 1;
                if packing > budget {
                    return None;
                }
            }
        }
        let branch = copies[0];
        let mut frozen_here = frozen;
        let mut rest = branch;
        while rest != 0 {
            let bit = 1u64 << rest.trailing_zeros();
            rest &= rest - 1;
            if let Some(more) = self.solve(edges ^ bit, frozen_here | bit, budget - 1) {
                return Some(more | bit);
            }
            frozen_here |= bit;
        }
        None
    }
}

/// Minimum number of edge additions and deletions that leave `g` with no
/// induced `K_{2,t}`, searching edit sets of size up to `budget`.
pub fn brute_edit_distance(g: &SimpleGraph, t: ForbParameter, budget: usize) -> Result<EditOutcome> {
    let n = g.order();
    if n > MAX_EDIT_ORDER {
        return Err(Error::TooLarge { order: n, limit: MAX_EDIT_ORDER });
    }
    if g.has_loops() {
        return Err(Error::Parameter("edit distance is defined for loopless graphs".into()));
    }
    let search = EditSearch { pairs: PairIndex::new(n), t: t.get() };
    let mut edges = 0u64;
    for (i, j) in g.edges() {
        edges |= 1 << search.pairs.index[i][j];
    }
    for depth in 0..=budget {
        if let Some(edit) = search.solve(edges, 0, depth) {
            let mut witness = g.clone();
            for i in 0..n {
                for j in i + 1..n {
                    if edit >> search.pairs.index[i][j] & 1 == 1 {
                        witness.toggle_edge(i, j);
                    }
                }
            }
            return Ok(EditOutcome::Exact(EditResult { distance: edit.count_ones() as usize, witness }));
        }
    }
    Ok(EditOutcome::ExceedsBudget { budget })
}

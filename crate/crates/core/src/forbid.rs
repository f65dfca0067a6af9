//! Embedding checks: colored homomorphisms from simple graphs into CRGs and
//! the gray-subgraph criterion for forbidding `K_{2,t}`.

use crate::crg::{Crg, EdgeColor, VertexColor};
use crate::error::{param, Result};
use crate::graph::SimpleGraph;

/// The `t` of `Forb(K_{2,t})`; always at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ForbParameter(usize);

impl ForbParameter {
    pub fn new(t: usize) -> Result<Self> {
        if t < 2 {
            return Err(param(format!("t must be at least 2, got {t}")));
        }
        Ok(ForbParameter(t))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

fn compatible(crg: &Crg, is_edge: bool, a: usize, b: usize) -> bool {
    if a == b {
        let want = if is_edge { VertexColor::Black } else { VertexColor::White };
        crg.vertex(a) == want
    } else {
        match crg.edge(a, b) {
            EdgeColor::Gray => true,
            EdgeColor::Black => is_edge,
            EdgeColor::White => !is_edge,
        }
    }
}

struct Search<'a> {
    h: &'a SimpleGraph,
    crg: &'a Crg,
    order: Vec<usize>,
    assignment: Vec<Option<usize>>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize, domains: &[Vec<usize>]) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        for &a in &domains[x] {
            self.assignment[x] = Some(a);
            let mut next = domains.to_vec();
            let mut dead = false;
            for &y in &self.order[depth + 1..] {
                let is_edge = self.h.has_edge(x, y);
                next[y].retain(|&b| compatible(self.crg, is_edge, a, b));
                if next[y].is_empty() {
                    dead = true;
                    break;
                }
            }
            if !dead && !self.pigeonhole_dead(depth + 1, &next) && self.run(depth + 1, &next) {
                return true;
            }
        }
        self.assignment[x] = None;
        false
    }

    // Pairwise non-adjacent vertices of H may share a CRG vertex only if it is
    // white (adjacent ones only if black). A greedy independent set (and
    // clique) among the unassigned vertices whose candidate union has no such
    // shareable vertex needs at least as many candidates as members.
    fn pigeonhole_dead(&self, from: usize, domains: &[Vec<usize>]) -> bool {
        let rest = &self.order[from..];
        for want_edge in [false, true] {
            let shareable = if want_edge { VertexColor::Black } else { VertexColor::White };
            let mut members: Vec<usize> = Vec::new();
            for &y in rest {
                if members.iter().all(|&z| self.h.has_edge(y, z) == want_edge) {
                    members.push(y);
                }
            }
            if members.len() < 2 {
                continue;
            }
            let mut union: Vec<usize> = members.iter().flat_map(|&y| domains[y].iter().copied()).collect();
            union.sort_unstable();
            union.dedup();
            if union.iter().all(|&a| self.crg.vertex(a) != shareable) && union.len() < members.len() {
                return true;
            }
        }
        false
    }
}

/// Finds a colored homomorphism `H -> K` if one exists. Exponential in
/// `|V(H)|`; callers keep `H` small.
pub fn find_embedding(h: &SimpleGraph, crg: &Crg) -> Option<Vec<usize>> {
    let n = h.order();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(h.degree(v)));
    let domains = vec![(0..crg.order()).collect::<Vec<_>>(); n];
    let mut search = Search { h, crg, order, assignment: vec![None; n] };
    if search.run(0, &domains) {
        Some(search.assignment.into_iter().map(|a| a.expect("complete assignment")).collect())
    } else {
        None
    }
}

pub fn embeds(h: &SimpleGraph, crg: &Crg) -> bool {
    find_embedding(h, crg).is_some()
}

/// Checks both homomorphism clauses for an explicit map.
pub fn is_embedding(h: &SimpleGraph, crg: &Crg, map: &[usize]) -> bool {
    let n = h.order();
    map.len() == n
        && (0..n).all(|u| (u + 1..n).all(|v| compatible(crg, h.has_edge(u, v), map[u], map[v])))
}

/// Gray adjacency as bit rows, for fast common-neighborhood counts.
struct GrayBits {
    rows: Vec<Vec<u64>>,
}

impl GrayBits {
    fn new(crg: &Crg) -> Self {
        let k = crg.order();
        let words = k.div_ceil(64);
        let mut rows = vec![vec![0u64; words]; k];
        for (i, row) in rows.iter_mut().enumerate() {
            for j in (0..k).filter(|&j| j != i && crg.edge(i, j) == EdgeColor::Gray) {
                row[j / 64] |= 1 << (j % 64);
            }
        }
        GrayBits { rows }
    }

    fn common(&self, u: usize, v: usize) -> usize {
        self.rows[u].iter().zip(&self.rows[v]).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u][v / 64] >> (v % 64) & 1 == 1
    }
}

/// Largest number of common gray neighbors over all vertex pairs.
pub fn max_common_gray_neighbors(crg: &Crg) -> usize {
    let bits = GrayBits::new(crg);
    let k = crg.order();
    (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).map(|(u, v)| bits.common(u, v)).max().unwrap_or(0)
}

/// No two distinct vertices have `t` or more common gray neighbors.
pub fn gray_k2t_free(crg: &Crg, t: ForbParameter) -> bool {
    let bits = GrayBits::new(crg);
    let k = crg.order();
    (0..k).all(|u| (u + 1..k).all(|v| bits.common(u, v) < t.get()))
}

/// No gray edge lies in `t - 2` gray triangles (a gray book `B_{t-2}`).
pub fn gray_book_free(crg: &Crg, t: ForbParameter) -> Result<bool> {
    if t.get() < 3 {
        return Err(param("the book B_{t-2} needs t >= 3"));
    }
    let bits = GrayBits::new(crg);
    let k = crg.order();
    Ok((0..k).all(|u| (u + 1..k).all(|v| !bits.adjacent(u, v) || bits.common(u, v) < t.get() - 2)))
}

/// Gray-subgraph criterion, applicable to all-black CRGs with only white and
/// gray edges and `t >= 3`. `None` when it does not apply.
pub fn lemma_forbids_k2t(crg: &Crg, t: ForbParameter) -> Option<bool> {
    if !crg.is_black_white_gray() || t.get() < 3 {
        return None;
    }
    Some(gray_k2t_free(crg, t) && gray_book_free(crg, t).expect("t >= 3"))
}

/// `true` iff no colored homomorphism `K_{2,t} -> K` exists, by search.
pub fn general_forbids_k2t(crg: &Crg, t: ForbParameter) -> bool {
    !embeds(&SimpleGraph::complete_bipartite(2, t.get()), crg)
}

/// Whether `K` forbids `K_{2,t}`: the gray-subgraph criterion where it
/// applies, the general homomorphism search otherwise.
pub fn forbids_k2t(crg: &Crg, t: ForbParameter) -> bool {
    lemma_forbids_k2t(crg, t).unwrap_or_else(|| general_forbids_k2t(crg, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crg::{Crg, EdgeColor, VertexColor};
    use crate::test_support::arb_crg;
    use proptest::prelude::*;

    fn t(v: usize) -> ForbParameter {
        ForbParameter::new(v).unwrap()
    }

    fn k(w: usize, b: usize) -> Crg {
        let mut vs = vec![VertexColor::White; w];
        vs.extend(vec![VertexColor::Black; b]);
        Crg::new(vs).unwrap()
    }

    fn gray_k23() -> Crg {
        Crg::black_from_gray_graph(&SimpleGraph::complete_bipartite(2, 3)).unwrap()
    }

    /// Every map `V(H) -> V(K)`, checked clause by clause.
    fn exhaustive_embeds(h: &SimpleGraph, crg: &Crg) -> bool {
        let n = h.order();
        let k = crg.order();
        let total = k.pow(n as u32);
        (0..total).any(|mut code| {
            let map: Vec<usize> = (0..n)
                .map(|_| {
                    let a = code % k;
                    code /= k;
                    a
                })
                .collect();
            is_embedding(h, crg, &map)
        })
    }

    #[test]
    fn black_vertex_absorbs_cliques() {
        assert!(embeds(&SimpleGraph::complete(3), &k(0, 1)));
    }

    #[test]
    fn k22_into_k11_and_k12() {
        let k22 = SimpleGraph::complete_bipartite(2, 2);
        assert!(!exhaustive_embeds(&k22, &k(1, 1)));
        assert!(!embeds(&k22, &k(1, 1)));

        let crg = k(1, 2);
        let map = find_embedding(&k22, &crg).unwrap();
        assert!(is_embedding(&k22, &crg, &map));
        // the explicit map: 2-side on the white vertex, t-side split
        assert!(is_embedding(&k22, &crg, &[0, 0, 1, 2]));
    }

    #[test]
    fn gray_k2t_examples() {
        assert!(gray_k2t_free(&k(0, 3), t(3)));
        assert!(!gray_k2t_free(&gray_k23(), t(3)));
    }

    #[test]
    fn gray_book_examples() {
        assert!(!gray_book_free(&k(0, 3), t(3)).unwrap());
        assert!(gray_book_free(&k(0, 2), t(3)).unwrap());
        assert!(gray_book_free(&k(0, 2), t(2)).is_err());
    }

    #[test]
    fn forbid_examples() {
        for tv in 3..=7 {
            assert!(forbids_k2t(&k(0, tv - 1), t(tv)), "t={tv}");
            assert!(!forbids_k2t(&k(0, tv), t(tv)), "t={tv}");
        }
        assert!(!forbids_k2t(&gray_k23(), t(3)));
        assert!(forbids_k2t(&k(1, 1), t(2)));
        // mixed colors route to the search
        assert_eq!(lemma_forbids_k2t(&k(1, 1), t(3)), None);
        assert!(forbids_k2t(&k(1, 1), t(3)));
    }

    #[test]
    fn t_below_two_rejected() {
        assert!(ForbParameter::new(1).is_err());
    }

    proptest! {
        #[test]
        fn search_matches_exhaustive(crg in arb_crg(3), tv in 2usize..=3) {
            let h = SimpleGraph::complete_bipartite(2, tv);
            prop_assert_eq!(embeds(&h, &crg), exhaustive_embeds(&h, &crg));
        }

        #[test]
        fn lemma_agrees_with_search(gray in proptest::collection::vec(any::<bool>(), 21), tv in 3usize..=5) {
            let mut g = SimpleGraph::empty(7);
            let mut bits = gray.into_iter();
            for i in 0..7 {
                for j in i + 1..7 {
                    if bits.next().unwrap() {
                        g.add_edge(i, j);
                    }
                }
            }
            let crg = Crg::black_from_gray_graph(&g).unwrap();
            prop_assert_eq!(lemma_forbids_k2t(&crg, t(tv)).unwrap(), general_forbids_k2t(&crg, t(tv)));
        }

        #[test]
        fn graying_never_breaks_an_embedding(crg in arb_crg(4), i in 0usize..4, j in 0usize..4, tv in 2usize..=3) {
            prop_assume!(i != j && i < crg.order() && j < crg.order());
            let h = SimpleGraph::complete_bipartite(2, tv);
            let grayed = crg.clone().with_edge(i, j, EdgeColor::Gray);
            prop_assert!(!embeds(&h, &crg) || embeds(&h, &grayed));
        }

        #[test]
        fn forbidding_is_hereditary(crg in arb_crg(5), mask in 1u32..32, tv in 2usize..=4) {
            let keep: Vec<usize> = (0..crg.order()).filter(|&v| mask >> v & 1 == 1).collect();
            prop_assume!(!keep.is_empty());
            if forbids_k2t(&crg, t(tv)) {
                prop_assert!(forbids_k2t(&crg.sub_crg(&keep).unwrap(), t(tv)));
            }
        }
    }
}

//! Plain undirected graphs, optionally with loops.
//!
//! Loops are only meaningful to consumers that say so (the bipartite double
//! and the Füredi construction); everything else rejects them.

use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Vec<bool>>,
    loops: Vec<bool>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        SimpleGraph { n, adj: vec![vec![false; n]; n], loops: vec![false; n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    /// `K_{a,b}`: vertices `0..a` form one side, `a..a+b` the other.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Self::empty(a + b);
        for i in 0..a {
            for j in a..a + b {
                g.add_edge(i, j);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty(n);
        for &(i, j) in edges {
            g.add_edge(i, j);
        }
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Adds the edge `ij`; `i == j` adds a loop.
    pub fn add_edge(&mut self, i: usize, j: usize) {
        if i == j {
            self.loops[i] = true;
        } else {
            self.adj[i][j] = true;
            self.adj[j][i] = true;
        }
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) {
        if i == j {
            self.loops[i] = false;
        } else {
            self.adj[i][j] = false;
            self.adj[j][i] = false;
        }
    }

    pub fn toggle_edge(&mut self, i: usize, j: usize) {
        if self.has_edge(i, j) {
            self.remove_edge(i, j);
        } else {
            self.add_edge(i, j);
        }
    }

    pub fn add_loop(&mut self, i: usize) {
        self.loops[i] = true;
    }

    /// Adjacency; for `i == j` this reports whether `i` carries a loop.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        if i == j {
            self.loops[i]
        } else {
            self.adj[i][j]
        }
    }

    pub fn has_loop(&self, i: usize) -> bool {
        self.loops[i]
    }

    pub fn has_loops(&self) -> bool {
        self.loops.iter().any(|&l| l)
    }

    pub fn loop_count(&self) -> usize {
        self.loops.iter().filter(|&&l| l).count()
    }

    /// Non-loop edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).filter(move |&j| self.adj[i][j]).map(move |j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Neighbors of `v`, including `v` itself when it carries a loop.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_edge(v, u))
    }

    /// Degree with a loop counted once.
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        (0..self.n).filter(|&w| self.has_edge(u, w) && self.has_edge(v, w)).count()
    }

    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.adj[i][j] {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Parses the `graph <n>` / `e i j` / `loop i` text format. Loop lines are
    /// rejected unless `allow_loops` is set.
    pub fn parse(text: &str, allow_loops: bool) -> Result<Self> {
        let mut graph: Option<SimpleGraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line, message };
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let index = |tok: &str, n: usize| -> Result<usize> {
                let v: usize = tok.parse().map_err(|_| err(format!("bad vertex index `{tok}`")))?;
                if v >= n {
                    return Err(err(format!("vertex {v} out of range for order {n}")));
                }
                Ok(v)
            };
            match (tokens[0], graph.as_mut()) {
                ("graph", None) => {
                    if tokens.len() != 2 {
                        return Err(err("expected `graph <n>`".into()));
                    }
                    let n: usize = tokens[1].parse().map_err(|_| err(format!("bad order `{}`", tokens[1])))?;
                    if n == 0 {
                        return Err(err("graph order must be positive".into()));
                    }
                    graph = Some(SimpleGraph::empty(n));
                }
                ("graph", Some(_)) => return Err(err("duplicate `graph` header".into())),
                (_, None) => return Err(err("expected `graph <n>` header first".into())),
                ("e", Some(g)) => {
                    if tokens.len() != 3 {
                        return Err(err("expected `e <i> <j>`".into()));
                    }
                    let (i, j) = (index(tokens[1], g.n)?, index(tokens[2], g.n)?);
                    if i == j {
                        return Err(err("self-edge; use `loop <i>` where loops are supported".into()));
                    }
                    g.add_edge(i, j);
                }
                ("loop", Some(g)) => {
                    if !allow_loops {
                        return Err(err("loops are not supported by this consumer".into()));
                    }
                    if tokens.len() != 2 {
                        return Err(err("expected `loop <i>`".into()));
                    }
                    let i = index(tokens[1], g.n)?;
                    g.add_loop(i);
                }
                (other, Some(_)) => return Err(err(format!("unknown record `{other}`"))),
            }
        }
        graph.ok_or(Error::Parse { line: 0, message: "missing `graph <n>` header".into() })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("graph {}\n", self.n);
        for (i, j) in self.edges() {
            let _ = writeln!(out, "e {i} {j}");
        }
        for i in (0..self.n).filter(|&i| self.loops[i]) {
            let _ = writeln!(out, "loop {i}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let g = SimpleGraph::parse("graph 3 # path\ne 0 1\ne 1 2\n", false).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(SimpleGraph::parse(&g.to_text(), false).unwrap(), g);
        assert_eq!(g.degree(1), 2);
    }

    #[test]
    fn loops_gated() {
        let text = "graph 2\nloop 0\n";
        assert!(matches!(SimpleGraph::parse(text, false), Err(Error::Parse { line: 2, .. })));
        let g = SimpleGraph::parse(text, true).unwrap();
        assert!(g.has_loop(0));
        assert_eq!(g.degree(0), 1);
    }

    #[test]
    fn parse_errors_name_the_line() {
        assert!(matches!(SimpleGraph::parse("graph 2\ne 0 2\n", false), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(SimpleGraph::parse("e 0 1\n", false), Err(Error::Parse { line: 1, .. })));
        assert!(SimpleGraph::parse("", false).is_err());
    }

    #[test]
    fn bipartite_counts() {
        let g = SimpleGraph::complete_bipartite(2, 3);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.common_neighbors(0, 1), 3);
        assert_eq!(g.complement().edge_count(), 10 - 6);
    }
}

//! Colored regularity graphs and their closed-form objective.
//!
//! A CRG is a complete graph whose vertices are black or white and whose
//! edges are black, white or gray. Gray is compatible with both adjacency and
//! non-adjacency, black only with adjacency, white only with non-adjacency.

use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::scalar::{Probability, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexColor {
    Black,
    White,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeColor {
    Black,
    White,
    Gray,
}

impl VertexColor {
    fn token(self) -> &'static str {
        match self {
            VertexColor::Black => "B",
            VertexColor::White => "W",
        }
    }
}

impl EdgeColor {
    fn token(self) -> &'static str {
        match self {
            EdgeColor::Black => "b",
            EdgeColor::White => "w",
            EdgeColor::Gray => "g",
        }
    }
}

/// Dense symmetric matrix, row-major.
pub type Matrix<S> = Vec<Vec<S>>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Crg {
    vertices: Vec<VertexColor>,
    // k*k, symmetric; diagonal entries are unused and kept gray.
    edges: Vec<EdgeColor>,
}

impl Crg {
    /// A CRG with the given vertex colors and every edge gray.
    pub fn new(vertices: Vec<VertexColor>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptySubset);
        }
        let k = vertices.len();
        Ok(Crg { vertices, edges: vec![EdgeColor::Gray; k * k] })
    }

    pub fn all_black(k: usize) -> Result<Self> {
        Self::new(vec![VertexColor::Black; k])
    }

    /// Builds an all-black CRG whose gray edges are the edges of `gray` and
    /// whose remaining edges are white.
    pub fn black_from_gray_graph(gray: &SimpleGraph) -> Result<Self> {
        let k = gray.order();
        let mut crg = Self::all_black(k)?;
        for i in 0..k {
            for j in i + 1..k {
                if !gray.has_edge(i, j) {
                    crg.set_edge(i, j, EdgeColor::White);
                }
            }
        }
        Ok(crg)
    }

    /// Recolors edge `ij`. Panics on `i == j` or out-of-range endpoints.
    pub fn set_edge(&mut self, i: usize, j: usize, color: EdgeColor) {
        assert!(i != j, "CRGs have no self-loops");
        let k = self.order();
        self.edges[i * k + j] = color;
        self.edges[j * k + i] = color;
    }

    pub fn with_edge(mut self, i: usize, j: usize, color: EdgeColor) -> Self {
        self.set_edge(i, j, color);
        self
    }

    pub fn set_vertex(&mut self, v: usize, color: VertexColor) {
        self.vertices[v] = color;
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, v: usize) -> VertexColor {
        self.vertices[v]
    }

    pub fn vertex_colors(&self) -> &[VertexColor] {
        &self.vertices
    }

    pub fn edge(&self, i: usize, j: usize) -> EdgeColor {
        debug_assert!(i != j);
        self.edges[i * self.order() + j]
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let k = self.order();
        (0..k).flat_map(move |i| (i + 1..k).map(move |j| (i, j)))
    }

    pub fn count_vertices(&self, color: VertexColor) -> usize {
        self.vertices.iter().filter(|&&c| c == color).count()
    }

    pub fn count_edges(&self, color: EdgeColor) -> usize {
        self.pairs().filter(|&(i, j)| self.edge(i, j) == color).count()
    }

    pub fn is_all_black(&self) -> bool {
        self.vertices.iter().all(|&c| c == VertexColor::Black)
    }

    /// All vertices black and no black edges: the class Lemma-based
    /// K_{2,t} detection applies to.
    pub fn is_black_white_gray(&self) -> bool {
        self.is_all_black() && self.pairs().all(|(i, j)| self.edge(i, j) != EdgeColor::Black)
    }

    pub fn gray_graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.order());
        for (i, j) in self.pairs() {
            if self.edge(i, j) == EdgeColor::Gray {
                g.add_edge(i, j);
            }
        }
        g
    }

    /// `f_K(p) = [p(|VW| + 2|EW|) + (1-p)(|VB| + 2|EB|)] / k²`.
    pub fn f_value<S: Scalar>(&self, p: &Probability<S>) -> S {
        let k = self.order() as i64;
        let white = (self.count_vertices(VertexColor::White) + 2 * self.count_edges(EdgeColor::White)) as i64;
        let black = (self.count_vertices(VertexColor::Black) + 2 * self.count_edges(EdgeColor::Black)) as i64;
        let num = p.value().clone() * S::from_ratio(white, 1) + p.complement() * S::from_ratio(black, 1);
        num / S::from_ratio(k * k, 1)
    }

    /// `M_K(p)`: black entries weigh `1-p`, white entries `p`, gray `0`.
    pub fn weighted_matrix<S: Scalar>(&self, p: &Probability<S>) -> Matrix<S> {
        let k = self.order();
        let white = p.value().clone();
        let black = p.complement();
        let mut m = vec![vec![S::zero(); k]; k];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = match self.vertices[i] {
                VertexColor::Black => black.clone(),
                VertexColor::White => white.clone(),
            };
            for (j, entry) in row.iter_mut().enumerate().filter(|&(j, _)| j != i) {
                *entry = match self.edge(i, j) {
                    EdgeColor::Black => black.clone(),
                    EdgeColor::White => white.clone(),
                    EdgeColor::Gray => S::zero(),
                };
            }
        }
        m
    }

    /// Induced sub-CRG on `vertices`, renumbered in the given order.
    pub fn sub_crg(&self, vertices: &[usize]) -> Result<Crg> {
        if vertices.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= self.order()) {
            return Err(Error::VertexOutOfRange { vertex: v, order: self.order() });
        }
        let mut sub = Crg::new(vertices.iter().map(|&v| self.vertices[v]).collect())?;
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if u == v {
                    return Err(Error::Parameter(format!("vertex {u} listed twice")));
                }
                sub.set_edge(a, b, self.edge(u, v));
            }
        }
        Ok(sub)
    }

    /// Two black copies `v'`, `v''` of every vertex of `graph`; `v_i' v_j''`
    /// is gray whenever `v_i v_j` is an edge (a loop at `v` gives `v' v''`),
    /// every other edge is white. Copies `'` are `0..n`, copies `''` are
    /// `n..2n`.
    pub fn bipartite_double(graph: &SimpleGraph) -> Crg {
        let n = graph.order();
        let mut crg = Crg::new(vec![VertexColor::Black; 2 * n]).expect("graph order is positive");
        for i in 0..2 * n {
            for j in i + 1..2 * n {
                crg.set_edge(i, j, EdgeColor::White);
            }
        }
        for i in 0..n {
            for j in 0..n {
                if graph.has_edge(i, j) {
                    crg.set_edge(i, n + j, EdgeColor::Gray);
                }
            }
        }
        crg
    }

    /// Parses the line-oriented CRG text format; omitted pairs are gray.
    pub fn parse(text: &str) -> Result<Crg> {
        let mut order: Option<usize> = None;
        let mut vertices: Vec<Option<VertexColor>> = Vec::new();
        let mut edges: Vec<(usize, usize, usize, EdgeColor)> = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line, message };
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let index = |tok: &str, k: usize| -> Result<usize> {
                let v: usize = tok.parse().map_err(|_| err(format!("bad vertex index `{tok}`")))?;
                if v >= k {
                    return Err(err(format!("vertex {v} out of range for order {k}")));
                }
                Ok(v)
            };
            match (tokens[0], order) {
                ("crg", None) => {
                    if tokens.len() != 2 {
                        return Err(err("expected `crg <k>`".into()));
                    }
                    let k: usize = tokens[1].parse().map_err(|_| err(format!("bad order `{}`", tokens[1])))?;
                    if k == 0 {
                        return Err(err("CRG order must be positive".into()));
                    }
                    order = Some(k);
                    vertices = vec![None; k];
                }
                ("crg", Some(_)) => return Err(err("duplicate `crg` header".into())),
                (_, None) => return Err(err("expected `crg <k>` header first".into())),
                ("v", Some(k)) => {
                    if tokens.len() != 3 {
                        return Err(err("expected `v <index> <B|W>`".into()));
                    }
                    let v = index(tokens[1], k)?;
                    let color = match tokens[2] {
                        "B" => VertexColor::Black,
                        "W" => VertexColor::White,
                        other => return Err(err(format!("bad vertex color `{other}`"))),
                    };
                    if vertices[v].is_some() {
                        return Err(err(format!("duplicate vertex {v}")));
                    }
                    vertices[v] = Some(color);
                }
                ("e", Some(k)) => {
                    if tokens.len() != 4 {
                        return Err(err("expected `e <i> <j> <b|w|g>`".into()));
                    }
                    let (i, j) = (index(tokens[1], k)?, index(tokens[2], k)?);
                    if i == j {
                        return Err(err(format!("self-loop at vertex {i}")));
                    }
                    let color = match tokens[3] {
                        "b" => EdgeColor::Black,
                        "w" => EdgeColor::White,
                        "g" => EdgeColor::Gray,
                        other => return Err(err(format!("bad edge color `{other}`"))),
                    };
                    let (i, j) = (i.min(j), i.max(j));
                    if let Some(&(_, _, prev, _)) =
                        edges.iter().find(|&&(a, b, _, c)| a == i && b == j && c != color)
                    {
                        return Err(err(format!("edge {i} {j} conflicts with color given on line {prev}")));
                    }
                    edges.push((i, j, line, color));
                }
                (other, Some(_)) => return Err(err(format!("unknown record `{other}`"))),
            }
        }
        let Some(_) = order else {
            return Err(Error::Parse { line: last_line, message: "missing `crg <k>` header".into() });
        };
        let colors = vertices
            .iter()
            .enumerate()
            .map(|(v, c)| c.ok_or(Error::Parse { line: last_line, message: format!("vertex {v} has no color") }))
            .collect::<Result<Vec<_>>>()?;
        let mut crg = Crg::new(colors)?;
        for (i, j, _, color) in edges {
            crg.set_edge(i, j, color);
        }
        Ok(crg)
    }

    /// Canonical text: vertices by index, non-gray edges lexicographically.
    pub fn to_text(&self) -> String {
        let mut out = format!("crg {}\n", self.order());
        for (v, c) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "v {v} {}", c.token());
        }
        for (i, j) in self.pairs() {
            let c = self.edge(i, j);
            if c != EdgeColor::Gray {
                let _ = writeln!(out, "e {i} {j} {}", c.token());
            }
        }
        out
    }
}

impl fmt::Display for Crg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `u^T M u`.
pub fn quadratic_form<S: Scalar>(m: &Matrix<S>, u: &[S]) -> S {
    let mut total = S::zero();
    for (i, row) in m.iter().enumerate() {
        let mut acc = S::zero();
        for (mij, uj) in row.iter().zip(u) {
            acc = acc + mij.clone() * uj.clone();
        }
        total = total + u[i].clone() * acc;
    }
    total
}

/// `M u`.
pub fn mat_vec<S: Scalar>(m: &Matrix<S>, u: &[S]) -> Vec<S> {
    m.iter()
        .map(|row| row.iter().zip(u).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
        .collect()
}

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{Pattern, SystemPattern};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexClass {
    State,
    Input,
    Output,
}

/// A tagged vertex; `index` is 1-based within its class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub class: VertexClass,
    pub index: usize,
}

impl Vertex {
    pub fn label(&self) -> String {
        let prefix = match self.class {
            VertexClass::State => 'x',
            VertexClass::Input => 'u',
            VertexClass::Output => 'y',
        };
        format!("{prefix}{}", self.index)
    }
}

/// Directed graph over tagged vertices. Vertex ids are 0-based positions in
/// [`Digraph::vertices`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    vertices: Vec<Vertex>,
    edges: BTreeSet<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        let k = vertices.len();
        Self {
            vertices,
            edges: BTreeSet::new(),
            out: vec![Vec::new(); k],
            inc: vec![Vec::new(); k],
        }
    }

    /// Graph on `n` state vertices and no edges.
    pub fn states(n: usize) -> Self {
        Self::new(
            (1..=n)
                .map(|index| Vertex {
                    class: VertexClass::State,
                    index,
                })
                .collect(),
        )
    }

    pub fn add_edge(&mut self, tail: usize, head: usize) -> Result<bool> {
        let k = self.vertices.len();
        for v in [tail, head] {
            if v >= k {
                return Err(Error::IndexOutOfRange {
                    what: "vertex",
                    index: v + 1,
                    bound: k,
                });
            }
        }
        if !self.edges.insert((tail, head)) {
            return Ok(false);
        }
        // Keep adjacency sorted so traversal order depends only on vertex ids.
        let o = &mut self.out[tail];
        o.insert(o.partition_point(|&w| w < head), head);
        let i = &mut self.inc[head];
        i.insert(i.partition_point(|&w| w < tail), tail);
        Ok(true)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, tail: usize, head: usize) -> bool {
        self.edges.contains(&(tail, head))
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    /// Id of the vertex with the given class and 1-based index.
    pub fn find(&self, class: VertexClass, index: usize) -> Option<usize> {
        self.vertices.iter().position(|v| v.class == class && v.index == index)
    }
}

/// Builds `G(A, B, C)`: states first, then inputs, then outputs.
///
/// `A[j,i] != 0` gives `x_i -> x_j`, `B[j,i]` gives `u_i -> x_j` and
/// `C[j,i]` gives `x_i -> y_j`.
pub fn system_digraph(sys: &SystemPattern) -> Digraph {
    let (n, m, p) = (sys.n(), sys.m(), sys.p());
    let mut vertices = Vec::with_capacity(n + m + p);
    for (class, count) in [
        (VertexClass::State, n),
        (VertexClass::Input, m),
        (VertexClass::Output, p),
    ] {
        vertices.extend((1..=count).map(|index| Vertex { class, index }));
    }
    let mut g = Digraph::new(vertices);
    for (j, i) in sys.a().entries() {
        g.add_edge(i - 1, j - 1).expect("in range");
    }
    for (j, i) in sys.b().entries() {
        g.add_edge(n + i - 1, j - 1).expect("in range");
    }
    for (j, i) in sys.c().entries() {
        g.add_edge(i - 1, n + m + j - 1).expect("in range");
    }
    g
}

/// `G(A)` alone. Vertex id `k` is state `x_{k+1}`.
pub fn state_digraph(a: &Pattern) -> Digraph {
    let mut g = Digraph::states(a.rows());
    for (j, i) in a.entries() {
        g.add_edge(i - 1, j - 1).expect("in range");
    }
    g
}

/// Weighted bipartite edge, oriented from a right vertex to a left vertex.
/// Indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BiEdge {
    pub right: usize,
    pub left: usize,
    pub cost: u64,
}

/// Bipartite graph with at most one edge per `(right, left)` pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bigraph {
    left: usize,
    right: usize,
    edges: BTreeMap<(usize, usize), u64>,
}

impl Bigraph {
    pub fn new(left: usize, right: usize) -> Self {
        Self {
            left,
            right,
            edges: BTreeMap::new(),
        }
    }

    /// Inserts or overwrites the edge `right -> left`.
    pub fn set_edge(&mut self, right: usize, left: usize, cost: u64) -> Result<()> {
        if right >= self.right {
            return Err(Error::IndexOutOfRange {
                what: "right vertex",
                index: right + 1,
                bound: self.right,
            });
        }
        if left >= self.left {
            return Err(Error::IndexOutOfRange {
                what: "left vertex",
                index: left + 1,
                bound: self.left,
            });
        }
        self.edges.insert((right, left), cost);
        Ok(())
    }

    pub fn left_size(&self) -> usize {
        self.left
    }

    pub fn right_size(&self) -> usize {
        self.right
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn cost(&self, right: usize, left: usize) -> Option<u64> {
        self.edges.get(&(right, left)).copied()
    }

    /// Edges sorted by `(right, left)`. The position in this order is the
    /// edge index used for tie-breaking.
    pub fn edges(&self) -> impl Iterator<Item = BiEdge> + '_ {
        self.edges
            .iter()
            .map(|(&(right, left), &cost)| BiEdge { right, left, cost })
    }

    pub fn total_cost(&self) -> u64 {
        self.edges.values().sum()
    }

    /// Inverse of [`pattern_bigraph`].
    pub fn to_pattern(&self) -> Pattern {
        Pattern::from_entries(self.left, self.right, self.edges.keys().map(|&(r, l)| (l + 1, r + 1)))
            .expect("bigraph indices are in range")
    }
}

/// `B(M)`: left vertices are rows, right vertices are columns, and
/// `M[i,j] != 0` gives the zero-cost edge `(j, i)`.
pub fn pattern_bigraph(m: &Pattern) -> Bigraph {
    let mut g = Bigraph::new(m.rows(), m.cols());
    for (i, j) in m.entries() {
        g.set_edge(j - 1, i - 1, 0).expect("in range");
    }
    g
}

/// A set of bipartite edges with pairwise distinct endpoints.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MatchingRepr")]
pub struct Matching {
    edges: Vec<BiEdge>,
}

#[derive(Deserialize)]
struct MatchingRepr {
    edges: Vec<BiEdge>,
}

impl TryFrom<MatchingRepr> for Matching {
    type Error = Error;

    fn try_from(r: MatchingRepr) -> Result<Self> {
        Matching::new(r.edges)
    }
}

impl Matching {
    /// Validates disjointness. Edges are kept sorted by `(right, left)`.
    pub fn new(mut edges: Vec<BiEdge>) -> Result<Self> {
        edges.sort();
        let mut lefts = BTreeSet::new();
        let mut rights = BTreeSet::new();
        for e in &edges {
            if !lefts.insert(e.left) || !rights.insert(e.right) {
                return Err(Error::Invalid(format!(
                    "edge ({}, {}) shares an endpoint with another matching edge",
                    e.right, e.left
                )));
            }
        }
        Ok(Self { edges })
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self) -> u64 {
        self.edges.iter().map(|e| e.cost).sum()
    }

    pub fn edges(&self) -> &[BiEdge] {
        &self.edges
    }

    /// `out[r] = Some(l)` when right vertex `r` is matched to left `l`.
    pub fn right_to_left(&self, right_size: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; right_size];
        for e in &self.edges {
            out[e.right] = Some(e.left);
        }
        out
    }

    pub fn left_to_right(&self, left_size: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; left_size];
        for e in &self.edges {
            out[e.left] = Some(e.right);
        }
        out
    }
}

//! Undirected multigraphs with stable edge ids.
//!
//! Loops and parallel edges are allowed. Edge ids are handed out in
//! increasing order and never reused, so deletion and contraction keep every
//! surviving edge's id.

mod blocks;
pub mod canon;
mod edge_set;
pub mod generate;
pub mod io;
pub(crate) mod mask;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use blocks::{block_decomposition, BlockDecomposition};
pub use edge_set::EdgeSet;

pub type Vertex = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite `x`. For a loop this is `x` itself.
    pub fn other(&self, x: Vertex) -> Vertex {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    next_id: usize,
    simple: bool,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            next_id: 0,
            simple: true,
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<EdgeId> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexRange {
                    vertex: x,
                    vertex_count: self.n,
                });
            }
        }
        let (u, v) = (u.min(v), u.max(v));
        if u == v || self.edges.iter().any(|e| e.u == u && e.v == v) {
            self.simple = false;
        }
        let id = EdgeId(self.next_id);
        self.next_id += 1;
        self.edges.push(Edge { id, u, v });
        Ok(id)
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.n += 1;
        self.n - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Live edges in id order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.position(id).map(|p| &self.edges[p])
    }

    /// Index of the edge in [`Graph::edges`].
    pub fn position(&self, id: EdgeId) -> Option<usize> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok()
    }

    /// One more than the largest id ever handed out.
    pub fn id_bound(&self) -> usize {
        self.next_id
    }

    /// No loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        self.simple
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().map(|e| e.id).collect()
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: Vertex) -> usize {
        self.edges
            .iter()
            .map(|e| (e.u == v) as usize + (e.v == v) as usize)
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            d[e.u] += 1;
            d[e.v] += 1;
        }
        d
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// For each vertex, the positions of its incident edges. Loops appear once.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (p, e) in self.edges.iter().enumerate() {
            inc[e.u].push(p);
            if !e.is_loop() {
                inc[e.v].push(p);
            }
        }
        inc
    }

    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.edges
            .iter()
            .filter(|e| e.u == v || e.v == v)
            .map(|e| e.other(v))
            .collect()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (u, v) = (u.min(v), u.max(v));
        self.edges.iter().any(|e| e.u == u && e.v == v)
    }

    /// Component label per vertex, labels numbered by first appearance.
    pub fn component_labels(&self) -> Vec<usize> {
        let inc = self.incidence();
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &p in &inc[x] {
                    let y = self.edges[p].other(x);
                    if label[y] == usize::MAX {
                        label[y] = next;
                        queue.push_back(y);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.component_labels()
            .into_iter()
            .max()
            .map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Dimension of the cycle space, |E| - |V| + k.
    pub fn cyclomatic_number(&self) -> usize {
        self.edges.len() + self.component_count() - self.n
    }

    /// Length of a shortest cycle; `None` for forests. A loop has girth 1 and
    /// a parallel pair girth 2.
    pub fn girth(&self) -> Option<usize> {
        if self.edges.iter().any(Edge::is_loop) {
            return Some(1);
        }
        if !self.simple {
            return Some(2);
        }
        let inc = self.incidence();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut via = vec![usize::MAX; self.n];
        for s in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[x] + 1 >= b) {
                    break;
                }
                for &p in &inc[x] {
                    if p == via[x] {
                        continue;
                    }
                    let y = self.edges[p].other(x);
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        via[y] = p;
                        queue.push_back(y);
                    } else {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
            via.iter_mut().for_each(|p| *p = usize::MAX);
        }
        best
    }

    pub fn delete_edge(&self, id: EdgeId) -> Result<Graph> {
        let p = self.position(id).ok_or(Error::UnknownEdge(id))?;
        let mut g = self.clone();
        g.edges.remove(p);
        g.recompute_simple();
        Ok(g)
    }

    /// Contracts a non-loop edge, keeping any loops and parallel edges this
    /// creates. The higher endpoint is merged into the lower one and vertices
    /// above it shift down by one.
    pub fn contract_edge(&self, id: EdgeId) -> Result<Graph> {
        let p = self.position(id).ok_or(Error::UnknownEdge(id))?;
        let e = self.edges[p];
        if e.is_loop() {
            return Err(Error::InvalidMove(format!(
                "cannot contract loop {id:?}; delete it instead"
            )));
        }
        let (keep, gone) = (e.u, e.v);
        let relabel = |x: Vertex| {
            let x = if x == gone { keep } else { x };
            if x > gone {
                x - 1
            } else {
                x
            }
        };
        let edges = self
            .edges
            .iter()
            .filter(|f| f.id != id)
            .map(|f| {
                let (a, b) = (relabel(f.u), relabel(f.v));
                Edge {
                    id: f.id,
                    u: a.min(b),
                    v: a.max(b),
                }
            })
            .collect();
        let mut g = Graph {
            n: self.n - 1,
            edges,
            next_id: self.next_id,
            simple: true,
        };
        g.recompute_simple();
        Ok(g)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::new(self.n + other.n);
        for e in &self.edges {
            g.add_edge(e.u, e.v).expect("in range");
        }
        for e in &other.edges {
            g.add_edge(e.u + self.n, e.v + self.n).expect("in range");
        }
        g
    }

    /// Identifies vertex `at_self` of `self` with vertex `at_other` of `other`.
    pub fn glue(&self, at_self: Vertex, other: &Graph, at_other: Vertex) -> Result<Graph> {
        if at_self >= self.n || at_other >= other.n {
            return Err(Error::Argument("gluing vertex out of range".into()));
        }
        let map = |x: Vertex| {
            if x == at_other {
                at_self
            } else if x < at_other {
                self.n + x
            } else {
                self.n + x - 1
            }
        };
        let mut g = Graph::new(self.n + other.n - 1);
        for e in &self.edges {
            g.add_edge(e.u, e.v)?;
        }
        for e in &other.edges {
            g.add_edge(map(e.u), map(e.v))?;
        }
        Ok(g)
    }

    /// Subgraph formed by the edges at the given positions, with its touched
    /// vertices relabelled `0..k` in increasing order.
    pub fn edge_subgraph(&self, positions: impl IntoIterator<Item = usize>) -> Graph {
        let picked: Vec<Edge> = positions.into_iter().map(|p| self.edges[p]).collect();
        let mut verts: Vec<Vertex> = picked.iter().flat_map(|e| [e.u, e.v]).collect();
        verts.sort_unstable();
        verts.dedup();
        let index = |x: Vertex| verts.binary_search(&x).expect("touched vertex");
        let mut g = Graph::new(verts.len());
        for e in picked {
            g.add_edge(index(e.u), index(e.v)).expect("in range");
        }
        g
    }

    /// Every vertex of the spanning subgraph `(V, F)` has even degree.
    pub fn is_even(&self, set: &EdgeSet) -> bool {
        let mut parity = vec![false; self.n];
        for e in self.edges.iter().filter(|e| set.contains(e.id)) {
            if !e.is_loop() {
                parity[e.u] ^= true;
                parity[e.v] ^= true;
            }
        }
        parity.iter().all(|odd| !odd)
    }

    /// Vertices touched by some edge of `set`.
    pub fn vertices_of(&self, set: &EdgeSet) -> Vec<Vertex> {
        let mut seen = vec![false; self.n];
        for e in self.edges.iter().filter(|e| set.contains(e.id)) {
            seen[e.u] = true;
            seen[e.v] = true;
        }
        (0..self.n).filter(|&v| seen[v]).collect()
    }

    fn recompute_simple(&mut self) {
        let mut pairs: Vec<(Vertex, Vertex)> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        pairs.sort_unstable();
        self.simple = pairs.iter().all(|(u, v)| u != v) && pairs.windows(2).all(|w| w[0] != w[1]);
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            vertices: self.n,
            edges: self.edges.iter().map(|e| [e.u, e.v]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(deserializer)?;
        let pairs: Vec<(usize, usize)> = repr.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(repr.vertices, &pairs).map_err(serde::de::Error::custom)
    }
}

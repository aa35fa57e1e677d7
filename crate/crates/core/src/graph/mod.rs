//! Marked graphs: simple graphs whose vertices carry a loop flag and a mark
//! flag, together with a count of free loops.
//!
//! All rewriting operations return a new graph and leave the receiver
//! untouched. Vertices are addressed by their string ids at the public
//! surface; positions in [`MarkedGraph::vertices`] give the row order of
//! every matrix built from the graph.

mod io;

pub use io::{GraphParseError, GraphParseErrorKind};

use crate::algebra::Gf2Matrix;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("edge {0}-{0} is a self-edge; loops are vertex flags")]
    SelfEdge(String),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(String, String),
    #[error("vertices `{0}` and `{1}` are not adjacent")]
    NotAdjacent(String, String),
    #[error("pivot needs two distinct vertices, got `{0}` twice")]
    SameVertex(String),
    #[error("vertex `{0}` has no loop")]
    NotLooped(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: String,
    pub looped: bool,
    pub marked: bool,
}

#[derive(Clone)]
pub struct MarkedGraph {
    vertices: Vec<Vertex>,
    /// Symmetric with zero diagonal.
    adj: Gf2Matrix,
    free_loops: usize,
}

/// A subset `T` of the vertex set, stored by vertex position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSubset {
    members: Vec<bool>,
}

impl VertexSubset {
    pub fn empty(g: &MarkedGraph) -> Self {
        Self {
            members: vec![false; g.len()],
        }
    }

    pub fn all(g: &MarkedGraph) -> Self {
        Self {
            members: vec![true; g.len()],
        }
    }

    pub fn from_ids(g: &MarkedGraph, ids: &[&str]) -> Result<Self, GraphError> {
        let mut t = Self::empty(g);
        for id in ids {
            t.members[g.index_of(id)?] = true;
        }
        Ok(t)
    }

    /// Bit `i` of `mask` selects vertex `i`.
    pub fn from_mask(g: &MarkedGraph, mask: u64) -> Self {
        Self {
            members: (0..g.len()).map(|i| i < 64 && mask >> i & 1 == 1).collect(),
        }
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members[index]
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&x| x).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Default for MarkedGraph {
    fn default() -> Self {
        Self::new()
    }
}

impl MarkedGraph {
    pub fn new() -> Self {
        Self {
            vertices: Vec::new(),
            adj: Gf2Matrix::zeros(0, 0),
            free_loops: 0,
        }
    }

    /// A graph with no vertices and `count` free loops.
    pub fn free_loops_only(count: usize) -> Self {
        Self {
            free_loops: count,
            ..Self::new()
        }
    }

    pub fn add_vertex(
        &mut self,
        id: impl Into<String>,
        looped: bool,
        marked: bool,
    ) -> Result<usize, GraphError> {
        let id = id.into();
        if self.position(&id).is_some() {
            return Err(GraphError::DuplicateVertex(id));
        }
        let n = self.len();
        let mut adj = Gf2Matrix::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                if self.adj.get(i, j) {
                    adj.set(i, j, true);
                }
            }
        }
        self.adj = adj;
        self.vertices.push(Vertex { id, looped, marked });
        Ok(n)
    }

    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<(), GraphError> {
        let i = self.index_of(a)?;
        let j = self.index_of(b)?;
        if i == j {
            return Err(GraphError::SelfEdge(a.to_string()));
        }
        if self.adj.get(i, j) {
            return Err(GraphError::DuplicateEdge(a.to_string(), b.to_string()));
        }
        self.set_edge(i, j, true);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, index: usize) -> &Vertex {
        &self.vertices[index]
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn looped_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.looped).count()
    }

    pub fn marked_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.marked).count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    fn position(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn index_of(&self, id: &str) -> Result<usize, GraphError> {
        self.position(id)
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    pub fn contains(&self, id: &str) -> bool {
        self.position(id).is_some()
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.adj.get(i, j)
    }

    pub fn adjacent(&self, a: &str, b: &str) -> Result<bool, GraphError> {
        Ok(self.adj.get(self.index_of(a)?, self.index_of(b)?))
    }

    /// Positions of the neighbors of vertex `i`, in vertex order.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&j| self.adj.get(i, j))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).count()
    }

    /// Non-loop edges `(i, j)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |i| {
            (i + 1..self.len())
                .filter(move |&j| self.adj.get(i, j))
                .map(move |j| (i, j))
        })
    }

    pub fn has_edges(&self) -> bool {
        self.edges().next().is_some()
    }

    /// Bitmask of the neighbors of `i`; requires at most 64 vertices.
    pub(crate) fn neighbor_mask(&self, i: usize) -> u64 {
        debug_assert!(self.len() <= 64);
        self.neighbors(i).fold(0, |m, j| m | 1 << j)
    }

    fn set_edge(&mut self, i: usize, j: usize, value: bool) {
        self.adj.set(i, j, value);
        self.adj.set(j, i, value);
    }

    pub(crate) fn toggle_edge(&mut self, i: usize, j: usize) {
        debug_assert_ne!(i, j);
        self.adj.toggle(i, j);
        self.adj.toggle(j, i);
    }

    pub fn set_looped(&mut self, i: usize, looped: bool) {
        self.vertices[i].looped = looped;
    }

    pub fn set_marked(&mut self, i: usize, marked: bool) {
        self.vertices[i].marked = marked;
    }

    /// Boolean adjacency matrix: loops on the diagonal, adjacency off it.
    pub fn adjacency_matrix(&self) -> Gf2Matrix {
        let mut m = self.adj.clone();
        for (i, v) in self.vertices.iter().enumerate() {
            m.set(i, i, v.looped);
        }
        m
    }

    /// `A(G) + Δ_T` with the row and column of every marked vertex whose
    /// diagonal entry ends up 0 removed.
    pub fn restricted_matrix(&self, t: &VertexSubset) -> Gf2Matrix {
        let mut full = self.adjacency_matrix();
        let mut keep = Vec::with_capacity(self.len());
        for (i, v) in self.vertices.iter().enumerate() {
            let diag = v.looped ^ t.contains(i);
            full.set(i, i, diag);
            if !(v.marked && !diag) {
                keep.push(i);
            }
        }
        full.principal(&keep)
    }

    /// Local complement `G^v`: toggles every edge and loop among the
    /// neighbors of `v`.
    pub fn local_complement(&self, v: &str) -> Result<Self, GraphError> {
        Ok(self.local_complement_at(self.index_of(v)?))
    }

    pub fn local_complement_at(&self, v: usize) -> Self {
        let mut g = self.clone();
        let nbrs: Vec<usize> = self.neighbors(v).collect();
        for (k, &x) in nbrs.iter().enumerate() {
            g.vertices[x].looped ^= true;
            for &y in &nbrs[k + 1..] {
                g.toggle_edge(x, y);
            }
        }
        g
    }

    fn check_pivot_pair(&self, v: &str, w: &str) -> Result<(usize, usize), GraphError> {
        let i = self.index_of(v)?;
        let j = self.index_of(w)?;
        if i == j {
            return Err(GraphError::SameVertex(v.to_string()));
        }
        if !self.adj.get(i, j) {
            return Err(GraphError::NotAdjacent(v.to_string(), w.to_string()));
        }
        Ok((i, j))
    }

    /// Pivot `G^{vw}` on an edge.
    pub fn pivot(&self, v: &str, w: &str) -> Result<Self, GraphError> {
        let (i, j) = self.check_pivot_pair(v, w)?;
        Ok(self.pivot_at(i, j))
    }

    /// Toggles `xy` for every `x ∈ N(v)`, `y ∈ N(w)` outside `{v, w}` unless
    /// both `x ∈ N(w)` and `y ∈ N(v)`. Loops, marks and edges at `v`, `w`
    /// are untouched.
    pub fn pivot_at(&self, v: usize, w: usize) -> Self {
        debug_assert!(v != w && self.adj.get(v, w));
        let mut g = self.clone();
        let nv: Vec<usize> = self.neighbors(v).filter(|&x| x != w).collect();
        let nw: Vec<usize> = self.neighbors(w).filter(|&y| y != v).collect();
        for &x in &nv {
            for &y in &nw {
                if x != y && !(self.adj.get(x, w) && self.adj.get(y, v)) {
                    g.toggle_edge(x, y);
                }
            }
        }
        g
    }

    /// Marked pivot `G_c^{vw}`: pivot, toggle the marks on `v` and `w`, then
    /// interchange their neighbors.
    pub fn marked_pivot(&self, v: &str, w: &str) -> Result<Self, GraphError> {
        let (i, j) = self.check_pivot_pair(v, w)?;
        Ok(self.marked_pivot_at(i, j))
    }

    pub fn marked_pivot_at(&self, v: usize, w: usize) -> Self {
        let mut g = self.pivot_at(v, w);
        g.vertices[v].marked ^= true;
        g.vertices[w].marked ^= true;
        for x in 0..g.len() {
            if x == v || x == w {
                continue;
            }
            let to_v = g.adj.get(v, x);
            let to_w = g.adj.get(w, x);
            g.set_edge(v, x, to_w);
            g.set_edge(w, x, to_v);
        }
        g
    }

    /// `G + I`: every loop flag flipped.
    pub fn toggle_all_loops(&self) -> Self {
        let mut g = self.clone();
        for v in &mut g.vertices {
            v.looped ^= true;
        }
        g
    }

    /// Disjoint union; vertex ids must not collide.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self, GraphError> {
        let mut g = self.clone();
        let offset = g.len();
        for v in &other.vertices {
            g.add_vertex(v.id.clone(), v.looped, v.marked)?;
        }
        for (i, j) in other.edges() {
            g.set_edge(offset + i, offset + j, true);
        }
        g.free_loops += other.free_loops;
        Ok(g)
    }

    /// `G - v`: removes `v` and its incident edges.
    pub fn delete_vertex(&self, v: &str) -> Result<Self, GraphError> {
        Ok(self.delete_vertex_at(self.index_of(v)?))
    }

    pub fn delete_vertex_at(&self, v: usize) -> Self {
        self.delete_vertices_at(&[v])
    }

    pub fn delete_vertices_at(&self, gone: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.len()).filter(|i| !gone.contains(i)).collect();
        Self {
            vertices: keep.iter().map(|&i| self.vertices[i].clone()).collect(),
            adj: self.adj.principal(&keep),
            free_loops: self.free_loops,
        }
    }

    /// Subgraph induced on `keep` (in that order), without free loops.
    pub fn induced(&self, keep: &[usize]) -> Self {
        Self {
            vertices: keep.iter().map(|&i| self.vertices[i].clone()).collect(),
            adj: self.adj.principal(keep),
            free_loops: 0,
        }
    }

    /// Vertex sets of the connected components, each in vertex order.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut component = vec![usize::MAX; self.len()];
        let mut parts = Vec::new();
        for start in 0..self.len() {
            if component[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            component[start] = parts.len();
            let mut members = Vec::new();
            while let Some(v) = stack.pop() {
                members.push(v);
                for w in self.neighbors(v) {
                    if component[w] == usize::MAX {
                        component[w] = parts.len();
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            parts.push(members);
        }
        parts
    }

    /// `G - {v,v}`: removes the loop at `v`.
    pub fn delete_loop(&self, v: &str) -> Result<Self, GraphError> {
        let i = self.index_of(v)?;
        if !self.vertices[i].looped {
            return Err(GraphError::NotLooped(v.to_string()));
        }
        let mut g = self.clone();
        g.vertices[i].looped = false;
        Ok(g)
    }

    /// `G⁺`: adjoins one free loop.
    pub fn add_free_loop(&self) -> Self {
        let mut g = self.clone();
        g.free_loops += 1;
        g
    }

    pub fn without_free_loops(&self) -> Self {
        let mut g = self.clone();
        g.free_loops = 0;
        g
    }
}

impl PartialEq for MarkedGraph {
    /// Structural equality by vertex id; vertex order is ignored.
    fn eq(&self, other: &Self) -> bool {
        if self.free_loops != other.free_loops || self.len() != other.len() {
            return false;
        }
        let mut map = Vec::with_capacity(self.len());
        for v in &self.vertices {
            match other.position(&v.id) {
                Some(j) if other.vertices[j] == *v => map.push(j),
                _ => return false,
            }
        }
        (0..self.len())
            .all(|i| (i + 1..self.len()).all(|j| self.adj.get(i, j) == other.adj.get(map[i], map[j])))
    }
}

impl Eq for MarkedGraph {}

impl std::fmt::Debug for MarkedGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MarkedGraph({self})")
    }
}

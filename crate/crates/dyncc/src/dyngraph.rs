//! Dynamic adjacency-list storage for the positive subgraph.
//!
//! Only `(+)` edges are stored; a missing edge is a `(-)` edge. Every query the
//! clustering algorithms issue (degree, adjacency test, neighbor scan, uniform
//! neighbor sample) runs in constant time per call or per scanned element.
//! Deletion swaps the removed neighbor with the last entry of the adjacency
//! sequence and patches the per-vertex position index.

use std::cell::Cell;
use std::fmt;

use rand::Rng;
use rustc_hash::FxHashMap;
use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    InvalidSize,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge ({0}, {1}) is already present")]
    DuplicateEdge(Vertex, Vertex),
    #[error("edge ({0}, {1}) is not present")]
    MissingEdge(Vertex, Vertex),
    #[error("vertex {0} has no neighbors")]
    IsolatedVertex(Vertex),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UpdateOp {
    Insert,
    Delete,
}

/// One label flip: `Insert` turns `(u, v)` positive, `Delete` turns it negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeUpdate {
    pub op: UpdateOp,
    pub u: Vertex,
    pub v: Vertex,
}

impl EdgeUpdate {
    pub fn insert(u: Vertex, v: Vertex) -> Self {
        Self { op: UpdateOp::Insert, u, v }
    }

    pub fn delete(u: Vertex, v: Vertex) -> Self {
        Self { op: UpdateOp::Delete, u, v }
    }

    /// The inverse flip.
    pub fn inverse(self) -> Self {
        let op = match self.op {
            UpdateOp::Insert => UpdateOp::Delete,
            UpdateOp::Delete => UpdateOp::Insert,
        };
        Self { op, ..self }
    }
}

impl fmt::Display for EdgeUpdate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.op {
            UpdateOp::Insert => '+',
            UpdateOp::Delete => '-',
        };
        write!(f, "{sign} {} {}", self.u, self.v)
    }
}

#[derive(Debug, Clone)]
pub struct DynGraph {
    adjacency: Vec<Vec<Vertex>>,
    position: Vec<FxHashMap<Vertex, usize>>,
    m: usize,
}

impl DynGraph {
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::InvalidSize);
        }
        Ok(Self {
            adjacency: vec![Vec::new(); n],
            position: vec![FxHashMap::default(); n],
            m: 0,
        })
    }

    /// Builds a graph from an edge list, rejecting duplicates and self-loops.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Self::new(n)?;
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    fn check(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::OutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.position[u].contains_key(&v) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        self.position[u].insert(v, self.adjacency[u].len());
        self.adjacency[u].push(v);
        self.position[v].insert(u, self.adjacency[v].len());
        self.adjacency[v].push(u);
        self.m += 1;
        Ok(())
    }

    pub fn delete_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v || !self.position[u].contains_key(&v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        self.unlink(u, v);
        self.unlink(v, u);
        self.m -= 1;
        Ok(())
    }

    // Removes `v` from the adjacency sequence of `u`.
    fn unlink(&mut self, u: Vertex, v: Vertex) {
        let idx = self.position[u]
            .remove(&v)
            .expect("adjacency symmetry violated");
        let list = &mut self.adjacency[u];
        list.swap_remove(idx);
        if let Some(&moved) = list.get(idx) {
            self.position[u].insert(moved, idx);
        }
    }

    pub fn apply(&mut self, update: &EdgeUpdate) -> Result<(), GraphError> {
        match update.op {
            UpdateOp::Insert => self.insert_edge(update.u, update.v),
            UpdateOp::Delete => self.delete_edge(update.u, update.v),
        }
    }

    pub fn degree(&self, v: Vertex) -> Result<usize, GraphError> {
        self.check(v)?;
        Ok(self.adjacency[v].len())
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> Result<bool, GraphError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.adjacent(u, v))
    }

    pub fn neighbors(&self, v: Vertex) -> Result<&[Vertex], GraphError> {
        self.check(v)?;
        Ok(&self.adjacency[v])
    }

    /// Uniformly random positive neighbor of `v`.
    pub fn sample_neighbor<R: Rng + ?Sized>(
        &self,
        v: Vertex,
        rng: &mut R,
    ) -> Result<Vertex, GraphError> {
        self.check(v)?;
        let list = &self.adjacency[v];
        if list.is_empty() {
            return Err(GraphError::IsolatedVertex(v));
        }
        Ok(list[rng.gen_range(0..list.len())])
    }

    // Unchecked internals shared with `Oracle`.
    #[inline]
    pub(crate) fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        // probe the smaller index map
        if self.adjacency[u].len() <= self.adjacency[v].len() {
            self.position[u].contains_key(&v)
        } else {
            self.position[v].contains_key(&u)
        }
    }

    #[inline]
    pub(crate) fn adj(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    /// All edges as `(min, max)` pairs in ascending order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out: Vec<(Vertex, Vertex)> = self
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Full scan of the representation invariants. Linear in the graph size;
    /// meant for tests and debugging.
    pub fn validate(&self) -> Result<(), String> {
        let mut degree_sum = 0;
        for (v, list) in self.adjacency.iter().enumerate() {
            degree_sum += list.len();
            if list.len() != self.position[v].len() {
                return Err(format!("vertex {v}: index size differs from degree"));
            }
            for (i, &u) in list.iter().enumerate() {
                if u == v {
                    return Err(format!("self-loop at {v}"));
                }
                if u >= self.n() {
                    return Err(format!("vertex {v} lists out-of-range neighbor {u}"));
                }
                if self.position[v].get(&u) != Some(&i) {
                    return Err(format!("vertex {v}: stale index for neighbor {u}"));
                }
                if !self.position[u].contains_key(&v) {
                    return Err(format!("edge ({v}, {u}) is not symmetric"));
                }
            }
        }
        if degree_sum != 2 * self.m {
            return Err(format!("edge count {} but degree sum {degree_sum}", self.m));
        }
        Ok(())
    }
}

/// Read-only view of a [`DynGraph`] that counts every primitive call.
///
/// Algorithms take an `Oracle` instead of the graph so their work can be
/// measured in the same unit the update-time analysis uses: one degree query,
/// adjacency test, neighbor sample, or scanned neighbor each costs one op.
pub struct Oracle<'g> {
    graph: &'g DynGraph,
    ops: Cell<u64>,
}

impl<'g> Oracle<'g> {
    pub fn new(graph: &'g DynGraph) -> Self {
        Self { graph, ops: Cell::new(0) }
    }

    pub fn graph(&self) -> &'g DynGraph {
        self.graph
    }

    /// Operations charged so far.
    pub fn ops(&self) -> u64 {
        self.ops.get()
    }

    #[inline]
    pub(crate) fn charge(&self, k: u64) {
        self.ops.set(self.ops.get() + k);
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.charge(1);
        self.graph.adjacency[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.charge(1);
        u != v && self.graph.adjacent(u, v)
    }

    /// Iterates `N(v)`, charging one op per yielded neighbor.
    pub fn neighbors(&self, v: Vertex) -> Neighbors<'_> {
        Neighbors { iter: self.graph.adj(v).iter(), ops: &self.ops }
    }

    /// Uniform neighbor of `v`, or `None` when `v` is isolated.
    #[inline]
    pub fn sample_neighbor<R: Rng + ?Sized>(&self, v: Vertex, rng: &mut R) -> Option<Vertex> {
        self.charge(1);
        let list = self.graph.adj(v);
        if list.is_empty() {
            None
        } else {
            Some(list[rng.gen_range(0..list.len())])
        }
    }
}

pub struct Neighbors<'a> {
    iter: std::slice::Iter<'a, Vertex>,
    ops: &'a Cell<u64>,
}

impl Iterator for Neighbors<'_> {
    type Item = Vertex;

    #[inline]
    fn next(&mut self) -> Option<Vertex> {
        let v = self.iter.next()?;
        self.ops.set(self.ops.get() + 1);
        Some(*v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.iter.size_hint()
    }
}

impl ExactSizeIterator for Neighbors<'_> {}

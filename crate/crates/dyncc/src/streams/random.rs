use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;

use super::pool::EdgePool;
use super::{StreamError, StreamSpec};
use crate::dyngraph::{DynGraph, EdgeUpdate, Vertex};

pub(crate) fn check_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<(), StreamError> {
    if n == 0 {
        return Err(StreamError::InvalidSpec("graph needs at least one vertex".into()));
    }
    let mut seen = FxHashSet::default();
    for &(u, v) in edges {
        if u == v || u >= n || v >= n {
            return Err(StreamError::InvalidSpec(format!("bad edge ({u}, {v}) for n = {n}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(StreamError::InvalidSpec(format!("duplicate edge ({u}, {v})")));
        }
    }
    Ok(())
}

/// Random insert/delete stream over a fixed edge universe.
///
/// Edges are inserted in a seeded random order. At each step a coin with
/// probability `p_del` chooses a deletion of a uniformly random present edge;
/// otherwise the next edge of the order is inserted. Once the order is used
/// up, insertions re-draw uniformly from previously deleted edges. When the
/// graph is empty a deletion turns into re-inserting the edge deleted last
/// (or the next new edge), and when every edge is present an insertion turns
/// into a deletion.
#[derive(Debug, Clone)]
pub struct RandomStream {
    graph: DynGraph,
    order: Vec<(Vertex, Vertex)>,
    next: usize,
    present: EdgePool,
    recycled: EdgePool,
    last_deleted: Option<(Vertex, Vertex)>,
    p_del: f64,
    remaining: usize,
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(n: usize, edges: &[(Vertex, Vertex)], spec: &StreamSpec) -> Result<Self, StreamError> {
        spec.validate()?;
        check_edges(n, edges)?;
        if edges.is_empty() {
            return Err(StreamError::InvalidSpec("edge list is empty".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        let mut order = edges.to_vec();
        order.shuffle(&mut rng);
        Ok(Self {
            graph: DynGraph::new(n).expect("n checked"),
            order,
            next: 0,
            present: EdgePool::default(),
            recycled: EdgePool::default(),
            last_deleted: None,
            p_del: spec.p_del,
            remaining: spec.total_updates,
            rng,
        })
    }

    /// The graph after every update emitted so far.
    pub fn graph(&self) -> &DynGraph {
        &self.graph
    }

    fn fresh_or_recycled(&mut self) -> Option<(Vertex, Vertex)> {
        if let Some(&e) = self.order.get(self.next) {
            self.next += 1;
            return Some(e);
        }
        self.recycled.take_random(&mut self.rng)
    }

    fn emit_insert(&mut self, (u, v): (Vertex, Vertex)) -> EdgeUpdate {
        self.recycled.remove(u, v);
        self.present.insert(u, v);
        EdgeUpdate::insert(u, v)
    }

    fn emit_delete(&mut self) -> Option<EdgeUpdate> {
        let (u, v) = self.present.take_random(&mut self.rng)?;
        self.recycled.insert(u, v);
        self.last_deleted = Some((u, v));
        Some(EdgeUpdate::delete(u, v))
    }

    fn step(&mut self) -> Option<EdgeUpdate> {
        let delete = self.rng.gen_bool(self.p_del);
        if delete {
            if let Some(upd) = self.emit_delete() {
                return Some(upd);
            }
            let again = self.last_deleted.filter(|&(u, v)| self.recycled.contains(u, v));
            let e = match again {
                Some(e) => Some(e),
                None => self.fresh_or_recycled(),
            };
            return e.map(|e| self.emit_insert(e));
        }
        match self.fresh_or_recycled() {
            Some(e) => Some(self.emit_insert(e)),
            None => self.emit_delete(),
        }
    }
}

impl Iterator for RandomStream {
    type Item = EdgeUpdate;

    fn next(&mut self) -> Option<EdgeUpdate> {
        if self.remaining == 0 {
            return None;
        }
        let upd = self.step()?;
        self.graph.apply(&upd).expect("stream emitted an illegal update");
        self.remaining -= 1;
        Some(upd)
    }
}

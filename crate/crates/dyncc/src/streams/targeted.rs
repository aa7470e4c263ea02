use std::cmp::Reverse;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::random::check_edges;
use super::{StreamError, StreamSpec};
use crate::baselines::Clustering;
use crate::dyngraph::{DynGraph, EdgeUpdate, Vertex};

/// The two largest clusters, larger first; equal sizes go to the cluster with
/// the smaller minimum vertex. The second is `None` when there is only one
/// cluster.
pub fn two_largest_clusters(c: &Clustering) -> (Vec<Vertex>, Option<Vec<Vertex>>) {
    // clusters() lists by smallest member, so a stable sort keeps that tiebreak
    let mut clusters = c.clusters();
    clusters.sort_by_key(|m| Reverse(m.len()));
    let mut it = clusters.into_iter();
    let first = it.next().unwrap_or_default();
    (first, it.next())
}

/// Adaptive stream that attacks the current clustering.
///
/// The first `m` updates insert every input edge in random order. After that
/// the stream repeatedly asks `clustering_fn` for a clustering of the current
/// graph, takes the two largest clusters, and works through a batch: the edges
/// inside either cluster (to delete) and the missing pairs across the two (to
/// insert), each list shuffled. Every step deletes with probability `p_del`
/// and inserts otherwise, falling through to whichever list is non-empty. A
/// new batch is built when both lists run out; the stream ends early if a
/// fresh batch is empty.
pub struct TargetedStream<F> {
    graph: DynGraph,
    fill: Vec<(Vertex, Vertex)>,
    filled: usize,
    within: Vec<(Vertex, Vertex)>,
    cross: Vec<(Vertex, Vertex)>,
    batches: usize,
    exhausted: bool,
    clustering_fn: F,
    p_del: f64,
    remaining: usize,
    rng: ChaCha8Rng,
}

impl<F: FnMut(&DynGraph) -> Clustering> TargetedStream<F> {
    pub fn new(
        n: usize,
        edges: &[(Vertex, Vertex)],
        spec: &StreamSpec,
        clustering_fn: F,
    ) -> Result<Self, StreamError> {
        spec.validate()?;
        check_edges(n, edges)?;
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        let mut fill = edges.to_vec();
        fill.shuffle(&mut rng);
        Ok(Self {
            graph: DynGraph::new(n).expect("n checked"),
            fill,
            filled: 0,
            within: Vec::new(),
            cross: Vec::new(),
            batches: 0,
            exhausted: false,
            clustering_fn,
            p_del: spec.p_del,
            remaining: spec.total_updates,
            rng,
        })
    }

    pub fn graph(&self) -> &DynGraph {
        &self.graph
    }

    /// Length of the initial fill phase (the number of input edges).
    pub fn fill_len(&self) -> usize {
        self.fill.len()
    }

    /// Batches built so far.
    pub fn batches(&self) -> usize {
        self.batches
    }

    fn rebuild(&mut self) {
        let clustering = (self.clustering_fn)(&self.graph);
        let (a, b) = two_largest_clusters(&clustering);
        let b = b.unwrap_or_default();
        self.within.clear();
        self.cross.clear();
        for part in [&a, &b] {
            for (i, &x) in part.iter().enumerate() {
                for &y in &part[i + 1..] {
                    if self.graph.adjacent(x, y) {
                        self.within.push((x, y));
                    }
                }
            }
        }
        for &x in &a {
            for &y in &b {
                if !self.graph.adjacent(x, y) {
                    self.cross.push((x, y));
                }
            }
        }
        self.within.shuffle(&mut self.rng);
        self.cross.shuffle(&mut self.rng);
        self.batches += 1;
    }

    fn step(&mut self) -> Option<EdgeUpdate> {
        if let Some(&(u, v)) = self.fill.get(self.filled) {
            self.filled += 1;
            return Some(EdgeUpdate::insert(u, v));
        }
        if self.within.is_empty() && self.cross.is_empty() {
            self.rebuild();
            if self.within.is_empty() && self.cross.is_empty() {
                self.exhausted = true;
                return None;
            }
        }
        let delete = self.rng.gen_bool(self.p_del);
        let from_within = if self.within.is_empty() {
            false
        } else if self.cross.is_empty() {
            true
        } else {
            delete
        };
        Some(if from_within {
            let (u, v) = self.within.pop().expect("non-empty");
            EdgeUpdate::delete(u, v)
        } else {
            let (u, v) = self.cross.pop().expect("non-empty");
            EdgeUpdate::insert(u, v)
        })
    }
}

impl<F: FnMut(&DynGraph) -> Clustering> Iterator for TargetedStream<F> {
    type Item = EdgeUpdate;

    fn next(&mut self) -> Option<EdgeUpdate> {
        if self.remaining == 0 || self.exhausted {
            return None;
        }
        let upd = self.step()?;
        self.graph.apply(&upd).expect("stream emitted an illegal update");
        self.remaining -= 1;
        Some(upd)
    }
}

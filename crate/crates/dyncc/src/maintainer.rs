//! The dynamic maintenance loop.
//!
//! Each vertex carries an update counter `c_v` and the degree `deg̃(v)` it had
//! at its last reset. An update to `(u, v)` bumps both counters; once a
//! counter reaches `(ε/10)·deg̃`, clique generation runs around that endpoint,
//! every vertex of its closed neighborhood is re-tested for sparseness, and
//! cliques that lost more than an `ε` fraction of their formation size are
//! dismantled. All randomness comes from a seeded generator and is drawn fresh
//! at every step, so an adversary watching the clustering learns nothing about
//! future coin flips.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::baselines::Clustering;
use crate::dyngraph::{DynGraph, EdgeUpdate, GraphError, Oracle, Vertex};
use crate::sdd::{
    clique_generation, exact_dense_check, exact_sparse_check, sparse_split_test, CliqueId,
    Label, SddError, SddParams, SddPartition,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MaintainerError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Sdd(#[from] SddError),
    #[error("{0}")]
    InvariantViolation(InvariantReport),
}

/// Per-update instrumentation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UpdateStats {
    /// Graph primitive calls, counting the update itself as one.
    pub oracle_ops: u64,
    /// Whether clique generation ran.
    pub triggered: bool,
    pub dismantled: Vec<CliqueId>,
    /// Vertices moved to the sparse set by the split test.
    pub sparsified: usize,
}

/// Running totals over all updates applied so far.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CumulativeStats {
    pub updates: u64,
    pub oracle_ops: u64,
    pub triggers: u64,
    pub dismantled: u64,
    pub sparsified: u64,
}

/// Cluster label exposed to callers: an almost-clique, or a sparse vertex on
/// its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClusterId {
    Clique(CliqueId),
    Singleton(Vertex),
}

/// Outcome of an invariant scan.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InvariantReport {
    /// Sparse vertices that are not `ε/8`-sparse.
    pub sparse_violations: Vec<Vertex>,
    /// Cliques that are not `120ε`-dense.
    pub clique_violations: Vec<CliqueId>,
    pub sparse_checked: usize,
    pub cliques_checked: usize,
}

impl InvariantReport {
    pub fn is_clean(&self) -> bool {
        self.sparse_violations.is_empty() && self.clique_violations.is_empty()
    }
}

impl std::fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} of {} sparse vertices and {} of {} cliques violate the invariants",
            self.sparse_violations.len(),
            self.sparse_checked,
            self.clique_violations.len(),
            self.cliques_checked
        )
    }
}

#[derive(Debug, Clone)]
pub struct MaintainerState {
    graph: DynGraph,
    partition: SddPartition,
    counter: Vec<u64>,
    deg_rec: Vec<usize>,
    params: SddParams,
    rng: ChaCha8Rng,
    stats: CumulativeStats,
}

impl MaintainerState {
    /// Empty graph, every vertex a sparse singleton.
    pub fn new(n: usize, params: SddParams, seed: u64) -> Result<Self, MaintainerError> {
        let graph = DynGraph::new(n)?;
        params.validate()?;
        Ok(Self {
            partition: SddPartition::new(n),
            graph,
            counter: vec![0; n],
            deg_rec: vec![0; n],
            params,
            rng: ChaCha8Rng::seed_from_u64(seed),
            stats: CumulativeStats::default(),
        })
    }

    /// Starts from an existing graph and partition, with every recorded degree
    /// set to the current degree and all counters zero. Used to plant
    /// configurations in tests and demos.
    pub fn from_parts(
        graph: DynGraph,
        partition: SddPartition,
        params: SddParams,
        seed: u64,
    ) -> Result<Self, MaintainerError> {
        params.validate()?;
        assert_eq!(graph.n(), partition.n(), "graph and partition sizes differ");
        let deg_rec = (0..graph.n()).map(|v| graph.adj(v).len()).collect();
        Ok(Self {
            counter: vec![0; graph.n()],
            deg_rec,
            graph,
            partition,
            params,
            rng: ChaCha8Rng::seed_from_u64(seed),
            stats: CumulativeStats::default(),
        })
    }

    pub fn graph(&self) -> &DynGraph {
        &self.graph
    }

    pub fn partition(&self) -> &SddPartition {
        &self.partition
    }

    pub fn params(&self) -> &SddParams {
        &self.params
    }

    pub fn stats(&self) -> CumulativeStats {
        self.stats
    }

    pub fn counter(&self, v: Vertex) -> u64 {
        self.counter[v]
    }

    pub fn recorded_degree(&self, v: Vertex) -> usize {
        self.deg_rec[v]
    }

    fn reset(&mut self, w: Vertex) {
        self.counter[w] = 0;
        self.deg_rec[w] = self.graph.adj(w).len();
    }

    fn due(&self, w: Vertex) -> bool {
        self.counter[w] as f64 >= self.params.eps / 10.0 * self.deg_rec[w] as f64
    }

    /// Applies one edge flip and runs the maintenance cascade.
    pub fn apply_update(&mut self, update: EdgeUpdate) -> Result<UpdateStats, MaintainerError> {
        self.graph.apply(&update)?;
        self.partition.take_touched();
        self.counter[update.u] += 1;
        self.counter[update.v] += 1;

        let mut stats = UpdateStats { oracle_ops: 1, ..Default::default() };
        let mut affected: Vec<Vertex> = Vec::new();
        let mut check: Vec<CliqueId> = Vec::new();

        // (i), (ii): clique generation at each endpoint whose counter is due
        for w in [update.u, update.v] {
            if !self.due(w) {
                continue;
            }
            stats.triggered = true;
            let oracle = Oracle::new(&self.graph);
            let out = clique_generation(&oracle, &mut self.partition, w, &self.params, &mut self.rng)?;
            affected.push(w);
            affected.extend(oracle.neighbors(w));
            stats.oracle_ops += oracle.ops();

            let mut reset: Vec<Vertex> = vec![w];
            for &id in out.created.iter().chain(&out.touched) {
                if let Some(rec) = self.partition.clique(id) {
                    reset.extend_from_slice(rec.members());
                }
            }
            for v in reset {
                self.reset(v);
            }
            check.extend(out.created);
            check.extend(out.touched);
        }

        // (iii): split test on clique members of the affected neighborhoods
        affected.sort_unstable();
        affected.dedup();
        let mut split = Vec::new();
        {
            let oracle = Oracle::new(&self.graph);
            for &w in &affected {
                let Some(id) = self.partition.clique_of(w) else { continue };
                if let [a, b] = self.partition.clique(id).expect("live").members() {
                    // an edge pair is always 1-sparse; keep it as long as the
                    // edge survives
                    if oracle.has_edge(*a, *b) {
                        continue;
                    }
                }
                if sparse_split_test(&oracle, w, &self.params, &mut self.rng) {
                    split.push(w);
                }
            }
            stats.oracle_ops += oracle.ops();
        }
        for &w in &split {
            self.partition.make_sparse(w);
            self.reset(w);
        }
        stats.sparsified = split.len();

        // (iv): dismantle cliques that lost too many members
        check.extend(self.partition.take_touched());
        check.extend(affected.iter().filter_map(|&w| self.partition.clique_of(w)));
        check.sort_unstable();
        check.dedup();
        for id in check {
            let Some(rec) = self.partition.clique(id) else { continue };
            if rec.removed as f64 > self.params.eps * rec.k_formed as f64 {
                for v in self.partition.dismantle(id) {
                    self.reset(v);
                }
                stats.dismantled.push(id);
            }
        }
        self.partition.take_touched();

        self.stats.updates += 1;
        self.stats.oracle_ops += stats.oracle_ops;
        self.stats.triggers += stats.triggered as u64;
        self.stats.dismantled += stats.dismantled.len() as u64;
        self.stats.sparsified += stats.sparsified as u64;
        Ok(stats)
    }

    pub fn cluster_of(&self, v: Vertex) -> Result<ClusterId, GraphError> {
        if v >= self.graph.n() {
            return Err(GraphError::OutOfRange { vertex: v, n: self.graph.n() });
        }
        Ok(match self.partition.label(v) {
            Label::Sparse => ClusterId::Singleton(v),
            Label::InClique(id) => ClusterId::Clique(id),
        })
    }

    /// Every clique as one set (ascending clique id), then one singleton per
    /// sparse vertex (ascending vertex id).
    pub fn clustering_snapshot(&self) -> Vec<Vec<Vertex>> {
        let mut out: Vec<Vec<Vertex>> = self
            .partition
            .cliques()
            .map(|c| {
                let mut m = c.members().to_vec();
                m.sort_unstable();
                m
            })
            .collect();
        out.extend(self.partition.sparse_vertices().map(|v| vec![v]));
        out
    }

    /// The maintained clustering as a per-vertex assignment. Clique ids are
    /// shifted past the vertex range so they never collide with singletons.
    pub fn to_clustering(&self) -> Clustering {
        let n = self.graph.n();
        let assignment = (0..n)
            .map(|v| match self.partition.label(v) {
                Label::Sparse => v,
                Label::InClique(id) => n + id,
            })
            .collect();
        Clustering::from_assignment(assignment)
    }

    /// Checks that every sparse vertex is `ε/8`-sparse and every clique is
    /// `120ε`-dense. In strict mode any violation is returned as an error.
    pub fn verify_invariants(&self, strict: bool) -> Result<InvariantReport, MaintainerError> {
        let oracle = Oracle::new(&self.graph);
        let eps = self.params.eps;
        let mut report = InvariantReport::default();
        for v in self.partition.sparse_vertices() {
            report.sparse_checked += 1;
            if !exact_sparse_check(&oracle, v, eps / 8.0, self.params.eta0) {
                report.sparse_violations.push(v);
            }
        }
        for c in self.partition.cliques() {
            report.cliques_checked += 1;
            if !exact_dense_check(&oracle, c.members(), 120.0 * eps)? {
                report.clique_violations.push(c.id);
            }
        }
        if strict && !report.is_clean() {
            return Err(MaintainerError::InvariantViolation(report));
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::cc_cost;

    fn params(eps: f64) -> SddParams {
        SddParams::new(eps).unwrap()
    }

    #[test]
    fn fresh_state() {
        let s = MaintainerState::new(10, params(0.45), 1).unwrap();
        assert_eq!(s.clustering_snapshot().len(), 10);
        assert_eq!(s.cluster_of(3).unwrap(), ClusterId::Singleton(3));
        assert!(s.cluster_of(10).is_err());
        assert_eq!(cc_cost(s.graph(), &s.to_clustering()).unwrap(), 0);
        assert!(s.verify_invariants(true).unwrap().is_clean());
        assert!(MaintainerState::new(0, params(0.45), 1).is_err());
    }

    #[test]
    fn first_insert_forms_edge_clique() {
        let mut s = MaintainerState::new(6, params(0.45), 1).unwrap();
        let st = s.apply_update(EdgeUpdate::insert(2, 4)).unwrap();
        assert!(st.triggered);
        assert!(st.oracle_ops > 1);
        let c = s.cluster_of(2).unwrap();
        assert!(matches!(c, ClusterId::Clique(_)));
        assert_eq!(s.cluster_of(4).unwrap(), c);
        let snap = s.clustering_snapshot();
        assert_eq!(snap.len(), 5);
        assert_eq!(snap[0], vec![2, 4]);
        assert_eq!(s.counter(2), 0);
        assert_eq!(s.recorded_degree(2), 1);
    }

    #[test]
    fn quiet_update_does_not_trigger() {
        // two hubs with large recorded degrees
        let mut edges = Vec::new();
        for l in 2..42 {
            edges.push((0, l));
            edges.push((1, l));
        }
        let g = DynGraph::from_edges(42, &edges).unwrap();
        let p = SddPartition::new(42);
        let mut s = MaintainerState::from_parts(g, p, params(0.45), 0).unwrap();
        let st = s.apply_update(EdgeUpdate::insert(0, 1)).unwrap();
        assert!(!st.triggered);
        assert_eq!(st.oracle_ops, 1);
        assert_eq!(s.counter(0), 1);
        assert_eq!(s.partition().clique_count(), 0);
    }

    #[test]
    fn corrupted_partition_is_reported() {
        let mut edges = Vec::new();
        for a in 0..100 {
            for b in a + 1..100 {
                edges.push((a, b));
            }
        }
        let g = DynGraph::from_edges(100, &edges).unwrap();
        let members: Vec<_> = (1..100).collect();
        let p = SddPartition::from_cliques(100, &[members]);
        let s = MaintainerState::from_parts(g, p, params(0.45), 0).unwrap();
        let report = s.verify_invariants(false).unwrap();
        assert_eq!(report.sparse_violations, vec![0]);
        assert!(report.clique_violations.is_empty());
        assert!(matches!(s.verify_invariants(true), Err(MaintainerError::InvariantViolation(_))));
    }

    #[test]
    fn updates_keep_partition_valid() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let n = 40;
        let mut s = MaintainerState::new(n, params(0.3), 7).unwrap();
        while s.stats().updates < 2000 {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u == v {
                continue;
            }
            let upd = if s.graph().adjacent(u, v) {
                EdgeUpdate::delete(u, v)
            } else {
                EdgeUpdate::insert(u, v)
            };
            s.apply_update(upd).unwrap();
            s.partition().validate().unwrap();
        }
        assert_eq!(s.stats().updates, 2000);
    }
}

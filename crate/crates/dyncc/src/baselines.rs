//! Reference clusterings and the correlation-clustering objective.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::dyngraph::{DynGraph, Vertex};

/// Largest vertex count `brute_force_opt` accepts.
pub const BRUTE_FORCE_MAX_N: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BaselineError {
    #[error("clustering covers {got} vertices, graph has {expected}")]
    InvalidClustering { expected: usize, got: usize },
    #[error("exhaustive search supports at most {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
}

/// Cluster id per vertex. Ids are arbitrary labels; only equality matters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clustering {
    assignment: Vec<usize>,
}

impl Clustering {
    pub fn from_assignment(assignment: Vec<usize>) -> Self {
        Self { assignment }
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn cluster_of(&self, v: Vertex) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Member count per cluster id.
    pub fn sizes(&self) -> BTreeMap<usize, usize> {
        let mut sizes = BTreeMap::new();
        for &c in &self.assignment {
            *sizes.entry(c).or_insert(0) += 1;
        }
        sizes
    }

    pub fn cluster_count(&self) -> usize {
        self.sizes().len()
    }

    /// Member lists ordered by smallest member.
    pub fn clusters(&self) -> Vec<Vec<Vertex>> {
        let mut slot: FxHashMap<usize, usize> = FxHashMap::default();
        let mut out: Vec<Vec<Vertex>> = Vec::new();
        for (v, &c) in self.assignment.iter().enumerate() {
            let i = *slot.entry(c).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[i].push(v);
        }
        out
    }
}

/// Every vertex alone.
pub fn singleton_clustering(n: usize) -> Clustering {
    Clustering::from_assignment((0..n).collect())
}

/// Pivot over a fresh uniformly random vertex order.
pub fn pivot_clustering<R: Rng + ?Sized>(g: &DynGraph, rng: &mut R) -> Clustering {
    let mut order: Vec<Vertex> = (0..g.n()).collect();
    order.shuffle(rng);
    pivot_with_order(g, &order)
}

/// Pivot with a fixed order: each still-unclustered vertex in `order` opens a
/// cluster with all of its unclustered neighbors. Cluster ids are pivot ids.
pub fn pivot_with_order(g: &DynGraph, order: &[Vertex]) -> Clustering {
    const NONE: usize = usize::MAX;
    let mut assignment = vec![NONE; g.n()];
    for &p in order {
        if assignment[p] != NONE {
            continue;
        }
        assignment[p] = p;
        for &w in g.adj(p) {
            if assignment[w] == NONE {
                assignment[w] = p;
            }
        }
    }
    Clustering::from_assignment(assignment)
}

/// Disagreements: `(+)` edges between clusters plus `(-)` pairs inside them.
pub fn cc_cost(g: &DynGraph, clustering: &Clustering) -> Result<u64, BaselineError> {
    if clustering.n() != g.n() {
        return Err(BaselineError::InvalidClustering { expected: g.n(), got: clustering.n() });
    }
    let a = clustering.assignment();
    let mut sizes: FxHashMap<usize, u64> = FxHashMap::default();
    for &c in a {
        *sizes.entry(c).or_insert(0) += 1;
    }
    let pairs: u64 = sizes.values().map(|&s| s * (s.saturating_sub(1)) / 2).sum();
    let mut internal = 0u64;
    for u in 0..g.n() {
        for &v in g.adj(u) {
            if u < v && a[u] == a[v] {
                internal += 1;
            }
        }
    }
    let m = g.edge_count() as u64;
    Ok((m - internal) + (pairs - internal))
}

/// Exact optimum by enumerating set partitions as restricted-growth strings
/// in lexicographic order with branch-and-bound; the first optimum found is
/// returned.
pub fn brute_force_opt(g: &DynGraph) -> Result<(u64, Clustering), BaselineError> {
    let n = g.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(BaselineError::TooLarge { n, max: BRUTE_FORCE_MAX_N });
    }
    // neighbors of i among 0..i
    let earlier: Vec<u32> = (0..n)
        .map(|i| g.adj(i).iter().filter(|&&j| j < i).fold(0u32, |m, &j| m | 1 << j))
        .collect();

    struct Search<'a> {
        n: usize,
        earlier: &'a [u32],
        rgs: Vec<usize>,
        members: Vec<u32>,
        best: u64,
        best_rgs: Vec<usize>,
    }

    impl Search<'_> {
        fn go(&mut self, i: usize, blocks: usize, cost: u64) {
            if cost >= self.best {
                return;
            }
            if i == self.n {
                self.best = cost;
                self.best_rgs.clone_from(&self.rgs);
                return;
            }
            let adj = self.earlier[i];
            let before = (1u32 << i) - 1;
            for c in 0..=blocks {
                let inside = self.members[c];
                let delta = (inside & !adj).count_ones() + (before & adj & !inside).count_ones();
                self.rgs[i] = c;
                self.members[c] |= 1 << i;
                self.go(i + 1, blocks.max(c + 1), cost + delta as u64);
                self.members[c] &= !(1 << i);
            }
        }
    }

    let mut s = Search {
        n,
        earlier: &earlier,
        rgs: vec![0; n],
        members: vec![0; n + 1],
        best: u64::MAX,
        best_rgs: Vec::new(),
    };
    s.go(0, 0, 0);
    Ok((s.best, Clustering::from_assignment(s.best_rgs)))
}

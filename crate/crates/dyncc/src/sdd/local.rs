//! Friend-edge decomposition over explicit induced subgraphs, used globally
//! (`static_sdd`) and on closed neighborhoods (`local_sdd`).
//!
//! Two adjacent vertices are friends when their closed neighborhoods inside the
//! working vertex set differ in at most `ε·max(deg a, deg b)` vertices. A vertex
//! is dense when at least a `(1-ε)` fraction of its neighbors are friends, and
//! candidate almost-cliques are the connected components of dense vertices
//! under friend edges. Each candidate must then pass the exact density rule.

use rand::Rng;
use rustc_hash::{FxHashMap, FxHashSet};

use super::checks::dense_conditions;
use super::params::{ln, SddMode, SddParams};
use super::partition::SddPartition;
use crate::dyngraph::{DynGraph, Oracle, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocalLabel {
    LocalSparse,
    /// Index into [`LocalSddResult::local_cliques`].
    LocalClique(usize),
}

/// Decomposition of `G[N[u]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSddResult {
    /// `N[u]` in ascending id order.
    pub universe: Vec<Vertex>,
    /// Label of `universe[i]`.
    pub labels: Vec<LocalLabel>,
    /// Member lists in ascending id order.
    pub local_cliques: Vec<Vec<Vertex>>,
}

impl LocalSddResult {
    pub fn label_of(&self, v: Vertex) -> Option<LocalLabel> {
        self.universe.binary_search(&v).ok().map(|i| self.labels[i])
    }

    pub fn clique_containing(&self, v: Vertex) -> Option<&[Vertex]> {
        match self.label_of(v)? {
            LocalLabel::LocalClique(i) => Some(&self.local_cliques[i]),
            LocalLabel::LocalSparse => None,
        }
    }
}

/// Induced subgraph on a sorted vertex list, one adjacency bitset per vertex.
struct LocalGraph {
    vertices: Vec<Vertex>,
    index: FxHashMap<Vertex, usize>,
    words: usize,
    rows: Vec<u64>,
    global_degree: Vec<usize>,
}

impl LocalGraph {
    fn build(g: &Oracle<'_>, vertices: Vec<Vertex>) -> Self {
        let len = vertices.len();
        let words = len.div_ceil(64).max(1);
        let index: FxHashMap<Vertex, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut rows = vec![0u64; len * words];
        let mut global_degree = Vec::with_capacity(len);
        for (i, &v) in vertices.iter().enumerate() {
            let d = g.degree(v);
            global_degree.push(d);
            let row = &mut rows[i * words..(i + 1) * words];
            // scan whichever side is shorter
            if d <= len {
                for w in g.neighbors(v) {
                    if let Some(&j) = index.get(&w) {
                        row[j / 64] |= 1 << (j % 64);
                    }
                }
            } else {
                for (j, &w) in vertices.iter().enumerate() {
                    if g.has_edge(v, w) {
                        row[j / 64] |= 1 << (j % 64);
                    }
                }
            }
        }
        Self { vertices, index, words, rows, global_degree }
    }

    fn len(&self) -> usize {
        self.vertices.len()
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    fn has(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }

    fn full_mask(&self) -> Vec<u64> {
        let mut mask = vec![0u64; self.words];
        for i in 0..self.len() {
            mask[i / 64] |= 1 << (i % 64);
        }
        mask
    }

    /// `|N(i) ∩ mask|`.
    fn degree_in(&self, i: usize, mask: &[u64]) -> usize {
        self.row(i).iter().zip(mask).map(|(r, m)| (r & m).count_ones() as usize).sum()
    }

    /// Closed-neighborhood symmetric difference of adjacent `i`, `j` inside
    /// `mask` (both endpoints must lie in `mask`).
    fn closed_diff(&self, i: usize, j: usize, mask: &[u64]) -> usize {
        let raw: usize = self
            .row(i)
            .iter()
            .zip(self.row(j))
            .zip(mask)
            .map(|((a, b), m)| ((a ^ b) & m).count_ones() as usize)
            .sum();
        // bits i and j show up in the open difference but not the closed one
        raw - 2
    }
}

fn bits(mask: &[u64]) -> impl Iterator<Item = usize> + '_ {
    mask.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * 64 + b)
        })
    })
}

fn and_mask(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

/// Components of dense vertices under friend edges, restricted to `mask`.
/// `friend(i, j, deg_i, deg_j)` decides adjacent pairs. Components come out in
/// ascending order of their smallest index, members sorted.
fn friend_components<F>(lg: &LocalGraph, mask: &[u64], eps: f64, mut friend: F) -> Vec<Vec<usize>>
where
    F: FnMut(usize, usize, usize, usize) -> bool,
{
    let len = lg.len();
    let mut deg = vec![0usize; len];
    for i in bits(mask) {
        deg[i] = lg.degree_in(i, mask);
    }
    let mut friends: Vec<Vec<usize>> = vec![Vec::new(); len];
    for i in bits(mask) {
        let inside = and_mask(lg.row(i), mask);
        for j in bits(&inside).filter(|&j| j > i) {
            if friend(i, j, deg[i], deg[j]) {
                friends[i].push(j);
                friends[j].push(i);
            }
        }
    }
    let dense: Vec<bool> = (0..len)
        .map(|i| deg[i] >= 1 && friends[i].len() as f64 >= (1.0 - eps) * deg[i] as f64)
        .collect();

    let mut seen = vec![false; len];
    let mut out = Vec::new();
    for start in bits(mask) {
        if !dense[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut head = 0;
        while head < comp.len() {
            let x = comp[head];
            head += 1;
            for &y in &friends[x] {
                if dense[y] && !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn exact_friend(lg: &LocalGraph, mask: &[u64], eps: f64, i: usize, j: usize, di: usize, dj: usize) -> bool {
    lg.closed_diff(i, j, mask) as f64 <= eps * di.max(dj) as f64
}

/// Density of `comp` measured inside the subgraph spanned by `lg`.
fn comp_is_dense(lg: &LocalGraph, comp: &[usize], alpha: f64) -> bool {
    let mut cmask = vec![0u64; lg.words];
    for &i in comp {
        cmask[i / 64] |= 1 << (i % 64);
    }
    let full = lg.full_mask();
    let profile = comp.iter().map(|&i| (lg.degree_in(i, &full), lg.degree_in(i, &cmask)));
    dense_conditions(comp.len(), profile, alpha)
}

/// Deterministic global decomposition at parameter `eps`: friend components of
/// the whole graph that pass the exact density check become almost-cliques,
/// every other vertex is sparse.
pub fn static_sdd(g: &DynGraph, eps: f64) -> SddPartition {
    let oracle = Oracle::new(g);
    let lg = LocalGraph::build(&oracle, (0..g.n()).collect());
    let mask = lg.full_mask();
    let comps = friend_components(&lg, &mask, eps, |i, j, di, dj| {
        exact_friend(&lg, &mask, eps, i, j, di, dj)
    });
    let mut partition = SddPartition::new(g.n());
    for comp in comps {
        if comp_is_dense(&lg, &comp, eps) {
            let members: Vec<Vertex> = comp.iter().map(|&i| lg.vertices[i]).collect();
            partition.new_clique(&members);
        }
    }
    partition.take_touched();
    partition
}

/// Decomposition of `G[N[u]]` at `ε/2`.
///
/// Neighbors of `u` that keep less than half of their edges inside `N[u]` are
/// discarded as sparse (in sampled mode, high-degree vertices decide from
/// `⌈c_local·ln n⌉` neighbor samples and need two thirds of them inside). The
/// friend decomposition then runs on the survivors plus `u`, and a candidate is
/// kept only if it is `ε/2`-dense within `G[N[u]]`.
pub fn local_sdd<R: Rng + ?Sized>(
    g: &Oracle<'_>,
    u: Vertex,
    params: &SddParams,
    rng: &mut R,
) -> LocalSddResult {
    let eps = params.eps / 2.0;
    let n = g.n();
    let mut universe: Vec<Vertex> = g.neighbors(u).collect();
    universe.push(u);
    universe.sort_unstable();
    let lg = LocalGraph::build(g, universe);
    let full = lg.full_mask();

    let filter_budget = ((params.c_local * ln(n)).ceil() as usize).max(1);
    let mut mask = vec![0u64; lg.words];
    for (i, &v) in lg.vertices.iter().enumerate() {
        let d = lg.global_degree[i];
        let keep = if v == u {
            true
        } else if params.mode == SddMode::Exact || d <= filter_budget {
            2 * lg.degree_in(i, &full) >= d
        } else {
            let hits = (0..filter_budget)
                .filter(|_| {
                    let w = g.sample_neighbor(v, rng).expect("non-isolated");
                    lg.index.contains_key(&w)
                })
                .count();
            3 * hits >= 2 * filter_budget
        };
        if keep {
            mask[i / 64] |= 1 << (i % 64);
        }
    }

    let pair_budget = params.budget_over_eps(params.c_split, n);
    let comps = friend_components(&lg, &mask, eps, |i, j, di, dj| {
        if params.mode == SddMode::Sampled
            && lg.global_degree[i] > pair_budget
            && lg.global_degree[j] > pair_budget
        {
            if let Some(f) = sampled_friend(g, &lg, &mask, eps, i, j, pair_budget, rng) {
                return f;
            }
        }
        exact_friend(&lg, &mask, eps, i, j, di, dj)
    });

    let mut labels = vec![LocalLabel::LocalSparse; lg.len()];
    let mut local_cliques = Vec::new();
    for comp in comps {
        if comp_is_dense(&lg, &comp, eps) {
            let idx = local_cliques.len();
            for &i in &comp {
                labels[i] = LocalLabel::LocalClique(idx);
            }
            local_cliques.push(comp.iter().map(|&i| lg.vertices[i]).collect());
        }
    }
    LocalSddResult { universe: lg.vertices, labels, local_cliques }
}

/// Estimates the friend relation of `i`, `j` from neighbor samples that land
/// inside `mask`. `None` when no sample lands there.
#[allow(clippy::too_many_arguments)]
fn sampled_friend<R: Rng + ?Sized>(
    g: &Oracle<'_>,
    lg: &LocalGraph,
    mask: &[u64],
    eps: f64,
    i: usize,
    j: usize,
    budget: usize,
    rng: &mut R,
) -> Option<bool> {
    let in_mask = |k: usize| mask[k / 64] >> (k % 64) & 1 == 1;
    let mut seen: FxHashSet<usize> = FxHashSet::default();
    for x in [i, j] {
        for _ in 0..budget {
            let w = g.sample_neighbor(lg.vertices[x], rng)?;
            if let Some(&k) = lg.index.get(&w) {
                if in_mask(k) {
                    seen.insert(k);
                }
            }
        }
    }
    if seen.is_empty() {
        return None;
    }
    let closed = |x: usize, k: usize| k == x || lg.has(x, k);
    let diff = seen.iter().filter(|&&k| closed(i, k) != closed(j, k)).count();
    Some(diff as f64 <= eps * seen.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sdd::checks::{exact_dense_check, exact_sparse_check};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn add_clique(edges: &mut Vec<(Vertex, Vertex)>, vs: &[Vertex]) {
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                edges.push((a, b));
            }
        }
    }

    #[test]
    fn bit_iteration() {
        let mask = [0b1010u64, 1 << 63];
        assert_eq!(bits(&mask).collect::<Vec<_>>(), vec![1, 3, 127]);
    }

    #[test]
    fn static_on_empty_graph() {
        let g = DynGraph::new(6).unwrap();
        let p = static_sdd(&g, 0.3);
        assert_eq!(p.clique_count(), 0);
        assert_eq!(p.sparse_vertices().count(), 6);
    }

    #[test]
    fn static_two_disjoint_cliques() {
        let mut edges = Vec::new();
        add_clique(&mut edges, &(0..50).collect::<Vec<_>>());
        add_clique(&mut edges, &(50..100).collect::<Vec<_>>());
        let g = DynGraph::from_edges(100, &edges).unwrap();
        let p = static_sdd(&g, 0.3);
        let sizes: Vec<_> = p.cliques().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![50, 50]);
        assert_eq!(p.sparse_vertices().count(), 0);
        let o = Oracle::new(&g);
        for c in p.cliques() {
            assert!(exact_dense_check(&o, c.members(), 0.3).unwrap());
        }
    }

    #[test]
    fn static_single_edge_forms_pair() {
        let g = DynGraph::from_edges(4, &[(1, 2)]).unwrap();
        let p = static_sdd(&g, 0.1);
        assert_eq!(p.clique_count(), 1);
        assert_eq!(p.clique_of(1), p.clique_of(2));
    }

    #[test]
    fn local_finds_planted_clique() {
        let mut edges = Vec::new();
        let k: Vec<_> = (0..300).collect();
        add_clique(&mut edges, &k);
        // unrelated sparse part
        for v in 300..399 {
            edges.push((v, v + 1));
        }
        let g = DynGraph::from_edges(400, &edges).unwrap();
        let o = Oracle::new(&g);
        let params = SddParams::new(0.1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for mode in [SddMode::Exact, SddMode::Sampled] {
            let res = local_sdd(&o, 17, &params.with_mode(mode), &mut rng);
            assert_eq!(res.universe.len(), 300);
            assert_eq!(res.local_cliques.len(), 1);
            assert_eq!(res.clique_containing(17).unwrap(), &k[..]);
            assert!(exact_dense_check(&o, &res.local_cliques[0], 0.05).unwrap());
        }
    }

    #[test]
    fn local_star_center_is_sparse() {
        let edges: Vec<_> = (1..=500).map(|l| (0, l)).collect();
        let g = DynGraph::from_edges(501, &edges).unwrap();
        let o = Oracle::new(&g);
        let params = SddParams::new(0.05).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let res = local_sdd(&o, 0, &params, &mut rng);
        assert!(res.local_cliques.is_empty());
        assert_eq!(res.label_of(0), Some(LocalLabel::LocalSparse));
    }

    #[test]
    fn local_filter_drops_outward_neighbors() {
        // u = 0 with neighbors 1..=5; each neighbor also has 9 private leaves
        let mut edges = Vec::new();
        let mut next = 6;
        for v in 1..=5 {
            edges.push((0, v));
            for _ in 0..9 {
                edges.push((v, next));
                next += 1;
            }
        }
        let g = DynGraph::from_edges(next, &edges).unwrap();
        let o = Oracle::new(&g);
        let params = SddParams::new(0.1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let res = local_sdd(&o, 0, &params, &mut rng);
        assert!(res.labels.iter().all(|&l| l == LocalLabel::LocalSparse));
        assert!(res.local_cliques.is_empty());
    }

    #[test]
    fn static_output_satisfies_checkers() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut edges = Vec::new();
        add_clique(&mut edges, &(0..40).collect::<Vec<_>>());
        for a in 40..120 {
            for b in a + 1..120 {
                if rng.gen_bool(0.05) {
                    edges.push((a, b));
                }
            }
        }
        let g = DynGraph::from_edges(120, &edges).unwrap();
        let eps = 0.3;
        let p = static_sdd(&g, eps);
        let o = Oracle::new(&g);
        for c in p.cliques() {
            assert!(exact_dense_check(&o, c.members(), eps).unwrap());
        }
        for v in p.sparse_vertices() {
            if g.adj(v).len() as f64 >= 1.0 / eps {
                assert!(exact_sparse_check(&o, v, eps, 1.0), "vertex {v}");
            }
        }
        assert!(p.clique_of(0).is_some());
    }
}

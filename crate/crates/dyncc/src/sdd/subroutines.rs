//! Sampled subroutines: growing an almost-clique by vertices it missed, and
//! testing whether a vertex should be split off as sparse.

use rand::Rng;
use rustc_hash::FxHashSet;

use super::checks::exact_sparse_check;
use super::params::SddParams;
use super::partition::{CliqueId, SddPartition};
use super::SddError;
use crate::dyngraph::{Oracle, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MergeOutcome {
    /// Vertices moved into the clique, in the order they were added.
    Updated(Vec<Vertex>),
    /// The neighborhood of the sampled members was too large.
    Fail,
}

/// Adds to clique `id` every vertex that looks like a missed member.
///
/// Draws `D` and `T` (each `min(⌈c_merge·ln n/ε⌉, |K|)` members of `K`, with
/// replacement), fails if `|N(D)| ≥ c_fail·ln n·|K|`, and otherwise admits each
/// `u ∈ N(D) \ K` that is adjacent to at least `max(1-2ε, merge_floor)·|T|`
/// draws of `T` and has `(1-2ε)|K| ≤ deg(u) ≤ (1+2ε)|K|`. All candidates are
/// judged against the clique as it was on entry.
pub fn ac_merge<R: Rng + ?Sized>(
    g: &Oracle<'_>,
    partition: &mut SddPartition,
    id: CliqueId,
    params: &SddParams,
    rng: &mut R,
) -> Result<MergeOutcome, SddError> {
    let members: Vec<Vertex> = partition
        .clique(id)
        .ok_or(SddError::UnknownClique(id))?
        .members()
        .to_vec();
    let k = members.len();
    let n = g.n();
    let eps = params.eps;
    let draws = params.budget_over_eps(params.c_merge, n).min(k);

    let mut reach: FxHashSet<Vertex> = FxHashSet::default();
    for _ in 0..draws {
        let x = members[rng.gen_range(0..k)];
        reach.extend(g.neighbors(x));
    }
    if reach.len() as f64 >= params.c_fail * super::params::ln(n) * k as f64 {
        return Ok(MergeOutcome::Fail);
    }
    let test: Vec<Vertex> = (0..draws).map(|_| members[rng.gen_range(0..k)]).collect();

    let mut candidates: Vec<Vertex> = reach
        .into_iter()
        .filter(|&u| partition.clique_of(u) != Some(id))
        .collect();
    candidates.sort_unstable();

    let lo = (1.0 - 2.0 * eps) * k as f64;
    let hi = (1.0 + 2.0 * eps) * k as f64;
    let need = params.merge_fraction() * test.len() as f64;
    let mut added = Vec::new();
    for u in candidates {
        let deg = g.degree(u) as f64;
        if deg < lo || deg > hi {
            continue;
        }
        let hits = test.iter().filter(|&&t| g.has_edge(u, t)).count();
        if hits as f64 >= need {
            added.push(u);
        }
    }
    for &u in &added {
        partition.add_to_clique(u, id);
    }
    Ok(MergeOutcome::Updated(added))
}

/// Decides whether `v` should be declared sparse.
///
/// With `s = ⌈c_split·ln n/ε⌉`: when `deg(v) ≤ s` the test is the exact
/// sparseness check at level `min(split_lo·ε, 1)`. Otherwise it draws `S(v)` and
/// `D(v)` of `s` neighbors each; a draw `u ∈ D(v)` is a sparse neighbor when the
/// distinct elements of `S(u) ∪ S(v)` falling in `N(u) △ N(v)` reach a
/// `min(split_hi·ε, 1)` fraction (computed exactly when `deg(u) ≤ s`), and `v`
/// is sparse when sparse neighbors make up a `min(split_lo·ε, 1)` fraction of
/// `D(v)`.
pub fn sparse_split_test<R: Rng + ?Sized>(
    g: &Oracle<'_>,
    v: Vertex,
    params: &SddParams,
    rng: &mut R,
) -> bool {
    let dv = g.degree(v);
    if dv == 0 {
        return true;
    }
    let budget = params.budget_over_eps(params.c_split, g.n());
    let level = params.split_level();
    if dv <= budget {
        return exact_sparse_check(g, v, level, params.eta0);
    }

    let pair_fraction = params.split_pair_fraction();
    let s_v: Vec<Vertex> = (0..budget)
        .map(|_| g.sample_neighbor(v, rng).expect("non-isolated"))
        .collect();
    let d_v: Vec<Vertex> = (0..budget)
        .map(|_| g.sample_neighbor(v, rng).expect("non-isolated"))
        .collect();

    let mut sparse_neighbors = 0usize;
    for &u in &d_v {
        let du = g.degree(u);
        let is_sparse_neighbor = if du <= budget {
            let thr = level * du.max(dv) as f64;
            super::checks::symmetric_difference(g, u, v) as f64 >= thr
        } else {
            let mut union: FxHashSet<Vertex> = s_v.iter().copied().collect();
            for _ in 0..budget {
                union.insert(g.sample_neighbor(u, rng).expect("non-isolated"));
            }
            let in_diff = union
                .iter()
                .filter(|&&w| g.has_edge(u, w) != g.has_edge(v, w))
                .count();
            in_diff as f64 >= pair_fraction * union.len() as f64
        };
        if is_sparse_neighbor {
            sparse_neighbors += 1;
        }
    }
    sparse_neighbors as f64 >= level * d_v.len() as f64
}

//! Exact sparseness and density tests, used both inside the algorithms (when a
//! degree is too small to sample) and as independent verifiers.

use rustc_hash::FxHashSet;

use super::SddError;
use crate::dyngraph::{Oracle, Vertex};

/// `|N(u) △ N(v)|` over open neighborhoods.
pub fn symmetric_difference(g: &Oracle<'_>, u: Vertex, v: Vertex) -> usize {
    let du = g.degree(u);
    let dv = g.degree(v);
    let (small, large) = if du <= dv { (u, v) } else { (v, u) };
    let common = g.neighbors(small).filter(|&w| g.has_edge(large, w)).count();
    du + dv - 2 * common
}

/// Whether `v` is `eps_prime`-sparse: isolated, or at least
/// `eta0·eps_prime·deg(v)` neighbors `u` with
/// `|N(v) △ N(u)| ≥ eta0·eps_prime·max(deg(u), deg(v))`.
pub fn exact_sparse_check(g: &Oracle<'_>, v: Vertex, eps_prime: f64, eta0: f64) -> bool {
    let dv = g.degree(v);
    if dv == 0 {
        return true;
    }
    let level = eta0 * eps_prime;
    let need = level * dv as f64;
    if need <= 0.0 {
        return true;
    }
    let mut hits = 0usize;
    let neighbors: Vec<Vertex> = g.neighbors(v).collect();
    for (i, &u) in neighbors.iter().enumerate() {
        let du = g.degree(u);
        let thr = level * du.max(dv) as f64;
        // |du - dv| <= |△| <= du + dv
        let passes = if (du + dv) as f64 >= thr {
            du.abs_diff(dv) as f64 >= thr || symmetric_difference(g, u, v) as f64 >= thr
        } else {
            false
        };
        if passes {
            hits += 1;
            if hits as f64 >= need {
                return true;
            }
        }
        let remaining = neighbors.len() - i - 1;
        if ((hits + remaining) as f64) < need {
            return false;
        }
    }
    hits as f64 >= need
}

/// Whether `members` is an `alpha`-dense almost-clique: every member `v` has
/// `|K \ N[v]| ≤ alpha·max(|K|, deg v)` and `|N(v) \ K| ≤ alpha·max(|K|, deg v)`,
/// and the size satisfies `(1-alpha)·Δ ≤ |K| ≤ (1+alpha)·(Δ+1)` with `Δ` the
/// largest member degree. The upper size bound is waived when `|K| ≤ 2`.
pub fn exact_dense_check(g: &Oracle<'_>, members: &[Vertex], alpha: f64) -> Result<bool, SddError> {
    if members.is_empty() {
        return Err(SddError::EmptyClique);
    }
    let set: FxHashSet<Vertex> = members.iter().copied().collect();
    let profile = members.iter().map(|&v| {
        let deg = g.degree(v);
        let inside = g.neighbors(v).filter(|w| set.contains(w)).count();
        (deg, inside)
    });
    Ok(dense_conditions(set.len(), profile, alpha))
}

/// Shared density rule over `(degree, neighbors inside K)` per member.
pub(crate) fn dense_conditions<I>(k: usize, profile: I, alpha: f64) -> bool
where
    I: IntoIterator<Item = (usize, usize)>,
{
    let mut max_deg = 0usize;
    for (deg, inside) in profile {
        let scale = alpha * k.max(deg) as f64;
        let non_neighbors = k - 1 - inside;
        let outside = deg - inside;
        if non_neighbors as f64 > scale || outside as f64 > scale {
            return false;
        }
        max_deg = max_deg.max(deg);
    }
    let k = k as f64;
    if (1.0 - alpha) * max_deg as f64 > k {
        return false;
    }
    k <= 2.0 || k <= (1.0 + alpha) * (max_deg + 1) as f64
}

use rand::Rng;

use super::local::local_sdd;
use super::params::SddParams;
use super::partition::{CliqueId, SddPartition};
use super::subroutines::{ac_merge, MergeOutcome};
use super::SddError;
use crate::dyngraph::{Oracle, Vertex};

/// What one clique-generation call changed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GenerationOutcome {
    /// New almost-cliques, in creation order. Some may have been emptied
    /// again by a later merge and retired.
    pub created: Vec<CliqueId>,
    /// Cliques that lost members, including pre-existing ones.
    pub touched: Vec<CliqueId>,
    /// Vertices pulled in by the merge step.
    pub merged: Vec<Vertex>,
    /// Size of each local clique considered, for diagnostics.
    pub local_sizes: Vec<usize>,
}

/// Builds new almost-cliques around `u`.
///
/// Every local clique `K` of `local_sdd` keeps the members whose global degree
/// is at most `(1+2ε)|K|`; if at least `(1-ε)|K|` survive they form a new global
/// clique, which is then grown with `ac_merge`. Vertices that end up in no new
/// clique keep their previous label. Drains the partition's touched list.
pub fn clique_generation<R: Rng + ?Sized>(
    g: &Oracle<'_>,
    partition: &mut SddPartition,
    u: Vertex,
    params: &SddParams,
    rng: &mut R,
) -> Result<GenerationOutcome, SddError> {
    let eps = params.eps;
    let local = local_sdd(g, u, params, rng);
    let mut out = GenerationOutcome::default();
    for k in &local.local_cliques {
        out.local_sizes.push(k.len());
        if let Some(id) = promote_local_clique(g, partition, k, eps) {
            out.created.push(id);
        }
    }
    for &id in &out.created {
        if partition.clique(id).is_none() {
            continue;
        }
        match ac_merge(g, partition, id, params, rng)? {
            MergeOutcome::Updated(added) => out.merged.extend(added),
            MergeOutcome::Fail => return Err(SddError::MergeFailed(id)),
        }
    }
    out.touched = partition.take_touched();
    out.touched.sort_unstable();
    out.touched.dedup();
    Ok(out)
}

/// Registers the valid members of local clique `k` (global degree at most
/// `(1+2ε)|K|`) as a new clique when at least `(1-ε)|K|` of them are valid.
pub(crate) fn promote_local_clique(
    g: &Oracle<'_>,
    partition: &mut SddPartition,
    k: &[Vertex],
    eps: f64,
) -> Option<CliqueId> {
    let cap = (1.0 + 2.0 * eps) * k.len() as f64;
    let valid: Vec<Vertex> = k.iter().copied().filter(|&v| g.degree(v) as f64 <= cap).collect();
    if valid.is_empty() || (valid.len() as f64) < (1.0 - eps) * k.len() as f64 {
        return None;
    }
    Some(partition.new_clique(&valid))
}

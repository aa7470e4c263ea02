use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::StreamError;
use crate::dyngraph::Vertex;

/// Stochastic block model: `k` contiguous, near-equal communities, each
/// intra-community pair present with probability `p` and each cross pair with
/// probability `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SbmSpec {
    pub n: usize,
    pub k: usize,
    pub p: f64,
    pub q: f64,
    pub seed: u64,
}

impl SbmSpec {
    pub fn validate(&self) -> Result<(), StreamError> {
        if self.n == 0 || self.k == 0 || self.k > self.n {
            return Err(StreamError::InvalidSpec(format!(
                "need 1 <= k <= n, got n = {}, k = {}",
                self.n, self.k
            )));
        }
        if !(0.0 <= self.q && self.q <= self.p && self.p <= 1.0) {
            return Err(StreamError::InvalidSpec(format!(
                "need 0 <= q <= p <= 1, got p = {}, q = {}",
                self.p, self.q
            )));
        }
        Ok(())
    }
}

/// Community of every vertex: vertex `i` belongs to `⌊i·k/n⌋`.
pub fn sbm_communities(spec: &SbmSpec) -> Vec<usize> {
    (0..spec.n).map(|i| i * spec.k / spec.n).collect()
}

/// Edge list `(u, v)` with `u < v`, in lexicographic order.
pub fn sbm_generate(spec: &SbmSpec) -> Result<Vec<(Vertex, Vertex)>, StreamError> {
    spec.validate()?;
    let community = sbm_communities(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut edges = Vec::new();
    for u in 0..spec.n {
        for v in u + 1..spec.n {
            let prob = if community[u] == community[v] { spec.p } else { spec.q };
            if rng.gen_bool(prob) {
                edges.push((u, v));
            }
        }
    }
    Ok(edges)
}

use super::SddError;

/// How the neighborhood-similarity tests inside the local decomposition are
/// evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SddMode {
    /// Exact symmetric differences on the explicit induced subgraph.
    #[default]
    Exact,
    /// Sample-budgeted estimates; falls back to exact counts whenever a
    /// degree is below the sample budget.
    Sampled,
}

/// Parameters shared by every decomposition subroutine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SddParams {
    pub eps: f64,
    pub eta0: f64,
    /// Sample budget constant of the almost-clique merge test.
    pub c_merge: f64,
    /// Fail threshold constant of the merge test.
    pub c_fail: f64,
    /// Sample budget constant of the sparse split test.
    pub c_split: f64,
    /// Neighbor sample constant of the local neighborhood filter.
    pub c_local: f64,
    /// Per-neighbor symmetric-difference threshold multiplier (41.5).
    pub split_hi: f64,
    /// Sparse-neighbor fraction threshold multiplier (40).
    pub split_lo: f64,
    /// Lowest adjacency fraction to the test sample at which the merge test
    /// admits a vertex; the effective threshold is `max(1-2ε, merge_floor)`.
    /// Only binds for ε > (1 - merge_floor)/2. Zero gives the bare `1-2ε`.
    pub merge_floor: f64,
    pub mode: SddMode,
}

impl SddParams {
    pub fn new(eps: f64) -> Result<Self, SddError> {
        let p = Self {
            eps,
            eta0: 1.0,
            c_merge: 100.0,
            c_fail: 200.0,
            c_split: 3000.0,
            c_local: 50.0,
            split_hi: 41.5,
            split_lo: 40.0,
            merge_floor: 0.5,
            mode: SddMode::Exact,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_mode(mut self, mode: SddMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn validate(&self) -> Result<(), SddError> {
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(SddError::InvalidParams(format!("eps must lie in (0, 1), got {}", self.eps)));
        }
        let consts = [
            ("eta0", self.eta0),
            ("c_merge", self.c_merge),
            ("c_fail", self.c_fail),
            ("c_split", self.c_split),
            ("c_local", self.c_local),
            ("split_hi", self.split_hi),
            ("split_lo", self.split_lo),
        ];
        for (name, value) in consts {
            if !(value > 0.0 && value.is_finite()) {
                return Err(SddError::InvalidParams(format!("{name} must be positive, got {value}")));
            }
        }
        if !(0.0..=1.0).contains(&self.merge_floor) {
            return Err(SddError::InvalidParams(format!(
                "merge_floor must lie in [0, 1], got {}",
                self.merge_floor
            )));
        }
        Ok(())
    }

    /// Adjacency fraction the merge test requires.
    pub(crate) fn merge_fraction(&self) -> f64 {
        (1.0 - 2.0 * self.eps).max(self.merge_floor)
    }

    /// `⌈c·ln n / ε⌉`, at least 1.
    pub(crate) fn budget_over_eps(&self, c: f64, n: usize) -> usize {
        ((c * ln(n) / self.eps).ceil() as usize).max(1)
    }

    /// Fraction a sampled symmetric difference must reach for a sparse
    /// neighbor. Capped at 1: once `split_hi·ε` exceeds 1 only a fully
    /// disjoint sample qualifies.
    pub(crate) fn split_pair_fraction(&self) -> f64 {
        (self.split_hi * self.eps).min(1.0)
    }

    /// Sparseness level tested by the split rule, capped at 1 for the same
    /// reason.
    pub(crate) fn split_level(&self) -> f64 {
        (self.split_lo * self.eps).min(1.0)
    }
}

pub(crate) fn ln(n: usize) -> f64 {
    (n.max(1) as f64).ln()
}

//! Graph inputs and update streams: SBM generation, SNAP edge lists, the
//! random insert/delete stream and the adaptive targeted stream.

mod format;
mod pool;
mod random;
mod sbm;
mod snap;
mod targeted;

use thiserror::Error;

pub use format::{parse_update, read_stream, replay, write_stream};
pub use random::RandomStream;
pub use sbm::{sbm_communities, sbm_generate, SbmSpec};
pub use snap::{load_snap_edgelist, parse_snap, SnapGraph};
pub use targeted::{two_largest_clusters, TargetedStream};

#[derive(Debug, Error)]
pub enum StreamError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StreamMode {
    #[default]
    Random,
    Targeted,
}

impl std::str::FromStr for StreamMode {
    type Err = StreamError;

    fn from_str(s: &str) -> Result<Self, StreamError> {
        match s {
            "random" => Ok(Self::Random),
            "targeted" => Ok(Self::Targeted),
            other => Err(StreamError::InvalidSpec(format!("unknown stream mode '{other}'"))),
        }
    }
}

impl std::fmt::Display for StreamMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Random => "random",
            Self::Targeted => "targeted",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StreamSpec {
    pub mode: StreamMode,
    /// Probability that a step deletes rather than inserts.
    pub p_del: f64,
    pub total_updates: usize,
    pub seed: u64,
}

impl StreamSpec {
    pub fn new(mode: StreamMode, total_updates: usize, seed: u64) -> Self {
        Self { mode, p_del: 0.2, total_updates, seed }
    }

    pub fn validate(&self) -> Result<(), StreamError> {
        if !(0.0..=1.0).contains(&self.p_del) {
            return Err(StreamError::InvalidSpec(format!("p_del must lie in [0, 1], got {}", self.p_del)));
        }
        if self.total_updates == 0 {
            return Err(StreamError::InvalidSpec("total_updates must be at least 1".into()));
        }
        Ok(())
    }
}

/// Full-scale random stream length for a graph with `m` edges:
/// `max(1.5m, 500000)`.
pub fn full_random_length(m: usize) -> usize {
    (m * 3).div_ceil(2).max(500_000)
}

/// Full-scale targeted stream length: `max(2.5m, 500000)`.
pub fn full_targeted_length(m: usize) -> usize {
    (m * 5).div_ceil(2).max(500_000)
}

/// Desk-scale default: the full-scale length capped at 50000.
pub fn desk_length(full_length: usize) -> usize {
    full_length.min(50_000)
}

//! Sparse-dense decomposition: exact checkers, the static decomposition, the
//! sampled merge/split subroutines and local clique generation.

mod checks;
mod generation;
mod local;
mod params;
mod partition;
mod subroutines;

use thiserror::Error;

use crate::dyngraph::GraphError;

pub use checks::{exact_dense_check, exact_sparse_check, symmetric_difference};
pub use generation::{clique_generation, GenerationOutcome};
pub use local::{local_sdd, static_sdd, LocalLabel, LocalSddResult};
pub use params::{SddMode, SddParams};
pub use partition::{CliqueId, CliqueRecord, Label, SddPartition};
pub use subroutines::{ac_merge, sparse_split_test, MergeOutcome};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SddError {
    #[error("almost-clique must have at least one member")]
    EmptyClique,
    #[error("clique {0} is not live")]
    UnknownClique(CliqueId),
    #[error("merge test failed on clique {0}")]
    MergeFailed(CliqueId),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

//! Fully dynamic correlation clustering that stays accurate against an
//! adaptive adversary.
//!
//! The clustering is read off a maintained sparse-dense decomposition of the
//! positive graph: every almost-clique is a cluster and every sparse vertex
//! is a singleton. [`maintainer::MaintainerState`] applies edge flips one at a
//! time and repairs the decomposition locally, drawing fresh randomness at
//! every step.
//!
//! ```
//! use dyncc::dyngraph::EdgeUpdate;
//! use dyncc::maintainer::MaintainerState;
//! use dyncc::sdd::SddParams;
//!
//! let mut state = MaintainerState::new(4, SddParams::new(0.45).unwrap(), 7).unwrap();
//! state.apply_update(EdgeUpdate::insert(0, 1)).unwrap();
//! assert_eq!(state.cluster_of(0).unwrap(), state.cluster_of(1).unwrap());
//! ```

pub mod baselines;
pub mod dyngraph;
pub mod harness;
pub mod maintainer;
pub mod sdd;
pub mod streams;

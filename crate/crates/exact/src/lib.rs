//! Ground-truth machinery: exhaustive optimal-makespan search for tiny
//! instances, instance-specific certified lower bounds, and the grid-collapse
//! column-occupancy estimator.

mod bfs;
mod bounds;
mod stats;

use thiserror::Error;

pub use bfs::{bfs_optimal, legal_shifts, BfsConfig, BfsOutcome};
pub use bounds::{lb, lb_distance, lb_manhattan, TransportMode};
pub use stats::{collapse_bound, collapse_stats, CollapseStats};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("instance too large for exact machinery ({cells} cells, cap {cap})")]
    TooLarge { cells: u64, cap: u64 },
    #[error("start and goal have incompatible histograms")]
    Incompatible,
    #[error("goal cannot be resolved: {0}")]
    BadGoal(String),
}

//! Divide-and-conquer sorting planners: a single-escort pipeline (spread,
//! per-square normalization, level-by-level highway merges, final drag), a
//! multi-escort variant that splits the board into balanced vertical slabs,
//! iterated binary passes for fully-colored boards, and a direct per-tile
//! fallback for small or dense instances. Every emitted step is a single
//! line shift (or one shift per escort in slab mode) and validates against
//! the core move model.

mod fallback;
mod sim;
mod solve;
mod stages;

use thiserror::Error;

pub use solve::{merge_pass, normalize8, solve_bgsp, solve_cgsp, spread, SolveReport, StageSummary};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageTag {
    EscortRouting,
    Spread,
    Normalize8,
    MergeRows(u32),
    MergeCols(u32),
    FinalDrag,
    SlabCompact,
    Fallback,
    Backward,
}

impl std::fmt::Display for StageTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StageTag::EscortRouting => write!(f, "escort-routing"),
            StageTag::Spread => write!(f, "spread"),
            StageTag::Normalize8 => write!(f, "normalize8"),
            StageTag::MergeRows(i) => write!(f, "merge-rows-{i}"),
            StageTag::MergeCols(i) => write!(f, "merge-cols-{i}"),
            StageTag::FinalDrag => write!(f, "final-drag"),
            StageTag::SlabCompact => write!(f, "slab-compact"),
            StageTag::Fallback => write!(f, "fallback"),
            StageTag::Backward => write!(f, "backward"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("board is not binary (k = {0}); use the colored solver")]
    NotBinary(u8),
    #[error("start and goal have incompatible histograms")]
    Incompatible,
    #[error("instance is unsolvable (single-line boards conserve tile order)")]
    Unsolvable,
    #[error("per-tile labels requested; partially-labeled sorting is unsupported")]
    PgspUnsupported,
    #[error("corner endgame search exhausted")]
    EndgameStuck,
    #[error("goal: {0}")]
    BadGoal(String),
    #[error("planner invariant violated: {0}")]
    Internal(String),
}

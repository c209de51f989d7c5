//! The 3SAT to single-escort binary sliding-tile reduction, built
//! end-to-end: derived dimensions and layer extents, sparse instance
//! construction, the embedded sand castle, satisfying-assignment to
//! winning-turns scheduling, turn-to-plan lifting, and assignment
//! extraction from winning turn lists.

mod build;
mod cnf;
mod extract;
mod layout;
mod lift;
mod turns;

use thiserror::Error;

pub use build::{build_instance, embedded_scg, rasterize_scg, sorted_goal, BLACK, WHITE};
pub use cnf::{emit_dimacs, parse_dimacs, CnfFormula};
pub use extract::extract_assignment;
pub use layout::{derive_layout, Columns, Layers, ReductionLayout, XRange, YRange};
pub use lift::turns_to_plan;
pub use turns::assignment_to_turns;

/// Default cap on the constructed board side m. Instances grow roughly as
/// N*M*(N+M)^2 on each side; anything past this is rejected unless the
/// caller raises the cap (the CLI honors GSTP_CAP_CELLS).
pub const DEFAULT_MAX_M: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("bad formula: {0}")]
    BadFormula(String),
    #[error("DIMACS line {line}: {msg}")]
    Dimacs { line: usize, msg: String },
    #[error("layout side m = {m} exceeds cap {cap}")]
    LayoutTooLarge { m: u64, cap: u64 },
    #[error("assignment does not satisfy the formula")]
    UnsatisfyingAssignment,
    #[error("turn list does not win the embedded sand castle")]
    NotAWinningTurnList,
    #[error("canonical schedule stuck: turn ({x},{y}) not open after {after} turns")]
    ScheduleStuck { x: u32, y: u32, after: usize },
    #[error("canonical schedule ended with {left} holes remaining")]
    ScheduleIncomplete { left: u64 },
    #[error("extracted assignment does not satisfy the formula")]
    ExtractionUnsatisfying,
    #[error(transparent)]
    Board(gstp_core::BoardError),
}

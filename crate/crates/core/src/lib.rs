//! Core model for colored generalized sliding-tile puzzles: boards (dense and
//! run-length sparse), the synchronous escort line-shift move model with its
//! five path constraints, layered goal construction, and plan validation.

mod board;
mod error;
pub mod fmt;
mod goal;
mod sparse;
mod step;

pub use board::{Board, Cell};
pub use error::{
    BoardError, GenericViolation, GoalError, ParseError, ParseErrorKind, PlanFailure,
    StepViolation,
};
pub use goal::{canonical_goal, layered_goal, validate_plan, Corner, GoalSpec};
pub use step::{
    apply_step, apply_step_unchecked, expand_step, validate_generic_step, validate_step, Axis,
    LineShift, Moves, Plan, Step,
};

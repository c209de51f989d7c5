use thiserror::Error;

use crate::step::{Axis, LineShift};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoardError {
    #[error("board dimensions must be at least 1x1, got {m1}x{m2}")]
    BadDimensions { m1: u32, m2: u32 },
    #[error("color count k must be at least 1, got {0}")]
    BadColorCount(u8),
    #[error("cell ({x},{y}) holds color {color} but k = {k}")]
    ColorOutOfRange { x: u32, y: u32, color: u8, k: u8 },
    #[error("board has no escort (p = 0)")]
    NoEscort,
    #[error("cell buffer has {got} cells, expected {expected}")]
    BadCellCount { got: usize, expected: usize },
    #[error("rect ({:?}) out of range for {m1}x{m2} board", rect)]
    RectOutOfRange { rect: (u32, u32, u32, u32), m1: u32, m2: u32 },
    #[error("rects #{first} and #{second} overlap")]
    RectOverlap { first: usize, second: usize },
}

/// First violated constraint for a [`crate::Step`], in check order.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StepViolation {
    #[error("shift {shift} out of range for the board")]
    OutOfRange { shift: LineShift },
    #[error("shift {shift} is degenerate (from = to)")]
    Degenerate { shift: LineShift },
    #[error("shift {shift}: cell at offset {from} is not an escort")]
    FromNotEscort { shift: LineShift, from: u32 },
    #[error("shift {shift}: segment cell at offset {at} is an escort")]
    EscortOnSegment { shift: LineShift, at: u32 },
    #[error("shifts #{a} and #{b} touch overlapping cells")]
    Overlap { a: usize, b: usize },
}

/// First violated constraint for an arbitrary synchronous displacement map.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenericViolation {
    #[error("cell ({x},{y}) is outside the board")]
    SourceOutOfRange { x: u32, y: u32 },
    #[error("cell ({x},{y}) is an escort, not a tile")]
    NotATile { x: u32, y: u32 },
    #[error("tile at ({x},{y}) moves more than one grid edge")]
    Motion { x: u32, y: u32 },
    #[error("tile at ({x},{y}) moves off the board")]
    TargetOutOfRange { x: u32, y: u32 },
    #[error("tiles at ({},{}) and ({},{}) meet at ({},{})", a.0, a.1, b.0, b.1, at.0, at.1)]
    Meet {
        a: (u32, u32),
        b: (u32, u32),
        at: (u32, u32),
    },
    #[error("tiles at ({},{}) and ({},{}) collide head-on", a.0, a.1, b.0, b.1)]
    HeadOn { a: (u32, u32), b: (u32, u32) },
    #[error("tile at ({},{}) follows tile at ({},{}) around a corner", follower.0, follower.1, leader.0, leader.1)]
    CornerFollowing {
        follower: (u32, u32),
        leader: (u32, u32),
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanFailure {
    #[error("start and goal have incompatible histograms")]
    IncompatibleInstance,
    #[error("step {index} invalid: {violation}")]
    StepInvalid { index: usize, violation: StepViolation },
    #[error("final board differs from goal, first at ({},{})", at.0, at.1)]
    GoalMismatch { at: (u32, u32) },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GoalError {
    #[error("order must be a permutation of 1..={k}, got {order:?}")]
    BadOrder { k: u8, order: Vec<u8> },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("bad or missing header, expected `gstp 1 <m1> <m2> <k>`")]
    BadHeader,
    #[error("unsupported format version `{0}`")]
    BadVersion(String),
    #[error("expected `dense` or `sparse <default-color>`")]
    BadMode,
    #[error("bad dense row: {0}")]
    BadRow(String),
    #[error("unknown cell character `{0}`")]
    BadCell(char),
    #[error("bad rect line: {0}")]
    BadRect(String),
    #[error("rect overlaps rect on line {0}")]
    OverlappingRect(usize),
    #[error("board error: {0}")]
    Board(BoardError),
    #[error("bad step line: {0}")]
    BadStep(String),
    #[error("unexpected trailing content")]
    Trailing,
    #[error("unexpected end of input")]
    Eof,
}

impl ParseError {
    pub fn new(line: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, kind }
    }
}

impl From<Axis> for char {
    fn from(a: Axis) -> char {
        match a {
            Axis::Row => 'R',
            Axis::Column => 'C',
        }
    }
}

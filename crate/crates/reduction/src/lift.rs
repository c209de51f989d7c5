//! Lifting winning sand-castle turns to board plans: each turn becomes a
//! four-jump clockwise escort cycle. From the top-right corner the escort
//! drops down the right edge to the open row, sweeps left into H to the
//! chosen tile (expelling the row's rightmost white past G's right boundary),
//! rises to the board's top row (simulating the column fall), and returns
//! right to the corner (consuming one tail tile). Makespan is exactly 4
//! jumps per turn, i.e. K = 4w for a win.

use gstp_core::{LineShift, Plan, Step};
use gstp_scg::{play, PlayResult, ScgBoard, Turn};

use crate::{ReductionError, ReductionLayout};

/// Builds the 4w-step plan induced by a winning turn list.
pub fn turns_to_plan(
    l: &ReductionLayout,
    scg: &ScgBoard,
    turns: &[Turn],
) -> Result<Plan, ReductionError> {
    if play(scg, turns) != PlayResult::Win {
        return Err(ReductionError::NotAWinningTurnList);
    }
    let m = l.m as u32;
    let mut steps = Vec::with_capacity(4 * turns.len());
    for t in turns {
        let (x, y) = (t.x, t.y);
        steps.push(Step::single(LineShift::column(m, m, y)));
        steps.push(Step::single(LineShift::row(y, m, x)));
        steps.push(Step::single(LineShift::column(x, y, m)));
        steps.push(Step::single(LineShift::row(m, x, m)));
    }
    Ok(Plan::new(steps))
}

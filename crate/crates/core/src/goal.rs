//! Goal configurations and plan validation. A layered goal fills rows
//! bottom-up in a given color order, the last partial row left-adjusted,
//! with the escorts packed at a stated corner.

use crate::board::{Board, Cell};
use crate::error::{GoalError, PlanFailure};
use crate::step::{apply_step_unchecked, validate_step, Plan};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corner {
    BottomLeft,
    BottomRight,
    TopLeft,
    TopRight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoalSpec {
    Explicit(Board),
    Layered { order: Vec<u8>, corner: Corner },
}

impl GoalSpec {
    /// The explicit goal board this spec denotes for `start`.
    pub fn resolve(&self, start: &Board) -> Result<Board, GoalError> {
        match self {
            GoalSpec::Explicit(b) => Ok(b.clone()),
            GoalSpec::Layered { order, corner } => layered_goal(start, order, *corner),
        }
    }
}

fn check_order(k: u8, order: &[u8]) -> Result<(), GoalError> {
    let mut seen = vec![false; k as usize + 1];
    let ok = order.len() == k as usize
        && order.iter().all(|&c| {
            if c == 0 || c > k || seen[c as usize] {
                false
            } else {
                seen[c as usize] = true;
                true
            }
        });
    if ok {
        Ok(())
    } else {
        Err(GoalError::BadOrder { k, order: order.to_vec() })
    }
}

/// Cells scanned outward from a corner: the corner's row first, then the next
/// row inward. Escorts take the first `p` cells of this scan.
fn corner_scan(m1: u32, m2: u32, corner: Corner, p: u64) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity(p as usize);
    let ys: Box<dyn Iterator<Item = u32>> = match corner {
        Corner::BottomLeft | Corner::BottomRight => Box::new(1..=m1),
        Corner::TopLeft | Corner::TopRight => Box::new((1..=m1).rev()),
    };
    'outer: for y in ys {
        let xs: Box<dyn Iterator<Item = u32>> = match corner {
            Corner::BottomLeft | Corner::TopLeft => Box::new(1..=m2),
            Corner::BottomRight | Corner::TopRight => Box::new((1..=m2).rev()),
        };
        for x in xs {
            if out.len() as u64 >= p {
                break 'outer;
            }
            out.push((x, y));
        }
    }
    out
}

/// The layered goal for `board`'s tile multiset: rows fill bottom-up in
/// `order`, partial rows left-adjusted, escorts packed at `corner`.
pub fn layered_goal(board: &Board, order: &[u8], corner: Corner) -> Result<Board, GoalError> {
    check_order(board.k(), order)?;
    let hist = board.histogram();
    let p = hist[0];
    let (m1, m2) = (board.m1(), board.m2());
    let mut escort_cells = corner_scan(m1, m2, corner, p);
    escort_cells.sort_unstable_by_key(|&(x, y)| (y, x));
    let mut escort_iter = escort_cells.into_iter().peekable();

    let mut remaining: Vec<(u8, u64)> = order.iter().map(|&c| (c, hist[c as usize])).collect();
    let mut color_idx = 0usize;
    let mut cells: Vec<Cell> = Vec::with_capacity(board.cells() as usize);
    for y in 1..=m1 {
        for x in 1..=m2 {
            if escort_iter.peek() == Some(&(x, y)) {
                escort_iter.next();
                cells.push(Cell::Escort);
                continue;
            }
            while color_idx < remaining.len() && remaining[color_idx].1 == 0 {
                color_idx += 1;
            }
            let (c, n) = &mut remaining[color_idx];
            *n -= 1;
            cells.push(Cell::Color(*c));
        }
    }
    let dense = Board::from_cells(m1, m2, board.k(), cells).expect("histogram-compatible goal");
    Ok(if board.is_sparse() { dense.to_sparse() } else { dense })
}

/// The canonical sorted goal: layered in `order` with escorts packed at the
/// top-right corner.
pub fn canonical_goal(board: &Board, order: &[u8]) -> Result<Board, GoalError> {
    layered_goal(board, order, Corner::TopRight)
}

/// Replays `plan` from `start`, validating every step, and checks the final
/// board equals the goal under color equality.
pub fn validate_plan(start: &Board, goal: &GoalSpec, plan: &Plan) -> Result<usize, PlanFailure> {
    let goal_board = goal.resolve(start).map_err(|_| PlanFailure::IncompatibleInstance)?;
    if start.histogram() != goal_board.histogram()
        || start.m1() != goal_board.m1()
        || start.m2() != goal_board.m2()
    {
        return Err(PlanFailure::IncompatibleInstance);
    }
    let mut cur = start.clone();
    for (index, step) in plan.steps.iter().enumerate() {
        validate_step(&cur, step).map_err(|violation| PlanFailure::StepInvalid { index, violation })?;
        apply_step_unchecked(&mut cur, step);
    }
    match cur.first_difference(&goal_board) {
        None => Ok(plan.makespan()),
        Some(at) => Err(PlanFailure::GoalMismatch { at }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::step::{LineShift, Step};

    #[test]
    fn layered_4x4_black_then_white() {
        // 4 white + 11 black + 1 escort: blacks fill the lower three rows
        // save one cell, whites above, escort top-right.
        let mut cells = vec![Cell::Color(1); 16];
        for c in cells.iter_mut().take(11) {
            *c = Cell::Color(2);
        }
        cells[15] = Cell::Escort;
        let b = Board::from_cells(4, 4, 2, cells).unwrap();
        let g = canonical_goal(&b, &[2, 1]).unwrap();
        for (x, y) in [(1, 1), (4, 2), (3, 3)] {
            assert_eq!(g.get(x, y), Cell::Color(2), "({x},{y})");
        }
        assert_eq!(g.get(4, 3), Cell::Color(1));
        assert_eq!(g.get(3, 4), Cell::Color(1));
        assert_eq!(g.get(4, 4), Cell::Escort);
    }

    #[test]
    fn empty_plan_on_goal() {
        let b = Board::from_cells(1, 2, 1, vec![Cell::Escort, Cell::Color(1)]).unwrap();
        let goal = GoalSpec::Explicit(b.clone());
        assert_eq!(validate_plan(&b, &goal, &Plan::default()), Ok(0));
    }

    #[test]
    fn single_shift_reaches_goal() {
        let b = Board::from_cells(
            1,
            3,
            2,
            vec![Cell::Escort, Cell::Color(2), Cell::Color(1)],
        )
        .unwrap();
        let g = Board::from_cells(
            1,
            3,
            2,
            vec![Cell::Color(2), Cell::Color(1), Cell::Escort],
        )
        .unwrap();
        let plan = Plan::new(vec![Step::single(LineShift::row(1, 1, 3))]);
        assert_eq!(validate_plan(&b, &GoalSpec::Explicit(g), &plan), Ok(1));
    }

    #[test]
    fn wrong_final_cell_fails() {
        let b = Board::from_cells(1, 2, 1, vec![Cell::Escort, Cell::Color(1)]).unwrap();
        let g = Board::from_cells(1, 2, 1, vec![Cell::Color(1), Cell::Escort]).unwrap();
        let res = validate_plan(&b, &GoalSpec::Explicit(g), &Plan::default());
        assert_eq!(res, Err(PlanFailure::GoalMismatch { at: (1, 1) }));
    }

    #[test]
    fn escort_corner_packing() {
        let mut cells = vec![Cell::Color(1); 9];
        cells[0] = Cell::Escort;
        cells[1] = Cell::Escort;
        let b = Board::from_cells(3, 3, 1, cells).unwrap();
        let g = layered_goal(&b, &[1], Corner::TopRight).unwrap();
        assert_eq!(g.get(3, 3), Cell::Escort);
        assert_eq!(g.get(2, 3), Cell::Escort);
        assert_eq!(g.get(1, 3), Cell::Color(1));
    }
}

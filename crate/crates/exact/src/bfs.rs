//! Exhaustive breadth-first search over configurations for tiny instances.
//! Same-color tiles are interchangeable, so a configuration is exactly its
//! cell->color map; the visited set keys on a packed encoding of that map.

use std::collections::HashMap;

use gstp_core::{apply_step, Board, Cell, GoalSpec, LineShift, Step};

use crate::ExactError;

#[derive(Debug, Clone)]
pub struct BfsConfig {
    /// Hard cap on board cells; the state space explodes beyond ~a dozen.
    pub max_cells: u64,
    /// Maximum number of parallel shifts enumerated per step (escort cap).
    pub max_shifts_per_step: usize,
    /// Node expansion budget; exceeding it yields `Exhausted`, never a wrong
    /// answer.
    pub node_budget: u64,
}

impl Default for BfsConfig {
    fn default() -> Self {
        BfsConfig { max_cells: 12, max_shifts_per_step: 2, node_budget: 20_000_000 }
    }
}

#[derive(Debug, Clone)]
pub enum BfsOutcome {
    Optimal { makespan: usize, witness: gstp_core::Plan },
    /// No solution within the budget (or the goal is unreachable and the
    /// reachable space was exhausted).
    Exhausted { explored: u64, space_exhausted: bool },
}

fn encode(board: &Board) -> u64 {
    debug_assert!(board.cells() <= 16 && board.k() < 16);
    let mut key = 0u64;
    for y in 1..=board.m1() {
        for x in 1..=board.m2() {
            key = (key << 4)
                | match board.get(x, y) {
                    Cell::Escort => 0,
                    Cell::Color(c) => c as u64,
                };
        }
    }
    key
}

/// All legal single shifts on `board`.
pub fn legal_shifts(board: &Board) -> Vec<LineShift> {
    let mut out = Vec::new();
    for (ex, ey) in board.escort_positions() {
        for (dx, dy) in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
            let (axis, index, from, line_len) = if dy == 0 {
                (gstp_core::Axis::Row, ey, ex, board.m2())
            } else {
                (gstp_core::Axis::Column, ex, ey, board.m1())
            };
            let dir = dx + dy;
            let mut to = from as i64;
            loop {
                let next = to + dir;
                if next < 1 || next > line_len as i64 {
                    break;
                }
                let (cx, cy) = if dy == 0 { (next as u32, ey) } else { (ex, next as u32) };
                if board.get(cx, cy).is_escort() {
                    break;
                }
                to = next;
                out.push(LineShift { axis, index, from, to: to as u32 });
            }
        }
    }
    out
}

/// All legal steps with up to `max_shifts` pairwise-disjoint shifts.
fn legal_steps(board: &Board, max_shifts: usize) -> Vec<Step> {
    let singles = legal_shifts(board);
    let mut steps: Vec<Step> = singles.iter().map(|&s| Step::single(s)).collect();
    if max_shifts >= 2 {
        let mut stack: Vec<(usize, Vec<LineShift>)> = singles
            .iter()
            .enumerate()
            .map(|(i, &s)| (i, vec![s]))
            .collect();
        while let Some((last, combo)) = stack.pop() {
            if combo.len() >= max_shifts {
                continue;
            }
            for (j, &cand) in singles.iter().enumerate().skip(last + 1) {
                let mut next = combo.clone();
                next.push(cand);
                let step = Step::new(next.clone());
                if gstp_core::validate_step(board, &step).is_ok() {
                    steps.push(step);
                    stack.push((j, next));
                }
            }
        }
    }
    steps
}

/// Minimum-makespan search. Returns the optimum and one witness plan, or an
/// explicit `Exhausted` marker.
pub fn bfs_optimal(
    start: &Board,
    goal: &GoalSpec,
    cfg: &BfsConfig,
) -> Result<BfsOutcome, ExactError> {
    if start.cells() > cfg.max_cells {
        return Err(ExactError::TooLarge { cells: start.cells(), cap: cfg.max_cells });
    }
    let goal_board = goal
        .resolve(start)
        .map_err(|e| ExactError::BadGoal(e.to_string()))?;
    if goal_board.histogram() != start.histogram() {
        return Err(ExactError::Incompatible);
    }
    let goal_key = encode(&goal_board);
    let start_key = encode(start);

    let mut parents: HashMap<u64, (u64, Step)> = HashMap::new();
    let mut frontier: Vec<(u64, Board)> = vec![(start_key, start.clone())];
    let mut seen: HashMap<u64, ()> = HashMap::new();
    seen.insert(start_key, ());
    let mut explored = 0u64;

    if start_key == goal_key {
        return Ok(BfsOutcome::Optimal { makespan: 0, witness: gstp_core::Plan::default() });
    }

    while !frontier.is_empty() {
        let mut next_frontier: Vec<(u64, Board)> = Vec::new();
        for (key, board) in frontier {
            explored += 1;
            if explored > cfg.node_budget {
                return Ok(BfsOutcome::Exhausted { explored, space_exhausted: false });
            }
            for step in legal_steps(&board, cfg.max_shifts_per_step) {
                let succ = apply_step(&board, &step).expect("enumerated steps are valid");
                let succ_key = encode(&succ);
                if seen.contains_key(&succ_key) {
                    continue;
                }
                seen.insert(succ_key, ());
                parents.insert(succ_key, (key, step.clone()));
                if succ_key == goal_key {
                    let mut steps = Vec::new();
                    let mut cur = succ_key;
                    while cur != start_key {
                        let (prev, s) = parents.remove(&cur).expect("parent chain");
                        steps.push(s);
                        cur = prev;
                    }
                    steps.reverse();
                    return Ok(BfsOutcome::Optimal {
                        makespan: steps.len(),
                        witness: gstp_core::Plan::new(steps),
                    });
                }
                next_frontier.push((succ_key, succ));
            }
        }
        frontier = next_frontier;
    }
    Ok(BfsOutcome::Exhausted { explored, space_exhausted: true })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells(spec: &str, k: u8) -> Board {
        // Rows top-to-bottom separated by '/', chars as in the dense format.
        let rows: Vec<&str> = spec.split('/').collect();
        let m1 = rows.len() as u32;
        let m2 = rows[0].chars().count() as u32;
        let mut v = Vec::new();
        for row in rows.iter().rev() {
            for ch in row.chars() {
                v.push(match ch {
                    '.' => Cell::Escort,
                    c => Cell::Color(c as u8 - b'a' + 1),
                });
            }
        }
        Board::from_cells(m1, m2, k, v).unwrap()
    }

    #[test]
    fn start_equals_goal_is_zero() {
        let b = cells("ab/.a", 2);
        let out = bfs_optimal(&b, &GoalSpec::Explicit(b.clone()), &BfsConfig::default()).unwrap();
        match out {
            BfsOutcome::Optimal { makespan, .. } => assert_eq!(makespan, 0),
            _ => panic!("expected optimal"),
        }
    }

    #[test]
    fn single_full_line_shift_is_one() {
        let start = cells(".ba", 2);
        let goal = cells("ba.", 2);
        let out =
            bfs_optimal(&start, &GoalSpec::Explicit(goal), &BfsConfig::default()).unwrap();
        match out {
            BfsOutcome::Optimal { makespan, witness } => {
                assert_eq!(makespan, 1);
                assert!(gstp_core::validate_plan(
                    &start,
                    &GoalSpec::Explicit(cells("ba.", 2)),
                    &witness
                )
                .is_ok());
            }
            _ => panic!("expected optimal"),
        }
    }

    #[test]
    fn two_by_two_layered_goal_is_two() {
        // Escort (1,1), black (1,2), whites elsewhere; layered goal with
        // black on the bottom row and the escort top-right takes 2 steps.
        let start = cells("ba/.a", 2);
        let goal = GoalSpec::Layered { order: vec![2, 1], corner: gstp_core::Corner::TopRight };
        let out = bfs_optimal(&start, &goal, &BfsConfig::default()).unwrap();
        match out {
            BfsOutcome::Optimal { makespan, witness } => {
                assert_eq!(makespan, 2);
                assert_eq!(gstp_core::validate_plan(&start, &goal, &witness), Ok(2));
            }
            _ => panic!("expected optimal"),
        }
    }
}

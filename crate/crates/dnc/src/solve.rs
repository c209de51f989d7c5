//! Solver entry points: goal resolution, escort routing, path selection
//! between the divide-and-conquer pipeline and the per-tile fallback,
//! forward/backward splicing for arbitrary goals, slab parallelism for
//! multiple escorts, and iterated binary passes for colored boards.

use std::collections::{HashMap, VecDeque};

use gstp_core::{Axis, Board, Cell, GoalSpec, LineShift, Plan, Step};

use crate::fallback::solve_exact;
use crate::sim::{Pos, Rect, Sim};
use crate::stages;
use crate::{SolverError, StageTag};

#[derive(Debug, Clone)]
pub struct StageSummary {
    pub tag: StageTag,
    pub steps: usize,
    pub base_steps: u64,
    pub per_black_steps: u64,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub plan: Plan,
    pub stages: Vec<StageSummary>,
    pub flags: Vec<String>,
}

impl SolveReport {
    pub fn makespan(&self) -> usize {
        self.plan.makespan()
    }
}

/// Minimum side for the divide-and-conquer pipeline; below this the direct
/// per-tile fallback is used (the proof's density arguments assume larger
/// boards).
const PIPELINE_MIN_SIDE: u32 = 16;

pub(crate) fn board_blacks(board: &Board, color: u8) -> Vec<Pos> {
    let mut out = Vec::new();
    for y in 1..=board.m1() {
        for x in 1..=board.m2() {
            if board.get(x, y) == Cell::Color(color) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Routes escorts one at a time to `targets` (unit swaps through tiles,
/// avoiding other escorts), mutating `board` and returning the shifts, the
/// remaining active escort and the parked positions.
pub(crate) fn route_escorts(
    board: &mut Board,
    targets: &[Pos],
) -> Result<(Vec<LineShift>, Pos, Vec<Pos>), SolverError> {
    let mut shifts = Vec::new();
    let mut parked: Vec<Pos> = Vec::new();
    for &t in targets {
        if board.get(t.0, t.1).is_escort() && !parked.contains(&t) {
            parked.push(t);
            continue;
        }
        // Nearest unparked escort by BFS from the target over tile cells.
        let mut prev: HashMap<Pos, Pos> = HashMap::new();
        prev.insert(t, t);
        let mut queue = VecDeque::new();
        queue.push_back(t);
        let mut found: Option<Pos> = None;
        'bfs: while let Some(u) = queue.pop_front() {
            for (dx, dy) in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
                let n = (u.0 as i64 + dx, u.1 as i64 + dy);
                if n.0 < 1 || n.1 < 1 || n.0 > board.m2() as i64 || n.1 > board.m1() as i64 {
                    continue;
                }
                let n = (n.0 as u32, n.1 as u32);
                if parked.contains(&n) || prev.contains_key(&n) {
                    continue;
                }
                prev.insert(n, u);
                if board.get(n.0, n.1).is_escort() {
                    found = Some(n);
                    break 'bfs;
                }
                queue.push_back(n);
            }
        }
        let Some(start) = found else {
            return Err(SolverError::Internal(format!("no escort can reach {t:?}")));
        };
        let mut cur = start;
        while cur != t {
            let next = prev[&cur];
            let (axis, index, from, to) = if cur.1 == next.1 {
                (Axis::Row, cur.1, cur.0, next.0)
            } else {
                (Axis::Column, cur.0, cur.1, next.1)
            };
            let shift = LineShift { axis, index, from, to };
            gstp_core::apply_step_unchecked(board, &Step::single(shift));
            shifts.push(shift);
            cur = next;
        }
        parked.push(t);
    }
    let active = board
        .escort_positions()
        .into_iter()
        .find(|p| !parked.contains(p))
        .ok_or_else(|| SolverError::Internal("no active escort left".into()))?;
    Ok((shifts, active, parked))
}

/// Sorts a binary board to the resolved goal.
pub fn solve_bgsp(board: &Board, goal: &GoalSpec) -> Result<SolveReport, SolverError> {
    if board.k() != 2 {
        return Err(SolverError::NotBinary(board.k()));
    }
    let goal_board = goal
        .resolve(board)
        .map_err(|e| SolverError::BadGoal(e.to_string()))?;
    if board.histogram() != goal_board.histogram()
        || board.m1() != goal_board.m1()
        || board.m2() != goal_board.m2()
    {
        return Err(SolverError::Incompatible);
    }
    solve_binary_to(&board.to_dense(), &goal_board.to_dense())
}

/// Binary solve with an explicit goal configuration. Arbitrary goals run the
/// pipeline forward from the start and backward from the goal, splicing at
/// the canonical sorted configuration.
pub(crate) fn solve_binary_to(board: &Board, goal_board: &Board) -> Result<SolveReport, SolverError> {
    if board == goal_board {
        return Ok(SolveReport { plan: Plan::default(), stages: Vec::new(), flags: Vec::new() });
    }
    let mut flags: Vec<String> = Vec::new();
    let p = board.escort_count() as usize;

    let hist = board.histogram();
    let minority = hist[2].min(hist[1]);
    let use_pipeline =
        board.m1().min(board.m2()) >= PIPELINE_MIN_SIDE && minority * 9 <= board.cells();

    if !use_pipeline {
        if board.m1().min(board.m2()) >= PIPELINE_MIN_SIDE {
            flags.push("dense-fallback".into());
        }
        let mut work = board.clone();
        // Park outermost-first (top-right corner inward) so the parked
        // escorts hug the corner instead of cutting the free region; the
        // active escort ends on the lowest-leftmost escort cell by
        // complement.
        let mut goal_escorts: Vec<Pos> = goal_board.escort_positions();
        goal_escorts.sort_unstable_by(|a, b| (b.1, b.0).cmp(&(a.1, a.0)));
        let park_targets: Vec<Pos> = goal_escorts.iter().copied().take(p - 1).collect();
        let (route, active, parked) = route_escorts(&mut work, &park_targets)?;
        let mut stages_out = Vec::new();
        if !route.is_empty() {
            stages_out.push(StageSummary {
                tag: StageTag::EscortRouting,
                steps: route.len(),
                base_steps: route.len() as u64,
                per_black_steps: 0,
            });
        }
        let shifts = solve_exact(&work, goal_board, active, &parked)?;
        stages_out.push(StageSummary {
            tag: StageTag::Fallback,
            steps: shifts.len(),
            base_steps: 0,
            per_black_steps: shifts.len() as u64,
        });
        let plan = Plan::new(
            route
                .into_iter()
                .chain(shifts)
                .map(Step::single)
                .collect(),
        );
        return Ok(SolveReport { plan, stages: stages_out, flags });
    }

    // Pipeline path: sort the minority color (flipping is a relabeling of
    // the binary view only).
    let sort_color: u8 = if hist[2] <= hist[1] { 2 } else { 1 };
    if sort_color == 1 {
        flags.push("color-flip".into());
    }

    let forward = pipeline_to_canonical(board, sort_color, p, &mut flags)?;
    if forward.final_board == *goal_board {
        return Ok(SolveReport { plan: Plan::new(forward.steps), stages: forward.stages, flags });
    }
    let backward = pipeline_to_canonical(goal_board, sort_color, p, &mut flags)?;
    if backward.final_board != forward.final_board {
        return Err(SolverError::Internal(
            "forward and backward passes reached different canonical states".into(),
        ));
    }
    let mut steps = forward.steps;
    let back_len: usize = backward.steps.len();
    steps.extend(backward.steps.into_iter().rev().map(|s| s.reversed()));
    let mut stages = forward.stages;
    stages.push(StageSummary {
        tag: StageTag::Backward,
        steps: back_len,
        base_steps: back_len as u64,
        per_black_steps: 0,
    });
    Ok(SolveReport { plan: Plan::new(steps), stages, flags })
}

pub(crate) struct PipelineOutcome {
    pub steps: Vec<Step>,
    pub stages: Vec<StageSummary>,
    pub final_board: Board,
}

/// Runs the full pipeline on a dense board, sorting `sort_color` into the
/// canonical layered configuration (sorted color at the bottom, escorts
/// packed top-right), and verifies the result by replay.
fn pipeline_to_canonical(
    board: &Board,
    sort_color: u8,
    p: usize,
    flags: &mut Vec<String>,
) -> Result<PipelineOutcome, SolverError> {
    let canonical = canonical_binary(board, sort_color);
    let run = stages::run_pipeline(board, &canonical, sort_color, p, flags)?;
    let mut check = board.clone();
    for step in &run.steps {
        gstp_core::apply_step_unchecked(&mut check, step);
    }
    if check != canonical {
        return Err(SolverError::Internal("pipeline missed the canonical state".into()));
    }
    Ok(PipelineOutcome { steps: run.steps, stages: run.stages, final_board: check })
}

/// The canonical layered binary configuration for this board's histogram:
/// the sorted color fills the bottom rows left-adjusted, escorts pack the
/// top-right corner, the other color fills the rest.
pub(crate) fn canonical_binary(board: &Board, sort_color: u8) -> Board {
    let other: u8 = if sort_color == 2 { 1 } else { 2 };
    gstp_core::layered_goal(board, &[sort_color, other], gstp_core::Corner::TopRight)
        .expect("binary order")
        .to_dense()
}

/// Spread stage on a binary board (the last escort drives; any others are
/// treated as parked obstacles).
pub fn spread(board: &Board) -> Result<(Plan, StageSummary), SolverError> {
    single_stage(board, StageTag::Spread)
}

/// Per-8x8-square normalization stage.
pub fn normalize8(board: &Board) -> Result<(Plan, StageSummary), SolverError> {
    single_stage(board, StageTag::Normalize8)
}

/// One merge level: combines 2^(level-1) blocks into 2^level blocks, rows
/// then columns.
pub fn merge_pass(board: &Board, level: u32) -> Result<(Plan, StageSummary), SolverError> {
    single_stage(board, StageTag::MergeRows(level))
}

fn single_stage(board: &Board, tag: StageTag) -> Result<(Plan, StageSummary), SolverError> {
    if board.k() != 2 {
        return Err(SolverError::NotBinary(board.k()));
    }
    let dense = board.to_dense();
    let escorts = dense.escort_positions();
    let active = *escorts.last().expect("boards have an escort");
    let obstacles: Vec<Pos> = escorts[..escorts.len() - 1].to_vec();
    let region = Rect { x1: 1, y1: 1, x2: dense.m2(), y2: dense.m1() };
    let mut sim = Sim::new(
        dense.m1(),
        dense.m2(),
        region,
        board_blacks(&dense, 2).into_iter(),
        active,
        obstacles,
    );
    sim.mark(tag);
    match tag {
        StageTag::Spread => stages::stage_spread(&mut sim)?,
        StageTag::Normalize8 => stages::stage_normalize(&mut sim, 8)?,
        StageTag::MergeRows(level) => stages::stage_merge_level(&mut sim, level)?,
        _ => unreachable!("not a public stage"),
    }
    let summary = StageSummary {
        tag,
        steps: sim.shifts.len(),
        base_steps: sim.base_steps,
        per_black_steps: sim.black_steps,
    };
    let plan = Plan::new(sim.shifts.into_iter().map(Step::single).collect());
    Ok((plan, summary))
}

/// Sorts a colored board layer by layer into the canonical layered goal:
/// each pass places one color exactly, treating it against everything else
/// as a binary problem on the not-yet-finalized rows. Boards where every
/// color is unique (labeled sorting) are rejected.
pub fn solve_cgsp(board: &Board, order: &[u8]) -> Result<SolveReport, SolverError> {
    let hist = board.histogram();
    if board.k() >= 2 && (1..=board.k()).all(|c| hist[c as usize] <= 1) {
        return Err(SolverError::PgspUnsupported);
    }
    let goal = gstp_core::layered_goal(board, order, gstp_core::Corner::TopRight)
        .map_err(|e| SolverError::BadGoal(e.to_string()))?
        .to_dense();
    if board.k() == 2 {
        let mut report = solve_bgsp(board, &GoalSpec::Explicit(goal))?;
        report.flags.push("binary-direct".into());
        return Ok(report);
    }
    solve_colored_to(&board.to_dense(), &goal, order)
}

fn solve_colored_to(board: &Board, goal: &Board, order: &[u8]) -> Result<SolveReport, SolverError> {
    let (m1, m2) = (board.m1(), board.m2());
    let mut work = board.clone();
    let mut stages_out: Vec<StageSummary> = Vec::new();
    let mut all_steps: Vec<Step> = Vec::new();
    let mut flags: Vec<String> = Vec::new();
    // Rows strictly below `floor` are finalized; `bite` is the number of
    // finalized cells at the left of row `floor`.
    let mut floor = 1u32;
    let mut bite = 0u32;

    for (pass, &color) in order.iter().enumerate() {
        // This color's goal cells, in fill order.
        let goal_cells: Vec<Pos> = {
            let mut v = Vec::new();
            for y in floor..=m1 {
                for x in 1..=m2 {
                    if goal.get(x, y) == Cell::Color(color) {
                        v.push((x, y));
                    }
                }
            }
            v
        };
        if goal_cells.is_empty() {
            continue;
        }
        // Bite cells: this color's goals on the partially-finalized row.
        let bite_cells: Vec<Pos> = goal_cells.iter().copied().filter(|&(_, y)| y == floor).collect();
        let region_lo = floor + if bite_cells.is_empty() { 0 } else { 1 };
        let upper_cells: Vec<Pos> = goal_cells.iter().copied().filter(|&(_, y)| y > floor).collect();

        if !bite_cells.is_empty() {
            // Build the fill targets; when they reach the row's last two
            // cells, extend with the goal colors past this color's segment
            // so the pair rotation can complete the row (a lone corner cell
            // next to finalized neighbors would deadlock a later pass).
            let mut fill_targets: Vec<(Pos, u8)> =
                bite_cells.iter().map(|&p| (p, color)).collect();
            let mut extended_row = false;
            if let Some(&(last, _)) = fill_targets.last() {
                if last.0 >= m2 - 1 && last.0 < m2 {
                    let mut ok = true;
                    for x in last.0 + 1..=m2 {
                        match goal.get(x, floor) {
                            Cell::Color(c) => fill_targets.push(((x, floor), c)),
                            Cell::Escort => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    extended_row = ok;
                    if !ok {
                        fill_targets.truncate(bite_cells.len());
                    }
                }
            }
            let shifts = crate::fallback::fill_cells(&mut work, &fill_targets, bite, floor)?;
            let _ = extended_row;
            if !shifts.is_empty() {
                stages_out.push(StageSummary {
                    tag: StageTag::Fallback,
                    steps: shifts.len(),
                    base_steps: 0,
                    per_black_steps: shifts.len() as u64,
                });
                all_steps.extend(shifts.into_iter().map(Step::single));
            }
        }

        if !upper_cells.is_empty() {
            // Crop the remaining rows to a standalone binary board and solve
            // it there; translate shifts back by the row offset.
            let off = region_lo - 1;
            let crop_m1 = m1 - off;
            let mut cells: Vec<Cell> = Vec::with_capacity((crop_m1 * m2) as usize);
            for y in region_lo..=m1 {
                for x in 1..=m2 {
                    cells.push(match work.get(x, y) {
                        Cell::Escort => Cell::Escort,
                        Cell::Color(c) if c == color => Cell::Color(2),
                        Cell::Color(_) => Cell::Color(1),
                    });
                }
            }
            let crop = Board::from_cells(crop_m1, m2, 2, cells)
                .map_err(|e| SolverError::Internal(format!("crop: {e}")))?;
            let crop_goal = binary_goal_for_cells(
                crop_m1,
                m2,
                &upper_cells.iter().map(|&(x, y)| (x, y - off)).collect::<Vec<Pos>>(),
                crop.escort_count(),
            )?;
            let sub = solve_binary_to(&crop, &crop_goal)?;
            for s in &sub.stages {
                stages_out.push(s.clone());
            }
            flags.extend(sub.flags.iter().map(|f| format!("pass{}:{}", pass + 1, f)));
            for step in sub.plan.steps {
                let translated = Step::new(
                    step.shifts
                        .iter()
                        .map(|s| match s.axis {
                            Axis::Row => LineShift { axis: Axis::Row, index: s.index + off, ..*s },
                            Axis::Column => {
                                LineShift { axis: Axis::Column, from: s.from + off, to: s.to + off, ..*s }
                            }
                        })
                        .collect(),
                );
                gstp_core::apply_step_unchecked(&mut work, &translated);
                all_steps.push(translated);
            }
        }

        // Advance the finalized frontier. A bite extension that completed
        // row `floor` with lookahead colors moves the frontier past it.
        let last = *goal_cells.last().unwrap();
        if last.0 == m2 {
            floor = last.1 + 1;
            bite = 0;
        } else if last.1 == floor && last.0 >= m2 - 1 && goal.get(m2, floor) != Cell::Escort {
            floor += 1;
            bite = 0;
        } else {
            floor = last.1;
            bite = last.0;
        }
    }

    // All colors placed; escorts are the complement, hence on their goal
    // cells already.
    if work != *goal {
        return Err(SolverError::Internal("colored passes missed the goal".into()));
    }
    Ok(SolveReport { plan: Plan::new(all_steps), stages: stages_out, flags })
}

/// A binary goal board with color 2 on exactly `cells`, escorts packed at
/// the top-right corner, color 1 elsewhere.
fn binary_goal_for_cells(
    m1: u32,
    m2: u32,
    cells: &[Pos],
    escorts: u64,
) -> Result<Board, SolverError> {
    let mut v = vec![Cell::Color(1); (m1 as usize) * (m2 as usize)];
    let idx = |p: Pos| (p.1 as usize - 1) * m2 as usize + (p.0 as usize - 1);
    for &p in cells {
        v[idx(p)] = Cell::Color(2);
    }
    let mut placed = 0u64;
    'outer: for y in (1..=m1).rev() {
        for x in (1..=m2).rev() {
            if placed == escorts {
                break 'outer;
            }
            if v[idx((x, y))] == Cell::Color(1) {
                v[idx((x, y))] = Cell::Escort;
                placed += 1;
            } else {
                return Err(SolverError::Internal(
                    "no corner room for escorts in a colored pass".into(),
                ));
            }
        }
    }
    Board::from_cells(m1, m2, 2, v).map_err(|e| SolverError::Internal(format!("goal: {e}")))
}

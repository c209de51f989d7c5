//! From a satisfying assignment to a winning turn sequence for the embedded
//! sand castle, in three stages: clause satisfaction (per-variable control
//! collapses plus h-fold clause-rope collapses for the first satisfying
//! literal of each clause), the reward sweep along the clause layer's bottom
//! row, and cleanup through the vacuum, gravity and endgame switch layers.
//! Turns are generated against a live simulation so that every emitted turn
//! is checked open at emission time.

use gstp_scg::{ScgBoard, ScgCell, Turn};

use crate::{rasterize_scg, CnfFormula, ReductionError, ReductionLayout};

struct TurnGen {
    board: ScgBoard,
    turns: Vec<Turn>,
}

impl TurnGen {
    fn emit(&mut self, x: u64, y: u64) -> Result<(), ReductionError> {
        let t = Turn::new(x as u32, y as u32);
        self.board
            .collapse_mut(t)
            .map_err(|_| ReductionError::ScheduleStuck { x: x as u32, y: y as u32, after: self.turns.len() })?;
        self.turns.push(t);
        Ok(())
    }

    fn hole(&self, x: u64, y: u64) -> bool {
        self.board.get(x as u32, y as u32) == ScgCell::Hole
    }

    /// Any hole in column x within rows lo..=hi.
    fn column_has_hole(&self, x: u64, lo: u64, hi: u64) -> bool {
        (lo..=hi).any(|y| self.hole(x, y))
    }
}

/// Clause -> handling variable: the first variable (in index order) whose
/// true literal participates in the clause.
fn clause_owners(f: &CnfFormula, assignment: &[bool]) -> Vec<Option<u32>> {
    (0..f.n_clauses() as usize)
        .map(|j| {
            (1..=f.n_vars())
                .find(|&i| f.clause_contains(j, i, assignment[i as usize - 1]))
        })
        .collect()
}

pub fn assignment_to_turns(
    f: &CnfFormula,
    l: &ReductionLayout,
    assignment: &[bool],
) -> Result<Vec<Turn>, ReductionError> {
    if assignment.len() != f.n_vars() as usize {
        return Err(ReductionError::BadFormula("assignment length mismatch".into()));
    }
    if !f.is_satisfied_by(assignment) {
        return Err(ReductionError::UnsatisfyingAssignment);
    }
    let mut g = TurnGen { board: rasterize_scg(f, l), turns: Vec::new() };
    let owners = clause_owners(f, assignment);

    // Stage 1: clause satisfaction. For each variable, collapse the control
    // white under the true literal's column (aligning that literal gadget),
    // run the clause ropes it owns h times each, then collapse the other
    // control column.
    let ctl = l.layers.control.lo;
    for i in 1..=f.n_vars() {
        let truth = assignment[i as usize - 1];
        let (chosen, other) = if truth { (2 * i - 1, 2 * i) } else { (2 * i, 2 * i - 1) };
        g.emit(l.var_col(chosen), ctl)?;
        let slot = ReductionLayout::literal_slot(i, truth);
        let gadget_bottom = l.gadget(slot).lo;
        for j in 0..f.n_clauses() {
            if owners[j as usize] == Some(i) {
                for _ in 0..l.h {
                    g.emit(l.clause_col(j + 1), gadget_bottom)?;
                }
            }
        }
        g.emit(l.var_col(other), ctl)?;
    }

    // Stage 2: reward. Every white of the clause layer now sits on its
    // bottom row; sweep them out left to right.
    let reward_row = l.layers.clause.lo;
    for x in 1..=l.c {
        g.emit(x, reward_row)?;
    }

    // Stage 3: cleanup.
    // (i) State-column whites of the variables and control layers, top-down.
    // The turn on the left state column moves its white onto the right
    // column, where the second turn expels it.
    let mut state_rows: Vec<u64> = (0..2 * f.n_vars())
        .map(|slot| l.gadget(slot).lo)
        .collect();
    state_rows.push(ctl);
    state_rows.sort_unstable_by(|a, b| b.cmp(a));
    let (sl, sr) = (l.columns.state.lo, l.columns.state.hi);
    for y in state_rows {
        if g.hole(sl, y) {
            g.emit(sl, y)?;
        }
        if g.hole(sr, y) {
            g.emit(sr, y)?;
        }
    }

    // (ii) The endgame switch white in the left state column: dropping that
    // column aligns the vacuum and gravity layers' left whites with their
    // bottom rows.
    g.emit(sl, l.layers.endgame_switch.lo)?;

    // (iii) Pump each clause and variable column: collapse its vacuum white,
    // then alternate gravity collapses with vacuum collapses as upper whites
    // fall into the vacuum's bottom row.
    let vac = l.layers.vacuum.lo;
    let grav = l.layers.gravity.lo;
    let pump_cols = (l.columns.clause.lo..=l.columns.clause.hi)
        .chain(l.columns.variable.lo..=l.columns.variable.hi);
    for x in pump_cols {
        g.emit(x, vac)?;
        loop {
            if g.hole(x, vac) {
                g.emit(x, vac)?;
            } else if g.column_has_hole(x, grav, l.r) {
                g.emit(x, grav)?;
            } else {
                break;
            }
        }
    }

    // Finale: drain the right-end trains left on the vacuum and gravity
    // rows, then the last endgame switch white.
    for y in [vac, grav] {
        loop {
            let Some(x) = (1..=l.c).find(|&x| g.hole(x, y)) else { break };
            g.emit(x, y)?;
        }
    }
    g.emit(sr, l.layers.endgame_switch.lo)?;

    if g.board.holes() != 0 {
        return Err(ReductionError::ScheduleIncomplete { left: g.board.holes() });
    }
    debug_assert_eq!(g.turns.len() as u64, l.w);
    Ok(g.turns)
}

//! The synchronous move model. One time step is a set of pairwise disjoint
//! escort line-shifts; disjointness implies the five path constraints
//! (continuous unit motion, completion bookkeeping, no meet collision, no
//! head-on collision, corner-following). A separate validator checks those
//! constraints directly on arbitrary per-tile displacement maps so the
//! line-shift semantics can be cross-checked against first principles.

use std::collections::HashMap;
use std::fmt;

use crate::board::{Board, Cell};
use crate::error::{GenericViolation, StepViolation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    Row,
    Column,
}

/// One escort teleport along a straight line: the escort sits at offset
/// `from` of the line, every tile between `from` and `to` (inclusive of `to`)
/// moves one cell toward `from`, and the escort lands on `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LineShift {
    pub axis: Axis,
    /// The fixed coordinate: y for a row shift, x for a column shift.
    pub index: u32,
    pub from: u32,
    pub to: u32,
}

impl LineShift {
    pub fn row(y: u32, from: u32, to: u32) -> LineShift {
        LineShift { axis: Axis::Row, index: y, from, to }
    }

    pub fn column(x: u32, from: u32, to: u32) -> LineShift {
        LineShift { axis: Axis::Column, index: x, from, to }
    }

    /// Cells touched by this shift, as (axis, index, lo, hi).
    pub fn span(&self) -> (u32, u32) {
        (self.from.min(self.to), self.from.max(self.to))
    }

    /// (x, y) of the escort's source cell.
    pub fn from_cell(&self) -> (u32, u32) {
        match self.axis {
            Axis::Row => (self.from, self.index),
            Axis::Column => (self.index, self.from),
        }
    }

    /// The same shift with from/to swapped; applying it to the successor
    /// board restores the original.
    pub fn reversed(&self) -> LineShift {
        LineShift { axis: self.axis, index: self.index, from: self.to, to: self.from }
    }

    fn touches(&self, other: &LineShift) -> bool {
        let (a_lo, a_hi) = self.span();
        let (b_lo, b_hi) = other.span();
        match (self.axis, other.axis) {
            (Axis::Row, Axis::Row) | (Axis::Column, Axis::Column) => {
                self.index == other.index && a_lo <= b_hi && b_lo <= a_hi
            }
            (Axis::Row, Axis::Column) => {
                other.index >= a_lo && other.index <= a_hi && self.index >= b_lo && self.index <= b_hi
            }
            (Axis::Column, Axis::Row) => other.touches(self),
        }
    }
}

impl fmt::Display for LineShift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: char = self.axis.into();
        write!(f, "{} {} {} {}", c, self.index, self.from, self.to)
    }
}

/// One synchronous time step: a set of cell-disjoint line shifts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Step {
    pub shifts: Vec<LineShift>,
}

impl Step {
    pub fn new(shifts: Vec<LineShift>) -> Step {
        Step { shifts }
    }

    pub fn single(shift: LineShift) -> Step {
        Step { shifts: vec![shift] }
    }

    pub fn reversed(&self) -> Step {
        Step { shifts: self.shifts.iter().map(LineShift::reversed).collect() }
    }
}

/// A timed sequence of steps; the makespan is the number of steps.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Plan {
    pub steps: Vec<Step>,
}

impl Plan {
    pub fn new(steps: Vec<Step>) -> Plan {
        Plan { steps }
    }

    pub fn makespan(&self) -> usize {
        self.steps.len()
    }
}

fn check_shift(board: &Board, shift: &LineShift) -> Result<(), StepViolation> {
    let line_len = match shift.axis {
        Axis::Row => board.m2(),
        Axis::Column => board.m1(),
    };
    let index_max = match shift.axis {
        Axis::Row => board.m1(),
        Axis::Column => board.m2(),
    };
    if shift.index < 1 || shift.index > index_max {
        return Err(StepViolation::OutOfRange { shift: *shift });
    }
    if shift.from < 1 || shift.from > line_len || shift.to < 1 || shift.to > line_len {
        return Err(StepViolation::OutOfRange { shift: *shift });
    }
    if shift.from == shift.to {
        return Err(StepViolation::Degenerate { shift: *shift });
    }
    let (fx, fy) = shift.from_cell();
    if !board.get(fx, fy).is_escort() {
        return Err(StepViolation::FromNotEscort { shift: *shift, from: shift.from });
    }
    // The open segment (everything the shift moves) must be tiles only.
    let (seg_lo, seg_hi) = if shift.from < shift.to {
        (shift.from + 1, shift.to)
    } else {
        (shift.to, shift.from - 1)
    };
    for (lo, _hi, cell) in board.line_runs(shift.axis, shift.index, seg_lo, seg_hi) {
        if cell == Cell::Escort.code() {
            return Err(StepViolation::EscortOnSegment { shift: *shift, at: lo });
        }
    }
    Ok(())
}

/// Accepts iff every shift is individually legal on `board` and the shifts
/// are pairwise cell-disjoint. The first violated constraint is reported.
pub fn validate_step(board: &Board, step: &Step) -> Result<(), StepViolation> {
    for shift in &step.shifts {
        check_shift(board, shift)?;
    }
    for (i, a) in step.shifts.iter().enumerate() {
        for (j, b) in step.shifts.iter().enumerate().skip(i + 1) {
            if a.touches(b) {
                return Err(StepViolation::Overlap { a: i, b: j });
            }
        }
    }
    Ok(())
}

/// Applies a validated step, returning the successor configuration.
pub fn apply_step(board: &Board, step: &Step) -> Result<Board, StepViolation> {
    validate_step(board, step)?;
    let mut next = board.clone();
    for shift in &step.shifts {
        apply_shift_unchecked(&mut next, shift);
    }
    Ok(next)
}

/// Applies a step in place without re-validating. Callers are expected to
/// have validated; used by plan validation and the planners where every
/// emitted step is checked exactly once.
pub fn apply_step_unchecked(board: &mut Board, step: &Step) {
    for shift in &step.shifts {
        apply_shift_unchecked(board, shift);
    }
}

pub(crate) fn apply_shift_unchecked(board: &mut Board, shift: &LineShift) {
    let (lo, hi) = shift.span();
    let old = board.line_runs(shift.axis, shift.index, lo, hi);
    let mut new: Vec<(u32, u32, u8)> = Vec::with_capacity(old.len() + 1);
    let escort = Cell::Escort.code();
    if shift.from < shift.to {
        // Contents slide one cell toward `from` (down in offset).
        for &(a, b, c) in &old {
            let (a2, b2) = (a.max(shift.from + 1) - 1, b - 1);
            if a2 <= b2 {
                push(&mut new, a2, b2, c);
            }
        }
        push(&mut new, shift.to, shift.to, escort);
    } else {
        push(&mut new, shift.to, shift.to, escort);
        for &(a, b, c) in &old {
            let (a2, b2) = (a + 1, b.min(shift.from - 1) + 1);
            if a2 <= b2 {
                push(&mut new, a2, b2, c);
            }
        }
    }
    // Paint only where values changed.
    let diff = diff_runs(&old, &new, lo, hi);
    for seg in diff {
        board.set_line_runs(shift.axis, shift.index, &[seg]);
    }
}

fn push(runs: &mut Vec<(u32, u32, u8)>, lo: u32, hi: u32, c: u8) {
    if let Some(last) = runs.last_mut() {
        if last.2 == c && last.1 + 1 == lo {
            last.1 = hi;
            return;
        }
    }
    runs.push((lo, hi, c));
}

/// Maximal segments of `[lo, hi]` where `new` differs from `old`.
fn diff_runs(
    old: &[(u32, u32, u8)],
    new: &[(u32, u32, u8)],
    lo: u32,
    hi: u32,
) -> Vec<(u32, u32, u8)> {
    let mut out: Vec<(u32, u32, u8)> = Vec::new();
    let (mut ia, mut ib) = (0usize, 0usize);
    let mut x = lo;
    while x <= hi {
        let ra = old[ia];
        let rb = new[ib];
        let end = ra.1.min(rb.1);
        if ra.2 != rb.2 {
            match out.last_mut() {
                Some(last) if last.2 == rb.2 && last.1 + 1 == x => last.1 = end,
                _ => out.push((x, end, rb.2)),
            }
        }
        x = end + 1;
        if ra.1 == end {
            ia += 1;
        }
        if rb.1 == end {
            ib += 1;
        }
    }
    out
}

/// Per-tile displacement map for one synchronous step.
pub type Moves = HashMap<(u32, u32), (i32, i32)>;

/// Expands a step into the per-tile displacement map it induces. Only
/// meaningful for steps accepted by [`validate_step`].
pub fn expand_step(step: &Step) -> Moves {
    let mut moves = Moves::new();
    for shift in &step.shifts {
        let (dx, dy): (i32, i32) = match (shift.axis, shift.from < shift.to) {
            (Axis::Row, true) => (-1, 0),
            (Axis::Row, false) => (1, 0),
            (Axis::Column, true) => (0, -1),
            (Axis::Column, false) => (0, 1),
        };
        let (seg_lo, seg_hi) = if shift.from < shift.to {
            (shift.from + 1, shift.to)
        } else {
            (shift.to, shift.from - 1)
        };
        for o in seg_lo..=seg_hi {
            let cell = match shift.axis {
                Axis::Row => (o, shift.index),
                Axis::Column => (shift.index, o),
            };
            moves.insert(cell, (dx, dy));
        }
    }
    moves
}

/// Checks the five path constraints directly on an arbitrary synchronous
/// displacement map. Tiles absent from the map are stationary.
pub fn validate_generic_step(board: &Board, moves: &Moves) -> Result<(), GenericViolation> {
    // Motion and range checks first.
    for (&(x, y), &(dx, dy)) in moves {
        if !board.in_range(x, y) {
            return Err(GenericViolation::SourceOutOfRange { x, y });
        }
        if board.get(x, y).is_escort() {
            return Err(GenericViolation::NotATile { x, y });
        }
        if dx.abs() + dy.abs() > 1 {
            return Err(GenericViolation::Motion { x, y });
        }
        let (tx, ty) = (x as i64 + dx as i64, y as i64 + dy as i64);
        if tx < 1 || tx > board.m2() as i64 || ty < 1 || ty > board.m1() as i64 {
            return Err(GenericViolation::TargetOutOfRange { x, y });
        }
    }
    let target_of = |x: u32, y: u32| -> (u32, u32) {
        match moves.get(&(x, y)) {
            Some(&(dx, dy)) => ((x as i64 + dx as i64) as u32, (y as i64 + dy as i64) as u32),
            None => (x, y),
        }
    };
    // No meet collision: targets of all tiles are pairwise distinct. Moving
    // tiles are checked against each other and against stationary occupants.
    let mut seen: HashMap<(u32, u32), (u32, u32)> = HashMap::new();
    for (&(x, y), &(dx, dy)) in moves {
        if (dx, dy) == (0, 0) {
            continue;
        }
        let t = target_of(x, y);
        if let Some(&other) = seen.get(&t) {
            return Err(GenericViolation::Meet { a: other, b: (x, y), at: t });
        }
        seen.insert(t, (x, y));
        // Stationary occupant of the target cell?
        if !board.get(t.0, t.1).is_escort() && target_of(t.0, t.1) == t && t != (x, y) {
            return Err(GenericViolation::Meet { a: t, b: (x, y), at: t });
        }
    }
    // Head-on: two tiles exchanging cells.
    for (&(x, y), &(dx, dy)) in moves {
        if (dx, dy) == (0, 0) {
            continue;
        }
        let t = target_of(x, y);
        if !board.get(t.0, t.1).is_escort() && target_of(t.0, t.1) == (x, y) {
            return Err(GenericViolation::HeadOn { a: (x, y), b: t });
        }
    }
    // Corner-following: a tile moving into a just-vacated cell must move
    // parallel to the tile vacating it.
    for (&(x, y), &(dx, dy)) in moves {
        if (dx, dy) == (0, 0) {
            continue;
        }
        let t = target_of(x, y);
        if board.get(t.0, t.1).is_escort() {
            continue;
        }
        if let Some(&(ldx, ldy)) = moves.get(&t) {
            if (ldx, ldy) != (0, 0) {
                let perp = (dx != 0) != (ldx != 0);
                if perp {
                    return Err(GenericViolation::CornerFollowing { follower: (x, y), leader: t });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{Board, Cell};

    fn board_1x3() -> Board {
        // [escort, black, white] on a 1-row board.
        Board::from_cells(
            1,
            3,
            2,
            vec![Cell::Escort, Cell::Color(2), Cell::Color(1)],
        )
        .unwrap()
    }

    #[test]
    fn full_line_shift() {
        let b = board_1x3();
        let s = Step::single(LineShift::row(1, 1, 3));
        let next = apply_step(&b, &s).unwrap();
        assert_eq!(next.get(1, 1), Cell::Color(2));
        assert_eq!(next.get(2, 1), Cell::Color(1));
        assert_eq!(next.get(3, 1), Cell::Escort);
    }

    #[test]
    fn reversal_restores() {
        let b = board_1x3();
        let s = Step::single(LineShift::row(1, 1, 3));
        let next = apply_step(&b, &s).unwrap();
        let back = apply_step(&next, &s.reversed()).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn escort_jump_on_2x2() {
        // Escort at (1,1), black at (1,2): column shift brings the black down.
        let b = Board::from_cells(
            2,
            2,
            2,
            vec![Cell::Escort, Cell::Color(1), Cell::Color(2), Cell::Color(1)],
        )
        .unwrap();
        let s = Step::single(LineShift::column(1, 1, 2));
        assert_eq!(validate_step(&b, &s), Ok(()));
        let next = apply_step(&b, &s).unwrap();
        assert_eq!(next.get(1, 1), Cell::Color(2));
        assert_eq!(next.get(1, 2), Cell::Escort);
    }

    #[test]
    fn overlap_rejected() {
        let b = Board::from_cells(
            3,
            3,
            1,
            vec![
                Cell::Escort,
                Cell::Color(1),
                Cell::Escort,
                Cell::Color(1),
                Cell::Color(1),
                Cell::Color(1),
                Cell::Color(1),
                Cell::Color(1),
                Cell::Color(1),
            ],
        )
        .unwrap();
        // Both shifts touch (2,1).
        let s = Step::new(vec![LineShift::row(1, 1, 2), LineShift::row(1, 3, 2)]);
        assert_eq!(validate_step(&b, &s), Err(StepViolation::Overlap { a: 0, b: 1 }));
    }

    #[test]
    fn perpendicular_follow_rejected() {
        // Tile at (2,1) moves up to (2,2) while tile at (1,1)... build the
        // classic CFC witness: follower moves right into a cell vacated
        // upward.
        let b = Board::from_cells(
            2,
            2,
            2,
            vec![Cell::Color(2), Cell::Color(1), Cell::Escort, Cell::Escort],
        )
        .unwrap();
        let mut moves = Moves::new();
        moves.insert((2, 1), (0, 1)); // leader moves up
        moves.insert((1, 1), (1, 0)); // follower moves right into (2,1)
        let err = validate_generic_step(&b, &moves).unwrap_err();
        assert_eq!(
            err,
            GenericViolation::CornerFollowing { follower: (1, 1), leader: (2, 1) }
        );
    }

    #[test]
    fn head_on_rejected() {
        let b = Board::from_cells(
            1,
            3,
            2,
            vec![Cell::Color(1), Cell::Color(2), Cell::Escort],
        )
        .unwrap();
        let mut moves = Moves::new();
        moves.insert((1, 1), (1, 0));
        moves.insert((2, 1), (-1, 0));
        let err = validate_generic_step(&b, &moves).unwrap_err();
        assert!(matches!(err, GenericViolation::HeadOn { .. }));
    }

    #[test]
    fn identity_map_ok() {
        let b = board_1x3();
        assert_eq!(validate_generic_step(&b, &Moves::new()), Ok(()));
    }
}

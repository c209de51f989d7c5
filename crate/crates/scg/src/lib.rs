//! The sand castle game: a binary grid of sand and holes where the only move
//! is collapsing an *open tile* — any cell of a row whose rightmost element
//! is a hole. A collapse shifts that row's suffix right by one (expelling the
//! rightmost hole), then drops the column above the chosen cell by one, the
//! vacated top cell refilling with sand. Every collapse removes exactly one
//! hole, so a win takes exactly as many turns as there are holes.
//!
//! Coordinates are 1-based, x = column from the left, y = row from the
//! bottom. Text format: `scg 1 <r> <c>` then r rows top-to-bottom of `#`
//! (sand) / `o` (hole); turn logs are `<x> <y>` lines.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScgCell {
    Sand,
    Hole,
}

/// A collapse turn, identified by the chosen open tile's coordinates at the
/// moment the turn executes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Turn {
    pub x: u32,
    pub y: u32,
}

impl Turn {
    pub fn new(x: u32, y: u32) -> Turn {
        Turn { x, y }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScgError {
    #[error("dimensions must be at least 1x1, got {rows}x{cols}")]
    BadDimensions { rows: u32, cols: u32 },
    #[error("turn ({},{}) is not open", turn.x, turn.y)]
    NotOpen { turn: Turn },
    #[error("turn ({},{}) is out of range", turn.x, turn.y)]
    OutOfRange { turn: Turn },
    #[error("line {line}: bad sand castle input: {msg}")]
    Parse { line: usize, msg: String },
}

/// Outcome of replaying a turn sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlayResult {
    /// All holes expelled; a win always uses exactly the initial hole count.
    Win,
    /// Turns exhausted (or no open tile remains) with holes left; the index
    /// is the number of turns consumed.
    Loss { at: usize },
    /// Turn at this index was not open.
    Stuck { at: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScgBoard {
    rows: u32,
    cols: u32,
    /// Row-major from the bottom row up.
    grid: Vec<ScgCell>,
    holes: u64,
}

impl ScgBoard {
    pub fn new(rows: u32, cols: u32, grid: Vec<ScgCell>) -> Result<ScgBoard, ScgError> {
        if rows == 0 || cols == 0 {
            return Err(ScgError::BadDimensions { rows, cols });
        }
        assert_eq!(grid.len(), (rows as usize) * (cols as usize));
        let holes = grid.iter().filter(|c| **c == ScgCell::Hole).count() as u64;
        Ok(ScgBoard { rows, cols, grid, holes })
    }

    pub fn filled(rows: u32, cols: u32, cell: ScgCell) -> ScgBoard {
        ScgBoard::new(rows, cols, vec![cell; (rows as usize) * (cols as usize)]).unwrap()
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    pub fn cols(&self) -> u32 {
        self.cols
    }

    /// Current hole (white tile) count, tracked incrementally.
    pub fn holes(&self) -> u64 {
        self.holes
    }

    fn idx(&self, x: u32, y: u32) -> usize {
        debug_assert!(x >= 1 && x <= self.cols && y >= 1 && y <= self.rows);
        (y as usize - 1) * self.cols as usize + (x as usize - 1)
    }

    pub fn get(&self, x: u32, y: u32) -> ScgCell {
        self.grid[self.idx(x, y)]
    }

    pub fn set(&mut self, x: u32, y: u32, cell: ScgCell) {
        let i = self.idx(x, y);
        match (self.grid[i], cell) {
            (ScgCell::Hole, ScgCell::Sand) => self.holes -= 1,
            (ScgCell::Sand, ScgCell::Hole) => self.holes += 1,
            _ => {}
        }
        self.grid[i] = cell;
    }

    pub fn in_range(&self, x: u32, y: u32) -> bool {
        x >= 1 && x <= self.cols && y >= 1 && y <= self.rows
    }

    /// A row is open when its rightmost cell is a hole.
    pub fn row_open(&self, y: u32) -> bool {
        self.get(self.cols, y) == ScgCell::Hole
    }

    pub fn is_open(&self, t: Turn) -> bool {
        self.in_range(t.x, t.y) && self.row_open(t.y)
    }

    /// Rows whose rightmost element is a hole.
    pub fn open_rows(&self) -> Vec<u32> {
        (1..=self.rows).filter(|&y| self.row_open(y)).collect()
    }

    /// All open tiles: every cell (sand or hole) of every open row.
    pub fn open_tiles(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for y in self.open_rows() {
            for x in 1..=self.cols {
                out.push((x, y));
            }
        }
        out
    }

    /// Recount of holes; always equals [`Self::holes`].
    pub fn recount_holes(&self) -> u64 {
        self.grid.iter().filter(|c| **c == ScgCell::Hole).count() as u64
    }

    /// Executes one collapse turn in place.
    pub fn collapse_mut(&mut self, t: Turn) -> Result<(), ScgError> {
        if !self.in_range(t.x, t.y) {
            return Err(ScgError::OutOfRange { turn: t });
        }
        if !self.row_open(t.y) {
            return Err(ScgError::NotOpen { turn: t });
        }
        // Row phase: cells t.x.. shift right by one, expelling the hole at
        // the right boundary.
        let row0 = (t.y as usize - 1) * self.cols as usize;
        for x in (t.x..self.cols).rev() {
            self.grid[row0 + x as usize] = self.grid[row0 + x as usize - 1];
        }
        self.holes -= 1;
        // Column phase: cells above drop by one; the top refills with sand.
        for y in t.y..self.rows {
            let above = self.idx(t.x, y + 1);
            let here = self.idx(t.x, y);
            self.grid[here] = self.grid[above];
        }
        let top = self.idx(t.x, self.rows);
        self.grid[top] = ScgCell::Sand;
        Ok(())
    }

    pub fn collapse(&self, t: Turn) -> Result<ScgBoard, ScgError> {
        let mut next = self.clone();
        next.collapse_mut(t)?;
        Ok(next)
    }
}

/// Replays a turn list. `Win` iff all holes are gone afterwards.
pub fn play(board: &ScgBoard, turns: &[Turn]) -> PlayResult {
    let mut b = board.clone();
    play_mut(&mut b, turns)
}

/// Replay that leaves the final configuration in `board`.
pub fn play_mut(board: &mut ScgBoard, turns: &[Turn]) -> PlayResult {
    for (i, &t) in turns.iter().enumerate() {
        if board.collapse_mut(t).is_err() {
            return PlayResult::Stuck { at: i };
        }
    }
    if board.holes() == 0 {
        PlayResult::Win
    } else {
        PlayResult::Loss { at: turns.len() }
    }
}

/// Independent end-state oracle: remove the holes, let the sand fall, refill
/// the column tops with sand. Since every removed hole is replaced by sand
/// from above, the settled board is all sand — any winning replay must end
/// exactly there.
pub fn gravity_settle(board: &ScgBoard) -> ScgBoard {
    let mut settled = board.clone();
    for x in 1..=board.cols() {
        let mut write = 1u32;
        for y in 1..=board.rows() {
            if board.get(x, y) == ScgCell::Sand {
                settled.set(x, write, ScgCell::Sand);
                write += 1;
            }
        }
        for y in write..=board.rows() {
            settled.set(x, y, ScgCell::Sand);
        }
    }
    settled
}

pub fn emit_scg(board: &ScgBoard) -> String {
    let mut out = format!("scg 1 {} {}\n", board.rows(), board.cols());
    for y in (1..=board.rows()).rev() {
        for x in 1..=board.cols() {
            out.push(match board.get(x, y) {
                ScgCell::Sand => '#',
                ScgCell::Hole => 'o',
            });
        }
        out.push('\n');
    }
    out
}

pub fn parse_scg(text: &str) -> Result<ScgBoard, ScgError> {
    // `#` is the sand character, so this format has no comment lines.
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines
        .next()
        .ok_or(ScgError::Parse { line: 0, msg: "empty input".into() })?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let bad_header = || ScgError::Parse { line: hl, msg: "expected `scg 1 <r> <c>`".into() };
    if parts.len() != 4 || parts[0] != "scg" || parts[1] != "1" {
        return Err(bad_header());
    }
    let rows: u32 = parts[2].parse().map_err(|_| bad_header())?;
    let cols: u32 = parts[3].parse().map_err(|_| bad_header())?;
    let mut rows_read: Vec<Vec<ScgCell>> = Vec::with_capacity(rows as usize);
    for _ in 0..rows {
        let (rl, line) = lines.next().ok_or(ScgError::Parse {
            line: hl,
            msg: "unexpected end of input".into(),
        })?;
        if line.chars().count() != cols as usize {
            return Err(ScgError::Parse { line: rl, msg: format!("expected {cols} cells") });
        }
        let mut row = Vec::with_capacity(cols as usize);
        for ch in line.chars() {
            row.push(match ch {
                '#' => ScgCell::Sand,
                'o' => ScgCell::Hole,
                other => {
                    return Err(ScgError::Parse { line: rl, msg: format!("bad cell `{other}`") })
                }
            });
        }
        rows_read.push(row);
    }
    if let Some((tl, _)) = lines.next() {
        return Err(ScgError::Parse { line: tl, msg: "unexpected trailing content".into() });
    }
    let grid: Vec<ScgCell> = rows_read.into_iter().rev().flatten().collect();
    ScgBoard::new(rows, cols, grid)
}

pub fn emit_turns(turns: &[Turn]) -> String {
    let mut out = String::new();
    for t in turns {
        out.push_str(&format!("{} {}\n", t.x, t.y));
    }
    out
}

pub fn parse_turns(text: &str) -> Result<Vec<Turn>, ScgError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let bad = || ScgError::Parse { line: i + 1, msg: format!("bad turn `{line}`") };
        if parts.len() != 2 {
            return Err(bad());
        }
        let x: u32 = parts[0].parse().map_err(|_| bad())?;
        let y: u32 = parts[1].parse().map_err(|_| bad())?;
        out.push(Turn::new(x, y));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(rows: u32, cols: u32, text_rows: &[&str]) -> ScgBoard {
        // Rows given top to bottom, like the text format.
        let mut grid = Vec::new();
        for row in text_rows.iter().rev() {
            for ch in row.chars() {
                grid.push(if ch == 'o' { ScgCell::Hole } else { ScgCell::Sand });
            }
        }
        ScgBoard::new(rows, cols, grid).unwrap()
    }

    #[test]
    fn one_cell_hole_wins() {
        let mut board = b(1, 1, &["o"]);
        assert!(board.is_open(Turn::new(1, 1)));
        board.collapse_mut(Turn::new(1, 1)).unwrap();
        assert_eq!(board.get(1, 1), ScgCell::Sand);
        assert_eq!(board.holes(), 0);
    }

    #[test]
    fn sand_hole_pair() {
        // [Sand, Hole]: both cells are open; collapsing (1,1) shifts the
        // sand right, expels the hole, and refills from the empty column
        // above with sand.
        let board = b(1, 2, &["#o"]);
        assert_eq!(board.open_tiles(), vec![(1, 1), (2, 1)]);
        let next = board.collapse(Turn::new(1, 1)).unwrap();
        assert_eq!(next.get(1, 1), ScgCell::Sand);
        assert_eq!(next.get(2, 1), ScgCell::Sand);
        assert_eq!(next.holes(), 0);
    }

    #[test]
    fn all_sand_has_no_open_tiles() {
        let board = ScgBoard::filled(3, 3, ScgCell::Sand);
        assert!(board.open_tiles().is_empty());
        assert_eq!(play(&board, &[]), PlayResult::Win);
    }

    #[test]
    fn loss_when_holes_unreachable() {
        // Holes sit left of a full sand column: no row is open.
        let board = b(2, 2, &["o#", "o#"]);
        assert!(board.open_rows().is_empty());
        assert_eq!(play(&board, &[]), PlayResult::Loss { at: 0 });
    }

    #[test]
    fn two_by_two_win() {
        let board = b(2, 2, &["#o", "#o"]);
        let turns = [Turn::new(1, 1), Turn::new(1, 2)];
        assert_eq!(play(&board, &turns), PlayResult::Win);
    }

    #[test]
    fn stuck_on_closed_row() {
        let board = b(2, 2, &["##", "#o"]);
        assert_eq!(play(&board, &[Turn::new(1, 2)]), PlayResult::Stuck { at: 0 });
    }

    #[test]
    fn column_refill_pulls_from_above() {
        // Hole above the collapse column drops down one.
        let board = b(2, 2, &["o#", "#o"]);
        let next = board.collapse(Turn::new(1, 1)).unwrap();
        // Row 1 shifted right: (2,1) gets old (1,1) sand. Column 1 drops:
        // (1,1) gets old (1,2) hole; (1,2) refills with sand.
        assert_eq!(next.get(1, 1), ScgCell::Hole);
        assert_eq!(next.get(2, 1), ScgCell::Sand);
        assert_eq!(next.get(1, 2), ScgCell::Sand);
        assert_eq!(next.get(2, 2), ScgCell::Sand);
        assert_eq!(next.holes(), 1);
    }

    #[test]
    fn format_round_trip() {
        let board = b(3, 4, &["#o#o", "####", "oo##"]);
        let text = emit_scg(&board);
        let parsed = parse_scg(&text).unwrap();
        assert_eq!(board, parsed);
        assert_eq!(emit_scg(&parsed), text);
    }

    #[test]
    fn rightmost_hole_is_itself_open() {
        let board = b(1, 2, &["#o"]);
        let next = board.collapse(Turn::new(2, 1)).unwrap();
        assert_eq!(next.holes(), 0);
    }
}

//! Direct per-tile sorter for small or dense boards: fills the goal
//! bottom-up row by row (placing each row's last two cells with the
//! rotation trick), finishes the top two rows column by column, and solves
//! the final corner block by exhaustive search over the block's
//! configurations. Correct for any color count; makespan is polynomial, not
//! competitive — the divide-and-conquer pipeline handles large instances.

use std::collections::{HashMap, VecDeque};

use gstp_core::{Axis, Board, Cell, LineShift};

use crate::sim::Pos;
use crate::SolverError;

struct ColorSim {
    m1: u32,
    m2: u32,
    cells: Vec<u8>, // 0 = the active escort or a parked escort
    escort: Pos,
    obstacles: Vec<Pos>,
    done: Vec<bool>,
    shifts: Vec<LineShift>,
}

impl ColorSim {
    fn idx(&self, p: Pos) -> usize {
        (p.1 as usize - 1) * self.m2 as usize + (p.0 as usize - 1)
    }

    fn get(&self, p: Pos) -> u8 {
        self.cells[self.idx(p)]
    }

    fn in_range(&self, p: Pos) -> bool {
        p.0 >= 1 && p.0 <= self.m2 && p.1 >= 1 && p.1 <= self.m1
    }

    fn free(&self, p: Pos) -> bool {
        !self.done[self.idx(p)] && !self.obstacles.contains(&p)
    }

    /// Escort jump to a collinear cell: the whole segment slides one cell
    /// toward the escort's old position. The caller guarantees the segment
    /// holds only tiles.
    fn apply_jump(&mut self, t: Pos) {
        let e = self.escort;
        debug_assert_ne!(e, t);
        let (axis, index, from, to) = if e.1 == t.1 {
            (Axis::Row, t.1, e.0, t.0)
        } else {
            debug_assert_eq!(e.0, t.0, "jump endpoints not collinear");
            (Axis::Column, t.0, e.1, t.1)
        };
        let dir: i64 = if to > from { 1 } else { -1 };
        let mut o = from as i64;
        while o != to as i64 {
            let here = o + dir;
            let (hp, pp) = match axis {
                Axis::Row => ((here as u32, index), (o as u32, index)),
                Axis::Column => ((index, here as u32), (index, o as u32)),
            };
            debug_assert_ne!(self.get(hp), 0, "escort on a jump segment");
            let hi = self.idx(hp);
            let pi = self.idx(pp);
            self.cells[pi] = self.cells[hi];
            o = here;
        }
        let ti = self.idx(t);
        self.cells[ti] = 0;
        self.escort = t;
        self.shifts.push(LineShift { axis, index, from, to });
    }

    /// Unit move of the escort onto an adjacent tile (swap).
    fn swap_to(&mut self, t: Pos) {
        debug_assert_eq!(self.escort.0.abs_diff(t.0) + self.escort.1.abs_diff(t.1), 1);
        self.apply_jump(t);
    }

    /// Advances the tile at `src` one cell onto `next` with a powered jump:
    /// the escort anchors on the far side of `next`, collinear with `src`,
    /// and jumps across; everything on the segment (junk tiles included)
    /// slides one cell and the tile lands exactly on `next`.
    fn powered_step(&mut self, src: Pos, next: Pos, protect: &[Pos]) -> Result<(), SolverError> {
        let d = (next.0 as i64 - src.0 as i64, next.1 as i64 - src.1 as i64);
        let mut k = 1i64;
        loop {
            let a = (next.0 as i64 + k * d.0, next.1 as i64 + k * d.1);
            if a.0 < 1 || a.1 < 1 {
                break;
            }
            let anchor = (a.0 as u32, a.1 as u32);
            if !self.in_range(anchor)
                || !self.free(anchor)
                || protect.contains(&anchor)
                || (self.get(anchor) == 0 && anchor != self.escort)
            {
                break;
            }
            let mut avoid = protect.to_vec();
            avoid.push(src);
            if anchor == self.escort || self.escort_to(anchor, &avoid).is_ok() {
                self.apply_jump(src);
                return Ok(());
            }
            k += 1;
        }
        Err(SolverError::Internal(format!("no powered step for {src:?} -> {next:?}")))
    }

    /// Escort walk through free cells to `t`, avoiding `avoid`.
    fn escort_to(&mut self, t: Pos, avoid: &[Pos]) -> Result<(), SolverError> {
        if self.escort == t {
            return Ok(());
        }
        let mut prev: HashMap<Pos, Pos> = HashMap::new();
        prev.insert(self.escort, self.escort);
        let mut queue = VecDeque::new();
        queue.push_back(self.escort);
        'bfs: while let Some(u) = queue.pop_front() {
            for (dx, dy) in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
                let n = (u.0 as i64 + dx, u.1 as i64 + dy);
                if n.0 < 1 || n.1 < 1 {
                    continue;
                }
                let n = (n.0 as u32, n.1 as u32);
                if !self.in_range(n) || !self.free(n) || avoid.contains(&n) {
                    continue;
                }
                if prev.contains_key(&n) {
                    continue;
                }
                prev.insert(n, u);
                if n == t {
                    break 'bfs;
                }
                queue.push_back(n);
            }
        }
        if !prev.contains_key(&t) {
            let mut dump = String::new();
            for y in (1..=self.m1).rev() {
                for x in 1..=self.m2 {
                    let p = (x, y);
                    let ch = if p == self.escort {
                        'E'
                    } else if self.obstacles.contains(&p) {
                        'O'
                    } else if self.done[self.idx(p)] {
                        'D'
                    } else if avoid.contains(&p) {
                        'X'
                    } else if self.get(p) == 0 {
                        '?'
                    } else {
                        (b'a' + self.get(p) - 1) as char
                    };
                    dump.push(ch);
                }
                dump.push('/');
            }
            return Err(SolverError::Internal(format!(
                "escort blocked from {:?} to {t:?} [{dump}]",
                self.escort
            )));
        }
        let mut path = vec![t];
        let mut cur = t;
        while prev[&cur] != cur {
            cur = prev[&cur];
            path.push(cur);
        }
        path.reverse();
        for hop in path.into_iter().skip(1) {
            self.swap_to(hop);
        }
        Ok(())
    }

    /// Brings a tile of color `c` to cell `t` (no done-marking). `protect`
    /// cells are kept untouched. Advances the nearest matching tile one step
    /// at a time; when the tile itself sits on a cut vertex between the
    /// escort and its next cell, the escort crosses through it (displacing
    /// it backward) and re-acquires.
    fn bring(&mut self, t: Pos, c: u8, protect: &[Pos]) -> Result<(), SolverError> {
        let cap = (self.m1 as usize * self.m2 as usize) * 8 + 64;
        for _ in 0..cap {
            if self.get(t) == c {
                return Ok(());
            }
            let (src, next) = self.nearest_tile_step(t, c, protect)?;
            let mut avoid = protect.to_vec();
            avoid.push(src);
            if self.escort_to(next, &avoid).is_ok() {
                self.swap_to(src); // tile slides from src into next
            } else if self.powered_step(src, next, protect).is_ok() {
                // The jump carried the tile across a cut vertex.
            } else {
                // Thin-region dead end: finish with a bounded exhaustive
                // search over a window around the tile and target.
                return self.rescue_bring(t, c, src, protect);
            }
        }
        Err(SolverError::Internal(format!("tile routing to {t:?} did not converge")))
    }

    /// Nearest tile of color `c` through the free region (BFS from `t`) and
    /// the next cell on its path toward `t`.
    fn nearest_tile_step(
        &self,
        t: Pos,
        c: u8,
        protect: &[Pos],
    ) -> Result<(Pos, Pos), SolverError> {
        let mut prev: HashMap<Pos, Pos> = HashMap::new();
        prev.insert(t, t);
        let mut queue = VecDeque::new();
        queue.push_back(t);
        while let Some(u) = queue.pop_front() {
            for (dx, dy) in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
                let n = (u.0 as i64 + dx, u.1 as i64 + dy);
                if n.0 < 1 || n.1 < 1 {
                    continue;
                }
                let n = (n.0 as u32, n.1 as u32);
                if !self.in_range(n) || !self.free(n) || protect.contains(&n) {
                    continue;
                }
                if prev.contains_key(&n) {
                    continue;
                }
                prev.insert(n, u);
                if self.get(n) == c {
                    return Ok((n, u));
                }
                queue.push_back(n);
            }
        }
        Err(SolverError::Internal(format!("no reachable tile of color {c} for {t:?}")))
    }

    /// Exhaustive search over a window covering the stuck tile, the target
    /// and the escort, stopping as soon as a `c` tile occupies `t`. The
    /// window grows up to the whole board; the search is node-capped, so
    /// oversized windows fail fast rather than hang.
    fn rescue_bring(&mut self, t: Pos, c: u8, src: Pos, protect: &[Pos]) -> Result<(), SolverError> {
        let mut windows: Vec<(u32, u32, u32, u32)> = [1u32, 2]
            .iter()
            .map(|&margin| {
                (
                    t.0.min(src.0).min(self.escort.0).saturating_sub(margin).max(1),
                    t.1.min(src.1).min(self.escort.1).saturating_sub(margin).max(1),
                    (t.0.max(src.0).max(self.escort.0) + margin).min(self.m2),
                    (t.1.max(src.1).max(self.escort.1) + margin).min(self.m1),
                )
            })
            .collect();
        windows.push((1, 1, self.m2, self.m1));
        windows.dedup();
        for block in windows {
            let cells: Vec<Pos> = iter_block(block).collect();
            let ti = cells.iter().position(|&p| p == t).expect("t inside the window");
            // Done cells may move during the search (same-color tiles are
            // interchangeable) but must hold their colors again at the end.
            let pinned: Vec<(usize, u8)> = cells
                .iter()
                .enumerate()
                .filter(|&(_, &p)| self.done[self.idx(p)])
                .map(|(i, &p)| (i, self.get(p)))
                .collect();
            let pred = |state: &[u8]| {
                state[ti] == c && pinned.iter().all(|&(i, v)| state[i] == v)
            };
            if let Some(shifts) = search_block(self, block, protect, true, &pred) {
                self.replay(shifts);
                return Ok(());
            }
        }
        Err(SolverError::Internal(format!("rescue failed for {t:?}")))
    }

    /// Replays externally computed shifts onto the sim.
    fn replay(&mut self, shifts: Vec<LineShift>) {
        for s in shifts {
            let to = match s.axis {
                Axis::Row => (s.to, s.index),
                Axis::Column => (s.index, s.to),
            };
            debug_assert_eq!(
                self.escort,
                match s.axis {
                    Axis::Row => (s.from, s.index),
                    Axis::Column => (s.index, s.from),
                }
            );
            self.apply_jump(to);
        }
    }

    fn mark_done(&mut self, p: Pos) {
        let i = self.idx(p);
        self.done[i] = true;
    }
}

/// Exhaustive BFS over a block's configurations, shifts confined to the
/// block and avoiding frozen cells, stopping at the first state satisfying
/// `pred`. Returns the shift sequence.
fn search_block(
    sim: &ColorSim,
    block: (u32, u32, u32, u32),
    protect: &[Pos],
    unfreeze_done: bool,
    pred: &dyn Fn(&[u8]) -> bool,
) -> Option<Vec<LineShift>> {
    let cells: Vec<Pos> = iter_block(block).collect();
    let frozen: Vec<bool> = cells
        .iter()
        .map(|&p| {
            if unfreeze_done {
                sim.obstacles.contains(&p) || protect.contains(&p)
            } else {
                !sim.free(p) || protect.contains(&p)
            }
        })
        .collect();
    let start: Vec<u8> = cells.iter().map(|&p| sim.get(p)).collect();
    if pred(&start) {
        return Some(Vec::new());
    }
    let (x1, y1, x2, y2) = block;
    let w = (x2 - x1 + 1) as usize;
    let li = |p: Pos| (p.1 - y1) as usize * w + (p.0 - x1) as usize;
    // Shift templates whose whole segment avoids frozen cells.
    let mut moves: Vec<(usize, LineShift, Vec<usize>)> = Vec::new();
    for (i, &p) in cells.iter().enumerate() {
        if frozen[i] {
            continue;
        }
        for tx in x1..=x2 {
            if tx == p.0 {
                continue;
            }
            let (lo, hi) = (tx.min(p.0), tx.max(p.0));
            if (lo..=hi).any(|x| frozen[li((x, p.1))]) {
                continue;
            }
            let ordered: Vec<usize> = if tx > p.0 {
                (p.0..=tx).map(|x| li((x, p.1))).collect()
            } else {
                (tx..=p.0).rev().map(|x| li((x, p.1))).collect()
            };
            moves.push((i, LineShift { axis: Axis::Row, index: p.1, from: p.0, to: tx }, ordered));
        }
        for ty in y1..=y2 {
            if ty == p.1 {
                continue;
            }
            let (lo, hi) = (ty.min(p.1), ty.max(p.1));
            if (lo..=hi).any(|y| frozen[li((p.0, y))]) {
                continue;
            }
            let ordered: Vec<usize> = if ty > p.1 {
                (p.1..=ty).map(|y| li((p.0, y))).collect()
            } else {
                (ty..=p.1).rev().map(|y| li((p.0, y))).collect()
            };
            moves.push((i, LineShift { axis: Axis::Column, index: p.0, from: p.1, to: ty }, ordered));
        }
    }
    let mut prev: HashMap<Vec<u8>, (Vec<u8>, LineShift)> = HashMap::new();
    let mut queue = VecDeque::new();
    queue.push_back(start.clone());
    let mut seen: HashMap<Vec<u8>, ()> = HashMap::new();
    seen.insert(start.clone(), ());
    const NODE_CAP: usize = 400_000;
    while let Some(state) = queue.pop_front() {
        if seen.len() > NODE_CAP {
            return None;
        }
        for (ei, shift, ordered) in &moves {
            if state[*ei] != 0 || ordered[1..].iter().any(|&i| state[i] == 0) {
                continue;
            }
            let mut next = state.clone();
            for k in 0..ordered.len() - 1 {
                next[ordered[k]] = next[ordered[k + 1]];
            }
            next[*ordered.last().unwrap()] = 0;
            if seen.contains_key(&next) {
                continue;
            }
            seen.insert(next.clone(), ());
            prev.insert(next.clone(), (state.clone(), *shift));
            if pred(&next) {
                let mut out = Vec::new();
                let mut cur = next;
                while cur != start {
                    let (p, sft) = prev.remove(&cur).unwrap();
                    out.push(sft);
                    cur = p;
                }
                out.reverse();
                return Some(out);
            }
            queue.push_back(next.clone());
        }
    }
    None
}

/// Full-configuration block search against `goal`.
fn block_bfs(sim: &ColorSim, block: (u32, u32, u32, u32), goal: &Board) -> Option<Vec<LineShift>> {
    let target: Vec<u8> = iter_block(block)
        .map(|p| match goal.get(p.0, p.1) {
            Cell::Escort => 0,
            Cell::Color(c) => c,
        })
        .collect();
    // Frozen cells must already match the goal.
    for (i, p) in iter_block(block).enumerate() {
        if (!sim.free(p)) && sim.get(p) != target[i] {
            return None;
        }
    }
    search_block(sim, block, &[], false, &|state: &[u8]| state == target)
}

fn iter_block(block: (u32, u32, u32, u32)) -> impl Iterator<Item = Pos> {
    let (x1, y1, x2, y2) = block;
    (y1..=y2).flat_map(move |y| (x1..=x2).map(move |x| (x, y)))
}

/// All (escort-cell-index, shift) templates inside the block.
fn legal_block_shifts(sim: &ColorSim, block: (u32, u32, u32, u32)) -> Vec<(usize, LineShift)> {
    let (x1, y1, x2, y2) = block;
    let mut out = Vec::new();
    for (i, p) in iter_block(block).enumerate() {
        if sim.obstacles.contains(&p) {
            continue;
        }
        for tx in x1..=x2 {
            if tx != p.0 {
                out.push((i, LineShift { axis: Axis::Row, index: p.1, from: p.0, to: tx }));
            }
        }
        for ty in y1..=y2 {
            if ty != p.1 {
                out.push((i, LineShift { axis: Axis::Column, index: p.0, from: p.1, to: ty }));
            }
        }
    }
    out
}

fn board_cells(b: &Board) -> Vec<u8> {
    let mut v = Vec::with_capacity(b.cells() as usize);
    for y in 1..=b.m1() {
        for x in 1..=b.m2() {
            v.push(match b.get(x, y) {
                Cell::Escort => 0,
                Cell::Color(c) => c,
            });
        }
    }
    v
}

/// Single-row (or single-column) boards conserve tile order under shifts;
/// they are solvable iff the tile sequences match, in which case at most one
/// shift is needed.
fn solve_line(board: &Board, goal: &Board) -> Result<Vec<LineShift>, SolverError> {
    let horizontal = board.m1() == 1;
    let len = if horizontal { board.m2() } else { board.m1() };
    let get = |b: &Board, o: u32| if horizontal { b.get(o, 1) } else { b.get(1, o) };
    let seq = |b: &Board| -> Vec<Cell> {
        (1..=len).map(|o| get(b, o)).filter(|c| !c.is_escort()).collect()
    };
    if seq(board) != seq(goal) {
        return Err(SolverError::Unsolvable);
    }
    let epos = |b: &Board| (1..=len).find(|&o| get(b, o).is_escort()).unwrap();
    let (from, to) = (epos(board), epos(goal));
    if from == to {
        return Ok(Vec::new());
    }
    let axis = if horizontal { Axis::Row } else { Axis::Column };
    Ok(vec![LineShift { axis, index: 1, from, to }])
}

/// Places `color` tiles on `targets` (cells of row `floor`, ascending x),
/// mutating `board` and returning the shifts. Cells below row `floor` and
/// the leftmost `bite` cells of row `floor` are finalized and untouchable.
/// When the targets reach the row's last two cells they are placed with the
/// rotation trick; `tail` supplies goal colors past the targets when the
/// row must be completed to avoid a corner deadlock.
pub(crate) fn fill_cells(
    board: &mut Board,
    targets: &[(Pos, u8)],
    bite: u32,
    floor: u32,
) -> Result<Vec<LineShift>, SolverError> {
    let (m1, m2) = (board.m1(), board.m2());
    let escorts = board.escort_positions();
    let active = *escorts.first().expect("board has an escort");
    let obstacles: Vec<Pos> = escorts[1..].to_vec();
    let mut sim = ColorSim {
        m1,
        m2,
        cells: board_cells(board),
        escort: active,
        obstacles,
        done: vec![false; (m1 as usize) * (m2 as usize)],
        shifts: Vec::new(),
    };
    for y in 1..floor {
        for x in 1..=m2 {
            let i = sim.idx((x, y));
            sim.done[i] = true;
        }
    }
    for x in 1..=bite {
        let i = sim.idx((x, floor));
        sim.done[i] = true;
    }
    for (k, &((x, y), c)) in targets.iter().enumerate() {
        debug_assert_eq!(y, floor);
        if x <= m2 - 2 {
            if sim.get((x, y)) != c {
                sim.bring((x, y), c, &[])?;
            }
            sim.mark_done((x, y));
        } else {
            // The row's last two cells go in together.
            debug_assert!(x == m2 - 1, "targets must include both of the last two cells");
            let cb = targets
                .get(k + 1)
                .map(|&(_, c2)| c2)
                .ok_or_else(|| SolverError::Internal("corner target without its pair".into()))?;
            last_two_of_row(&mut sim, floor, c, cb)?;
            break;
        }
    }
    // Replay the shifts onto the real board.
    for &s in &sim.shifts {
        gstp_core::apply_step_unchecked(board, &gstp_core::Step::single(s));
    }
    Ok(sim.shifts)
}

/// Sorts `board` into exactly `goal` using the single escort at `active`;
/// `obstacles` are escorts already parked on their goal cells.
pub(crate) fn solve_exact(
    board: &Board,
    goal: &Board,
    active: Pos,
    obstacles: &[Pos],
) -> Result<Vec<LineShift>, SolverError> {
    if board.m1() == 1 || board.m2() == 1 {
        if !obstacles.is_empty() {
            return Err(SolverError::Unsolvable);
        }
        return solve_line(board, goal);
    }
    let (m1, m2) = (board.m1(), board.m2());
    // The corner reserve must contain every parked escort.
    let min_rc = obstacles
        .iter()
        .map(|o| m2 - o.0 + 1)
        .max()
        .unwrap_or(0);
    for &o in obstacles {
        if o.1 < m1 - 1 {
            return Err(SolverError::Internal(
                "parked escort below the corner block is unsupported".into(),
            ));
        }
    }
    // Progressively larger corner reserves if the endgame block is stuck.
    let base = 3.max(min_rc);
    let mut reserves: Vec<(u32, u32)> =
        vec![(2, base.min(m2)), (2, (base + 1).min(m2)), (2, (base + 2).min(m2))];
    if m2 <= 3 {
        reserves.push((3.min(m1), m2));
    }
    reserves.dedup();
    let mut last_err = SolverError::Unsolvable;
    for (rr, rc) in reserves {
        if rr > m1 || (rr as u64 * rc as u64) > 12 {
            continue;
        }
        match try_fill(board, goal, active, obstacles, rr, rc) {
            Ok(shifts) => return Ok(shifts),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

fn try_fill(
    board: &Board,
    goal: &Board,
    active: Pos,
    obstacles: &[Pos],
    rr: u32,
    rc: u32,
) -> Result<Vec<LineShift>, SolverError> {
    let (m1, m2) = (board.m1(), board.m2());
    let goal_cells = board_cells(goal);
    let mut sim = ColorSim {
        m1,
        m2,
        cells: board_cells(board),
        escort: active,
        obstacles: obstacles.to_vec(),
        done: vec![false; (m1 as usize) * (m2 as usize)],
        shifts: Vec::new(),
    };
    for &o in obstacles {
        let i = sim.idx(o);
        sim.done[i] = true;
        if goal_cells[i] != 0 {
            return Err(SolverError::Internal("obstacle not parked on an escort goal cell".into()));
        }
    }
    let gc = |sim: &ColorSim, p: Pos| goal_cells[sim.idx(p)];

    // Bottom rows, leaving an rr-row top band.
    for y in 1..=m1.saturating_sub(rr) {
        for x in 1..=m2 - 2 {
            let c = gc(&sim, (x, y));
            if c == 0 {
                return Err(SolverError::Internal("escort goal cell outside the corner block".into()));
            }
            if !sim.done[sim.idx((x, y))] {
                sim.bring((x, y), c, &[])?;
                sim.mark_done((x, y));
            }
        }
        let (ca, cb) = (gc(&sim, (m2 - 1, y)), gc(&sim, (m2, y)));
        last_two_of_row(&mut sim, y, ca, cb)?;
    }
    // Top band, column pairs, leaving an rc-column corner block.
    if rr == 2 && m1 >= 2 {
        let (yb, yt) = (m1 - 1, m1);
        for x in 1..=m2.saturating_sub(rc) {
            let (cb, ct) = (gc(&sim, (x, yb)), gc(&sim, (x, yt)));
            pair_of_column(&mut sim, x, yb, yt, cb, ct)?;
        }
        let block = (m2 - rc + 1, yb, m2, yt);
        finish_block(&mut sim, block, goal)?;
    } else {
        // Tall reserve: the whole top band is one block.
        let block = (1, m1 - rr + 1, m2, m1);
        finish_block(&mut sim, block, goal)?;
    }
    Ok(sim.shifts)
}

fn finish_block(
    sim: &mut ColorSim,
    block: (u32, u32, u32, u32),
    goal: &Board,
) -> Result<(), SolverError> {
    // The active escort must be inside the block for the search to move it.
    if !(block.0..=block.2).contains(&sim.escort.0) || !(block.1..=block.3).contains(&sim.escort.1)
    {
        let target = iter_block(block)
            .find(|&p| sim.free(p) && sim.get(p) != 0)
            .ok_or(SolverError::Internal("no entry into the corner block".into()))?;
        sim.escort_to(target, &[])?;
    }
    match block_bfs(sim, block, goal) {
        Some(shifts) => {
            sim.replay(shifts);
            Ok(())
        }
        None => Err(SolverError::EndgameStuck),
    }
}

fn last_two_of_row(sim: &mut ColorSim, y: u32, ca: u8, cb: u8) -> Result<(), SolverError> {
    let m2 = sim.m2;
    let a = (m2 - 1, y);
    let b = (m2, y);
    if sim.get(a) == ca && sim.get(b) == cb {
        sim.mark_done(a);
        sim.mark_done(b);
        return Ok(());
    }
    // Park ca on the corner, cb above it, then rotate both into place.
    sim.bring(b, ca, &[])?;
    sim.bring((m2, y + 1), cb, &[b])?;
    sim.escort_to(a, &[b, (m2, y + 1)])?;
    sim.swap_to(b);
    sim.swap_to((m2, y + 1));
    debug_assert!(sim.get(a) == ca && sim.get(b) == cb);
    sim.mark_done(a);
    sim.mark_done(b);
    Ok(())
}

fn pair_of_column(
    sim: &mut ColorSim,
    x: u32,
    yb: u32,
    yt: u32,
    c_bot: u8,
    c_top: u8,
) -> Result<(), SolverError> {
    let a = (x, yb);
    let b = (x, yt);
    if sim.get(a) == c_bot && sim.get(b) == c_top {
        sim.mark_done(a);
        sim.mark_done(b);
        return Ok(());
    }
    sim.bring(b, c_bot, &[])?;
    sim.bring((x + 1, yt), c_top, &[b])?;
    sim.escort_to(a, &[b, (x + 1, yt)])?;
    sim.swap_to(b);
    sim.swap_to((x + 1, yt));
    debug_assert!(sim.get(a) == c_bot && sim.get(b) == c_top);
    sim.mark_done(a);
    sim.mark_done(b);
    Ok(())
}

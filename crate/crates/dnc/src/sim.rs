//! Planner-side simulation: a binary view (black tiles of interest vs
//! everything else) over a rectangular region, a tracked escort, and shift
//! emission. Escort travel through white cells is value-preserving in the
//! binary view, so repositioning costs steps but never disturbs blacks.

use gstp_core::{Axis, LineShift};

use crate::{SolverError, StageTag};

pub(crate) type Pos = (u32, u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Rect {
    pub x1: u32,
    pub y1: u32,
    pub x2: u32,
    pub y2: u32,
}

impl Rect {
    pub fn contains(&self, p: Pos) -> bool {
        p.0 >= self.x1 && p.0 <= self.x2 && p.1 >= self.y1 && p.1 <= self.y2
    }

    pub fn width(&self) -> u32 {
        self.x2 - self.x1 + 1
    }

    pub fn height(&self) -> u32 {
        self.y2 - self.y1 + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Attr {
    Base,
    PerBlack,
}

pub(crate) struct Sim {
    m1: u32,
    m2: u32,
    pub region: Rect,
    black: Vec<bool>,
    /// Immovable cells (parked escorts); shifts must not touch them.
    obstacles: Vec<Pos>,
    pub escort: Pos,
    pub shifts: Vec<LineShift>,
    pub marks: Vec<(usize, StageTag)>,
    pub attr: Attr,
    pub base_steps: u64,
    pub black_steps: u64,
}

impl Sim {
    pub fn new(
        m1: u32,
        m2: u32,
        region: Rect,
        blacks: impl Iterator<Item = Pos>,
        escort: Pos,
        obstacles: Vec<Pos>,
    ) -> Sim {
        let mut black = vec![false; (m1 as usize) * (m2 as usize)];
        for (x, y) in blacks {
            black[(y as usize - 1) * m2 as usize + (x as usize - 1)] = true;
        }
        Sim {
            m1,
            m2,
            region,
            black,
            obstacles,
            escort,
            shifts: Vec::new(),
            marks: Vec::new(),
            attr: Attr::Base,
            base_steps: 0,
            black_steps: 0,
        }
    }

    pub fn mark(&mut self, tag: StageTag) {
        self.marks.push((self.shifts.len(), tag));
    }

    fn idx(&self, p: Pos) -> usize {
        debug_assert!(p.0 >= 1 && p.0 <= self.m2 && p.1 >= 1 && p.1 <= self.m1, "{p:?}");
        (p.1 as usize - 1) * self.m2 as usize + (p.0 as usize - 1)
    }

    pub fn is_black(&self, p: Pos) -> bool {
        self.black[self.idx(p)]
    }

    pub fn is_obstacle(&self, p: Pos) -> bool {
        self.obstacles.contains(&p)
    }

    /// White = not black, not the escort, not an obstacle.
    pub fn is_white(&self, p: Pos) -> bool {
        !self.is_black(p) && p != self.escort && !self.is_obstacle(p)
    }

    pub fn black_positions(&self) -> Vec<Pos> {
        let mut out = Vec::new();
        for y in 1..=self.m1 {
            for x in 1..=self.m2 {
                if self.is_black((x, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Emits the shift that teleports the escort to `to` along a shared row
    /// or column, sliding everything between one cell toward the escort's
    /// old position. Panics (debug) on geometry errors; obstacle collision
    /// is a hard error.
    pub fn jump(&mut self, to: Pos) -> Result<(), SolverError> {
        let from = self.escort;
        assert_ne!(from, to, "degenerate jump");
        let (axis, index, f, t) = if from.1 == to.1 {
            (Axis::Row, from.1, from.0, to.0)
        } else if from.0 == to.0 {
            (Axis::Column, from.0, from.1, to.1)
        } else {
            panic!("jump endpoints not collinear: {from:?} -> {to:?}");
        };
        debug_assert!(self.region.contains(from) && self.region.contains(to), "jump outside region: {from:?} -> {to:?} region {:?}", self.region);
        let (lo, hi) = (f.min(t), f.max(t));
        for o in lo..=hi {
            let p = if axis == Axis::Row { (o, index) } else { (index, o) };
            if self.is_obstacle(p) {
                return Err(SolverError::Internal(format!(
                    "jump {from:?}->{to:?} crosses parked escort at {p:?}"
                )));
            }
        }
        // Slide the segment's blacks one cell toward `from`.
        let dir: i64 = if t > f { -1 } else { 1 };
        let (seg_lo, seg_hi) = if t > f { (f + 1, t) } else { (t, f - 1) };
        let mut moved: Vec<(usize, usize)> = Vec::new();
        for o in seg_lo..=seg_hi {
            let p = if axis == Axis::Row { (o, index) } else { (index, o) };
            if self.is_black(p) {
                let d = (o as i64 + dir) as u32;
                let q = if axis == Axis::Row { (d, index) } else { (index, d) };
                moved.push((self.idx(p), self.idx(q)));
            }
        }
        for &(src, _) in &moved {
            self.black[src] = false;
        }
        for &(_, dst) in &moved {
            self.black[dst] = true;
        }
        self.escort = to;
        self.shifts.push(LineShift { axis, index, from: f, to: t });
        match self.attr {
            Attr::Base => self.base_steps += 1,
            Attr::PerBlack => self.black_steps += 1,
        }
        Ok(())
    }

    /// Escort travel exclusively through white cells (value-preserving).
    /// Tries direct and L-shaped paths, then a teleport BFS.
    pub fn travel_white(&mut self, to: Pos) -> Result<(), SolverError> {
        if self.escort == to {
            return Ok(());
        }
        if !self.is_white(to) {
            return Err(SolverError::Internal(format!(
                "travel target {to:?} is not white (escort {:?})",
                self.escort
            )));
        }
        if self.white_line(self.escort, to) {
            return self.jump(to);
        }
        for corner in [(to.0, self.escort.1), (self.escort.0, to.1)] {
            if self.is_white(corner)
                && self.white_line(self.escort, corner)
                && self.white_line(corner, to)
            {
                self.jump(corner)?;
                return self.jump(to);
            }
        }
        self.travel_bfs(to)
    }

    /// Are all cells strictly between a and b (plus b itself) white? a and b
    /// must share a row or column.
    fn white_line(&self, a: Pos, b: Pos) -> bool {
        if a == b {
            return true;
        }
        if a.1 == b.1 {
            let (lo, hi) = (a.0.min(b.0), a.0.max(b.0));
            (lo..=hi).all(|x| (x, a.1) == a || self.is_white((x, a.1)))
        } else if a.0 == b.0 {
            let (lo, hi) = (a.1.min(b.1), a.1.max(b.1));
            (lo..=hi).all(|y| (a.0, y) == a || self.is_white((a.0, y)))
        } else {
            false
        }
    }

    /// Escort travel to the first white cell satisfying `pred`.
    pub fn travel_white_pred(
        &mut self,
        pred: impl Fn(&Sim, Pos) -> bool,
    ) -> Result<(), SolverError> {
        if pred(self, self.escort) {
            return Ok(());
        }
        self.bfs_route(None, Some(&|s: &Sim, p: Pos| pred(s, p)))
    }

    /// Teleport BFS over white cells: from any cell, one step reaches every
    /// white cell visible along the four axis directions.
    fn travel_bfs(&mut self, to: Pos) -> Result<(), SolverError> {
        self.bfs_route(Some(to), None)
    }

    fn bfs_route(
        &mut self,
        to: Option<Pos>,
        pred: Option<&dyn Fn(&Sim, Pos) -> bool>,
    ) -> Result<(), SolverError> {
        let r = self.region;
        let w = r.width() as usize;
        let h = r.height() as usize;
        let li = |p: Pos| (p.1 - r.y1) as usize * w + (p.0 - r.x1) as usize;
        let mut prev: Vec<u32> = vec![u32::MAX; w * h];
        let start = self.escort;
        prev[li(start)] = li(start) as u32;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(start);
        let mut found: Option<Pos> = None;
        'search: while let Some(u) = queue.pop_front() {
            for (dx, dy) in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
                let mut v = u;
                loop {
                    let nx = v.0 as i64 + dx;
                    let ny = v.1 as i64 + dy;
                    if nx < r.x1 as i64 || nx > r.x2 as i64 || ny < r.y1 as i64 || ny > r.y2 as i64
                    {
                        break;
                    }
                    let n = (nx as u32, ny as u32);
                    if !self.is_white(n) {
                        break;
                    }
                    if prev[li(n)] == u32::MAX {
                        prev[li(n)] = li(u) as u32;
                        let hit = match (to, pred) {
                            (Some(t), _) => n == t,
                            (None, Some(f)) => f(self, n),
                            (None, None) => false,
                        };
                        if hit {
                            found = Some(n);
                            break 'search;
                        }
                        queue.push_back(n);
                    }
                    v = n;
                }
            }
        }
        let dest = match (to, found) {
            (Some(t), _) if prev[li(t)] != u32::MAX => t,
            (None, Some(d)) => d,
            _ => {
                return Err(SolverError::Internal(format!(
                    "no white path from {:?} to {to:?}",
                    self.escort
                )))
            }
        };
        let mut path = vec![dest];
        let mut cur = li(dest);
        while prev[cur] as usize != cur {
            cur = prev[cur] as usize;
            let p = (r.x1 + (cur % w) as u32, r.y1 + (cur / w) as u32);
            path.push(p);
        }
        path.reverse();
        for hop in path.into_iter().skip(1) {
            self.jump(hop)?;
        }
        Ok(())
    }

    /// Moves the black at `b` one cell to `t` (adjacent, white). The escort
    /// travels to `t` through white cells and swaps.
    pub fn nudge_black(&mut self, b: Pos, t: Pos) -> Result<(), SolverError> {
        debug_assert!(self.is_black(b), "nudge source not black: {b:?}");
        debug_assert_eq!(b.0.abs_diff(t.0) + b.1.abs_diff(t.1), 1, "nudge not adjacent");
        if self.escort != t {
            self.travel_white(t)?;
        }
        self.jump(b)
    }

}

//! Board representation. Coordinates are 1-based with x = column (1 =
//! leftmost) and y = row (1 = bottommost), so gravity-style motion is -y.

use crate::error::BoardError;
use crate::sparse::{BandMap, Run};

pub(crate) const ESCORT: u8 = 0;

/// Contents of one grid cell: a colored tile or an escort (empty swap space).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cell {
    Escort,
    /// Color id in `1..=k`. For binary boards color 1 is white, color 2 black.
    Color(u8),
}

impl Cell {
    pub(crate) fn code(self) -> u8 {
        match self {
            Cell::Escort => ESCORT,
            Cell::Color(c) => c,
        }
    }

    pub(crate) fn from_code(code: u8) -> Cell {
        if code == ESCORT {
            Cell::Escort
        } else {
            Cell::Color(code)
        }
    }

    pub fn is_escort(self) -> bool {
        self == Cell::Escort
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Backing {
    Dense(Vec<u8>),
    Sparse(BandMap),
}

/// An `m1 x m2` board with `k` colors and at least one escort.
///
/// Boards are immutable values: applying a step yields a new board. The
/// sparse backing stores non-overlapping rectangles over the full grid and
/// supports line-shift application by rectangle splitting, which keeps
/// reduction-scale instances (side ~4*10^5) tractable.
#[derive(Debug, Clone)]
pub struct Board {
    m1: u32,
    m2: u32,
    k: u8,
    escorts: u64,
    backing: Backing,
}

impl Board {
    /// Dense board from row-major cells, row 1 (bottom) first.
    pub fn from_cells(m1: u32, m2: u32, k: u8, cells: Vec<Cell>) -> Result<Board, BoardError> {
        Self::check_dims(m1, m2, k)?;
        let expected = (m1 as usize) * (m2 as usize);
        if cells.len() != expected {
            return Err(BoardError::BadCellCount { got: cells.len(), expected });
        }
        let mut raw = Vec::with_capacity(expected);
        let mut escorts = 0u64;
        for (i, c) in cells.iter().enumerate() {
            if let Cell::Color(col) = c {
                if *col == 0 || *col > k {
                    let x = (i % m2 as usize) as u32 + 1;
                    let y = (i / m2 as usize) as u32 + 1;
                    return Err(BoardError::ColorOutOfRange { x, y, color: *col, k });
                }
            } else {
                escorts += 1;
            }
            raw.push(c.code());
        }
        if escorts == 0 {
            return Err(BoardError::NoEscort);
        }
        Ok(Board { m1, m2, k, escorts, backing: Backing::Dense(raw) })
    }

    /// Sparse board: a default color plus explicit rects `(x1, y1, x2, y2, cell)`.
    /// Rects must be in range and pairwise disjoint.
    pub fn from_rects(
        m1: u32,
        m2: u32,
        k: u8,
        default: Cell,
        rects: &[(u32, u32, u32, u32, Cell)],
    ) -> Result<Board, BoardError> {
        Self::check_dims(m1, m2, k)?;
        if let Cell::Color(c) = default {
            if c == 0 || c > k {
                return Err(BoardError::ColorOutOfRange { x: 0, y: 0, color: c, k });
            }
        }
        for (i, &(x1, y1, x2, y2, cell)) in rects.iter().enumerate() {
            if x1 < 1 || y1 < 1 || x2 > m2 || y2 > m1 || x1 > x2 || y1 > y2 {
                return Err(BoardError::RectOutOfRange { rect: (x1, y1, x2, y2), m1, m2 });
            }
            if let Cell::Color(c) = cell {
                if c == 0 || c > k {
                    return Err(BoardError::ColorOutOfRange { x: x1, y: y1, color: c, k });
                }
            }
            for (j, &(a1, b1, a2, b2, _)) in rects[..i].iter().enumerate() {
                if x1 <= a2 && a1 <= x2 && y1 <= b2 && b1 <= y2 {
                    return Err(BoardError::RectOverlap { first: j, second: i });
                }
            }
        }
        let mut map = BandMap::filled(m1, m2, default.code());
        for &(x1, y1, x2, y2, cell) in rects {
            map.paint_rect(x1, y1, x2, y2, cell.code());
        }
        let escorts = map.count(ESCORT);
        if escorts == 0 {
            return Err(BoardError::NoEscort);
        }
        Ok(Board { m1, m2, k, escorts, backing: Backing::Sparse(map) })
    }

    /// Sparse board painted in order: later rects overwrite earlier ones, so
    /// unlike [`Board::from_rects`] overlap is allowed. Intended for
    /// programmatic construction of layered instances.
    pub fn from_painted_rects(
        m1: u32,
        m2: u32,
        k: u8,
        default: Cell,
        rects: &[(u32, u32, u32, u32, Cell)],
    ) -> Result<Board, BoardError> {
        Self::check_dims(m1, m2, k)?;
        if let Cell::Color(c) = default {
            if c == 0 || c > k {
                return Err(BoardError::ColorOutOfRange { x: 0, y: 0, color: c, k });
            }
        }
        let mut map = BandMap::filled(m1, m2, default.code());
        for &(x1, y1, x2, y2, cell) in rects {
            if x1 < 1 || y1 < 1 || x2 > m2 || y2 > m1 || x1 > x2 || y1 > y2 {
                return Err(BoardError::RectOutOfRange { rect: (x1, y1, x2, y2), m1, m2 });
            }
            if let Cell::Color(c) = cell {
                if c == 0 || c > k {
                    return Err(BoardError::ColorOutOfRange { x: x1, y: y1, color: c, k });
                }
            }
            map.paint_rect(x1, y1, x2, y2, cell.code());
        }
        let escorts = map.count(ESCORT);
        if escorts == 0 {
            return Err(BoardError::NoEscort);
        }
        Ok(Board { m1, m2, k, escorts, backing: Backing::Sparse(map) })
    }

    fn check_dims(m1: u32, m2: u32, k: u8) -> Result<(), BoardError> {
        if m1 == 0 || m2 == 0 {
            return Err(BoardError::BadDimensions { m1, m2 });
        }
        if k == 0 {
            return Err(BoardError::BadColorCount(k));
        }
        Ok(())
    }

    pub fn m1(&self) -> u32 {
        self.m1
    }

    pub fn m2(&self) -> u32 {
        self.m2
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn cells(&self) -> u64 {
        self.m1 as u64 * self.m2 as u64
    }

    pub fn escort_count(&self) -> u64 {
        self.escorts
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.backing, Backing::Sparse(_))
    }

    pub fn in_range(&self, x: u32, y: u32) -> bool {
        x >= 1 && x <= self.m2 && y >= 1 && y <= self.m1
    }

    pub fn get(&self, x: u32, y: u32) -> Cell {
        assert!(self.in_range(x, y), "cell ({x},{y}) out of range");
        Cell::from_code(self.get_code(x, y))
    }

    pub(crate) fn get_code(&self, x: u32, y: u32) -> u8 {
        match &self.backing {
            Backing::Dense(v) => v[self.idx(x, y)],
            Backing::Sparse(m) => m.get(x, y),
        }
    }

    fn idx(&self, x: u32, y: u32) -> usize {
        (y as usize - 1) * self.m2 as usize + (x as usize - 1)
    }

    /// Per-color cell counts; index 0 is the escort count.
    pub fn histogram(&self) -> Vec<u64> {
        let mut h = vec![0u64; self.k as usize + 1];
        match &self.backing {
            Backing::Dense(v) => {
                for &c in v {
                    h[c as usize] += 1;
                }
            }
            Backing::Sparse(m) => {
                for c in 0..=self.k {
                    h[c as usize] = m.count(c);
                }
            }
        }
        h
    }

    /// Escort positions, sorted by (y, x).
    pub fn escort_positions(&self) -> Vec<(u32, u32)> {
        match &self.backing {
            Backing::Dense(v) => {
                let mut out = Vec::with_capacity(self.escorts as usize);
                for (i, &c) in v.iter().enumerate() {
                    if c == ESCORT {
                        let x = (i % self.m2 as usize) as u32 + 1;
                        let y = (i / self.m2 as usize) as u32 + 1;
                        out.push((x, y));
                    }
                }
                out
            }
            Backing::Sparse(m) => m.positions_of(ESCORT),
        }
    }

    /// Maximal runs along a line segment as `(lo, hi, cell)` offsets.
    pub(crate) fn line_runs(&self, axis: crate::step::Axis, index: u32, lo: u32, hi: u32) -> Vec<(u32, u32, u8)> {
        use crate::step::Axis;
        match (&self.backing, axis) {
            (Backing::Dense(_), Axis::Row) => {
                let mut out: Vec<(u32, u32, u8)> = Vec::new();
                for x in lo..=hi {
                    let c = self.get_code(x, index);
                    match out.last_mut() {
                        Some(r) if r.2 == c => r.1 = x,
                        _ => out.push((x, x, c)),
                    }
                }
                out
            }
            (Backing::Dense(_), Axis::Column) => {
                let mut out: Vec<(u32, u32, u8)> = Vec::new();
                for y in lo..=hi {
                    let c = self.get_code(index, y);
                    match out.last_mut() {
                        Some(r) if r.2 == c => r.1 = y,
                        _ => out.push((y, y, c)),
                    }
                }
                out
            }
            (Backing::Sparse(m), Axis::Row) => m
                .row_runs(index, lo, hi)
                .into_iter()
                .map(|r| (r.x_lo, r.x_hi, r.cell))
                .collect(),
            (Backing::Sparse(m), Axis::Column) => m.col_runs(index, lo, hi),
        }
    }

    /// Overwrite a line segment with explicit runs. Internal: callers keep the
    /// escort count coherent.
    pub(crate) fn set_line_runs(
        &mut self,
        axis: crate::step::Axis,
        index: u32,
        runs: &[(u32, u32, u8)],
    ) {
        use crate::step::Axis;
        match &mut self.backing {
            Backing::Dense(v) => {
                let m2 = self.m2 as usize;
                for &(lo, hi, c) in runs {
                    for o in lo..=hi {
                        let (x, y) = match axis {
                            Axis::Row => (o, index),
                            Axis::Column => (index, o),
                        };
                        v[(y as usize - 1) * m2 + (x as usize - 1)] = c;
                    }
                }
            }
            Backing::Sparse(m) => match axis {
                Axis::Row => {
                    let rr: Vec<Run> = runs
                        .iter()
                        .map(|&(lo, hi, c)| Run { x_lo: lo, x_hi: hi, cell: c })
                        .collect();
                    m.set_row_runs(index, rr[0].x_lo, rr.last().unwrap().x_hi, &rr);
                }
                Axis::Column => m.set_col_runs(index, runs),
            },
        }
    }

    /// Rects of the sparse backing (normalized bands), or `None` when dense.
    pub fn rects(&self) -> Option<Vec<(u32, u32, u32, u32, Cell)>> {
        match &self.backing {
            Backing::Sparse(m) => Some(
                m.rects()
                    .into_iter()
                    .map(|(x1, y1, x2, y2, c)| (x1, y1, x2, y2, Cell::from_code(c)))
                    .collect(),
            ),
            Backing::Dense(_) => None,
        }
    }

    pub fn to_dense(&self) -> Board {
        match &self.backing {
            Backing::Dense(_) => self.clone(),
            Backing::Sparse(m) => {
                let mut v = vec![0u8; self.cells() as usize];
                for (x1, y1, x2, y2, c) in m.rects() {
                    for y in y1..=y2 {
                        let base = (y as usize - 1) * self.m2 as usize;
                        for x in x1..=x2 {
                            v[base + x as usize - 1] = c;
                        }
                    }
                }
                Board {
                    m1: self.m1,
                    m2: self.m2,
                    k: self.k,
                    escorts: self.escorts,
                    backing: Backing::Dense(v),
                }
            }
        }
    }

    pub fn to_sparse(&self) -> Board {
        match &self.backing {
            Backing::Sparse(_) => self.clone(),
            Backing::Dense(_) => {
                let mut map = BandMap::filled(self.m1, self.m2, self.get_code(1, 1));
                for y in 1..=self.m1 {
                    let runs: Vec<Run> = self
                        .line_runs(crate::step::Axis::Row, y, 1, self.m2)
                        .into_iter()
                        .map(|(lo, hi, c)| Run { x_lo: lo, x_hi: hi, cell: c })
                        .collect();
                    map.set_row_runs(y, 1, self.m2, &runs);
                }
                Board {
                    m1: self.m1,
                    m2: self.m2,
                    k: self.k,
                    escorts: self.escorts,
                    backing: Backing::Sparse(map),
                }
            }
        }
    }

    /// First cell where the two boards differ, scanning bottom-up.
    pub fn first_difference(&self, other: &Board) -> Option<(u32, u32)> {
        if self.m1 != other.m1 || self.m2 != other.m2 {
            return Some((1, 1));
        }
        for y in 1..=self.m1 {
            let a = self.line_runs(crate::step::Axis::Row, y, 1, self.m2);
            let b = other.line_runs(crate::step::Axis::Row, y, 1, self.m2);
            if a == b {
                continue;
            }
            // Locate the first differing x by walking both run lists.
            let (mut ia, mut ib) = (0usize, 0usize);
            let mut x = 1u32;
            while x <= self.m2 {
                let ra = a[ia];
                let rb = b[ib];
                if ra.2 != rb.2 {
                    return Some((x, y));
                }
                let hi = ra.1.min(rb.1);
                x = hi + 1;
                if ra.1 == hi {
                    ia += 1;
                }
                if rb.1 == hi {
                    ib += 1;
                }
            }
        }
        None
    }
}

impl PartialEq for Board {
    fn eq(&self, other: &Self) -> bool {
        self.m1 == other.m1
            && self.m2 == other.m2
            && self.k == other.k
            && self.first_difference(other).is_none()
    }
}

impl Eq for Board {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_sparse_equality() {
        let cells = vec![
            Cell::Escort,
            Cell::Color(2),
            Cell::Color(1),
            Cell::Color(1),
        ];
        let d = Board::from_cells(2, 2, 2, cells).unwrap();
        let s = d.to_sparse();
        assert!(s.is_sparse());
        assert_eq!(d, s);
        assert_eq!(s.get(1, 1), Cell::Escort);
        assert_eq!(s.get(2, 1), Cell::Color(2));
        assert_eq!(d.histogram(), vec![1, 2, 1]);
        assert_eq!(s.histogram(), vec![1, 2, 1]);
    }

    #[test]
    fn rejects_zero_escorts() {
        let cells = vec![Cell::Color(1); 4];
        let err = Board::from_cells(2, 2, 1, cells).unwrap_err();
        assert_eq!(err, BoardError::NoEscort);
    }

    #[test]
    fn rect_overlap_detected() {
        let err = Board::from_rects(
            4,
            4,
            2,
            Cell::Color(1),
            &[
                (1, 1, 2, 2, Cell::Color(2)),
                (2, 2, 3, 3, Cell::Color(2)),
                (4, 4, 4, 4, Cell::Escort),
            ],
        )
        .unwrap_err();
        assert_eq!(err, BoardError::RectOverlap { first: 0, second: 1 });
    }
}

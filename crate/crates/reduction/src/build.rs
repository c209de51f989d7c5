//! Construction of the single-escort binary instance: an m x m sparse board
//! with the G region (all layers) in the bottom-left, a black top row with a
//! tail of w extra tiles, the escort in the top-right corner and white
//! everywhere else. All of G's white tiles lie inside the bottom r x c
//! subgrid H where the sand castle is played.

use gstp_core::{Board, Cell};
use gstp_scg::{ScgBoard, ScgCell};

use crate::{CnfFormula, ReductionError, ReductionLayout};

pub const WHITE: Cell = Cell::Color(1);
pub const BLACK: Cell = Cell::Color(2);

/// Every white rect of G in absolute coordinates (x1, y1, x2, y2), pairwise
/// disjoint. This is the single source of truth for the layer patterns: the
/// sparse builder, the dense rasterizer and the white count all derive from
/// it.
pub(crate) fn g_white_rects(f: &CnfFormula, l: &ReductionLayout) -> Vec<(u64, u64, u64, u64)> {
    let mut rects: Vec<(u64, u64, u64, u64)> = Vec::new();
    let cols = &l.columns;
    let (sl, sr) = (cols.state.lo, cols.state.hi);
    fn row(rects: &mut Vec<(u64, u64, u64, u64)>, x1: u64, x2: u64, y: u64) {
        rects.push((x1, y, x2, y));
    }

    // Clause layer: state and reward whites on the bottom row, variable
    // whites one row above, clause whites on the top row.
    let cl = l.layers.clause;
    row(&mut rects, sl, sr, cl.lo);
    row(&mut rects, cols.variable.lo, cols.variable.hi, cl.lo + 1);
    row(&mut rects, cols.clause.lo, cols.clause.hi, cl.hi);
    row(&mut rects, cols.reward.lo, cols.reward.hi, cl.lo);

    // Variables layer: one gadget of h+1 rows per literal, x_1 topmost.
    let two_n = 2 * l.n_vars;
    for var in 1..=f.n_vars() {
        for positive in [true, false] {
            let g = l.gadget(ReductionLayout::literal_slot(var, positive));
            // State whites on the gadget's bottom row.
            row(&mut rects, sl, sr, g.lo);
            // Clause-column bottom row is white; participating clauses get a
            // full-height rope (the bottom cell folds into it).
            let mut roped = vec![false; f.n_clauses() as usize];
            for j in 0..f.n_clauses() as usize {
                if f.clause_contains(j, var, positive) {
                    roped[j] = true;
                    let x = l.clause_col(j as u32 + 1);
                    rects.push((x, g.lo, x, g.hi));
                }
            }
            // Remaining clause-column bottom cells, as maximal runs.
            let mut run_start: Option<u64> = None;
            for j in 0..f.n_clauses() as usize {
                let x = l.clause_col(j as u32 + 1);
                if roped[j] {
                    if let Some(s) = run_start.take() {
                        row(&mut rects, s, x - 1, g.lo);
                    }
                } else if run_start.is_none() {
                    run_start = Some(x);
                }
            }
            if let Some(s) = run_start {
                row(&mut rects, s, cols.clause.hi, g.lo);
            }
            // Variable columns: a two-level staircase. For x_i, block
            // columns 1..=2i-1 sit on the second row and 2i..=2N on the
            // bottom row; the negative literal swaps columns 2i-1 and 2i.
            let i = var;
            if positive {
                row(&mut rects, l.var_col(1), l.var_col(2 * i - 1), g.lo + 1);
                row(&mut rects, l.var_col(2 * i), l.var_col(two_n), g.lo);
            } else {
                if i > 1 {
                    row(&mut rects, l.var_col(1), l.var_col(2 * i - 2), g.lo + 1);
                }
                row(&mut rects, l.var_col(2 * i), l.var_col(2 * i), g.lo + 1);
                row(&mut rects, l.var_col(2 * i - 1), l.var_col(2 * i - 1), g.lo);
                if 2 * i + 1 <= two_n {
                    row(&mut rects, l.var_col(2 * i + 1), l.var_col(two_n), g.lo);
                }
            }
        }
    }

    // Control layer: state whites on the bottom row, variable columns filled.
    let ct = l.layers.control;
    row(&mut rects, sl, sr, ct.lo);
    rects.push((cols.variable.lo, ct.lo, cols.variable.hi, ct.hi));

    // Vacuum layer: right state white on the bottom row, left state white one
    // row above, variable+clause columns white on the bottom row.
    let vc = l.layers.vacuum;
    row(&mut rects, sr, sr, vc.lo);
    row(&mut rects, sl, sl, vc.lo + 1);
    row(&mut rects, cols.clause.lo, cols.variable.hi, vc.lo);

    // Gravity layer: same state pattern, variable+clause columns filled.
    let gv = l.layers.gravity;
    row(&mut rects, sr, sr, gv.lo);
    row(&mut rects, sl, sl, gv.lo + 1);
    rects.push((cols.clause.lo, gv.lo, cols.variable.hi, gv.hi));

    // Endgame switch: two whites on the two rightmost columns.
    row(&mut rects, sl, sr, l.layers.endgame_switch.lo);

    rects
}

/// Builds the m x m sparse instance board for `f`.
pub fn build_instance(f: &CnfFormula, l: &ReductionLayout) -> Result<Board, ReductionError> {
    if l.m > u32::MAX as u64 {
        return Err(ReductionError::LayoutTooLarge { m: l.m, cap: u32::MAX as u64 });
    }
    let m = l.m as u32;
    let c = l.c as u32;
    let g_top = (l.r + 2 * l.r * l.c) as u32;
    let mut rects: Vec<(u32, u32, u32, u32, Cell)> = Vec::new();
    // G is black with the white patterns painted over it; above G sits the
    // black top row with its tail of w tiles; the escort is top-right.
    rects.push((1, 1, c, g_top, BLACK));
    for (x1, y1, x2, y2) in g_white_rects(f, l) {
        rects.push((x1 as u32, y1 as u32, x2 as u32, y2 as u32, WHITE));
    }
    rects.push((1, m, c + l.w as u32, m, BLACK));
    rects.push((m, m, m, m, Cell::Escort));
    Board::from_painted_rects(m, m, 2, WHITE, &rects).map_err(ReductionError::Board)
}

/// The sorted goal of the instance: black fills the leftmost c columns over
/// the full height, the escort sits top-right, white fills the rest.
pub fn sorted_goal(l: &ReductionLayout) -> Board {
    let m = l.m as u32;
    Board::from_painted_rects(
        m,
        m,
        2,
        WHITE,
        &[(1, 1, l.c as u32, m, BLACK), (m, m, m, m, Cell::Escort)],
    )
    .expect("well-formed goal")
}

/// Extracts the bottom r x c subgrid of a built instance as a sand castle
/// board (hole = white, sand = black).
pub fn embedded_scg(board: &Board, l: &ReductionLayout) -> ScgBoard {
    let (r, c) = (l.r as u32, l.c as u32);
    let mut grid = vec![ScgCell::Sand; (r as usize) * (c as usize)];
    for y in 1..=r {
        for (lo, hi, cell) in board_row_runs(board, y, c) {
            if cell == WHITE {
                for x in lo..=hi {
                    grid[(y as usize - 1) * c as usize + x as usize - 1] = ScgCell::Hole;
                }
            }
        }
    }
    ScgBoard::new(r, c, grid).expect("valid dimensions")
}

fn board_row_runs(board: &Board, y: u32, c: u32) -> Vec<(u32, u32, Cell)> {
    let mut out = Vec::new();
    let mut x = 1u32;
    while x <= c {
        let cell = board.get(x, y);
        let mut hi = x;
        while hi < c && board.get(hi + 1, y) == cell {
            hi += 1;
        }
        out.push((x, hi, cell));
        x = hi + 1;
    }
    out
}

/// Rasterizes H directly from the formula and layout, independent of the
/// sparse board construction path. Used to cross-check `embedded_scg`.
pub fn rasterize_scg(f: &CnfFormula, l: &ReductionLayout) -> ScgBoard {
    let (r, c) = (l.r as u32, l.c as u32);
    let mut grid = vec![ScgCell::Sand; (r as usize) * (c as usize)];
    for (x1, y1, x2, y2) in g_white_rects(f, l) {
        debug_assert!(y2 <= l.r, "all of G's whites lie inside H");
        for y in y1..=y2 {
            for x in x1..=x2 {
                grid[(y as usize - 1) * c as usize + x as usize - 1] = ScgCell::Hole;
            }
        }
    }
    ScgBoard::new(r, c, grid).expect("valid dimensions")
}

//! Derived dimensions and named extents of the constructed instance.
//!
//! With N variables and M clauses:
//!   ell = M + 2N + 2          (variable gadget length)
//!   h   = 2N*ell + 4N + 2     (fall distance into the satisfaction position)
//!   q   = ell*(4N(h+1) + 15)  (reward width)
//!   r   = 4N(h+1) + h + q + 16, c = q + M + 2N + 2   (sand castle dims)
//!   m   = r + 2rc + 1         (full board side)
//! The G region (columns 1..=c, rows 1..=r+2rc) stacks, top down: upper
//! boundary, clause, clause padding, variables (one gadget of h+1 rows per
//! literal), control, vacuum, gravity and endgame switch layers, with single
//! all-black padding rows between consecutive layers that are not all black.

use serde::Serialize;

use crate::{CnfFormula, ReductionError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct YRange {
    pub lo: u64,
    pub hi: u64,
}

impl YRange {
    pub fn rows(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn contains(&self, y: u64) -> bool {
        y >= self.lo && y <= self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct XRange {
    pub lo: u64,
    pub hi: u64,
}

impl XRange {
    pub fn cols(&self) -> u64 {
        self.hi - self.lo + 1
    }
}

/// Layer y-extents, bottom up. Padding rows separate consecutive layers
/// that are not entirely black.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Layers {
    pub endgame_switch: YRange,
    pub pad_above_endgame: YRange,
    pub gravity: YRange,
    pub pad_above_gravity: YRange,
    pub vacuum: YRange,
    pub pad_above_vacuum: YRange,
    pub control: YRange,
    pub pad_above_control: YRange,
    pub variables: YRange,
    pub clause_padding: YRange,
    pub clause: YRange,
    pub upper_boundary: YRange,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Columns {
    pub reward: XRange,
    pub clause: XRange,
    pub variable: XRange,
    pub state: XRange,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionLayout {
    pub n_vars: u32,
    pub n_clauses: u32,
    pub ell: u64,
    pub h: u64,
    pub q: u64,
    pub r: u64,
    pub c: u64,
    pub m: u64,
    /// White tiles in G = holes of the embedded sand castle.
    pub w: u64,
    /// Makespan budget K = 4w.
    pub k_budget: u64,
    pub layers: Layers,
    pub columns: Columns,
}

impl ReductionLayout {
    /// Gadget index for a literal: x_i and not-x_i occupy slots
    /// 2(i-1) and 2(i-1)+1, stacked top-down from x_1 at the top.
    pub fn literal_slot(var: u32, positive: bool) -> u32 {
        2 * (var - 1) + if positive { 0 } else { 1 }
    }

    /// Rows (h+1 of them) of one literal gadget inside the variables layer.
    pub fn gadget(&self, slot: u32) -> YRange {
        let band = self.h + 1;
        let hi = self.layers.variables.hi - slot as u64 * band;
        YRange { lo: hi - band + 1, hi }
    }

    /// x of the j-th clause column from the left, j 1-based.
    pub fn clause_col(&self, j: u32) -> u64 {
        self.columns.clause.lo + j as u64 - 1
    }

    /// x of the j-th variable-block column from the left, j 1-based in 1..=2N.
    pub fn var_col(&self, j: u32) -> u64 {
        self.columns.variable.lo + j as u64 - 1
    }
}

/// Computes all derived dimensions and extents, verifying the row accounting
/// identity and the instance cap.
pub fn derive_layout(f: &CnfFormula, max_m: u64) -> Result<ReductionLayout, ReductionError> {
    let n = f.n_vars() as u64;
    let m_clauses = f.n_clauses() as u64;
    let ell = m_clauses + 2 * n + 2;
    let h = 2 * n * ell + 4 * n + 2;
    let q = ell * (4 * n * (h + 1) + 15);
    let r = 4 * n * (h + 1) + h + q + 16;
    let c = q + m_clauses + 2 * n + 2;
    let m = r + 2 * r * c + 1;
    if m > max_m {
        return Err(ReductionError::LayoutTooLarge { m, cap: max_m });
    }

    let gravity_rows = 2 * n * (h + 1) + 6;
    let mut y = 1u64;
    let mut take = |rows: u64| {
        let range = YRange { lo: y, hi: y + rows - 1 };
        y += rows;
        range
    };
    let layers = Layers {
        endgame_switch: take(1),
        pad_above_endgame: take(1),
        gravity: take(gravity_rows),
        pad_above_gravity: take(1),
        vacuum: take(2),
        pad_above_vacuum: take(1),
        control: take(2),
        pad_above_control: take(1),
        variables: take(2 * n * (h + 1)),
        clause_padding: take(q),
        clause: take(h + 1),
        upper_boundary: take(2 * r * c),
    };
    // Row accounting: the layers partition G exactly.
    assert_eq!(layers.clause.hi, r, "clause layer must top out at r");
    assert_eq!(layers.upper_boundary.hi, r + 2 * r * c, "layers must fill G");

    let columns = Columns {
        reward: XRange { lo: 1, hi: q },
        clause: XRange { lo: q + 1, hi: q + m_clauses },
        variable: XRange { lo: q + m_clauses + 1, hi: q + m_clauses + 2 * n },
        state: XRange { lo: c - 1, hi: c },
    };

    let mut layout = ReductionLayout {
        n_vars: f.n_vars(),
        n_clauses: f.n_clauses(),
        ell,
        h,
        q,
        r,
        c,
        m,
        w: 0,
        k_budget: 0,
        layers,
        columns,
    };
    let w: u64 = crate::build::g_white_rects(f, &layout)
        .iter()
        .map(|&(x1, y1, x2, y2)| (x2 - x1 + 1) * (y2 - y1 + 1))
        .sum();
    layout.w = w;
    layout.k_budget = 4 * w;
    Ok(layout)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn formula(n: u32, clauses: Vec<Vec<i32>>) -> CnfFormula {
        CnfFormula::new(n, clauses).unwrap()
    }

    #[test]
    fn n1_m1_dimensions() {
        let f = formula(1, vec![vec![1]]);
        let l = derive_layout(&f, 10_000_000).unwrap();
        assert_eq!(l.ell, 5);
        assert_eq!(l.h, 16);
        assert_eq!(l.q, 415);
        assert_eq!(l.r, 515);
        assert_eq!(l.c, 420);
        assert_eq!(l.m, 433_116);
    }

    #[test]
    fn n2_m1_dimensions() {
        let f = formula(2, vec![vec![1, 2]]);
        let l = derive_layout(&f, 100_000_000).unwrap();
        assert_eq!(l.ell, 7);
        assert_eq!(l.h, 38);
        assert_eq!(l.q, 7 * (4 * 2 * 39 + 15));
        assert_eq!(l.q, 2289);
    }

    #[test]
    fn cap_enforced() {
        let f = formula(2, vec![vec![1, 2], vec![-1, 2]]);
        let err = derive_layout(&f, 10_000_000).unwrap_err();
        assert!(matches!(err, ReductionError::LayoutTooLarge { .. }));
    }

    #[test]
    fn layer_extents_partition_g() {
        for (n, clauses) in [
            (1, vec![vec![1]]),
            (2, vec![vec![1, -2], vec![-1, 2]]),
            (3, vec![vec![1, 2, 3], vec![-1, -2, -3], vec![1, -2, 3]]),
        ] {
            let f = formula(n, clauses);
            let l = derive_layout(&f, u64::MAX).unwrap();
            let lay = &l.layers;
            let heights = [
                lay.endgame_switch,
                lay.pad_above_endgame,
                lay.gravity,
                lay.pad_above_gravity,
                lay.vacuum,
                lay.pad_above_vacuum,
                lay.control,
                lay.pad_above_control,
                lay.variables,
                lay.clause_padding,
                lay.clause,
                lay.upper_boundary,
            ];
            // Contiguous from 1 and summing to 2rc + r.
            let mut expect = 1u64;
            let mut total = 0u64;
            for range in heights {
                assert_eq!(range.lo, expect);
                expect = range.hi + 1;
                total += range.rows();
            }
            assert_eq!(total, 2 * l.r * l.c + l.r);
            // Column extents partition 1..=c.
            assert_eq!(l.columns.reward.lo, 1);
            assert_eq!(l.columns.clause.lo, l.columns.reward.hi + 1);
            assert_eq!(l.columns.variable.lo, l.columns.clause.hi + 1);
            assert_eq!(l.columns.state.lo, l.columns.variable.hi + 1);
            assert_eq!(l.columns.state.hi, l.c);
        }
    }

    #[test]
    fn gadget_rows_stack_top_down() {
        let f = formula(2, vec![vec![1, 2]]);
        let l = derive_layout(&f, 100_000_000).unwrap();
        let g0 = l.gadget(ReductionLayout::literal_slot(1, true));
        let g1 = l.gadget(ReductionLayout::literal_slot(1, false));
        let g3 = l.gadget(ReductionLayout::literal_slot(2, false));
        assert_eq!(g0.hi, l.layers.variables.hi);
        assert_eq!(g1.hi + 1, g0.lo);
        assert_eq!(g3.lo, l.layers.variables.lo);
        assert_eq!(g0.rows(), l.h + 1);
    }
}

//! Golden-file pinning of the N=1, M=1 instance (the documented raster that
//! fixes every layer-pattern ambiguity), plus the step-by-step
//! cross-simulation of the lifted plan against the sand castle replay.

use gstp_core::{apply_step_unchecked, validate_step, GoalSpec};
use gstp_reduction::*;
use gstp_scg::ScgCell;

fn n1m1() -> (CnfFormula, ReductionLayout) {
    let f = CnfFormula::new(1, vec![vec![1]]).unwrap();
    let l = derive_layout(&f, 10_000_000).unwrap();
    (f, l)
}

#[test]
fn golden_instance_bytes() {
    let (f, l) = n1m1();
    let board = build_instance(&f, &l).unwrap();
    let emitted = gstp_core::fmt::emit_instance(&board);
    let golden = include_str!("golden/n1m1.gstp");
    assert_eq!(emitted, golden, "sparse instance emission drifted from the golden file");
    // Round trip through the parser is identity.
    let parsed = gstp_core::fmt::parse_instance(golden).unwrap();
    assert_eq!(parsed, board);
    assert_eq!(gstp_core::fmt::emit_instance(&parsed), golden);
}

#[test]
fn golden_scg_raster() {
    let (f, l) = n1m1();
    let scg = rasterize_scg(&f, &l);
    assert_eq!(gstp_scg::emit_scg(&scg), include_str!("golden/n1m1_h.scg"));
    assert_eq!(scg.holes(), 581);
    assert_eq!(l.w, 581);
    assert_eq!(l.k_budget, 4 * 581);
    // The endgame switch layer contributes exactly 2 holes, in the two
    // rightmost columns.
    let y = l.layers.endgame_switch.lo as u32;
    assert_eq!(scg.get(l.c as u32 - 1, y), ScgCell::Hole);
    assert_eq!(scg.get(l.c as u32, y), ScgCell::Hole);
    let endgame_holes =
        (1..=l.c as u32).filter(|&x| scg.get(x, y) == ScgCell::Hole).count();
    assert_eq!(endgame_holes, 2);
    // Gravity layer height is 2N(h+1)+6.
    assert_eq!(l.layers.gravity.rows(), 2 * 1 * (l.h + 1) + 6);
}

#[test]
fn golden_layout_json() {
    let (_, l) = n1m1();
    let emitted = serde_json::to_string_pretty(&l).unwrap() + "\n";
    assert_eq!(emitted, include_str!("golden/n1m1_layout.json"));
}

#[test]
fn clause_layer_pattern_matches_description() {
    let (f, l) = n1m1();
    let scg = rasterize_scg(&f, &l);
    let cl = &l.layers.clause;
    let is_hole = |x: u64, y: u64| scg.get(x as u32, y as u32) == ScgCell::Hole;
    // State columns: bottom row of the layer.
    assert!(is_hole(l.c - 1, cl.lo) && is_hole(l.c, cl.lo));
    // Variable columns: one row above.
    for x in l.columns.variable.lo..=l.columns.variable.hi {
        assert!(is_hole(x, cl.lo + 1) && !is_hole(x, cl.lo));
    }
    // Clause columns: top row.
    assert!(is_hole(l.clause_col(1), cl.hi) && !is_hole(l.clause_col(1), cl.lo));
    // Reward columns: bottom row.
    for x in [1, l.q / 2, l.q] {
        assert!(is_hole(x, cl.lo));
        assert!(!is_hole(x, cl.lo + 1));
    }
}

#[test]
fn lift_cross_simulates_the_sand_castle() {
    let (f, l) = n1m1();
    let board = build_instance(&f, &l).unwrap();
    let scg0 = embedded_scg(&board, &l);
    let turns = assignment_to_turns(&f, &l, &[true]).unwrap();
    let plan = turns_to_plan(&l, &scg0, &turns).unwrap();
    assert_eq!(plan.makespan() as u64, 4 * l.w);

    let m = l.m as u32;
    let mut cur = board;
    let mut scg = scg0;
    for (i, chunk) in plan.steps.chunks(4).enumerate() {
        for step in chunk {
            assert_eq!(validate_step(&cur, step), Ok(()), "step invalid in cycle {i}");
            apply_step_unchecked(&mut cur, step);
        }
        scg.collapse_mut(turns[i]).unwrap();
        // After every four jumps the escort is back in the top-right corner
        // and the H region equals the sand castle state.
        assert_eq!(cur.escort_positions(), vec![(m, m)]);
        assert_eq!(embedded_scg(&cur, &l), scg, "H divergence after cycle {i}");
    }
    assert_eq!(
        cur.first_difference(&sorted_goal(&l)),
        None,
        "final board must be the sorted goal"
    );
    let _ = GoalSpec::Explicit(sorted_goal(&l));
}

//! Timing probe: one full lift validation at N=2, M=2 scale (largest board
//! in the acceptance family, m ~ 1.9*10^7).

use gstp_core::{validate_plan, GoalSpec};
use gstp_reduction::*;

#[test]
#[ignore]
fn probe_n2m2_lift() {
    let f = CnfFormula::new(2, vec![vec![1, 2], vec![-1, 2]]).unwrap();
    let l = derive_layout(&f, 100_000_000).unwrap();
    let t0 = std::time::Instant::now();
    let board = build_instance(&f, &l).unwrap();
    println!("build: {:?}", t0.elapsed());
    let scg = embedded_scg(&board, &l);
    println!("embed: {:?} (holes {})", t0.elapsed(), scg.holes());
    let turns = assignment_to_turns(&f, &l, &[false, true]).unwrap();
    println!("turns: {:?} ({} turns)", t0.elapsed(), turns.len());
    let plan = turns_to_plan(&l, &scg, &turns).unwrap();
    println!("lift: {:?} ({} steps)", t0.elapsed(), plan.makespan());
    let goal = GoalSpec::Explicit(sorted_goal(&l));
    assert_eq!(validate_plan(&board, &goal, &plan), Ok(plan.makespan()));
    println!("validate: {:?}", t0.elapsed());
}

//! End-to-end reduction checks: the canonical schedule wins the embedded
//! sand castle in exactly w turns for every satisfiable formula with
//! N <= 2, M <= 2; the lifted plan has makespan 4w and validates against
//! the sorted goal on the sparse board; and extraction recovers a
//! satisfying assignment.

use gstp_core::{validate_plan, GoalSpec};
use gstp_reduction::{
    assignment_to_turns, build_instance, derive_layout, embedded_scg, extract_assignment,
    rasterize_scg, sorted_goal, turns_to_plan, CnfFormula,
};
use gstp_scg::{play, PlayResult};

/// All clauses over n variables with 1..=3 distinct literals and no
/// duplicated variable inside a clause.
fn all_clauses(n: u32) -> Vec<Vec<i32>> {
    let lits: Vec<i32> = (1..=n as i32).flat_map(|v| [v, -v]).collect();
    let mut out = Vec::new();
    let k = lits.len();
    for a in 0..k {
        out.push(vec![lits[a]]);
        for b in a + 1..k {
            out.push(vec![lits[a], lits[b]]);
            for c in b + 1..k {
                out.push(vec![lits[a], lits[b], lits[c]]);
            }
        }
    }
    out
}

/// Every formula with up to `max_n` variables and up to `max_m` clauses
/// (clauses as unordered combinations with repetition).
fn all_formulas(max_n: u32, max_m: usize) -> Vec<CnfFormula> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let clauses = all_clauses(n);
        for m in 1..=max_m {
            let mut idx = vec![0usize; m];
            loop {
                let cs: Vec<Vec<i32>> = idx.iter().map(|&i| clauses[i].clone()).collect();
                out.push(CnfFormula::new(n, cs).unwrap());
                // Next non-decreasing index combination.
                let mut lvl = m;
                loop {
                    if lvl == 0 {
                        break;
                    }
                    lvl -= 1;
                    if idx[lvl] + 1 < clauses.len() {
                        idx[lvl] += 1;
                        for j in lvl + 1..m {
                            idx[j] = idx[lvl];
                        }
                        break;
                    }
                    if lvl == 0 {
                        idx.clear();
                        break;
                    }
                }
                if idx.is_empty() {
                    break;
                }
            }
        }
    }
    out
}

#[test]
fn n1_m1_schedule_wins_and_lifts() {
    let f = CnfFormula::new(1, vec![vec![1]]).unwrap();
    let l = derive_layout(&f, 10_000_000).unwrap();
    let scg = rasterize_scg(&f, &l);
    assert_eq!(scg.holes(), l.w);

    let turns = assignment_to_turns(&f, &l, &[true]).unwrap();
    assert_eq!(turns.len() as u64, l.w);
    assert_eq!(play(&scg, &turns), PlayResult::Win);

    // Unsatisfying assignments are refused up front.
    assert!(assignment_to_turns(&f, &l, &[false]).is_err());

    // The lifted plan validates against the sorted goal with makespan 4w.
    let board = build_instance(&f, &l).unwrap();
    assert_eq!(embedded_scg(&board, &l), scg);
    let plan = turns_to_plan(&l, &scg, &turns).unwrap();
    assert_eq!(plan.makespan() as u64, 4 * l.w);
    let goal = GoalSpec::Explicit(sorted_goal(&l));
    assert_eq!(validate_plan(&board, &goal, &plan), Ok(plan.makespan()));

    // Extraction recovers x1 = true.
    assert_eq!(extract_assignment(&f, &l, &turns).unwrap(), vec![true]);
}

#[test]
fn all_small_formulas_win_in_w_turns() {
    let formulas = all_formulas(2, 2);
    let mut satisfiable = 0usize;
    for f in &formulas {
        let assignments = f.satisfying_assignments();
        if assignments.is_empty() {
            continue;
        }
        satisfiable += 1;
        let l = derive_layout(f, 100_000_000).unwrap();
        let scg = rasterize_scg(f, &l);
        assert_eq!(scg.holes(), l.w, "hole count vs layout w for {f:?}");
        for a in &assignments {
            let turns = assignment_to_turns(f, &l, a)
                .unwrap_or_else(|e| panic!("schedule failed for {f:?} under {a:?}: {e}"));
            assert_eq!(turns.len() as u64, l.w);
            assert_eq!(play(&scg, &turns), PlayResult::Win, "{f:?} under {a:?}");
            let extracted = extract_assignment(f, &l, &turns)
                .unwrap_or_else(|e| panic!("extraction failed for {f:?} under {a:?}: {e}"));
            assert!(f.is_satisfied_by(&extracted));
        }
    }
    assert!(satisfiable > 100, "expected many satisfiable formulas, got {satisfiable}");
}

//! The per-tile fallback against the exhaustive oracle: on every tiny board
//! the solver's plan validates and its makespan is at least the optimum;
//! unsolvable single-line instances are detected by both sides.

use gstp_core::{canonical_goal, validate_plan, Board, Cell, GoalSpec};
use gstp_dnc::solve_bgsp;
use gstp_exact::{bfs_optimal, BfsConfig, BfsOutcome};
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;

fn enumerate_boards(m1: u32, m2: u32, blacks: usize) -> Vec<Board> {
    let n = (m1 * m2) as usize;
    let mut out = Vec::new();
    for escort in 0..n {
        // Choose black subsets of the remaining cells.
        let free: Vec<usize> = (0..n).filter(|&i| i != escort).collect();
        let mut idx: Vec<usize> = (0..blacks).collect();
        loop {
            let mut cells = vec![Cell::Color(1); n];
            cells[escort] = Cell::Escort;
            for &i in &idx {
                cells[free[i]] = Cell::Color(2);
            }
            out.push(Board::from_cells(m1, m2, 2, cells).unwrap());
            // Next combination.
            let mut l = blacks;
            loop {
                if l == 0 {
                    idx.clear();
                    break;
                }
                l -= 1;
                if idx[l] + 1 < free.len() - (blacks - 1 - l) {
                    idx[l] += 1;
                    for j in l + 1..blacks {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
            if idx.is_empty() {
                break;
            }
        }
    }
    out
}

#[test]
fn exhaustive_tiny_boards_sandwich() {
    let mut checked = 0usize;
    let mut unsolvable = 0usize;
    for (m1, m2) in [(2u32, 2u32), (2, 3), (3, 2), (2, 4), (3, 3), (1, 4)] {
        for blacks in 1..=2usize {
            if blacks + 1 >= (m1 * m2) as usize {
                continue;
            }
            for board in enumerate_boards(m1, m2, blacks) {
                let goal = canonical_goal(&board, &[2, 1]).unwrap();
                let goal_spec = GoalSpec::Explicit(goal);
                let exact = bfs_optimal(&board, &goal_spec, &BfsConfig::default()).unwrap();
                let dnc = solve_bgsp(&board, &goal_spec);
                match exact {
                    BfsOutcome::Optimal { makespan, .. } => {
                        let report = dnc.unwrap_or_else(|e| {
                            panic!("solver failed on solvable {board:?}: {e}")
                        });
                        assert_eq!(
                            validate_plan(&board, &goal_spec, &report.plan),
                            Ok(report.makespan()),
                            "plan invalid on {board:?}"
                        );
                        assert!(
                            report.makespan() >= makespan,
                            "solver beat the optimum?! {} < {makespan}",
                            report.makespan()
                        );
                        checked += 1;
                    }
                    BfsOutcome::Exhausted { space_exhausted: true, .. } => {
                        assert!(dnc.is_err(), "solver claimed success on unsolvable {board:?}");
                        unsolvable += 1;
                    }
                    BfsOutcome::Exhausted { .. } => panic!("budget too small for tiny boards"),
                }
            }
        }
    }
    assert!(checked > 500, "checked only {checked}");
    assert!(unsolvable > 0, "expected some unsolvable 1xN instances");
}

#[test]
fn random_small_boards_with_two_escorts() {
    let mut rng = ChaCha12Rng::seed_from_u64(5);
    for _ in 0..60 {
        let (m1, m2) = (rng.random_range(3..=5), rng.random_range(3..=5));
        let n = (m1 * m2) as usize;
        let mut cells = vec![Cell::Color(1); n];
        cells[0] = Cell::Escort;
        cells[1] = Cell::Escort;
        for c in cells.iter_mut().skip(2).take(3) {
            *c = Cell::Color(2);
        }
        cells.shuffle(&mut rng);
        let board = Board::from_cells(m1, m2, 2, cells).unwrap();
        let goal = GoalSpec::Explicit(canonical_goal(&board, &[2, 1]).unwrap());
        let report = solve_bgsp(&board, &goal).unwrap();
        assert_eq!(
            validate_plan(&board, &goal, &report.plan),
            Ok(report.makespan()),
            "{board:?}"
        );
    }
}

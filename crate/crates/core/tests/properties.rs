//! Fuzzed invariants of the move model: every step accepted by the
//! line-shift validator expands to a displacement map accepted by the
//! five-constraint validator, application preserves the color histogram,
//! reversed shifts restore the predecessor, and dense/sparse backings agree.

use gstp_core::{
    apply_step, expand_step, fmt, validate_generic_step, validate_step, Axis, Board, Cell,
    LineShift, Step,
};
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;

fn random_board(rng: &mut ChaCha12Rng) -> Board {
    let m1 = rng.random_range(1..=8);
    let m2 = rng.random_range(1..=8);
    let k = rng.random_range(1..=3) as u8;
    let cells_n = (m1 * m2) as usize;
    let escorts = rng.random_range(1..=(cells_n.min(3)));
    let mut cells: Vec<Cell> = (0..cells_n)
        .map(|i| {
            if i < escorts {
                Cell::Escort
            } else {
                Cell::Color(rng.random_range(1..=k))
            }
        })
        .collect();
    cells.shuffle(rng);
    Board::from_cells(m1, m2, k, cells).unwrap()
}

/// Samples a set of pairwise-disjoint legal shifts, one per escort at most.
fn random_step(rng: &mut ChaCha12Rng, board: &Board) -> Option<Step> {
    let mut escorts = board.escort_positions();
    escorts.shuffle(rng);
    let mut shifts: Vec<LineShift> = Vec::new();
    for (ex, ey) in escorts {
        let mut dirs = [(1i32, 0i32), (-1, 0), (0, 1), (0, -1)];
        dirs.shuffle(rng);
        'dir: for (dx, dy) in dirs {
            let axis = if dy == 0 { Axis::Row } else { Axis::Column };
            let (index, from, line_len) = match axis {
                Axis::Row => (ey, ex, board.m2()),
                Axis::Column => (ex, ey, board.m1()),
            };
            let step_dir = dx + dy;
            // Longest legal extent: up to board edge or the first escort.
            let mut max_to = from;
            loop {
                let next = max_to as i64 + step_dir as i64;
                if next < 1 || next > line_len as i64 {
                    break;
                }
                let (cx, cy) = match axis {
                    Axis::Row => (next as u32, ey),
                    Axis::Column => (ex, next as u32),
                };
                if board.get(cx, cy).is_escort() {
                    break;
                }
                max_to = next as u32;
            }
            if max_to == from {
                continue;
            }
            let extent = rng.random_range(1..=from.abs_diff(max_to));
            let to = (from as i64 + step_dir as i64 * extent as i64) as u32;
            let cand = LineShift { axis, index, from, to };
            let mut trial = shifts.clone();
            trial.push(cand);
            if validate_step(board, &Step::new(trial.clone())).is_err() {
                continue 'dir;
            }
            shifts = trial;
            break;
        }
    }
    if shifts.is_empty() {
        None
    } else {
        Some(Step::new(shifts))
    }
}

#[test]
fn disjoint_steps_pass_generic_validator_10k() {
    let mut rng = ChaCha12Rng::seed_from_u64(0xC0FFEE);
    let mut checked = 0usize;
    while checked < 10_000 {
        let board = random_board(&mut rng);
        let Some(step) = random_step(&mut rng, &board) else { continue };
        assert_eq!(validate_step(&board, &step), Ok(()), "step: {step:?}");
        let moves = expand_step(&step);
        assert_eq!(
            validate_generic_step(&board, &moves),
            Ok(()),
            "board {board:?} step {step:?}"
        );
        checked += 1;
    }
}

#[test]
fn histogram_conserved_and_reversible_10k() {
    let mut rng = ChaCha12Rng::seed_from_u64(0xBEEF);
    let mut checked = 0usize;
    while checked < 10_000 {
        let board = random_board(&mut rng);
        let Some(step) = random_step(&mut rng, &board) else { continue };
        let next = apply_step(&board, &step).unwrap();
        assert_eq!(board.histogram(), next.histogram());
        let back = apply_step(&next, &step.reversed()).unwrap();
        assert_eq!(back, board);
        checked += 1;
    }
}

#[test]
fn dense_and_sparse_apply_agree_2k() {
    let mut rng = ChaCha12Rng::seed_from_u64(0xFACE);
    let mut checked = 0usize;
    while checked < 2_000 {
        let board = random_board(&mut rng);
        let Some(step) = random_step(&mut rng, &board) else { continue };
        let sparse = board.to_sparse();
        let a = apply_step(&board, &step).unwrap();
        let b = apply_step(&sparse, &step).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.escort_count(), b.escort_count());
        checked += 1;
    }
}

#[test]
fn instance_emit_parse_round_trip_random() {
    let mut rng = ChaCha12Rng::seed_from_u64(0x5EED);
    for _ in 0..300 {
        let board = random_board(&mut rng);
        let text = fmt::emit_instance(&board);
        let parsed = fmt::parse_instance(&text).unwrap();
        assert_eq!(board, parsed);
        assert_eq!(fmt::emit_instance(&parsed), text);

        let sparse = board.to_sparse();
        let text = fmt::emit_instance(&sparse);
        let parsed = fmt::parse_instance(&text).unwrap();
        assert_eq!(sparse, parsed);
        assert_eq!(fmt::emit_instance(&parsed), text);
    }
}

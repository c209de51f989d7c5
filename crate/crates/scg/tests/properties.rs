//! Randomized collapse identities: every collapse removes exactly one hole
//! and adds exactly one sand; the column above the chosen tile drops
//! coherently; replay is deterministic; and any winning replay lands on the
//! gravity-settled (all sand) board in exactly `holes` turns.

use gstp_scg::{gravity_settle, play, PlayResult, ScgBoard, ScgCell, Turn};
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;

fn random_board(rng: &mut ChaCha12Rng, rows: u32, cols: u32, hole_prob: f64) -> ScgBoard {
    let grid: Vec<ScgCell> = (0..rows * cols)
        .map(|_| {
            if rng.random_bool(hole_prob) {
                ScgCell::Hole
            } else {
                ScgCell::Sand
            }
        })
        .collect();
    ScgBoard::new(rows, cols, grid).unwrap()
}

#[test]
fn collapse_identities_10k() {
    let mut rng = ChaCha12Rng::seed_from_u64(42);
    let mut checked = 0usize;
    while checked < 10_000 {
        let board = random_board(&mut rng, 20, 20, 0.3);
        let open = board.open_tiles();
        if open.is_empty() {
            continue;
        }
        let &(x, y) = open.choose(&mut rng).unwrap();
        let t = Turn::new(x, y);
        let next = board.collapse(t).unwrap();

        // Exactly one hole expelled, one sand refilled at the column top.
        assert_eq!(next.holes(), board.holes() - 1);
        assert_eq!(next.holes(), next.recount_holes());
        assert_eq!(next.get(x, next.rows()), ScgCell::Sand);

        // The column above the chosen tile drops coherently.
        for yy in y..board.rows() {
            assert_eq!(next.get(x, yy), board.get(x, yy + 1));
        }
        // Row suffix shifted right by one.
        for xx in x..board.cols() {
            if xx + 1 <= board.cols() && !(x == xx + 1) {
                assert_eq!(next.get(xx + 1, y), board.get(xx, y));
            }
        }
        // Untouched quadrants unchanged.
        for yy in 1..y {
            for xx in 1..=board.cols() {
                assert_eq!(next.get(xx, yy), board.get(xx, yy));
            }
        }
        checked += 1;
    }
}

/// Un-does a collapse at (x, y): raise the column (discarding the sand that
/// the forward move refills at the top), shift the row suffix back left, and
/// reinsert the expelled hole at the right boundary. Running the recorded
/// turns forward from the produced board is then a win by construction.
fn reverse_collapse(b: &mut ScgBoard, x: u32, y: u32) -> bool {
    if b.get(x, b.rows()) != ScgCell::Sand {
        return false;
    }
    for yy in ((y + 1)..=b.rows()).rev() {
        let below = b.get(x, yy - 1);
        b.set(x, yy, below);
    }
    for xx in x..b.cols() {
        let right = b.get(xx + 1, y);
        b.set(xx, y, right);
    }
    b.set(b.cols(), y, ScgCell::Hole);
    true
}

#[test]
fn reverse_generated_games_win_in_exactly_hole_count_turns() {
    let mut rng = ChaCha12Rng::seed_from_u64(7);
    for _ in 0..300 {
        let (rows, cols) = (rng.random_range(2..=10), rng.random_range(2..=10));
        let mut b = ScgBoard::filled(rows, cols, ScgCell::Sand);
        let mut rev: Vec<Turn> = Vec::new();
        for _ in 0..rng.random_range(1..=20) {
            let (x, y) = (rng.random_range(1..=cols), rng.random_range(1..=rows));
            if reverse_collapse(&mut b, x, y) {
                rev.push(Turn::new(x, y));
            }
        }
        if rev.is_empty() {
            continue;
        }
        let turns: Vec<Turn> = rev.into_iter().rev().collect();
        assert_eq!(turns.len() as u64, b.holes());
        assert_eq!(play(&b, &turns), PlayResult::Win);
        let mut replay = b.clone();
        assert_eq!(gstp_scg::play_mut(&mut replay, &turns), PlayResult::Win);
        assert_eq!(replay, gravity_settle(&b));
        assert_eq!(replay, ScgBoard::filled(rows, cols, ScgCell::Sand));
    }
}

#[test]
fn replay_is_deterministic() {
    let mut rng = ChaCha12Rng::seed_from_u64(99);
    for _ in 0..100 {
        let board = random_board(&mut rng, 10, 10, 0.3);
        let turns: Vec<Turn> = (0..20)
            .map(|_| Turn::new(rng.random_range(1..=10), rng.random_range(1..=10)))
            .collect();
        assert_eq!(play(&board, &turns), play(&board, &turns));
    }
}

use gstp_core::{canonical_goal, Board, Cell, GoalSpec};
use gstp_dnc::solve_bgsp;
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;

fn show(b: &Board) {
    for y in (1..=b.m1()).rev() {
        let row: String = (1..=b.m2()).map(|x| match b.get(x, y) {
            Cell::Escort => '.',
            Cell::Color(1) => 'a',
            Cell::Color(_) => 'b',
        }).collect();
        println!("  {row}");
    }
}

fn main() {
    let mut rng = ChaCha12Rng::seed_from_u64(5);
    for i in 0..60 {
        let (m1, m2) = (rng.random_range(3..=5), rng.random_range(3..=5));
        let n = (m1 * m2) as usize;
        let mut cells = vec![Cell::Color(1); n];
        cells[0] = Cell::Escort;
        cells[1] = Cell::Escort;
        for c in cells.iter_mut().skip(2).take(3) { *c = Cell::Color(2); }
        cells.shuffle(&mut rng);
        let board = Board::from_cells(m1, m2, 2, cells).unwrap();
        let goal = GoalSpec::Explicit(canonical_goal(&board, &[2, 1]).unwrap());
        if let Err(e) = solve_bgsp(&board, &goal) {
            println!("case {i}: {e}");
            show(&board);
            println!("goal:");
            show(&canonical_goal(&board, &[2, 1]).unwrap());
            break;
        }
    }
}

use gstp_core::{canonical_goal, Board, Cell, GoalSpec};

fn main() {
    // Reconstruct the failing case and print the trail.
    let cells = vec![
        // y=1: a a a .
        Cell::Color(1), Cell::Color(1), Cell::Color(1), Cell::Escort,
        // y=2: a b a a
        Cell::Color(1), Cell::Color(2), Cell::Color(1), Cell::Color(1),
        // y=3: b a . b
        Cell::Color(2), Cell::Color(1), Cell::Escort, Cell::Color(2),
    ];
    let board = Board::from_cells(3, 4, 2, cells).unwrap();
    let goal = GoalSpec::Explicit(canonical_goal(&board, &[2, 1]).unwrap());
    match gstp_dnc::solve_bgsp(&board, &goal) {
        Ok(r) => {
            println!("solved in {}", r.makespan());
            println!("{:?}", gstp_core::validate_plan(&board, &goal, &r.plan));
        }
        Err(e) => println!("failed: {e}"),
    }
}

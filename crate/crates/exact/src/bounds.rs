//! Certified makespan lower bounds.
//!
//! Every tile moves at most one cell per step, so the maximum over tiles of
//! the distance to its nearest matching goal cell bounds the makespan from
//! below. Summing those distances bounds the total transport work; one step
//! of `p` disjoint shifts decreases it by at most `p * max(m1, m2)`.

use std::collections::VecDeque;

use gstp_core::Board;

use crate::ExactError;

/// Cap on cells for the dense distance sweeps.
const DENSE_CAP: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransportMode {
    /// Nearest-goal-cell relaxation: exclusivity ignored, always sound.
    NearestCell,
    /// Exact min-cost transport per color via min-cost flow. Tighter, still
    /// sound; limited to boards up to 64x64.
    ExactFlow,
}

fn goal_distance_grids(board: &Board, goal: &Board) -> Result<Vec<Vec<u32>>, ExactError> {
    if board.cells() > DENSE_CAP {
        return Err(ExactError::TooLarge { cells: board.cells(), cap: DENSE_CAP });
    }
    if board.histogram() != goal.histogram() || board.m1() != goal.m1() || board.m2() != goal.m2()
    {
        return Err(ExactError::Incompatible);
    }
    let (m1, m2) = (board.m1() as usize, board.m2() as usize);
    let goal_dense = goal.to_dense();
    let mut grids: Vec<Vec<u32>> = Vec::with_capacity(board.k() as usize + 1);
    for color in 0..=board.k() {
        // Multi-source BFS in the 4-neighbor metric from all goal cells of
        // this color.
        let mut dist = vec![u32::MAX; m1 * m2];
        let mut queue = VecDeque::new();
        for y in 1..=m1 as u32 {
            for x in 1..=m2 as u32 {
                let code = match goal_dense.get(x, y) {
                    gstp_core::Cell::Escort => 0,
                    gstp_core::Cell::Color(c) => c,
                };
                if code == color {
                    let i = (y as usize - 1) * m2 + x as usize - 1;
                    dist[i] = 0;
                    queue.push_back(i);
                }
            }
        }
        while let Some(i) = queue.pop_front() {
            let d = dist[i];
            let (x, y) = (i % m2, i / m2);
            let mut push = |j: usize| {
                if dist[j] == u32::MAX {
                    dist[j] = d + 1;
                    queue.push_back(j);
                }
            };
            if x > 0 {
                push(i - 1);
            }
            if x + 1 < m2 {
                push(i + 1);
            }
            if y > 0 {
                push(i - m2);
            }
            if y + 1 < m1 {
                push(i + m2);
            }
        }
        grids.push(dist);
    }
    Ok(grids)
}

/// Max over tiles of the distance to the nearest goal cell of its color.
pub fn lb_distance(board: &Board, goal: &Board) -> Result<u64, ExactError> {
    let grids = goal_distance_grids(board, goal)?;
    let dense = board.to_dense();
    let m2 = board.m2() as usize;
    let mut best = 0u64;
    for y in 1..=board.m1() {
        for x in 1..=board.m2() {
            if let gstp_core::Cell::Color(c) = dense.get(x, y) {
                let i = (y as usize - 1) * m2 + x as usize - 1;
                best = best.max(grids[c as usize][i] as u64);
            }
        }
    }
    Ok(best)
}

/// Total-transport bound: ceil(T_min / (p * max(m1, m2))) where T_min sums
/// per-tile distances under the chosen transport relaxation.
pub fn lb_manhattan(
    board: &Board,
    goal: &Board,
    mode: TransportMode,
) -> Result<u64, ExactError> {
    let t_min = match mode {
        TransportMode::NearestCell => {
            let grids = goal_distance_grids(board, goal)?;
            let dense = board.to_dense();
            let m2 = board.m2() as usize;
            let mut total = 0u64;
            for y in 1..=board.m1() {
                for x in 1..=board.m2() {
                    if let gstp_core::Cell::Color(c) = dense.get(x, y) {
                        let i = (y as usize - 1) * m2 + x as usize - 1;
                        total += grids[c as usize][i] as u64;
                    }
                }
            }
            total
        }
        TransportMode::ExactFlow => exact_transport(board, goal)?,
    };
    let p = board.escort_count();
    let line = board.m1().max(board.m2()) as u64;
    Ok(t_min.div_ceil(p * line))
}

/// max(lb_distance, lb_manhattan): the Table-1 style combined lower bound.
pub fn lb(board: &Board, goal: &Board) -> Result<u64, ExactError> {
    Ok(lb_distance(board, goal)?.max(lb_manhattan(board, goal, TransportMode::NearestCell)?))
}

/// Exact per-color min-cost transport via successive shortest augmenting
/// paths on the grid (Dijkstra with potentials, infinite arc capacities).
fn exact_transport(board: &Board, goal: &Board) -> Result<u64, ExactError> {
    if board.m1() > 64 || board.m2() > 64 {
        return Err(ExactError::TooLarge { cells: board.cells(), cap: 64 * 64 });
    }
    if board.histogram() != goal.histogram() || board.m1() != goal.m1() || board.m2() != goal.m2()
    {
        return Err(ExactError::Incompatible);
    }
    let dense = board.to_dense();
    let goal_dense = goal.to_dense();
    let mut total = 0u64;
    for color in 1..=board.k() {
        let mut sources = Vec::new();
        let mut sinks = Vec::new();
        for y in 1..=board.m1() {
            for x in 1..=board.m2() {
                let here = dense.get(x, y) == gstp_core::Cell::Color(color);
                let there = goal_dense.get(x, y) == gstp_core::Cell::Color(color);
                // Tiles already on a goal cell pair off for free.
                if here && !there {
                    sources.push((x as i64, y as i64));
                }
                if there && !here {
                    sinks.push((x as i64, y as i64));
                }
            }
        }
        total += min_cost_assignment(&sources, &sinks);
    }
    Ok(total)
}

/// Min-cost perfect assignment under Manhattan costs (Jonker-Volgenant style
/// shortest augmenting paths on the dense cost matrix).
fn min_cost_assignment(sources: &[(i64, i64)], sinks: &[(i64, i64)]) -> u64 {
    let n = sources.len();
    assert_eq!(n, sinks.len());
    if n == 0 {
        return 0;
    }
    let cost = |i: usize, j: usize| -> i64 {
        (sources[i].0 - sinks[j].0).abs() + (sources[i].1 - sinks[j].1).abs()
    };
    // Hungarian algorithm, O(n^3).
    let inf = i64::MAX / 4;
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut way = vec![0usize; n + 1];
    let mut assignment = vec![0usize; n + 1]; // sink -> source (1-based)
    for i in 1..=n {
        assignment[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = assignment[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[assignment[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if assignment[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            assignment[j0] = assignment[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut total = 0u64;
    for j in 1..=n {
        if assignment[j] != 0 {
            total += cost(assignment[j] - 1, j - 1) as u64;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use gstp_core::{canonical_goal, Cell};

    #[test]
    fn identical_boards_bound_zero() {
        let b = Board::from_cells(2, 2, 1, vec![Cell::Escort, Cell::Color(1), Cell::Color(1), Cell::Color(1)]).unwrap();
        assert_eq!(lb(&b, &b).unwrap(), 0);
    }

    #[test]
    fn single_far_tile() {
        // Black at top-left of an m x m board, goal bottom row: distance m-1.
        let m = 8u32;
        let mut cells = vec![Cell::Color(1); (m * m) as usize];
        cells[((m - 1) * m) as usize] = Cell::Color(2); // (1, m)
        cells[(m * m - 1) as usize] = Cell::Escort; // (m, m)
        let b = Board::from_cells(m, m, 2, cells).unwrap();
        let goal = canonical_goal(&b, &[2, 1]).unwrap();
        assert_eq!(lb_distance(&b, &goal).unwrap(), (m - 1) as u64);
    }

    #[test]
    fn exact_flow_at_least_nearest_cell() {
        let m = 6u32;
        let mut cells = vec![Cell::Color(1); 36];
        for i in [3usize, 7, 14, 22, 28, 31] {
            cells[i] = Cell::Color(2);
        }
        cells[35] = Cell::Escort;
        let b = Board::from_cells(m, m, 2, cells).unwrap();
        let goal = canonical_goal(&b, &[2, 1]).unwrap();
        let near = lb_manhattan(&b, &goal, TransportMode::NearestCell).unwrap();
        let flow = lb_manhattan(&b, &goal, TransportMode::ExactFlow).unwrap();
        assert!(flow >= near, "flow {flow} >= nearest {near}");
    }
}

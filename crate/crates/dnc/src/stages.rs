//! The divide-and-conquer pipeline. All stages run on the binary planner
//! sim within a rectangular region:
//!
//! 1. border collection: blacks in the ragged strips outside the 8-aligned
//!    core walk to white core cells;
//! 2. spread: de-stack vertically, then repair until every 8x8 square holds
//!    at most half blacks;
//! 3. normalize: snake over the squares, packing each square's blacks
//!    row-major into its inner area (margins stay white, giving the later
//!    stages their corridors);
//! 4. merges: levels double the block size, rows then columns. Sparse
//!    sources ride shared highways (drag onto the band's bottom margin row,
//!    advance the whole band, slide and lift into the destination pack; the
//!    vertical analogue transposes packs onto the shared left margin column
//!    via a corner conveyor). Dense sources walk tile by tile between pile
//!    surfaces.
//! 5. final drag: the single pile drops its unit margins and completes each
//!    bottom row with a shift-and-drop loop until the canonical cells are
//!    hit exactly.
//!
//! With p > 1 the board splits into balanced vertical slabs, one escort
//! each, their shift streams emitted as parallel steps, followed by a
//! single-escort compaction of the per-slab piles.

use gstp_core::{Board, Step};

use crate::sim::{Attr, Pos, Rect, Sim};
use crate::solve::{board_blacks, StageSummary};
use crate::{SolverError, StageTag};

pub(crate) struct PipelineRun {
    pub steps: Vec<Step>,
    pub stages: Vec<StageSummary>,
}

/// Largest multiple of 8 at most n.
fn core8(n: u32) -> u32 {
    n / 8 * 8
}

/// Block edges along one axis: `count` blocks of `size` anchored at `lo`,
/// the last extended to `hi` (odd remainders are folded there by merges).
#[derive(Debug, Clone)]
struct Edges {
    cuts: Vec<(u32, u32)>,
}

impl Edges {
    fn uniform(lo: u32, size: u32, count: u32) -> Edges {
        let cuts = (0..count)
            .map(|i| (lo + i * size, lo + (i + 1) * size - 1))
            .collect();
        Edges { cuts }
    }

    fn len(&self) -> usize {
        self.cuts.len()
    }

    /// Pairs up adjacent intervals; an odd trailing interval folds into the
    /// last pair (the merge code absorbs it densely).
    fn paired(&self) -> Edges {
        let mut cuts = Vec::new();
        let n = self.cuts.len();
        let mut i = 0;
        while i < n {
            if i + 1 < n {
                let hi = if i + 3 == n { self.cuts[i + 2].1 } else { self.cuts[i + 1].1 };
                let consumed = if i + 3 == n { 3 } else { 2 };
                cuts.push((self.cuts[i].0, hi));
                i += consumed;
            } else {
                cuts.push(self.cuts[i]);
                i += 1;
            }
        }
        Edges { cuts }
    }
}

/// Scanned pack structure of one block.
struct PackInfo {
    count: u64,
    /// Occupied rows bottom-up: (y, x_lo, x_hi, count).
    rows: Vec<(u32, u32, u32, u64)>,
}

impl PackInfo {
    fn single_left_adjusted_row(&self, block: Rect) -> bool {
        self.rows.len() == 1 && {
            let (y, x_lo, x_hi, count) = self.rows[0];
            y == block.y1 + 1
                && x_lo == block.x1 + 1
                && (x_hi - x_lo + 1) as u64 == count
        }
    }
}

fn scan_block(sim: &Sim, block: Rect) -> PackInfo {
    let mut rows = Vec::new();
    let mut count = 0;
    for y in block.y1..=block.y2 {
        let mut lo = 0u32;
        let mut hi = 0u32;
        let mut n = 0u64;
        for x in block.x1..=block.x2 {
            if sim.is_black((x, y)) {
                if lo == 0 {
                    lo = x;
                }
                hi = x;
                n += 1;
            }
        }
        if n > 0 {
            rows.push((y, lo, hi, n));
            count += n;
        }
    }
    PackInfo { count, rows }
}

/// Walks the black at `b` through white cells to the first cell satisfying
/// `pred`, using a white-cell BFS for the path.
fn route_black_pred(
    sim: &mut Sim,
    b: Pos,
    pred: impl Fn(&Sim, Pos) -> bool,
) -> Result<Pos, SolverError> {
    let r = sim.region;
    let w = r.width() as usize;
    let li = |p: Pos| (p.1 - r.y1) as usize * w + (p.0 - r.x1) as usize;
    let mut prev: Vec<u32> = vec![u32::MAX; w * r.height() as usize];
    prev[li(b)] = li(b) as u32;
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(b);
    let mut dest: Option<Pos> = None;
    'bfs: while let Some(u) = queue.pop_front() {
        for (dx, dy) in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
            let n = (u.0 as i64 + dx, u.1 as i64 + dy);
            if n.0 < r.x1 as i64 || n.0 > r.x2 as i64 || n.1 < r.y1 as i64 || n.1 > r.y2 as i64 {
                continue;
            }
            let n = (n.0 as u32, n.1 as u32);
            if prev[li(n)] != u32::MAX || !(sim.is_white(n) || n == sim.escort) {
                continue;
            }
            prev[li(n)] = li(u) as u32;
            if pred(sim, n) {
                dest = Some(n);
                break 'bfs;
            }
            queue.push_back(n);
        }
    }
    let Some(d) = dest else {
        return Err(SolverError::Internal(format!("no white route for black at {b:?}")));
    };
    let mut path = vec![d];
    let mut cur = li(d);
    while prev[cur] as usize != cur {
        cur = prev[cur] as usize;
        path.push((r.x1 + (cur % w) as u32, r.y1 + (cur / w) as u32));
    }
    path.reverse(); // path[0] == b
    for k in 1..path.len() {
        sim.nudge_black(path[k - 1], path[k])?;
    }
    Ok(d)
}

/// Stage 0: blacks outside the 8-aligned core walk into it.
pub(crate) fn stage_border_collect(sim: &mut Sim) -> Result<(), SolverError> {
    let r = sim.region;
    let (cw, ch) = (core8(r.width()), core8(r.height()));
    if cw == 0 || ch == 0 {
        return Err(SolverError::Internal("region too small for the pipeline".into()));
    }
    let core = Rect { x1: r.x1, y1: r.y1, x2: r.x1 + cw - 1, y2: r.y1 + ch - 1 };
    if core.x2 == r.x2 && core.y2 == r.y2 {
        return Ok(());
    }
    sim.attr = Attr::PerBlack;
    loop {
        let mut moved = false;
        // Innermost strip blacks first so white paths open up.
        let mut strip: Vec<Pos> = sim
            .black_positions()
            .into_iter()
            .filter(|&p| sim.region.contains(p) && !core.contains(p))
            .collect();
        strip.sort_by_key(|&(x, y)| (x.saturating_sub(core.x2), y.saturating_sub(core.y2)));
        for b in strip {
            route_black_pred(sim, b, |_, p| core.contains(p))?;
            moved = true;
        }
        if !moved {
            break;
        }
    }
    Ok(())
}

fn square_of(core: Rect, p: Pos) -> (u32, u32) {
    ((p.0 - core.x1) / 8, (p.1 - core.y1) / 8)
}

fn square_rect(core: Rect, sq: (u32, u32)) -> Rect {
    Rect {
        x1: core.x1 + sq.0 * 8,
        y1: core.y1 + sq.1 * 8,
        x2: core.x1 + sq.0 * 8 + 7,
        y2: core.y1 + sq.1 * 8 + 7,
    }
}

/// Stage 1: vertical de-stacking in the paper's style, then repair until
/// every 8x8 square holds at most 32 blacks.
pub(crate) fn stage_spread(sim: &mut Sim) -> Result<(), SolverError> {
    let r = sim.region;
    let core = Rect {
        x1: r.x1,
        y1: r.y1,
        x2: r.x1 + core8(r.width()) - 1,
        y2: r.y1 + core8(r.height()) - 1,
    };
    sim.attr = Attr::PerBlack;
    // Pass: top-down, absorb blacks directly beneath a black into its row
    // when the row has a nearby free cell.
    for y in (r.y1 + 2..=r.y2).rev() {
        for x in r.x1..=r.x2 {
            if !sim.is_black((x, y)) {
                continue;
            }
            for dy in 1..=2u32 {
                let below = (x, y - dy);
                if below.1 < r.y1 || !sim.is_black(below) {
                    continue;
                }
                // Nearest white cell of row y within a short horizontal
                // window, reachable white-wise.
                let target = (1..=16u32)
                    .flat_map(|d| {
                        [x.checked_sub(d), x.checked_add(d)]
                            .into_iter()
                            .flatten()
                            .collect::<Vec<u32>>()
                    })
                    .map(|tx| (tx, y))
                    .find(|&t| sim.region.contains(t) && sim.is_white(t));
                if let Some(t) = target {
                    // Walk it up and over; skip quietly when walled in.
                    let _ = route_black_pred(sim, below, |_, p| p == t);
                }
            }
        }
    }
    // Repair: move surplus from overfull squares to the nearest square with
    // room.
    let (nx, ny) = ((core.width() / 8) as usize, (core.height() / 8) as usize);
    loop {
        let mut counts = vec![0u64; nx * ny];
        for b in sim.black_positions() {
            if core.contains(b) {
                let (sx, sy) = square_of(core, b);
                counts[sy as usize * nx + sx as usize] += 1;
            }
        }
        let Some(over) = (0..counts.len()).find(|&i| counts[i] > 32) else { break };
        let sq = ((over % nx) as u32, (over / nx) as u32);
        let rect = square_rect(core, sq);
        let b = sim
            .black_positions()
            .into_iter()
            .rev()
            .find(|&p| rect.contains(p))
            .expect("overfull square has a black");
        let counts_ref = counts.clone();
        route_black_pred(sim, b, move |_, p| {
            if !core.contains(p) {
                return false;
            }
            let (sx, sy) = square_of(core, p);
            counts_ref[sy as usize * nx + sx as usize] < 32
        })?;
    }
    Ok(())
}

/// Stage 2: pack each s x s square's blacks row-major into its inner area.
/// Squares with more blacks than the inner area holds pack the full square.
pub(crate) fn stage_normalize(sim: &mut Sim, s: u32) -> Result<(), SolverError> {
    let r = sim.region;
    let (cw, ch) = (r.width() / s * s, r.height() / s * s);
    let (nx, ny) = (cw / s, ch / s);
    sim.attr = Attr::PerBlack;
    // Serpentine over squares, top row of squares first.
    for row in (0..ny).rev() {
        let cols: Vec<u32> = if (ny - 1 - row) % 2 == 0 {
            (0..nx).collect()
        } else {
            (0..nx).rev().collect()
        };
        for col in cols {
            let sq = Rect {
                x1: r.x1 + col * s,
                y1: r.y1 + row * s,
                x2: r.x1 + col * s + s - 1,
                y2: r.y1 + row * s + s - 1,
            };
            normalize_square(sim, sq)?;
        }
    }
    Ok(())
}

fn normalize_square(sim: &mut Sim, sq: Rect) -> Result<(), SolverError> {
    let count: u64 = {
        let info = scan_block(sim, sq);
        info.count
    };
    if count == 0 {
        return Ok(());
    }
    // Slots row-major: inner area if it fits, whole square otherwise.
    let inner_cap = ((sq.width() - 2) as u64) * ((sq.height() - 2) as u64);
    let slots: Vec<Pos> = if count <= inner_cap {
        (sq.y1 + 1..sq.y2)
            .flat_map(|y| (sq.x1 + 1..sq.x2).map(move |x| (x, y)))
            .take(count as usize)
            .collect()
    } else {
        (sq.y1..=sq.y2)
            .flat_map(|y| (sq.x1..=sq.x2).map(move |x| (x, y)))
            .take(count as usize)
            .collect()
    };
    // Bring the escort to a white cell of the square (or nearby).
    if !sq.contains(sim.escort) {
        let entry = (sq.y1..=sq.y2)
            .flat_map(|y| (sq.x1..=sq.x2).map(move |x| (x, y)))
            .find(|&p| sim.is_white(p));
        match entry {
            Some(e) => sim.travel_white(e)?,
            None => return Err(SolverError::Internal("no white entry into a square".into())),
        }
    }
    let saved = sim.region;
    sim.region = sq;
    let result = (|| -> Result<(), SolverError> {
        for &slot in &slots {
            if sim.is_black(slot) {
                continue;
            }
            // Pull the nearest (white-path) unplaced black into the slot.
            pull_black_to(sim, slot, &slots)?;
        }
        Ok(())
    })();
    sim.region = saved;
    result
}

/// BFS from `slot` through white cells; the first black found outside the
/// already-filled slots walks back along the path into `slot`.
fn pull_black_to(sim: &mut Sim, slot: Pos, slots: &[Pos]) -> Result<(), SolverError> {
    let r = sim.region;
    let w = r.width() as usize;
    let li = |p: Pos| (p.1 - r.y1) as usize * w + (p.0 - r.x1) as usize;
    let mut prev: Vec<u32> = vec![u32::MAX; w * r.height() as usize];
    prev[li(slot)] = li(slot) as u32;
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(slot);
    let mut found: Option<Pos> = None;
    'bfs: while let Some(u) = queue.pop_front() {
        for (dx, dy) in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
            let n = (u.0 as i64 + dx, u.1 as i64 + dy);
            if n.0 < r.x1 as i64 || n.0 > r.x2 as i64 || n.1 < r.y1 as i64 || n.1 > r.y2 as i64 {
                continue;
            }
            let n = (n.0 as u32, n.1 as u32);
            if prev[li(n)] != u32::MAX {
                continue;
            }
            if sim.is_black(n) {
                if slots.contains(&n) {
                    continue;
                }
                prev[li(n)] = li(u) as u32;
                found = Some(n);
                break 'bfs;
            }
            if sim.is_white(n) || n == sim.escort {
                prev[li(n)] = li(u) as u32;
                queue.push_back(n);
            }
        }
    }
    let Some(src) = found else {
        return Err(SolverError::Internal(format!("no black reachable for slot {slot:?}")));
    };
    // Reconstruct src -> slot and walk the black along it.
    let mut path = vec![src];
    let mut cur = li(src);
    while prev[cur] as usize != cur {
        cur = prev[cur] as usize;
        path.push((r.x1 + (cur % w) as u32, r.y1 + (cur / w) as u32));
    }
    for k in 1..path.len() {
        sim.nudge_black(path[k - 1], path[k])?;
    }
    Ok(())
}

/// One merge level on the current block edges: horizontal pairs then
/// vertical pairs.
fn merge_level(
    sim: &mut Sim,
    xs: &Edges,
    ys: &Edges,
) -> Result<(Edges, Edges), SolverError> {
    let mut xs_out = xs.clone();
    if xs.len() > 1 {
        merge_horizontal(sim, xs, ys)?;
        xs_out = xs.paired();
    }
    let mut ys_out = ys.clone();
    if ys.len() > 1 {
        merge_vertical(sim, &xs_out, ys)?;
        ys_out = ys.paired();
    }
    Ok((xs_out, ys_out))
}

fn merge_horizontal(sim: &mut Sim, xs: &Edges, ys: &Edges) -> Result<(), SolverError> {
    for &(by1, by2) in &ys.cuts {
        // Group the x-intervals exactly as Edges::paired will.
        let groups = pair_groups(xs);
        // Dense merges first so the shared highway row is clear.
        let mut sparse_pairs: Vec<(Rect, Rect)> = Vec::new();
        for group in &groups {
            if group.len() < 2 {
                continue;
            }
            let mut dest = Rect { x1: group[0].0, y1: by1, x2: group[0].1, y2: by2 };
            for &(sx1, sx2) in &group[1..] {
                let src = Rect { x1: sx1, y1: by1, x2: sx2, y2: by2 };
                let dest_info = scan_block(sim, dest);
                let src_info = scan_block(sim, src);
                let sparse_ok = group.len() == 2
                    && dest_info.single_left_adjusted_row(dest)
                    && src_info.single_left_adjusted_row(src)
                    && dest_info.count + src_info.count <= (dest.width() - 2) as u64
                    && dest_info.count + src_info.count > 0
                    && src_info.count > 0;
                if sparse_ok {
                    sparse_pairs.push((dest, src));
                } else if src_info.count > 0 {
                    dense_merge(sim, dest, src, true)?;
                }
                dest = Rect { x1: dest.x1, y1: by1, x2: sx2, y2: by2 };
            }
        }
        if sparse_pairs.is_empty() {
            continue;
        }
        // Drag the source packs onto the band's bottom margin row.
        sim.attr = Attr::PerBlack;
        let hy = by1;
        for &(_, src) in &sparse_pairs {
            let info = scan_block(sim, src);
            for (y, x_lo, x_hi, _) in info.rows {
                debug_assert_eq!(y, src.y1 + 1);
                for x in x_lo..=x_hi {
                    sim.travel_white((x, hy))?;
                    sim.jump((x, y))?;
                }
            }
        }
        // Shared advance: the whole band's highway row slides left one per
        // jump, `width of the destination block` times.
        sim.attr = Attr::Base;
        let d = sparse_pairs[0].0.width();
        debug_assert!(sparse_pairs.iter().all(|&(dst, _)| dst.width() == d));
        for _ in 0..d {
            sim.travel_white((sim.region.x1, hy))?;
            sim.jump((sim.region.x2, hy))?;
        }
        // Slide each landed segment right of the destination pack, then
        // lift it one row up into the pack row.
        sim.attr = Attr::PerBlack;
        for &(dest, _src) in &sparse_pairs {
            let dest_info = scan_block(sim, dest);
            let c_l = dest_info
                .rows
                .iter()
                .filter(|&&(y, ..)| y == dest.y1 + 1)
                .map(|&(_, _, _, n)| n)
                .sum::<u64>() as u32;
            // Landed segment: contiguous blacks on the highway within dest.
            let mut seg_lo = 0u32;
            let mut seg_hi = 0u32;
            for x in dest.x1..=dest.x2 {
                if sim.is_black((x, hy)) {
                    if seg_lo == 0 {
                        seg_lo = x;
                    }
                    seg_hi = x;
                }
            }
            if seg_lo == 0 {
                continue;
            }
            for _ in 0..c_l {
                sim.travel_white((seg_hi + 1, hy))?;
                sim.jump((seg_lo, hy))?;
                seg_lo += 1;
                seg_hi += 1;
            }
            for x in (seg_lo..=seg_hi).rev() {
                sim.travel_white((x, hy + 1))?;
                sim.jump((x, hy))?;
            }
        }
    }
    Ok(())
}

/// The x-interval groups that Edges::paired merges (pairs, with a trailing
/// triple when the count is odd).
fn pair_groups(xs: &Edges) -> Vec<Vec<(u32, u32)>> {
    let mut out = Vec::new();
    let n = xs.cuts.len();
    let mut i = 0;
    while i < n {
        if i + 1 < n {
            if i + 3 == n {
                out.push(vec![xs.cuts[i], xs.cuts[i + 1], xs.cuts[i + 2]]);
                i += 3;
            } else {
                out.push(vec![xs.cuts[i], xs.cuts[i + 1]]);
                i += 2;
            }
        } else {
            out.push(vec![xs.cuts[i]]);
            i += 1;
        }
    }
    out
}

fn merge_vertical(sim: &mut Sim, xs: &Edges, ys: &Edges) -> Result<(), SolverError> {
    let groups = pair_groups(ys);
    for &(bx1, bx2) in &xs.cuts {
        let margin_x = bx1;
        let mut sparse_stacks: Vec<(Rect, Rect, u64)> = Vec::new();
        for group in &groups {
            if group.len() < 2 {
                continue;
            }
            let mut dest = Rect { x1: bx1, y1: group[0].0, x2: bx2, y2: group[0].1 };
            for &(sy1, sy2) in &group[1..] {
                let src = Rect { x1: bx1, y1: sy1, x2: bx2, y2: sy2 };
                let dest_info = scan_block(sim, dest);
                let src_info = scan_block(sim, src);
                let sparse_ok = group.len() == 2
                    && dest_info.single_left_adjusted_row(dest)
                    && src_info.single_left_adjusted_row(src)
                    && src_info.count <= (src.height() - 2) as u64
                    && dest_info.count + src_info.count <= (dest.width() - 2) as u64
                    && src_info.count > 0;
                if sparse_ok {
                    // Transpose the source pack onto the shared margin
                    // column with a corner conveyor.
                    sim.attr = Attr::PerBlack;
                    transpose_to_margin(sim, src, margin_x)?;
                    sparse_stacks.push((dest, src, src_info.count));
                } else if src_info.count > 0 {
                    dense_merge(sim, dest, src, false)?;
                }
                dest = Rect { x1: bx1, y1: dest.y1, x2: bx2, y2: sy2 };
            }
        }
        if sparse_stacks.is_empty() {
            continue;
        }
        // Shared advance: the whole margin column drops one per jump,
        // `height of the destination block` times.
        sim.attr = Attr::Base;
        let d = sparse_stacks[0].0.height();
        debug_assert!(sparse_stacks.iter().all(|&(dst, ..)| dst.height() == d));
        for _ in 0..d {
            sim.travel_white((margin_x, sim.region.y1))?;
            sim.jump((margin_x, sim.region.y2))?;
        }
        // Untranspose each landed stack into its destination pack row.
        sim.attr = Attr::PerBlack;
        for &(dest, _, c_t) in &sparse_stacks {
            untranspose_from_margin(sim, dest, margin_x, c_t)?;
        }
    }
    Ok(())
}

/// Corner conveyor: the source pack's single row slides left into the
/// block's bottom-left inner corner while the stack on the margin column
/// rises, one black per cycle. Ends with the stack on (margin_x,
/// src.y1+2 ..= src.y1+1+c).
fn transpose_to_margin(sim: &mut Sim, src: Rect, margin_x: u32) -> Result<(), SolverError> {
    let corner = (margin_x, src.y1 + 1);
    let mut remaining = scan_block(sim, src).count;
    let mut stack = 0u64;
    while remaining > 0 {
        // Slide the pack row left by one: the head lands on the corner.
        let row_y = src.y1 + 1;
        let mut hi = 0u32;
        for x in (src.x1 + 1..=src.x2).rev() {
            if sim.is_black((x, row_y)) {
                hi = x;
                break;
            }
        }
        debug_assert!(hi > 0, "pack row empty while remaining > 0");
        sim.travel_white(corner)?;
        sim.jump((hi, row_y))?;
        remaining -= 1;
        // Raise the corner + stack by one.
        stack += 1;
        let top = (margin_x, src.y1 + 1 + stack as u32);
        sim.travel_white(top)?;
        sim.jump(corner)?;
    }
    Ok(())
}

/// Reads the landed stack off the margin column into the destination pack
/// row, appending on the inner-left: the existing pack first slides right
/// by c_t to make room.
fn untranspose_from_margin(
    sim: &mut Sim,
    dest: Rect,
    margin_x: u32,
    c_t: u64,
) -> Result<(), SolverError> {
    let row_y = dest.y1 + 1;
    let corner = (margin_x, row_y);
    // Slide the existing pack right by c_t.
    let info = scan_block(sim, dest);
    let pack_row: Option<(u32, u32)> = info
        .rows
        .iter()
        .find(|&&(y, ..)| y == row_y)
        .map(|&(_, lo, hi, _)| (lo, hi));
    if let Some((mut lo, mut hi)) = pack_row {
        for _ in 0..c_t {
            sim.travel_white((hi + 1, row_y))?;
            sim.jump((lo, row_y))?;
            lo += 1;
            hi += 1;
        }
    }
    // Conveyor the stack down and eject rightward, appended runs sliding
    // together.
    let mut appended = 0u64;
    while appended < c_t {
        // Drop the stack by one: its bottom black lands on the corner.
        let mut top = corner.1;
        for y in (dest.y1 + 1..=dest.y2).rev() {
            if sim.is_black((margin_x, y)) {
                top = y;
                break;
            }
        }
        debug_assert!(top > corner.1 || sim.is_black((margin_x, corner.1)) || appended == c_t);
        if !sim.is_black(corner) {
            sim.travel_white(corner)?;
            sim.jump((margin_x, top))?;
        }
        // Eject right: the corner black and the appended run slide right
        // one together.
        sim.travel_white((corner.0 + appended as u32 + 1, row_y))?;
        sim.jump(corner)?;
        appended += 1;
    }
    Ok(())
}

/// Per-tile merge of `src`'s pile into `dest`'s pile for dense or irregular
/// cases: each black walks from the source pile surface to the destination
/// pile's next row-major slot, through the white space above the piles.
fn dense_merge(sim: &mut Sim, dest: Rect, src: Rect, _horizontal: bool) -> Result<(), SolverError> {
    sim.attr = Attr::PerBlack;
    loop {
        let src_info = scan_block(sim, src);
        if src_info.count == 0 {
            return Ok(());
        }
        // Take the source pile's top-rightmost black.
        let &(sy, _, sx_hi, _) = src_info.rows.last().unwrap();
        let b = (sx_hi, sy);
        // Destination slot: leftmost free inner cell of the lowest
        // incomplete inner row.
        let slot = next_slot(sim, dest)
            .ok_or_else(|| SolverError::Internal("destination pile overflow".into()))?;
        route_black_pred(sim, b, |_, p| p == slot)?;
    }
}

fn next_slot(sim: &Sim, dest: Rect) -> Option<Pos> {
    for y in dest.y1 + 1..dest.y2 {
        for x in dest.x1 + 1..dest.x2 {
            if !sim.is_black((x, y)) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Slides every run of row `y` leftward until the row is left-packed.
fn compact_row_left(sim: &mut Sim, y: u32) -> Result<(), SolverError> {
    let r = sim.region;
    loop {
        let mut target: Option<(u32, u32)> = None;
        let mut x = r.x1 + 1;
        while x <= r.x2 {
            if sim.is_black((x, y)) && sim.is_white((x - 1, y)) {
                let lo = x;
                let mut hi = x;
                while hi < r.x2 && sim.is_black((hi + 1, y)) {
                    hi += 1;
                }
                target = Some((lo, hi));
                break;
            }
            x += 1;
        }
        let Some((lo, hi)) = target else { break };
        sim.travel_white((lo - 1, y))?;
        sim.jump((hi, y))?;
    }
    Ok(())
}

/// Final stage: the single pile (inner bottom-left of the region) drops its
/// margins and completes every canonical row exactly.
pub(crate) fn stage_final_drag(sim: &mut Sim, canonical_rows: &[(u32, u32)]) -> Result<(), SolverError> {
    let r = sim.region;
    sim.attr = Attr::PerBlack;
    // Compact every occupied row leftward (runs slide one cell per jump
    // and coalesce), then drop every occupied column to the floor.
    for y in r.y1..=r.y2 {
        compact_row_left(sim, y)?;
    }
    // Gravity: drop columns until every black rests on a black or the
    // region floor.
    loop {
        let mut dropped = false;
        for x in r.x1..=r.x2 {
            // Lowest white below the column's blacks.
            let mut gap: Option<u32> = None;
            for y in r.y1..=r.y2 {
                if sim.is_white((x, y)) && gap.is_none() {
                    gap = Some(y);
                } else if sim.is_black((x, y)) {
                    if let Some(g) = gap {
                        // Drop this column's stack onto the gap.
                        let mut top = y;
                        while top < r.y2 && sim.is_black((x, top + 1)) {
                            top += 1;
                        }
                        sim.travel_white((x, g))?;
                        sim.jump((x, top))?;
                        dropped = true;
                        break;
                    }
                }
            }
        }
        if !dropped {
            break;
        }
    }
    // Row completion: canonical_rows lists (y, width) bottom-up; shift the
    // row right and drop a black from the row above until the width is met.
    for &(y, want) in canonical_rows {
        // Re-left-adjust first (drops may have left holes).
        compact_row_left(sim, y)?;
        loop {
            let width = (r.x1..=r.x2).filter(|&x| sim.is_black((x, y))).count() as u32;
            if width >= want {
                break;
            }
            // Shift the row's blacks one to the right, then pull a black
            // down into the vacated left cell from above.
            let mut hi = r.x1;
            for x in (r.x1..=r.x2).rev() {
                if sim.is_black((x, y)) {
                    hi = x;
                    break;
                }
            }
            let has_row = sim.is_black((r.x1, y));
            if has_row {
                sim.travel_white((hi + 1, y))?;
                sim.jump((r.x1, y))?;
            }
            // A black from above, nearest column first.
            let mut source: Option<Pos> = None;
            'find: for yy in y + 1..=r.y2 {
                for x in r.x1..=r.x2 {
                    if sim.is_black((x, yy)) {
                        source = Some((x, yy));
                        break 'find;
                    }
                }
            }
            let Some(b) = source else {
                return Err(SolverError::Internal("ran out of blacks completing a row".into()));
            };
            route_black_pred(sim, b, |_, p| p == (r.x1, y))?;
        }
    }
    Ok(())
}

/// Core of the public per-stage ops and the whole-region pipeline.
pub(crate) fn pipeline_region(sim: &mut Sim, canonical_rows: &[(u32, u32)]) -> Result<(), SolverError> {
    sim.mark(StageTag::Spread);
    stage_border_collect(sim)?;
    stage_spread(sim)?;
    sim.mark(StageTag::Normalize8);
    stage_normalize(sim, 8)?;
    let r = sim.region;
    let (cw, ch) = (core8(r.width()), core8(r.height()));
    let mut xs = Edges::uniform(r.x1, 8, cw / 8);
    let mut ys = Edges::uniform(r.y1, 8, ch / 8);
    let mut level = 4u32;
    while xs.len() > 1 || ys.len() > 1 {
        sim.mark(StageTag::MergeRows(level));
        let (nxs, nys) = merge_level(sim, &xs, &ys)?;
        xs = nxs;
        ys = nys;
        level += 1;
    }
    sim.mark(StageTag::FinalDrag);
    stage_final_drag(sim, canonical_rows)?;
    Ok(())
}

/// The public single-level merge op: blocks of 2^(level-1) merge into
/// 2^level, rows then columns.
pub(crate) fn stage_merge_level(sim: &mut Sim, level: u32) -> Result<(), SolverError> {
    let s = 1u32 << (level - 1);
    let r = sim.region;
    let (cw, ch) = (r.width() / s * s, r.height() / s * s);
    let xs = Edges::uniform(r.x1, s, cw / s);
    let ys = Edges::uniform(r.y1, s, ch / s);
    merge_level(sim, &xs, &ys)?;
    Ok(())
}

/// Canonical row widths (bottom-up) for `b` blacks in a `w`-wide region:
/// full rows then the remainder.
pub(crate) fn canonical_rows(region: Rect, blacks: u64) -> Vec<(u32, u32)> {
    let w = region.width() as u64;
    let mut out = Vec::new();
    let mut left = blacks;
    let mut y = region.y1;
    while left > 0 {
        let take = left.min(w);
        out.push((y, take as u32));
        left -= take;
        y += 1;
    }
    out
}

/// Runs the pipeline over the whole board for `p` escorts, producing
/// parallel steps for the slab phase and the stage accounting.
pub(crate) fn run_pipeline(
    board: &Board,
    canonical: &Board,
    sort_color: u8,
    p: usize,
    flags: &mut Vec<String>,
) -> Result<PipelineRun, SolverError> {
    let (m1, m2) = (board.m1(), board.m2());
    let escorts = board.escort_positions();
    let slab_count = p.min((m2 / 16) as usize).max(1);
    if slab_count == 1 {
        return run_single(board, canonical, sort_color, flags);
    }
    run_slabs(board, canonical, sort_color, slab_count, flags, escorts, m1, m2)
}

fn summarize_marks(sim: &Sim) -> Vec<StageSummary> {
    let mut out = Vec::new();
    for (i, &(start, tag)) in sim.marks.iter().enumerate() {
        let end = sim.marks.get(i + 1).map(|&(s, _)| s).unwrap_or(sim.shifts.len());
        if end > start {
            out.push(StageSummary { tag, steps: end - start, base_steps: 0, per_black_steps: 0 });
        }
    }
    out
}

fn run_single(
    board: &Board,
    canonical: &Board,
    sort_color: u8,
    _flags: &mut [String],
) -> Result<PipelineRun, SolverError> {
    let (m1, m2) = (board.m1(), board.m2());
    let escorts = board.escort_positions();
    let p = escorts.len();
    let mut steps: Vec<Step> = Vec::new();
    let mut work = board.clone();

    // Park all escorts but one on the canonical corner cells (the region
    // then excludes the top row so the parked cells are never crossed).
    let mut stages: Vec<StageSummary> = Vec::new();
    let goal_escorts = canonical.escort_positions();
    let mut parked: Vec<Pos> = Vec::new();
    let active = if p > 1 {
        let targets: Vec<Pos> = goal_escorts
            .iter()
            .copied()
            .filter(|&(_, y)| y == m1)
            .take(p - 1)
            .collect();
        if targets.len() != p - 1 {
            return Err(SolverError::Internal("canonical escorts not on the top row".into()));
        }
        let (route, active, parked_out) = crate::solve::route_escorts(&mut work, &targets)?;
        if !route.is_empty() {
            stages.push(StageSummary {
                tag: StageTag::EscortRouting,
                steps: route.len(),
                base_steps: route.len() as u64,
                per_black_steps: 0,
            });
        }
        steps.extend(route.into_iter().map(Step::single));
        parked = parked_out;
        active
    } else {
        escorts[0]
    };

    let region = Rect { x1: 1, y1: 1, x2: m2, y2: if p > 1 { m1 - 1 } else { m1 } };
    let blacks = board_blacks(&work, sort_color);
    let rows = canonical_rows(region, blacks.len() as u64);
    let mut sim = Sim::new(m1, m2, region, blacks.into_iter(), active, parked);
    pipeline_region(&mut sim, &rows)?;
    // Park the active escort on its canonical cell (possibly above the
    // region).
    sim.region = Rect { x1: 1, y1: 1, x2: m2, y2: m1 };
    let mine = goal_escorts
        .iter()
        .copied()
        .find(|&t| !sim.is_obstacle(t))
        .ok_or_else(|| SolverError::Internal("no canonical cell for the active escort".into()))?;
    if sim.escort != mine {
        sim.travel_white(mine)?;
    }
    stages.extend(summarize_marks(&sim));
    steps.extend(sim.shifts.iter().map(|&s| Step::single(s)));
    Ok(PipelineRun { steps, stages })
}

#[allow(clippy::too_many_arguments)]
fn run_slabs(
    board: &Board,
    canonical: &Board,
    sort_color: u8,
    slab_count: usize,
    _flags: &mut [String],
    escorts: Vec<Pos>,
    m1: u32,
    m2: u32,
) -> Result<PipelineRun, SolverError> {
    // Balanced vertical slabs on 8-aligned boundaries.
    let blacks = board_blacks(board, sort_color);
    let total = blacks.len() as u64;
    let mut bounds: Vec<u32> = vec![1];
    {
        let mut cum = vec![0u64; m2 as usize + 1];
        for &(x, _) in &blacks {
            cum[x as usize] += 1;
        }
        for x in 1..=m2 as usize {
            cum[x] += cum[x - 1];
        }
        for k in 1..slab_count {
            let want = total * k as u64 / slab_count as u64;
            let last = *bounds.last().unwrap();
            let candidates: Vec<u32> = (8..=m2 - 16)
                .step_by(8)
                .filter(|&x| x >= last + 15)
                .collect();
            let Some(cut) = candidates
                .into_iter()
                .min_by_key(|&x| cum[x as usize].abs_diff(want))
            else {
                break;
            };
            bounds.push(cut + 1);
        }
    }
    let mut slabs: Vec<Rect> = Vec::new();
    for (i, &lo) in bounds.iter().enumerate() {
        let hi = if i + 1 < bounds.len() { bounds[i + 1] - 1 } else { m2 };
        slabs.push(Rect { x1: lo, y1: 1, x2: hi, y2: m1 });
    }
    let slab_count = slabs.len();
    let goal_escorts = canonical.escort_positions();

    let mut work = board.clone();
    let mut steps: Vec<Step> = Vec::new();
    let mut stages: Vec<StageSummary> = Vec::new();

    // Prologue: one escort hops into each slab; spares park on canonical
    // corner cells (taken from the scan's far end).
    let mut sorted_escorts = escorts.clone();
    sorted_escorts.sort_unstable();
    let mut slab_escorts: Vec<Pos> = Vec::new();
    let mut parked: Vec<Pos> = Vec::new();
    let mut prologue_len = 0usize;
    for k in 0..slab_count {
        let e = current_escort(&work, &slab_escorts, &parked, sorted_escorts[k]);
        if slabs[k].contains(e) {
            slab_escorts.push(e);
            continue;
        }
        let (hop, pos) =
            escort_hop(&mut work, sort_color, e, HopDest::IntoRect(slabs[k]), &parked)?;
        prologue_len += hop.len();
        steps.extend(hop.into_iter().map(Step::single));
        slab_escorts.push(pos);
    }
    for j in slab_count..sorted_escorts.len() {
        let target = goal_escorts[j];
        let e = sorted_escorts[j];
        if e != target {
            let (hop, _) = escort_hop(&mut work, sort_color, e, HopDest::Cell(target), &parked)?;
            prologue_len += hop.len();
            steps.extend(hop.into_iter().map(Step::single));
        }
        parked.push(target);
    }
    if prologue_len > 0 {
        stages.push(StageSummary {
            tag: StageTag::EscortRouting,
            steps: prologue_len,
            base_steps: prologue_len as u64,
            per_black_steps: 0,
        });
    }

    // Per-slab pipelines, composed into parallel steps.
    let work_blacks = board_blacks(&work, sort_color);
    let mut streams: Vec<Vec<gstp_core::LineShift>> = Vec::new();
    for (k, &slab) in slabs.iter().enumerate() {
        let slab_blacks: Vec<Pos> =
            work_blacks.iter().copied().filter(|&b| slab.contains(b)).collect();
        let region = if parked.is_empty() { slab } else { Rect { y2: slab.y2 - 1, ..slab } };
        let rows = canonical_rows(region, slab_blacks.len() as u64);
        let mut sim = Sim::new(m1, m2, region, slab_blacks.into_iter(), slab_escorts[k], vec![]);
        pipeline_region(&mut sim, &rows)?;
        for s in summarize_marks(&sim) {
            match stages.iter_mut().find(|t| t.tag == s.tag) {
                Some(t) => t.steps = t.steps.max(s.steps),
                None => stages.push(s),
            }
        }
        slab_escorts[k] = sim.escort;
        streams.push(sim.shifts);
    }
    let longest = streams.iter().map(|v| v.len()).max().unwrap_or(0);
    for t in 0..longest {
        let shifts: Vec<gstp_core::LineShift> =
            streams.iter().filter_map(|v| v.get(t).copied()).collect();
        let step = Step::new(shifts);
        gstp_core::apply_step_unchecked(&mut work, &step);
        steps.push(step);
    }

    // Park all slab escorts but the first on the remaining corner cells.
    let mut free_targets: Vec<Pos> = goal_escorts
        .iter()
        .copied()
        .filter(|t| !parked.contains(t))
        .collect();
    let compact_target = free_targets.remove(0);
    let mut park_len = 0usize;
    for (k, &target) in free_targets.iter().enumerate() {
        let e = slab_escorts[slab_count - 1 - k];
        if e != target {
            let (hop, _) = escort_hop(&mut work, sort_color, e, HopDest::Cell(target), &parked)?;
            park_len += hop.len();
            steps.extend(hop.into_iter().map(Step::single));
        }
        parked.push(target);
    }

    // Global compaction of the per-slab piles with the remaining escort.
    let region = Rect { x1: 1, y1: 1, x2: m2, y2: m1 - 1 };
    let rows = canonical_rows(region, total);
    let mut compact = Sim::new(
        m1,
        m2,
        region,
        board_blacks(&work, sort_color).into_iter(),
        slab_escorts[0],
        parked.clone(),
    );
    stage_final_drag(&mut compact, &rows)?;
    compact.region = Rect { x1: 1, y1: 1, x2: m2, y2: m1 };
    if compact.escort != compact_target {
        compact.travel_white(compact_target)?;
    }
    stages.push(StageSummary {
        tag: StageTag::SlabCompact,
        steps: compact.shifts.len() + park_len,
        base_steps: (compact.shifts.len() + park_len) as u64,
        per_black_steps: 0,
    });
    steps.extend(compact.shifts.into_iter().map(Step::single));
    Ok(PipelineRun { steps, stages })
}

fn current_escort(work: &Board, _slab_escorts: &[Pos], parked: &[Pos], original: Pos) -> Pos {
    // Escorts only move when driven; an undriven escort is still at its
    // original cell unless another hop displaced nothing (white travel
    // never moves other escorts).
    debug_assert!(work.get(original.0, original.1).is_escort() || parked.contains(&original));
    original
}

enum HopDest {
    Cell(Pos),
    IntoRect(Rect),
}

/// Moves one escort through white cells to a destination, with every other
/// escort treated as an obstacle. Mutates `work` and returns the shifts and
/// the final position.
fn escort_hop(
    work: &mut Board,
    sort_color: u8,
    e: Pos,
    dest: HopDest,
    _parked: &[Pos],
) -> Result<(Vec<gstp_core::LineShift>, Pos), SolverError> {
    let obstacles: Vec<Pos> = work
        .escort_positions()
        .into_iter()
        .filter(|&p| p != e)
        .collect();
    let mut sim = Sim::new(
        work.m1(),
        work.m2(),
        Rect { x1: 1, y1: 1, x2: work.m2(), y2: work.m1() },
        board_blacks(work, sort_color).into_iter(),
        e,
        obstacles,
    );
    match dest {
        HopDest::Cell(t) => sim.travel_white(t)?,
        HopDest::IntoRect(r) => {
            sim.travel_white_pred(|s, p| r.contains(p) && s.is_white(p))?;
        }
    }
    for &s in &sim.shifts {
        gstp_core::apply_step_unchecked(work, &gstp_core::Step::single(s));
    }
    Ok((sim.shifts.clone(), sim.escort))
}


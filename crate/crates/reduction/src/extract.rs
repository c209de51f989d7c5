//! From a winning turn list back to a satisfying assignment: replay the
//! turns and watch which literal gadgets ever reach alignment (all variable
//! columns white on the gadget's bottom row). Activated literals induce the
//! assignment; variables with neither literal activated default to true.

use gstp_scg::{ScgCell, Turn};

use crate::{rasterize_scg, CnfFormula, ReductionError, ReductionLayout};

pub fn extract_assignment(
    f: &CnfFormula,
    l: &ReductionLayout,
    turns: &[Turn],
) -> Result<Vec<bool>, ReductionError> {
    let mut board = rasterize_scg(f, l);
    let slots = 2 * f.n_vars();
    let mut activated = vec![false; slots as usize];
    let aligned = |board: &gstp_scg::ScgBoard, slot: u32| -> bool {
        let y = l.gadget(slot).lo as u32;
        (l.columns.variable.lo..=l.columns.variable.hi)
            .all(|x| board.get(x as u32, y) == ScgCell::Hole)
    };
    for (i, &t) in turns.iter().enumerate() {
        if board.collapse_mut(t).is_err() {
            return Err(ReductionError::ScheduleStuck { x: t.x, y: t.y, after: i });
        }
        for slot in 0..slots {
            if !activated[slot as usize] && aligned(&board, slot) {
                activated[slot as usize] = true;
            }
        }
    }
    if board.holes() != 0 {
        return Err(ReductionError::NotAWinningTurnList);
    }
    let assignment: Vec<bool> = (1..=f.n_vars())
        .map(|i| {
            let pos = activated[ReductionLayout::literal_slot(i, true) as usize];
            let neg = activated[ReductionLayout::literal_slot(i, false) as usize];
            // Unactivated variables are arbitrarily set to true.
            pos || !neg
        })
        .collect();
    if !f.is_satisfied_by(&assignment) {
        return Err(ReductionError::ExtractionUnsatisfying);
    }
    Ok(assignment)
}

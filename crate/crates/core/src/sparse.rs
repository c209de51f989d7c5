//! Run-length board backing: horizontal bands of equal rows, each band a list
//! of x-runs. Point lookups are O(log), line extraction is proportional to the
//! number of runs crossed, and painting keeps the structure normalized so the
//! rect count tracks the true complexity of the configuration.

use std::collections::BTreeMap;

/// One maximal x-run inside a band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Run {
    pub x_lo: u32,
    pub x_hi: u32,
    pub cell: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Band {
    y_hi: u32,
    runs: Vec<Run>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BandMap {
    m1: u32,
    m2: u32,
    /// Keyed by band y_lo; bands tile 1..=m1 exactly.
    bands: BTreeMap<u32, Band>,
}

fn push_run(runs: &mut Vec<Run>, run: Run) {
    if let Some(last) = runs.last_mut() {
        if last.cell == run.cell && last.x_hi + 1 == run.x_lo {
            last.x_hi = run.x_hi;
            return;
        }
    }
    runs.push(run);
}

impl BandMap {
    pub fn filled(m1: u32, m2: u32, cell: u8) -> Self {
        let mut bands = BTreeMap::new();
        bands.insert(
            1,
            Band {
                y_hi: m1,
                runs: vec![Run { x_lo: 1, x_hi: m2, cell }],
            },
        );
        BandMap { m1, m2, bands }
    }

    pub fn get(&self, x: u32, y: u32) -> u8 {
        debug_assert!(x >= 1 && x <= self.m2 && y >= 1 && y <= self.m1);
        let (_, band) = self.bands.range(..=y).next_back().expect("bands tile the grid");
        let i = band.runs.partition_point(|r| r.x_hi < x);
        band.runs[i].cell
    }

    /// Runs of row `y` clipped to `x_lo..=x_hi`.
    pub fn row_runs(&self, y: u32, x_lo: u32, x_hi: u32) -> Vec<Run> {
        let (_, band) = self.bands.range(..=y).next_back().expect("bands tile the grid");
        let mut out = Vec::new();
        let i = band.runs.partition_point(|r| r.x_hi < x_lo);
        for r in &band.runs[i..] {
            if r.x_lo > x_hi {
                break;
            }
            out.push(Run {
                x_lo: r.x_lo.max(x_lo),
                x_hi: r.x_hi.min(x_hi),
                cell: r.cell,
            });
        }
        out
    }

    /// Runs of column `x` clipped to `y_lo..=y_hi`, as (y_lo, y_hi, cell).
    pub fn col_runs(&self, x: u32, y_lo: u32, y_hi: u32) -> Vec<(u32, u32, u8)> {
        let mut out: Vec<(u32, u32, u8)> = Vec::new();
        let start = match self.bands.range(..=y_lo).next_back() {
            Some((&lo, _)) => lo,
            None => 1,
        };
        for (&b_lo, band) in self.bands.range(start..) {
            if b_lo > y_hi {
                break;
            }
            let i = band.runs.partition_point(|r| r.x_hi < x);
            let cell = band.runs[i].cell;
            let lo = b_lo.max(y_lo);
            let hi = band.y_hi.min(y_hi);
            if let Some(last) = out.last_mut() {
                if last.2 == cell && last.1 + 1 == lo {
                    last.1 = hi;
                    continue;
                }
            }
            out.push((lo, hi, cell));
        }
        out
    }

    /// Ensure a band boundary exists at `y` (i.e. some band starts at `y`).
    fn split_at(&mut self, y: u32) {
        if y > self.m1 {
            return;
        }
        let (&b_lo, band) = self.bands.range(..=y).next_back().expect("bands tile the grid");
        if b_lo == y {
            return;
        }
        let upper = Band {
            y_hi: band.y_hi,
            runs: band.runs.clone(),
        };
        self.bands.get_mut(&b_lo).expect("present").y_hi = y - 1;
        self.bands.insert(y, upper);
    }

    /// Merge the band starting at `y` with its predecessor when their runs match.
    fn try_merge_at(&mut self, y: u32) {
        if y <= 1 || y > self.m1 {
            return;
        }
        let Some(band) = self.bands.get(&y) else { return };
        let (&p_lo, prev) = self.bands.range(..y).next_back().expect("bands tile the grid");
        if prev.y_hi + 1 != y || prev.runs != band.runs {
            return;
        }
        let y_hi = band.y_hi;
        self.bands.remove(&y);
        self.bands.get_mut(&p_lo).expect("present").y_hi = y_hi;
    }

    /// Overwrite `x_lo..=x_hi` of every row in `y_lo..=y_hi` with one cell value.
    pub fn paint_rect(&mut self, x_lo: u32, y_lo: u32, x_hi: u32, y_hi: u32, cell: u8) {
        self.split_at(y_lo);
        self.split_at(y_hi + 1);
        let keys: Vec<u32> = self
            .bands
            .range(y_lo..=y_hi)
            .map(|(&k, _)| k)
            .collect();
        for k in &keys {
            let band = self.bands.get_mut(k).expect("present");
            replace_range(&mut band.runs, x_lo, x_hi, &[Run { x_lo, x_hi, cell }]);
        }
        for k in keys {
            self.try_merge_at(k);
        }
        self.try_merge_at(y_hi + 1);
    }

    /// Overwrite a row segment with explicit runs (must cover the segment).
    pub fn set_row_runs(&mut self, y: u32, x_lo: u32, x_hi: u32, new: &[Run]) {
        debug_assert!(!new.is_empty() && new[0].x_lo == x_lo && new.last().unwrap().x_hi == x_hi);
        self.split_at(y);
        self.split_at(y + 1);
        let band = self.bands.get_mut(&y).expect("present");
        replace_range(&mut band.runs, x_lo, x_hi, new);
        self.try_merge_at(y);
        self.try_merge_at(y + 1);
    }

    /// Overwrite a column segment with explicit y-runs (must cover the segment).
    pub fn set_col_runs(&mut self, x: u32, new: &[(u32, u32, u8)]) {
        for &(y_lo, y_hi, cell) in new {
            self.paint_rect(x, y_lo, x, y_hi, cell);
        }
    }

    /// All maximal rects, bottom-up then left-to-right. Bands are maximal by
    /// construction, so this is a deterministic normal form.
    pub fn rects(&self) -> Vec<(u32, u32, u32, u32, u8)> {
        let mut out = Vec::new();
        for (&y_lo, band) in &self.bands {
            for r in &band.runs {
                out.push((r.x_lo, y_lo, r.x_hi, band.y_hi, r.cell));
            }
        }
        out
    }

    #[cfg(test)]
    pub fn band_count(&self) -> usize {
        self.bands.len()
    }

    /// Count cells holding `cell` (used for histograms).
    pub fn count(&self, cell: u8) -> u64 {
        let mut n = 0u64;
        for (&y_lo, band) in &self.bands {
            let h = (band.y_hi - y_lo + 1) as u64;
            for r in &band.runs {
                if r.cell == cell {
                    n += h * (r.x_hi - r.x_lo + 1) as u64;
                }
            }
        }
        n
    }

    /// Positions of every cell holding `cell`. Intended for escorts, whose
    /// count stays tiny on sparse boards.
    pub fn positions_of(&self, cell: u8) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (&y_lo, band) in &self.bands {
            for r in &band.runs {
                if r.cell == cell {
                    for y in y_lo..=band.y_hi {
                        for x in r.x_lo..=r.x_hi {
                            out.push((x, y));
                        }
                    }
                }
            }
        }
        out.sort_unstable_by_key(|&(x, y)| (y, x));
        out
    }
}

/// Replace the sub-range `x_lo..=x_hi` of a normalized run list with `new`
/// (which must cover the sub-range exactly), re-normalizing locally.
fn replace_range(runs: &mut Vec<Run>, x_lo: u32, x_hi: u32, new: &[Run]) {
    let i = runs.partition_point(|r| r.x_hi < x_lo);
    let j = runs.partition_point(|r| r.x_lo <= x_hi);
    debug_assert!(i < j);
    let mut mid: Vec<Run> = Vec::with_capacity(new.len() + 2);
    if runs[i].x_lo < x_lo {
        push_run(
            &mut mid,
            Run {
                x_lo: runs[i].x_lo,
                x_hi: x_lo - 1,
                cell: runs[i].cell,
            },
        );
    }
    for r in new {
        push_run(&mut mid, *r);
    }
    if runs[j - 1].x_hi > x_hi {
        push_run(
            &mut mid,
            Run {
                x_lo: x_hi + 1,
                x_hi: runs[j - 1].x_hi,
                cell: runs[j - 1].cell,
            },
        );
    }
    runs.splice(i..j, mid);
    // Re-coalesce at the two seams.
    coalesce_around(runs, i);
    let k = runs.partition_point(|r| r.x_lo <= x_hi);
    coalesce_around(runs, k);
}

fn coalesce_around(runs: &mut Vec<Run>, i: usize) {
    if i == 0 || i >= runs.len() {
        return;
    }
    if runs[i - 1].cell == runs[i].cell && runs[i - 1].x_hi + 1 == runs[i].x_lo {
        runs[i - 1].x_hi = runs[i].x_hi;
        runs.remove(i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paint_and_get() {
        let mut m = BandMap::filled(10, 10, 1);
        m.paint_rect(3, 4, 6, 7, 2);
        assert_eq!(m.get(3, 4), 2);
        assert_eq!(m.get(6, 7), 2);
        assert_eq!(m.get(2, 4), 1);
        assert_eq!(m.get(3, 8), 1);
        // Painting back restores a single band.
        m.paint_rect(3, 4, 6, 7, 1);
        assert_eq!(m.band_count(), 1);
        assert_eq!(m.rects().len(), 1);
    }

    #[test]
    fn col_runs_coalesce() {
        let mut m = BandMap::filled(8, 8, 1);
        m.paint_rect(2, 2, 2, 3, 2);
        m.paint_rect(2, 4, 2, 5, 2);
        assert_eq!(m.col_runs(2, 1, 8), vec![(1, 1, 1), (2, 5, 2), (6, 8, 1)]);
    }

    #[test]
    fn counts() {
        let mut m = BandMap::filled(4, 4, 1);
        m.paint_rect(1, 1, 2, 2, 2);
        assert_eq!(m.count(2), 4);
        assert_eq!(m.count(1), 12);
        assert_eq!(m.positions_of(2), vec![(1, 1), (2, 1), (1, 2), (2, 2)]);
    }
}

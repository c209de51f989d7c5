//! Monte Carlo estimator for the grid-collapse column-occupancy statistic:
//! sample B' cells with replacement on a g x g grid and count, per axis, the
//! lines containing exactly p samples. The concentration bound under test is
//! X_p <= 2 p c^{p-1} B' / sqrt(p!), with c = B' divided by the number of
//! lines per axis (g).

use rand::prelude::*;
use rand_chacha::ChaCha12Rng;

#[derive(Debug, Clone)]
pub struct CollapseStats {
    pub grid_side: u32,
    pub samples: u32,
    pub trials: u32,
    pub seed: u64,
    pub max_p: usize,
    /// Mean of X_p over trials, indexed [axis][p-1]; axis 0 = columns
    /// (lines of constant x), axis 1 = rows.
    pub mean_xp: [Vec<f64>; 2],
    /// Fraction of trials in which X_p <= bound(p), indexed [axis][p-1].
    pub bound_ok: [Vec<f64>; 2],
    /// The tested bound 2 p c^{p-1} B' / sqrt(p!) per p.
    pub bound: Vec<f64>,
    /// True iff sum_p p * X_p == B' held on both axes in every trial.
    pub occupancy_identity: bool,
}

pub fn collapse_bound(p: usize, c: f64, b_prime: u32) -> f64 {
    let mut sqrt_fact = 1f64;
    for i in 1..=p {
        sqrt_fact *= (i as f64).sqrt();
    }
    2.0 * p as f64 * c.powi(p as i32 - 1) * b_prime as f64 / sqrt_fact
}

pub fn collapse_stats(
    grid_side: u32,
    samples: u32,
    trials: u32,
    seed: u64,
    max_p: usize,
) -> CollapseStats {
    assert!(grid_side >= 1 && samples >= 1 && trials >= 1 && max_p >= 1);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let c = samples as f64 / grid_side as f64;
    let bound: Vec<f64> = (1..=max_p).map(|p| collapse_bound(p, c, samples)).collect();
    let mut sum_xp = [vec![0u64; max_p], vec![0u64; max_p]];
    let mut ok_cnt = [vec![0u64; max_p], vec![0u64; max_p]];
    let mut occupancy_identity = true;

    for _ in 0..trials {
        let mut col_counts = vec![0u32; grid_side as usize];
        let mut row_counts = vec![0u32; grid_side as usize];
        for _ in 0..samples {
            let x = rng.random_range(0..grid_side) as usize;
            let y = rng.random_range(0..grid_side) as usize;
            col_counts[x] += 1;
            row_counts[y] += 1;
        }
        for (axis, counts) in [&col_counts, &row_counts].into_iter().enumerate() {
            let mut weighted = 0u64;
            let mut xp = vec![0u64; max_p];
            for &n in counts {
                weighted += n as u64;
                if n >= 1 && (n as usize) <= max_p {
                    xp[n as usize - 1] += 1;
                }
            }
            if weighted != samples as u64 {
                occupancy_identity = false;
            }
            for p in 1..=max_p {
                sum_xp[axis][p - 1] += xp[p - 1];
                if (xp[p - 1] as f64) <= bound[p - 1] {
                    ok_cnt[axis][p - 1] += 1;
                }
            }
        }
    }

    let to_frac = |v: &[u64]| v.iter().map(|&n| n as f64 / trials as f64).collect::<Vec<f64>>();
    CollapseStats {
        grid_side,
        samples,
        trials,
        seed,
        max_p,
        mean_xp: [to_frac(&sum_xp[0]), to_frac(&sum_xp[1])],
        bound_ok: [to_frac(&ok_cnt[0]), to_frac(&ok_cnt[1])],
        bound,
        occupancy_identity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_sample_occupies_one_line_per_axis() {
        let s = collapse_stats(16, 1, 50, 1, 4);
        for axis in 0..2 {
            assert_eq!(s.mean_xp[axis][0], 1.0);
            for p in 2..=4 {
                assert_eq!(s.mean_xp[axis][p - 1], 0.0);
            }
        }
        assert!(s.occupancy_identity);
    }

    #[test]
    fn deterministic_under_seed() {
        let a = collapse_stats(32, 40, 100, 99, 6);
        let b = collapse_stats(32, 40, 100, 99, 6);
        assert_eq!(a.mean_xp, b.mean_xp);
        assert_eq!(a.bound_ok, b.bound_ok);
    }

    #[test]
    fn weighted_identity_always_holds() {
        let s = collapse_stats(64, 64, 200, 7, 8);
        assert!(s.occupancy_identity);
    }
}

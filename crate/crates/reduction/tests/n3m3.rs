//! Sampled N = 3, M = 3 round trips at full scale (H ~ 11925 x 10868): the
//! canonical schedule wins in w turns and extraction recovers a satisfying
//! assignment, cross-checked against brute force over all 2^N assignments.

use gstp_reduction::*;
use gstp_scg::{play, PlayResult};

#[test]
fn n3_m3_sampled_round_trips() {
    let formulas = [
        CnfFormula::new(3, vec![vec![1, 2, 3], vec![-1, -2, 3], vec![2, -3]]).unwrap(),
        CnfFormula::new(3, vec![vec![-1, 2], vec![1, -2, -3], vec![1, 2, 3]]).unwrap(),
    ];
    for f in &formulas {
        let l = derive_layout(f, 1_000_000_000).unwrap();
        let scg = rasterize_scg(f, &l);
        assert_eq!(scg.holes(), l.w);
        let sat = f.satisfying_assignments();
        assert!(!sat.is_empty());
        for a in sat.iter().take(2) {
            let turns = assignment_to_turns(f, &l, a).unwrap();
            assert_eq!(turns.len() as u64, l.w);
            assert_eq!(play(&scg, &turns), PlayResult::Win);
            let extracted = extract_assignment(f, &l, &turns).unwrap();
            assert!(f.is_satisfied_by(&extracted));
        }
    }
}

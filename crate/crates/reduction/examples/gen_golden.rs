//! Regenerates the committed golden files for the N=1, M=1 instance.

use gstp_reduction::*;

fn main() {
    let f = CnfFormula::new(1, vec![vec![1]]).unwrap();
    let l = derive_layout(&f, 10_000_000).unwrap();
    let board = build_instance(&f, &l).unwrap();
    std::fs::write("crates/reduction/tests/golden/n1m1.gstp", gstp_core::fmt::emit_instance(&board)).unwrap();
    let scg = rasterize_scg(&f, &l);
    std::fs::write("crates/reduction/tests/golden/n1m1_h.scg", gstp_scg::emit_scg(&scg)).unwrap();
    std::fs::write(
        "crates/reduction/tests/golden/n1m1_layout.json",
        serde_json::to_string_pretty(&l).unwrap() + "\n",
    ).unwrap();
    println!("golden files written; w = {}, rects = {:?}", l.w, board.rects().map(|r| r.len()));
}

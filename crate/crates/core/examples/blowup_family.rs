// Blow-up family for an exponent that is 1 on an open set: each level
// places a chain of cubes Q_j with far partners P_j, and the modular of
// M_α f_k over the P_j grows at least linearly in k while ‖f_k‖ = 1.

use varlp::constructions::{blowup_modular_growth, build_blowup, default_blowup_exponent};

pub fn run_example() {
    let p = default_blowup_exponent(1).unwrap();
    let fam = build_blowup(&p, 0.25, 5.0, 3).unwrap();
    for lv in &fam.levels {
        println!(
            "k = {}: beta = {:.5}, r = {:.3e}, {} chain cubes, invariants hold: {}",
            lv.k,
            lv.beta,
            lv.r,
            lv.chain.len(),
            lv.all_hold()
        );
    }
    assert!(fam.all_hold());

    let g = blowup_modular_growth(&fam, 10.0).unwrap();
    for row in &g.rows {
        println!("k = {}: series {:.5} >= {:.3e}", row.k, row.series, row.lower_bound);
    }
    assert!(g.monotone && g.linear_holds);
}

#[allow(dead_code)]
fn main() {
    run_example();
}

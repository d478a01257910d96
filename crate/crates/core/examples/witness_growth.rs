// EX62, EX63, EX64: bumps chosen so that on the witness intervals Q_j the
// norm of the indicator beats j·|Q_j|^{1/s_Q}, so no uniform harmonic-mean
// comparison can hold for the checked exponent.

use varlp::constructions::{build_ex62, build_ex63, build_ex64, two_sided_ratio, random_intervals, witness_growth};

pub fn run_example() {
    for spec in [
        build_ex62().unwrap(),
        build_ex63(0.25, 1.5, 3.0).unwrap(),
        build_ex64(0.25, 1.5, 3.0).unwrap(),
    ] {
        let w = witness_growth(&spec, 64).unwrap();
        println!("{}: first asserted index {:?}", spec.name, w.start);
        for r in w.rows.iter().take(4) {
            println!(
                "  j = {}: |Q| = {:.3e}, s_Q = {:.4}, norm/|Q|^(1/s_Q) = {:.3e}",
                r.j, r.measure, r.harmonic_mean, r.ratio
            );
        }
        assert!(w.all_hold);
    }

    // the exponent of EX62 itself still satisfies the two-sided comparison
    let ex62 = build_ex62().unwrap();
    let ts = two_sided_ratio(&ex62.exponent, &random_intervals(100, 3).unwrap()).unwrap();
    println!("EX62 p: norm/|Q|^(1/p_Q) in [{:.4}, {:.4}]", ts.min_ratio, ts.max_ratio);
    assert!(ts.lower_holds);
}

#[allow(dead_code)]
fn main() {
    run_example();
}

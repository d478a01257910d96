// K0^α over a lattice of cubes for a step exponent, next to the
// norm/harmonic-mean sandwich and the per-cube K0 comparison.

use varlp::exponent::{ExpValue, ExponentFunction};
use varlp::k0::{center_lattice, k0alpha_constant, k0alpha_iff_k0_check, log_ladder, norm_harmonic_sandwich, CubeFamily};

pub fn run_example() {
    let p = ExponentFunction::steps(
        &[-4.0, 0.0, 4.0],
        &[ExpValue::Finite(1.5), ExpValue::Finite(3.0)],
    )
    .unwrap();
    let alpha = 0.25;
    let family = CubeFamily::lattice(&center_lattice(-4.0, 4.0, 17), &log_ladder(1e-3, 4.0, 20)).unwrap();

    let k0 = k0alpha_constant(&p, alpha, &family).unwrap();
    let cube = k0.argmax.as_ref().unwrap();
    println!(
        "K0^alpha over {} cubes = {:.6} at center {:.3}, radius {:.4}",
        family.len(),
        k0.best_value,
        cube.center[0],
        cube.radius
    );

    let sw = norm_harmonic_sandwich(&p, &family).unwrap();
    println!("sandwich holds on every cube: {}", sw.all_hold);
    assert!(sw.all_hold);

    let iff = k0alpha_iff_k0_check(&p, alpha, &family).unwrap();
    println!(
        "K0(p) = {:.6}, K0(q) = {:.6}, forward {}, converse {}, exponent identity {}",
        iff.max_k0_p, iff.max_k0_q, iff.forward_holds, iff.converse_holds, iff.identity_holds
    );
    assert!(iff.forward_holds && iff.converse_holds && iff.identity_holds);
}

#[allow(dead_code)]
fn main() {
    run_example();
}

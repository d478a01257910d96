// EX61: an exponent that is 1 away from a sparse set of bumps. The modular
// of f stays bounded while the modular of M_α f in the Sobolev exponent
// grows without bound, and K0^α stays finite.

use varlp::constructions::{build_ex61, ex61_divergence_check, ex61_k0alpha_scan};

pub fn run_example() {
    let spec = build_ex61(0.25).unwrap();
    for (k, v) in &spec.constants {
        println!("{k} = {v:.6}");
    }
    let d = ex61_divergence_check(&spec, 30).unwrap();
    for row in d.rows.iter().step_by(6) {
        println!(
            "k = {:2}: rho_p = {:.6} (series {:.6}), rho_q = {:.4} >= {:.4}",
            row.k, row.rho_p_partial, row.rho_p_oracle, row.rho_q_partial, row.rho_q_floor
        );
    }
    assert!(d.rho_p_matches && d.rho_q_tracks);

    let scan = ex61_k0alpha_scan(&spec, 12).unwrap();
    println!(
        "K0^alpha: {:.5} on the coarse family, {:.5} refined ({:.2}% change)",
        scan.coarse.best_value,
        scan.refined.best_value,
        100.0 * scan.relative_change
    );
}

#[allow(dead_code)]
fn main() {
    run_example();
}

mod exponent_spec {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/exponent_spec.rs"));
}
mod luxemburg_norm {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/luxemburg_norm.rs"));
}
mod maximal_and_riesz {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/maximal_and_riesz.rs"));
}
mod k0_scan {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/k0_scan.rs"));
}
mod pair_bounds {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/pair_bounds.rs"));
}
mod l1_failure {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/l1_failure.rs"));
}
mod ex61_divergence {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/ex61_divergence.rs"));
}
mod witness_growth {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/witness_growth.rs"));
}
mod hm_counter {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/hm_counter.rs"));
}
mod blowup_family {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/blowup_family.rs"));
}
mod cli_run {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cli_run.rs"));
}

#[test]
fn exponent_spec_runs() {
    exponent_spec::run_example();
}

#[test]
fn luxemburg_norm_runs() {
    luxemburg_norm::run_example();
}

#[test]
fn maximal_and_riesz_runs() {
    maximal_and_riesz::run_example();
}

#[test]
fn k0_scan_runs() {
    k0_scan::run_example();
}

#[test]
fn pair_bounds_runs() {
    pair_bounds::run_example();
}

#[test]
fn l1_failure_runs() {
    l1_failure::run_example();
}

#[test]
fn ex61_divergence_runs() {
    ex61_divergence::run_example();
}

#[test]
fn witness_growth_runs() {
    witness_growth::run_example();
}

#[test]
fn hm_counter_runs() {
    hm_counter::run_example();
}

#[test]
fn blowup_family_runs() {
    blowup_family::run_example();
}

#[test]
fn cli_run_runs() {
    cli_run::run_example();
}

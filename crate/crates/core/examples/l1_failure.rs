// M_α does not map L¹ into L^{n/(n-α)}: for the indicator of the unit cube
// the modular of M_α f over |x| ≤ R keeps growing like log R.

use varlp::constructions::build_l1_failure;

pub fn run_example() {
    for (alpha, n) in [(0.0, 1), (0.5, 1), (0.5, 2)] {
        let r = build_l1_failure(alpha, n, 400.0).unwrap();
        let (big_r, last) = *r.partials.last().unwrap();
        println!(
            "alpha = {alpha}, n = {n}: partial modular at R = {big_r} is {last:.4}, slope in log R {:.4} (analytic {:.4})",
            r.slope, r.analytic_slope
        );
        assert!((r.slope - r.analytic_slope).abs() < 0.1 * r.analytic_slope);
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}

// Fractional maximal function and Riesz potential of an interval indicator.
// The dyadic radius policy only sees a subset of the radii, so it never
// exceeds the exact one.

use varlp::grid::{GridDomain, GridFunction};
use varlp::operators::{fractional_maximal, fractional_maximal_at, riesz_potential, RadiusPolicy};

pub fn run_example() {
    let alpha = 0.5;
    let grid = GridDomain::cube(-8.0, 8.0, 1, 256).unwrap();
    let f = GridFunction::from_fn(grid, |x| if x[0].abs() < 1.0 { 1.0 } else { 0.0 }).unwrap();

    let exact = fractional_maximal(&f, alpha, RadiusPolicy::Exact).unwrap();
    let dyadic = fractional_maximal(&f, alpha, RadiusPolicy::Dyadic).unwrap();
    let worst = exact
        .values()
        .iter()
        .zip(dyadic.values())
        .map(|(e, d)| d / e)
        .fold(f64::INFINITY, f64::min);
    println!("max M_a f = {:.6}, min dyadic/exact = {worst:.4}", exact.max());
    assert!(worst <= 1.0 + 1e-12);

    // centered cubes with radius m·h: scan them directly
    let (x, h) = (6.03125, 1.0 / 16.0);
    let m = fractional_maximal_at(&f, alpha, RadiusPolicy::Exact, &[vec![x]]).unwrap()[0];
    let direct = (1..=256)
        .map(|k| {
            let r = k as f64 * h;
            let mass = ((x + r).min(1.0) - (x - r).max(-1.0)).max(0.0);
            mass * (2.0 * r).powf(alpha - 1.0)
        })
        .fold(0.0, f64::max);
    println!("M_a f({x}) = {m:.9}, direct scan {direct:.9}");
    assert!((m - direct).abs() < 1e-9);

    let i = riesz_potential(&f, alpha).unwrap();
    println!("max I_a f = {:.6}", i.max());
}

#[allow(dead_code)]
fn main() {
    run_example();
}

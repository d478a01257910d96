// Norm and modular of an indicator under a two-valued exponent. The norm
// solves 2/λ² + 2/λ⁴ = 1, i.e. λ² = 1 + √3.

use varlp::exponent::{ExpValue, ExponentFunction};
use varlp::grid::{GridDomain, GridExponent, GridFunction, MeasurableSet};
use varlp::vnorm::{harmonic_mean, luxemburg_norm, modular};

pub fn run_example() {
    let p = ExponentFunction::steps(&[0.0, 2.0, 4.0], &[ExpValue::Finite(2.0), ExpValue::Finite(4.0)]).unwrap();
    let grid = GridDomain::cube(0.0, 4.0, 1, 64).unwrap();
    let pg = GridExponent::sample(&p, &grid).unwrap();
    let f = GridFunction::from_fn(grid.clone(), |_| 1.0).unwrap();

    let norm = luxemburg_norm(&f, &pg).unwrap();
    let exact = (1.0 + 3f64.sqrt()).sqrt();
    println!("norm = {norm:.12}, closed form {exact:.12}");
    assert!((norm - exact).abs() < 1e-10);

    let all = MeasurableSet::Mask(vec![true; grid.len()]);
    let at_norm = modular(&f.scaled(1.0 / norm).unwrap(), &pg, &all).unwrap();
    println!("modular of f/norm = {at_norm:.12}");

    // 1/p_Q = (1/2 + 1/4)/2
    let hm = harmonic_mean(&pg, &all).unwrap();
    println!("harmonic mean over [0,4] = {hm}");
    assert!((hm.to_f64() - 8.0 / 3.0).abs() < 1e-12);
}

#[allow(dead_code)]
fn main() {
    run_example();
}

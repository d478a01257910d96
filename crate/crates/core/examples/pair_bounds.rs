// Pointwise lower bounds on the far cube of a (t,u) pair, for M_α and for
// the Riesz kernel once t passes the kernel's threshold t0.

use varlp::geometry::Cube;
use varlp::grid::{GridDomain, GridFunction};
use varlp::operators::{czo_pair_lower_bound, make_tu_pair, maximal_pair_lower_bound, FractionalKernel};

pub fn run_example() {
    let grid = GridDomain::cube(-2.0, 14.0, 1, 512).unwrap();
    let f = GridFunction::from_fn(grid, |x| if (-1.0..0.0).contains(&x[0]) { 1.0 + x[0] * x[0] } else { 0.0 }).unwrap();
    let q = Cube::interval(-1.0, 0.0).unwrap();

    for t in [4.0, 6.0, 10.0] {
        let pair = make_tu_pair(&q, t, &[1.0]).unwrap();
        let r = maximal_pair_lower_bound(&f, &pair, 0.5).unwrap();
        println!(
            "t = {t}: P = [{:.2}, {:.2}], min over P of M_a f = {:.5} >= {:.5}: {}",
            pair.p.center[0] - pair.p.radius,
            pair.p.center[0] + pair.p.radius,
            r.lhs_min_over_p,
            r.rhs,
            r.holds
        );
        assert!(r.holds);
    }

    let kernel = FractionalKernel::riesz(1, 0.5).unwrap();
    let t = kernel.t0().max(4.0);
    let pair = make_tu_pair(&q, t, &[1.0]).unwrap();
    let r = czo_pair_lower_bound(&kernel, &f, &pair).unwrap();
    println!(
        "Riesz kernel, t0 = {:.3}: min over P of |Tf| = {:.5} >= {:.5}: {}",
        r.t0, r.lhs_min_over_p, r.rhs, r.holds
    );
    assert!(r.applicable && r.holds);
}

#[allow(dead_code)]
fn main() {
    run_example();
}

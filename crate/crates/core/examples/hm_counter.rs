// The harmonic mean of p is not monotone under inclusion of cubes.

use varlp::constructions::hm_counter;

pub fn run_example() {
    let h = hm_counter(0.75).unwrap();
    println!(
        "p_Q on Q(0,1) = {:.6} (closed form {:.6}), on Q(0,{}) = {:.6} (closed form {:.6})",
        h.whole_mean, h.whole_closed, h.r, h.small_mean, h.small_closed
    );
    assert!((h.whole_mean - 8.0 / 7.0).abs() < 1e-12);
    assert!(h.whole_mean < h.small_mean);
}

#[allow(dead_code)]
fn main() {
    run_example();
}

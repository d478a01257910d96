//! Small numeric helpers: deterministic summation and Gauss-Legendre rules.

use gauss_quad::GaussLegendre;
use rayon::prelude::*;
use std::sync::OnceLock;

const LEAF: usize = 256;
const PAR_THRESHOLD: usize = 1 << 14;

/// Pairwise summation over a fixed binary tree. The tree only depends on the
/// slice length, so the result is identical for any number of rayon workers.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= LEAF {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    let (a, b) = xs.split_at(mid);
    if xs.len() >= PAR_THRESHOLD {
        let (x, y) = rayon::join(|| pairwise_sum(a), || pairwise_sum(b));
        x + y
    } else {
        pairwise_sum(a) + pairwise_sum(b)
    }
}

/// Maps `f` over `0..n` in parallel and reduces with [`pairwise_sum`].
pub fn par_sum_by<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    let terms: Vec<f64> = if n >= PAR_THRESHOLD {
        (0..n).into_par_iter().map(&f).collect()
    } else {
        (0..n).map(&f).collect()
    };
    pairwise_sum(&terms)
}

/// Nodes and weights of the 16-point Gauss-Legendre rule on [-1, 1].
pub fn gauss16() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let rule = GaussLegendre::new(16).expect("degree 16 is valid");
        rule.as_node_weight_pairs().to_vec()
    })
}

/// Composite 16-point Gauss-Legendre nodes for [a, b] split into `panels`.
pub fn composite_gauss(a: f64, b: f64, panels: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(panels * 16);
    let w = (b - a) / panels as f64;
    for k in 0..panels {
        let lo = a + k as f64 * w;
        let mid = lo + 0.5 * w;
        for &(x, wt) in gauss16() {
            out.push((mid + 0.5 * w * x, 0.5 * w * wt));
        }
    }
    out
}

/// Relative closeness with an absolute floor for values near zero.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

//! M_α fails to map L¹ into L^{n/(n−α)}: for f = χ_{[−1/2,1/2]^n} the
//! modular of M_α f over the annulus √n ≤ |x| ≤ R grows like log R.

use crate::error::{precondition, Result};
use crate::grid::{GridDomain, GridFunction};
use crate::k0::log_ladder;
use crate::operators::{MaximalEvaluator, RadiusPolicy};
use rayon::prelude::*;

/// Most lattice points the annulus integration may touch.
const MAX_POINTS: f64 = 4_194_304.0;

#[derive(Clone, Debug)]
pub struct L1Failure {
    pub alpha: f64,
    pub n: usize,
    pub f: GridFunction,
    /// Integration lattice spacing.
    pub h: f64,
    /// (R, ∫ over the positive-orthant part of √n ≤ |x| ≤ R).
    pub partials: Vec<(f64, f64)>,
    /// Least-squares slope of the partials against log R.
    pub slope: f64,
    /// n/2ⁿ: the large-|x| decay (2|x|_∞)^{−n} integrated over the orthant.
    pub analytic_slope: f64,
}

/// Least-squares slope of y against x.
pub fn regression_slope(points: &[(f64, f64)]) -> f64 {
    let m = points.len() as f64;
    if points.len() < 2 {
        return 0.0;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx > 0.0 {
        sxy / sxx
    } else {
        0.0
    }
}

pub fn build_l1_failure(alpha: f64, n: usize, r_max: f64) -> Result<L1Failure> {
    if !(1..=3).contains(&n) {
        return Err(precondition("dimension must be 1, 2 or 3"));
    }
    let nf = n as f64;
    if !(alpha >= 0.0 && alpha < nf) {
        return Err(precondition(format!("alpha must lie in [0, {n})")));
    }
    if !(r_max.is_finite() && r_max > 0.0) {
        return Err(precondition("R_max must be positive and finite"));
    }
    // power-of-two spacing so the support [−1/2, 1/2] sits on cell edges
    let mut h = 0.125;
    while (r_max / h).powf(nf) > MAX_POINTS && h < 0.5 {
        h *= 2.0;
    }
    let cells = (1.0 / h).round() as usize;
    let f = GridFunction::from_fn(GridDomain::cube(-0.5, 0.5, n, cells)?, |_| 1.0)?;
    let inner = nf.sqrt();
    let analytic_slope = nf / 2f64.powi(n as i32);
    if r_max <= inner {
        return Ok(L1Failure {
            alpha,
            n,
            f,
            h,
            partials: vec![(r_max, 0.0)],
            slope: 0.0,
            analytic_slope,
        });
    }

    let ev = MaximalEvaluator::new(&f, alpha, RadiusPolicy::Exact)?;
    let power = nf / (nf - alpha);
    let per_axis = (r_max / h).ceil() as usize;
    let total = per_axis.pow(n as u32);
    let cell = h.powi(n as i32);
    let mut samples: Vec<(f64, f64)> = (0..total)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut x = vec![0.0; n];
            for v in x.iter_mut() {
                *v = (idx % per_axis) as f64 * h + 0.5 * h;
                idx /= per_axis;
            }
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm < inner || norm > r_max {
                return None;
            }
            Some((norm, ev.at(&x).powf(power) * cell))
        })
        .collect();
    samples.sort_by(|a, b| a.0.total_cmp(&b.0));

    let lo = (10.0 * inner).min(r_max);
    let ladder = if lo < r_max { log_ladder(lo, r_max, 16) } else { vec![r_max] };
    let mut partials = Vec::with_capacity(ladder.len());
    let (mut acc, mut next) = (0.0, 0);
    for &r in &ladder {
        while next < samples.len() && samples[next].0 <= r {
            acc += samples[next].1;
            next += 1;
        }
        partials.push((r, acc));
    }
    let logs: Vec<(f64, f64)> = partials.iter().map(|&(r, v)| (r.ln(), v)).collect();
    Ok(L1Failure {
        alpha,
        n,
        f,
        h,
        slope: regression_slope(&logs),
        partials,
        analytic_slope,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_annulus_is_zero() {
        let r = build_l1_failure(0.0, 2, 2f64.sqrt()).unwrap();
        assert_eq!(r.partials, vec![(2f64.sqrt(), 0.0)]);
    }

    #[test]
    fn alpha_zero_slope_is_half() {
        let r = build_l1_failure(0.0, 1, 1000.0).unwrap();
        assert!((r.slope - 0.5).abs() < 0.05, "slope {}", r.slope);
        // ∫_1^R (2x+1)^{-1} dx
        let (big_r, v) = *r.partials.last().unwrap();
        let exact = 0.5 * ((2.0 * big_r + 1.0) / 3.0).ln();
        assert!((v - exact).abs() < 1e-2 * exact, "{v} vs {exact}");
    }

    #[test]
    fn slope_regression_on_a_line() {
        let pts: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, 3.0 * i as f64 + 1.0)).collect();
        assert!((regression_slope(&pts) - 3.0).abs() < 1e-12);
    }
}

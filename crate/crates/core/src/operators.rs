//! Fractional averaging and maximal operators, Riesz potentials, kernels
//! and the pointwise lower bounds on (t, u) pairs of cubes.
//!
//! Functions are extended by zero outside their grid; a cube's average is
//! always over its full measure.

use crate::error::{precondition, Error, Result};
use crate::geometry::{AxisBox, Cube};
use crate::grid::{GridFunction, SummedArea};
use crate::numeric::composite_gauss;
use rayon::prelude::*;
use statrs::function::gamma::gamma;
use std::f64::consts::PI;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadiusPolicy {
    /// Every integer multiple of h.
    Exact,
    /// h·2^j only.
    Dyadic,
}

fn check_alpha(alpha: f64, n: usize) -> Result<()> {
    if !(alpha >= 0.0 && alpha < n as f64) {
        return Err(precondition(format!("alpha must lie in [0, {n}), got {alpha}")));
    }
    Ok(())
}

/// |Q|^{α/n}·(avg_Q f)·χ_Q.
pub fn averaging_op(f: &GridFunction, q: &Cube, alpha: f64) -> Result<GridFunction> {
    let dom = f.domain();
    if q.dimension() != dom.dimension() {
        return Err(precondition("cube and grid dimensions differ"));
    }
    let w = dom.cube_weights(q);
    if w.iter().map(|c| c.1).sum::<f64>() <= 0.0 {
        return Err(Error::EmptyIntersection);
    }
    let integral: f64 = w.iter().map(|&(i, wt)| wt * f.values()[i]).sum::<f64>() * dom.cell_volume();
    let value = q.measure().powf(alpha / dom.dimension() as f64) * integral / q.measure();
    let mut out = vec![0.0; dom.len()];
    for (i, _) in w {
        if q.contains(&dom.midpoint(i)) {
            out[i] = value;
        }
    }
    GridFunction::new(dom.clone(), out)
}

/// Centered fractional maximal function on a grid function.
pub struct MaximalEvaluator {
    sat: SummedArea,
    support: Option<AxisBox>,
    alpha: f64,
    policy: RadiusPolicy,
}

impl MaximalEvaluator {
    pub fn new(f: &GridFunction, alpha: f64, policy: RadiusPolicy) -> Result<Self> {
        check_alpha(alpha, f.domain().dimension())?;
        Ok(MaximalEvaluator {
            sat: SummedArea::new(f),
            support: f.support_box(),
            alpha,
            policy,
        })
    }

    fn value(&self, x: &[f64], r: f64) -> f64 {
        let n = x.len();
        let q = AxisBox {
            lo: x.iter().map(|c| c - r).collect(),
            hi: x.iter().map(|c| c + r).collect(),
        };
        (2.0 * r).powf(self.alpha - n as f64) * self.sat.box_integral(&q)
    }

    /// M_α f(x) over the policy's radii. Radii whose cube misses the support
    /// are skipped and the scan stops once the cube covers the support,
    /// since |Q|^{α/n−1} only decreases after that.
    pub fn at(&self, x: &[f64]) -> f64 {
        let Some(s) = &self.support else { return 0.0 };
        let h = self.sat.domain().h();
        let (mut gap, mut cover) = (0.0f64, 0.0f64);
        for d in 0..x.len() {
            gap = gap.max((s.lo[d] - x[d]).max(x[d] - s.hi[d]));
            cover = cover.max((x[d] - s.lo[d]).max(s.hi[d] - x[d]));
        }
        let mut best = 0.0f64;
        match self.policy {
            RadiusPolicy::Exact => {
                let mut m = (gap / h).floor() as u64 + 1;
                loop {
                    let r = m as f64 * h;
                    best = best.max(self.value(x, r));
                    if r >= cover {
                        break;
                    }
                    m += 1;
                }
            }
            RadiusPolicy::Dyadic => {
                let mut r = h;
                while r <= gap {
                    r *= 2.0;
                }
                loop {
                    best = best.max(self.value(x, r));
                    if r >= cover {
                        break;
                    }
                    r *= 2.0;
                }
            }
        }
        best
    }
}

/// M_α f at every cell midpoint.
pub fn fractional_maximal(f: &GridFunction, alpha: f64, radii: RadiusPolicy) -> Result<GridFunction> {
    let ev = MaximalEvaluator::new(f, alpha, radii)?;
    let dom = f.domain();
    let values = (0..dom.len())
        .into_par_iter()
        .map(|i| ev.at(&dom.midpoint(i)))
        .collect();
    GridFunction::new(dom.clone(), values)
}

/// M_α f at arbitrary points (f extended by zero).
pub fn fractional_maximal_at(f: &GridFunction, alpha: f64, radii: RadiusPolicy, points: &[Vec<f64>]) -> Result<Vec<f64>> {
    let ev = MaximalEvaluator::new(f, alpha, radii)?;
    Ok(points.par_iter().map(|x| ev.at(x)).collect())
}

/// Uncentered fractional maximal function: sup over cubes containing y.
/// In one dimension this is exact: the supremum over intervals [a, b] ∋ y
/// is attained with a and b at cell edges, the support's ends, or y itself.
/// In higher dimensions it returns the larger of the centered value and
/// the smallest cube holding y and the support box, a lower estimate.
pub fn uncentered_maximal_at(f: &GridFunction, alpha: f64, y: &[f64]) -> Result<f64> {
    let dom = f.domain();
    let n = dom.dimension();
    check_alpha(alpha, n)?;
    let Some(s) = f.support_box() else { return Ok(0.0) };
    let sat = SummedArea::new(f);
    if n == 1 {
        let h = dom.h();
        let edges = |a: f64, b: f64| -> Vec<f64> {
            let mut v = vec![a, b];
            let first = ((a - dom.lo()[0]) / h).ceil() as i64;
            let last = ((b - dom.lo()[0]) / h).floor() as i64;
            for k in first..=last {
                v.push(dom.lo()[0] + k as f64 * h);
            }
            v.retain(|e| *e >= a && *e <= b);
            v
        };
        let y0 = y[0];
        let lefts = if y0 > s.lo[0] { edges(s.lo[0], y0.min(s.hi[0])) } else { Vec::new() };
        let rights = if y0 < s.hi[0] { edges(y0.max(s.lo[0]), s.hi[0]) } else { Vec::new() };
        let mut lefts = lefts;
        let mut rights = rights;
        lefts.push(y0);
        rights.push(y0);
        let cum = |x: f64| sat.box_integral(&AxisBox { lo: vec![dom.lo()[0]], hi: vec![x.max(dom.lo()[0])] });
        let rc: Vec<(f64, f64)> = rights.iter().map(|&b| (b, cum(b))).collect();
        let best = lefts
            .par_iter()
            .map(|&a| {
                let ca = cum(a);
                rc.iter()
                    .filter(|(b, _)| *b > a)
                    .map(|&(b, cb)| (b - a).powf(alpha - 1.0) * (cb - ca).max(0.0))
                    .fold(0.0f64, f64::max)
            })
            .reduce(|| 0.0, f64::max);
        return Ok(best);
    }
    let ev = MaximalEvaluator::new(f, alpha, RadiusPolicy::Exact)?;
    let mut side = 0.0f64;
    for d in 0..n {
        side = side.max(s.hi[d].max(y[d]) - s.lo[d].min(y[d]));
    }
    let containing = side.powf(alpha - n as f64) * sat.box_integral(&s);
    Ok(ev.at(y).max(containing))
}

/// γ(α, n) = Γ(n/2 − α/2) / (π^{n/2} 2^α Γ(α/2)).
pub fn riesz_constant(alpha: f64, n: usize) -> Result<f64> {
    let nf = n as f64;
    if !(alpha > 0.0 && alpha < nf) {
        return Err(precondition(format!("Riesz potential needs 0 < alpha < {n}")));
    }
    Ok(gamma(nf / 2.0 - alpha / 2.0) / (PI.powf(nf / 2.0) * 2f64.powf(alpha) * gamma(alpha / 2.0)))
}

/// ∫ over the cube [−a, a]^n of |u|^{α−n}. The integrand is homogeneous of
/// degree α − n, so the integral equals (a/α) times the surface integral
/// over the 2n faces, which are smooth.
pub fn self_cell_integral(a: f64, alpha: f64, n: usize) -> f64 {
    let e = (alpha - n as f64) / 2.0;
    let face = match n {
        1 => a.powf(alpha - 1.0),
        2 => composite_gauss(-a, a, 8)
            .iter()
            .map(|&(v, w)| w * (a * a + v * v).powf(e))
            .sum(),
        _ => {
            let rule = composite_gauss(-a, a, 8);
            rule.iter()
                .map(|&(v, wv)| {
                    rule.iter()
                        .map(|&(s, ws)| wv * ws * (a * a + v * v + s * s).powf(e))
                        .sum::<f64>()
                })
                .sum()
        }
    };
    2.0 * n as f64 * (a / alpha) * face
}

/// I_α f at cell midpoints; the singular own-cell term uses the exact
/// cell integral of |x − y|^{α−n}.
pub fn riesz_potential(f: &GridFunction, alpha: f64) -> Result<GridFunction> {
    let dom = f.domain();
    let n = dom.dimension();
    let gamma_c = riesz_constant(alpha, n)?;
    let cv = dom.cell_volume();
    let own = self_cell_integral(0.5 * dom.h(), alpha, n);
    let support: Vec<(Vec<f64>, f64)> = f
        .values()
        .iter()
        .enumerate()
        .filter(|(_, v)| **v > 0.0)
        .map(|(j, v)| (dom.midpoint(j), *v))
        .collect();
    let e = (alpha - n as f64) / 2.0;
    let values = (0..dom.len())
        .into_par_iter()
        .map(|i| {
            let x = dom.midpoint(i);
            let mut acc = f.values()[i] * own;
            for (y, v) in &support {
                let d2: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
                if d2 > 0.0 {
                    acc += v * cv * d2.powf(e);
                }
            }
            gamma_c * acc
        })
        .collect();
    GridFunction::new(dom.clone(), values)
}

/// The constant c with M_α f ≤ c·I_α f for f ≥ 0: on Q(x, r) one has
/// |x − y| ≤ √n·r, so |Q|^{α/n−1}∫_Q f ≤ 2^{α−n} n^{(n−α)/2} γ⁻¹ I_α f(x).
pub fn maximal_riesz_constant(alpha: f64, n: usize) -> Result<f64> {
    let nf = n as f64;
    Ok(2f64.powf(alpha - nf) * nf.powf((nf - alpha) / 2.0) / riesz_constant(alpha, n)?)
}

/// Two equal cubes with P.center = Q.center + t·r·√n·u.
#[derive(Clone, Debug, PartialEq)]
pub struct TUPair {
    pub q: Cube,
    pub p: Cube,
    pub t: f64,
    pub u: Vec<f64>,
}

pub fn make_tu_pair(q: &Cube, t: f64, u: &[f64]) -> Result<TUPair> {
    let n = q.dimension();
    if u.len() != n {
        return Err(precondition("direction has the wrong dimension"));
    }
    let norm: f64 = u.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(precondition(format!("direction must be a unit vector, |u| = {norm}")));
    }
    let shift = t * q.radius * (n as f64).sqrt();
    let center = q.center.iter().zip(u).map(|(c, ui)| c + shift * ui).collect();
    let p = Cube {
        center,
        radius: q.radius,
        basis: q.basis.clone(),
    };
    Ok(TUPair {
        q: q.clone(),
        p,
        t,
        u: u.to_vec(),
    })
}

impl TUPair {
    /// Lattice of `per_axis` points per axis across P, corners included.
    pub fn sample_p(&self, per_axis: usize) -> Vec<Vec<f64>> {
        let n = self.p.dimension();
        let k = per_axis.max(2);
        let total = k.pow(n as u32);
        (0..total)
            .map(|mut idx| {
                let mut s = vec![0.0; n];
                for v in s.iter_mut() {
                    *v = -1.0 + 2.0 * (idx % k) as f64 / (k - 1) as f64;
                    idx /= k;
                }
                let mut y = self.p.center.clone();
                match &self.p.basis {
                    None => {
                        for d in 0..n {
                            y[d] += self.p.radius * s[d];
                        }
                    }
                    Some(b) => {
                        for (i, u) in b.iter().enumerate() {
                            for d in 0..n {
                                y[d] += self.p.radius * s[i] * u[d];
                            }
                        }
                    }
                }
                y
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairReport {
    pub lhs_min_over_p: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// |Q|^{α/n}·avg_Q f with f extended by zero.
fn scaled_average(f: &GridFunction, q: &Cube, alpha: f64) -> f64 {
    let dom = f.domain();
    let integral: f64 =
        dom.cube_weights(q).iter().map(|&(i, w)| w * f.values()[i]).sum::<f64>() * dom.cell_volume();
    q.measure().powf(alpha / dom.dimension() as f64 - 1.0) * integral
}

/// min over sampled y ∈ P of M_α f(y) against ((t+2)√n/2)^{α−n}|Q|^{α/n}avg_Q f.
/// The maximal function here is the uncentered one (cubes containing y).
pub fn maximal_pair_lower_bound(f: &GridFunction, pair: &TUPair, alpha: f64) -> Result<PairReport> {
    if pair.t < 4.0 {
        return Err(precondition(format!("pair lemma needs t >= 4, got {}", pair.t)));
    }
    let n = f.domain().dimension();
    check_alpha(alpha, n)?;
    let nf = n as f64;
    let rhs = ((pair.t + 2.0) * nf.sqrt() / 2.0).powf(alpha - nf) * scaled_average(f, &pair.q, alpha);
    let per_axis = match n {
        1 => 65,
        2 => 9,
        _ => 5,
    };
    let lhs = pair
        .sample_p(per_axis)
        .iter()
        .map(|y| uncentered_maximal_at(f, alpha, y))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    Ok(PairReport {
        lhs_min_over_p: lhs,
        rhs,
        holds: lhs >= rhs * (1.0 - 1e-12),
    })
}

pub type KernelFn = Arc<dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync>;

/// A fractional singular integral kernel with its size, smoothness and
/// non-degeneracy constants.
#[derive(Clone)]
pub struct FractionalKernel {
    pub kernel: KernelFn,
    pub n: usize,
    pub alpha: f64,
    pub c0: f64,
    pub delta: f64,
    pub a: f64,
    pub direction: Option<Vec<f64>>,
}

impl std::fmt::Debug for FractionalKernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FractionalKernel")
            .field("n", &self.n)
            .field("alpha", &self.alpha)
            .field("c0", &self.c0)
            .field("delta", &self.delta)
            .field("a", &self.a)
            .finish()
    }
}

fn dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

impl FractionalKernel {
    /// |x − y|^{α−n}, non-degenerate in every direction.
    pub fn riesz(n: usize, alpha: f64) -> Result<Self> {
        check_alpha(alpha, n)?;
        let e = alpha - n as f64;
        let mut u = vec![0.0; n];
        u[0] = 1.0;
        Ok(FractionalKernel {
            kernel: Arc::new(move |x, y| dist(x, y).powf(e)),
            n,
            alpha,
            c0: 1.0,
            delta: 1.0,
            a: 1.0,
            direction: Some(u),
        })
    }

    /// sign(x₁ − y₁)|x − y|^{α−n}: odd, non-degenerate along e₁.
    pub fn odd(n: usize, alpha: f64) -> Result<Self> {
        let mut k = FractionalKernel::riesz(n, alpha)?;
        let e = alpha - n as f64;
        k.kernel = Arc::new(move |x, y| (x[0] - y[0]).signum() * dist(x, y).powf(e));
        Ok(k)
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        (self.kernel)(x, y)
    }

    /// t₀ = max(4, (2C₀(1 + 2^{n−α+δ})/a)^{1/δ}); infinite when a = 0.
    pub fn t0(&self) -> f64 {
        if !(self.a > 0.0) {
            return f64::INFINITY;
        }
        let nf = self.n as f64;
        let base = 2.0 * self.c0 * (1.0 + 2f64.powf(nf - self.alpha + self.delta)) / self.a;
        base.powf(1.0 / self.delta).max(4.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CzoReport {
    pub t0: f64,
    pub applicable: bool,
    pub lhs_min_over_p: f64,
    pub rhs: f64,
    pub sign_coherent: bool,
    pub holds: bool,
}

/// min over sampled y ∈ P of |∫_Q K(x, y) f(x) dx| against
/// 2^{n−α−1}a/(|t|√n)^{n−α}·|Q|^{α/n}avg_Q f, when |t| ≥ t₀.
pub fn czo_pair_lower_bound(kernel: &FractionalKernel, f: &GridFunction, pair: &TUPair) -> Result<CzoReport> {
    let dom = f.domain();
    let n = dom.dimension();
    if kernel.n != n {
        return Err(precondition("kernel and grid dimensions differ"));
    }
    let t0 = kernel.t0();
    let aligned = kernel.direction.as_ref().map_or(false, |d| {
        d.iter().zip(&pair.u).map(|(a, b)| a * b).sum::<f64>().abs() > 1.0 - 1e-10
    });
    if !aligned || pair.t.abs() < t0 {
        return Ok(CzoReport {
            t0,
            applicable: false,
            lhs_min_over_p: f64::NAN,
            rhs: f64::NAN,
            sign_coherent: false,
            holds: false,
        });
    }
    let cells: Vec<(Vec<f64>, f64)> = dom
        .cube_weights(&pair.q)
        .into_iter()
        .filter(|&(i, _)| f.values()[i] > 0.0)
        .map(|(i, w)| (dom.midpoint(i), w * f.values()[i] * dom.cell_volume()))
        .collect();
    let nf = n as f64;
    let rhs = 2f64.powf(nf - kernel.alpha - 1.0) * kernel.a
        / (pair.t.abs() * nf.sqrt()).powf(nf - kernel.alpha)
        * scaled_average(f, &pair.q, kernel.alpha);
    let ys = pair.sample_p(if n == 1 { 33 } else { 7 });
    let lhs = ys
        .par_iter()
        .map(|y| cells.iter().map(|(x, m)| m * kernel.eval(x, y)).sum::<f64>().abs())
        .reduce(|| f64::INFINITY, f64::min);
    let xs = pair.q.clone().corners().into_iter().chain([pair.q.center.clone()]);
    let signs: Vec<f64> = xs
        .flat_map(|x| ys.iter().map(move |y| (x.clone(), y.clone())).collect::<Vec<_>>())
        .map(|(x, y)| kernel.eval(&x, &y).signum())
        .collect();
    let sign_coherent = signs.windows(2).all(|w| w[0] == w[1]);
    Ok(CzoReport {
        t0,
        applicable: true,
        lhs_min_over_p: lhs,
        rhs,
        sign_coherent,
        holds: lhs >= rhs * (1.0 - 1e-12),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridDomain;

    fn unit_bump(cells: usize, lo: f64, hi: f64) -> GridFunction {
        let g = GridDomain::cube(lo, hi, 1, cells).unwrap();
        GridFunction::from_fn(g, |x| if x[0].abs() < 0.5 { 1.0 } else { 0.0 }).unwrap()
    }

    #[test]
    fn averaging_examples() {
        let g = GridDomain::cube(0.0, 2.0, 1, 64).unwrap();
        let f = GridFunction::from_fn(g, |x| if x[0] < 1.0 { 1.0 } else { 0.0 }).unwrap();
        let a = averaging_op(&f, &Cube::interval(0.0, 2.0).unwrap(), 0.5).unwrap();
        assert!(a.values().iter().all(|v| (v - 0.5f64.sqrt()).abs() < 1e-14));
        let b = averaging_op(&f, &Cube::interval(0.0, 1.0).unwrap(), 0.5).unwrap();
        assert_eq!(b.values()[10], 1.0);
        assert_eq!(b.values()[40], 0.0);
        assert!(matches!(
            averaging_op(&f, &Cube::interval(5.0, 6.0).unwrap(), 0.0),
            Err(Error::EmptyIntersection)
        ));
    }

    #[test]
    fn maximal_closed_form_at_three_halves() {
        let f = unit_bump(512, -2.0, 2.0);
        let m = fractional_maximal_at(&f, 0.5, RadiusPolicy::Exact, &[vec![1.5]]).unwrap()[0];
        assert!((m - 0.5).abs() < 1e-12, "{m}");
    }

    #[test]
    fn maximal_of_indicator_inside_is_one() {
        let f = unit_bump(256, -2.0, 2.0);
        let m = fractional_maximal_at(&f, 0.0, RadiusPolicy::Exact, &[vec![0.0], vec![0.2]]).unwrap();
        assert!(m.iter().all(|v| (v - 1.0).abs() < 1e-14));
    }

    #[test]
    fn riesz_constant_oracles() {
        assert!((riesz_constant(0.5, 1).unwrap() - (2.0 * PI).sqrt().recip()).abs() < 1e-14);
        assert!((riesz_constant(2.0, 3).unwrap() - (4.0 * PI).recip()).abs() < 1e-14);
        assert!(riesz_constant(1.0, 1).is_err());
    }

    #[test]
    fn self_cell_integrals() {
        let a = 0.3;
        assert!((self_cell_integral(a, 0.5, 1) - 2.0 * a.sqrt() / 0.5).abs() < 1e-14);
        let want = 8.0 * a * (1.0 + 2f64.sqrt()).ln();
        assert!((self_cell_integral(a, 1.0, 2) - want).abs() < 1e-12);
    }

    #[test]
    fn riesz_of_zero_is_zero() {
        let g = GridDomain::cube(0.0, 1.0, 1, 16).unwrap();
        let z = riesz_potential(&GridFunction::zeros(g), 0.5).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn tu_pair_examples() {
        let q = Cube::new(vec![0.0], 1.0).unwrap();
        assert_eq!(make_tu_pair(&q, 4.0, &[1.0]).unwrap().p.center, vec![4.0]);
        let q2 = Cube::new(vec![0.0, 0.0], 1.0).unwrap();
        let p = make_tu_pair(&q2, 5.0, &[1.0, 0.0]).unwrap().p;
        assert!((p.center[0] - 5.0 * 2f64.sqrt()).abs() < 1e-14);
        assert_eq!(make_tu_pair(&q, 0.0, &[1.0]).unwrap().p, q);
        assert!(make_tu_pair(&q2, 5.0, &[1.0, 1.0]).is_err());
    }

    #[test]
    fn pair_lemma_indicator_alpha_zero() {
        let g = GridDomain::cube(-1.0, 1.0, 1, 64).unwrap();
        let f = GridFunction::from_fn(g, |_| 1.0).unwrap();
        let pair = make_tu_pair(&Cube::new(vec![0.0], 1.0).unwrap(), 4.0, &[1.0]).unwrap();
        let r = maximal_pair_lower_bound(&f, &pair, 0.0).unwrap();
        assert!((r.rhs - 1.0 / 3.0).abs() < 1e-14);
        assert!(r.holds, "{r:?}");
        assert!(maximal_pair_lower_bound(&f, &make_tu_pair(&pair.q, 3.0, &[1.0]).unwrap(), 0.0).is_err());
    }

    #[test]
    fn czo_threshold_and_bound() {
        let k = FractionalKernel::riesz(1, 0.5).unwrap();
        assert!((k.t0() - 2.0 * (1.0 + 2f64.powf(1.5))).abs() < 1e-12);
        let g = GridDomain::cube(-1.0, 1.0, 1, 64).unwrap();
        let f = GridFunction::from_fn(g, |_| 1.0).unwrap();
        let pair = make_tu_pair(&Cube::new(vec![0.0], 1.0).unwrap(), 8.0, &[1.0]).unwrap();
        let r = czo_pair_lower_bound(&k, &f, &pair).unwrap();
        assert!(r.applicable && r.holds && r.sign_coherent, "{r:?}");
        let mut flat = k.clone();
        flat.a = 0.0;
        assert!(!czo_pair_lower_bound(&flat, &f, &pair).unwrap().applicable);
    }
}

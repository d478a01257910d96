//! K₀ and K₀^α constants over cube families, the averaging-operator bounds
//! they control, the norm/harmonic-mean sandwich, and minimal-harmonic-mean
//! cubes.
//!
//! Suprema are only ever estimated from below by scanning a declared family.

use crate::error::{precondition, Error, Result};
use crate::exponent::{ExpValue, PointwiseMap};
use crate::geometry::Cube;
use crate::grid::{GridExponent, GridFunction, MeasurableSet};
use crate::vnorm::{
    indicator_norm, indicator_norms, luxemburg_norm, ExponentOracle, IndicatorNorms, Restricted,
};
use rayon::prelude::*;

/// Constant of the generalized Hölder inequality ‖fg‖_p ≤ K‖f‖_q‖g‖_r.
pub const GENERALIZED_HOLDER: f64 = 5.0;

/// A finite list of cubes. Cubes trivially have the cube property
/// (E = Q witnesses |E| ≥ |Q|/2).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CubeFamily {
    pub cubes: Vec<Cube>,
    pub cube_property: bool,
}

impl CubeFamily {
    pub fn explicit(cubes: Vec<Cube>) -> Self {
        CubeFamily {
            cubes,
            cube_property: true,
        }
    }

    /// Every center paired with every radius.
    pub fn lattice(centers: &[Vec<f64>], radii: &[f64]) -> Result<Self> {
        let mut cubes = Vec::with_capacity(centers.len() * radii.len());
        for c in centers {
            for &r in radii {
                cubes.push(Cube::new(c.clone(), r)?);
            }
        }
        Ok(CubeFamily::explicit(cubes))
    }

    /// Intervals [a, b] in one dimension.
    pub fn intervals(ends: &[(f64, f64)]) -> Result<Self> {
        Ok(CubeFamily::explicit(
            ends.iter().map(|&(a, b)| Cube::interval(a, b)).collect::<Result<_>>()?,
        ))
    }

    pub fn extend(&mut self, other: &CubeFamily) {
        self.cubes.extend(other.cubes.iter().cloned());
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }
}

/// `points` log-spaced values from `min` to `max` inclusive.
pub fn log_ladder(min: f64, max: f64, points: usize) -> Vec<f64> {
    if points <= 1 {
        return vec![min];
    }
    let (a, b) = (min.ln(), max.ln());
    (0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

/// Evenly spaced one-dimensional centers from `lo` to `hi` inclusive.
pub fn center_lattice(lo: f64, hi: f64, points: usize) -> Vec<Vec<f64>> {
    if points <= 1 {
        return vec![vec![lo]];
    }
    (0..points)
        .map(|i| vec![lo + (hi - lo) * i as f64 / (points - 1) as f64])
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct K0Sample {
    pub cube: Cube,
    pub norms: IndicatorNorms,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct K0Report {
    pub best_value: f64,
    pub argmax: Option<Cube>,
    pub samples: Vec<K0Sample>,
}

fn sobolev_precondition(p: &impl ExponentOracle, alpha: f64) -> Result<()> {
    let n = p.dimension();
    if !(alpha >= 0.0 && alpha < n as f64) {
        return Err(precondition(format!("alpha must lie in [0, {n})")));
    }
    p.strata()?.p_plus().sobolev(alpha, n).map(|_| ())
}

fn sample(p: &impl ExponentOracle, alpha: f64, q: &Cube) -> Result<K0Sample> {
    let n = p.dimension();
    let dist = p.distribution(q)?;
    let norms = indicator_norms(&dist, alpha, n)?;
    let value = norms.measure.powf(alpha / n as f64 - 1.0) * norms.norm_conj * norms.norm_q;
    Ok(K0Sample {
        cube: q.clone(),
        norms,
        value,
    })
}

fn best_of(samples: Vec<K0Sample>) -> K0Report {
    let mut best = f64::NEG_INFINITY;
    let mut arg = None;
    for s in &samples {
        // first in family order wins ties
        if s.value > best {
            best = s.value;
            arg = Some(s.cube.clone());
        }
    }
    K0Report {
        best_value: best.max(0.0),
        argmax: arg,
        samples,
    }
}

/// max over the family of |E|^{α/n−1}‖χ_E‖_{p′}‖χ_E‖_q.
pub fn k0alpha_constant(p: &impl ExponentOracle, alpha: f64, family: &CubeFamily) -> Result<K0Report> {
    sobolev_precondition(p, alpha)?;
    let samples = family
        .cubes
        .par_iter()
        .map(|q| sample(p, alpha, q))
        .collect::<Result<Vec<_>>>()?;
    Ok(best_of(samples))
}

/// max over the family of |E|⁻¹‖χ_E‖_p‖χ_E‖_{p′}.
pub fn k0_constant(p: &impl ExponentOracle, family: &CubeFamily) -> Result<K0Report> {
    k0alpha_constant(p, 0.0, family)
}

/// ‖A_E^α f‖_{q(·)} = |E|^{α/n−1}(∫_E f)‖χ_E‖_{q(·)} for an axis cube E.
pub fn averaging_norm(p: &GridExponent, alpha: f64, e: &Cube, f: &GridFunction) -> Result<f64> {
    let dom = p.domain();
    let n = dom.dimension();
    let w = dom.cube_weights(e);
    let integral: f64 = w.iter().map(|&(i, wt)| wt * f.values()[i]).sum::<f64>() * dom.cell_volume();
    let q = ExponentOracle::distribution(p, e)?.map(PointwiseMap::SobolevDual { alpha, n })?;
    Ok(e.measure().powf(alpha / n as f64 - 1.0) * integral * indicator_norm(&q))
}

#[derive(Clone, Debug, PartialEq)]
pub struct AveragingReport {
    /// sup over (E, f) of ‖A_E^α f‖_q/‖f‖_p, witnesses plus dual witnesses.
    pub sup_ratio: f64,
    pub k0alpha_best: f64,
    pub holder_constant: f64,
    pub duality_constant: f64,
    /// sup_ratio ≤ K_{p(·)}·K₀^α.
    pub upper_holds: bool,
    /// K₀^α ≤ k⁻¹·sup_ratio.
    pub lower_holds: bool,
}

/// Norming functions for χ_E in L^{p′}: λ^{1−p′(x)}χ_E (λ = ‖χ_E‖_{p′}) on
/// the part where p > 1, and the normalized indicator of E ∩ {p = 1}.
fn dual_witnesses(p: &GridExponent, e: &Cube) -> Result<Vec<GridFunction>> {
    let dom = p.domain();
    let cells: Vec<usize> = dom
        .cube_weights(e)
        .into_iter()
        .filter(|&(i, _)| e.contains(&dom.midpoint(i)))
        .map(|(i, _)| i)
        .collect();
    let conj = p.conjugate();
    let lambda = crate::vnorm::grid_distribution(&conj, &MeasurableSet::Cube(e.clone()))
        .map(|d| indicator_norm(&d))?;
    let mut g = vec![0.0; dom.len()];
    let mut ones = vec![0.0; dom.len()];
    for &i in &cells {
        match conj.values()[i] {
            ExpValue::Infinite => ones[i] = 1.0,
            ExpValue::Finite(pc) => g[i] = lambda.powf(1.0 - pc),
        }
    }
    let mut out = Vec::new();
    for v in [g, ones] {
        if v.iter().any(|x| *x > 0.0) {
            out.push(GridFunction::new(dom.clone(), v)?);
        }
    }
    Ok(out)
}

/// Checks sup‖A_E^α‖ ≤ K_{p(·)}K₀^α and K₀^α ≤ k⁻¹·sup‖A_E^α‖ on a grid.
pub fn averaging_uniform_bound(
    p: &GridExponent,
    alpha: f64,
    family: &CubeFamily,
    witnesses: &[GridFunction],
) -> Result<AveragingReport> {
    if witnesses.iter().any(|w| w.is_zero()) {
        return Err(precondition("witnesses must be nonzero"));
    }
    let k0a = k0alpha_constant(p, alpha, family)?;
    let strata = p.strata()?;
    let ratios = family
        .cubes
        .par_iter()
        .map(|e| {
            let mut fs: Vec<GridFunction> = witnesses.to_vec();
            fs.extend(dual_witnesses(p, e)?);
            let mut best = 0.0f64;
            for f in &fs {
                let num = averaging_norm(p, alpha, e, f)?;
                let den = luxemburg_norm(f, p)?;
                if den > 0.0 {
                    best = best.max(num / den);
                }
            }
            Ok(best)
        })
        .collect::<Result<Vec<f64>>>()?;
    let sup_ratio = ratios.into_iter().fold(0.0, f64::max);
    let kk = strata.holder_constant();
    let kd = strata.duality_constant();
    Ok(AveragingReport {
        sup_ratio,
        k0alpha_best: k0a.best_value,
        holder_constant: kk,
        duality_constant: kd,
        upper_holds: sup_ratio <= kk * k0a.best_value * (1.0 + 1e-6),
        lower_holds: k0a.best_value <= sup_ratio / kd * (1.0 + 1e-6),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SandwichRow {
    pub cube: Cube,
    pub measure: f64,
    pub harmonic_mean: f64,
    pub norm: f64,
    pub lower: f64,
    pub upper: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SandwichReport {
    pub holder_constant: f64,
    pub duality_constant: f64,
    pub k0_family: f64,
    pub rows: Vec<SandwichRow>,
    pub all_hold: bool,
}

/// |E|^{1/p_E}/(2K) ≤ ‖χ_E‖_{p(·)} ≤ 2K²K₀(ℰ)/k·|E|^{1/p_E} for each E,
/// with K₀(ℰ) taken as the family's own K₀ estimate.
pub fn norm_harmonic_sandwich(p: &impl ExponentOracle, family: &CubeFamily) -> Result<SandwichReport> {
    let k0 = k0_constant(p, family)?;
    let strata = p.strata()?;
    let (kk, kd) = (strata.holder_constant(), strata.duality_constant());
    let rows: Vec<SandwichRow> = k0
        .samples
        .iter()
        .map(|s| {
            let base = s.norms.measure.powf(s.norms.harmonic_mean.recip());
            let lower = base / (2.0 * kk);
            let upper = 2.0 * kk * kk * k0.best_value / kd * base;
            SandwichRow {
                cube: s.cube.clone(),
                measure: s.norms.measure,
                harmonic_mean: s.norms.harmonic_mean.to_f64(),
                norm: s.norms.norm_p,
                lower,
                upper,
                holds: lower <= s.norms.norm_p * (1.0 + 1e-9) && s.norms.norm_p <= upper * (1.0 + 1e-9),
            }
        })
        .collect();
    let all_hold = rows.iter().all(|r| r.holds);
    Ok(SandwichReport {
        holder_constant: kk,
        duality_constant: kd,
        k0_family: k0.best_value,
        rows,
        all_hold,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct IffRow {
    pub cube: Cube,
    pub k0alpha: f64,
    pub k0_p: f64,
    pub k0_q: f64,
    /// |1/p′_E + 1/q_E − (1 − α/n)|.
    pub identity_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IffReport {
    pub rows: Vec<IffRow>,
    pub max_k0alpha: f64,
    pub max_k0_p: f64,
    pub max_k0_q: f64,
    /// K₀(p), K₀(q) samples ≤ 5·K₀^α sample.
    pub forward_holds: bool,
    /// K₀^α sample ≤ (2K²K₀(p)/k)_{p′}·(2K²K₀(q)/k)_q.
    pub converse_holds: bool,
    pub identity_holds: bool,
}

/// Both directions of K₀^α(ℰ) ⇔ p, q ∈ K₀(ℰ), sample by sample.
pub fn k0alpha_iff_k0_check(p: &impl ExponentOracle, alpha: f64, family: &CubeFamily) -> Result<IffReport> {
    sobolev_precondition(p, alpha)?;
    let n = p.dimension();
    let nf = n as f64;
    let rows = family
        .cubes
        .par_iter()
        .map(|c| {
            let dist = p.distribution(c)?;
            let nm = indicator_norms(&dist, alpha, n)?;
            let qd = dist.map(PointwiseMap::SobolevDual { alpha, n })?;
            let q_conj = indicator_norm(&qd.map(PointwiseMap::Conjugate)?);
            let e = nm.measure;
            let identity_error = ((1.0 - nm.harmonic_mean.recip()) + qd.harmonic_mean()?.recip()
                - (1.0 - alpha / nf))
                .abs();
            Ok(IffRow {
                cube: c.clone(),
                k0alpha: e.powf(alpha / nf - 1.0) * nm.norm_conj * nm.norm_q,
                k0_p: nm.norm_p * nm.norm_conj / e,
                k0_q: nm.norm_q * q_conj / e,
                identity_error,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max = |f: fn(&IffRow) -> f64| rows.iter().map(f).fold(0.0, f64::max);
    let (ma, mp, mq) = (max(|r| r.k0alpha), max(|r| r.k0_p), max(|r| r.k0_q));
    let sp = p.strata()?;
    let sq = sp.map(PointwiseMap::SobolevDual { alpha, n })?;
    let bound = |k: f64, kd: f64, k0: f64| 2.0 * k * k * k0 / kd;
    let converse = bound(sp.holder_constant(), sp.duality_constant(), mp)
        * bound(sq.holder_constant(), sq.duality_constant(), mq);
    let tol = 1.0 + 1e-9;
    Ok(IffReport {
        forward_holds: rows.iter().all(|r| {
            r.k0_p <= GENERALIZED_HOLDER * r.k0alpha * tol && r.k0_q <= GENERALIZED_HOLDER * r.k0alpha * tol
        }),
        converse_holds: rows.iter().all(|r| r.k0alpha <= converse * tol),
        identity_holds: rows.iter().all(|r| r.identity_error <= 1e-12),
        rows,
        max_k0alpha: ma,
        max_k0_p: mp,
        max_k0_q: mq,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingCheck {
    pub m: usize,
    pub min_sampled: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinimalCube {
    pub cube: Cube,
    pub value: f64,
    pub checks: Vec<ScalingCheck>,
}

fn centers_in(d: &Cube, half: f64, step: f64, cap: usize) -> Vec<Vec<f64>> {
    let n = d.dimension();
    let k = if half <= 0.0 {
        1
    } else {
        (((2.0 * half) / step).round() as usize + 1).clamp(2, cap)
    };
    let offs: Vec<f64> = if k == 1 {
        vec![0.0]
    } else {
        (0..k).map(|i| -half + 2.0 * half * i as f64 / (k - 1) as f64).collect()
    };
    let total = k.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut c = d.center.clone();
            for v in c.iter_mut() {
                *v += offs[idx % k];
                idx /= k;
            }
            c
        })
        .collect()
}

/// Cube Q* ⊂ D of radius r minimizing p_{Q*∩E} over centers at spacing h in
/// the shrunken cube F(x, R − r), checked against sampled cubes of every
/// integer multiple radius m·r ≤ R.
pub fn minimal_harmonic_mean_cube(p: &GridExponent, d: &Cube, r: f64, keep: &[bool]) -> Result<MinimalCube> {
    if !d.is_axis_aligned() {
        return Err(precondition("minimal cube search needs an axis-aligned D"));
    }
    let big_r = d.radius;
    if !(r > 0.0 && r <= big_r * (1.0 + 1e-12)) {
        return Err(precondition(format!("need 0 < r <= R, got r = {r}, R = {big_r}")));
    }
    let dom = p.domain();
    if keep.len() != dom.len() {
        return Err(precondition("mask length differs from cell count"));
    }
    let oracle = Restricted { p, keep };
    let d_weights = dom.cube_weights(d);
    let outside: f64 = d_weights
        .iter()
        .filter(|&&(i, _)| !keep[i])
        .map(|c| c.1)
        .sum::<f64>()
        * dom.cell_volume();
    let covered: f64 = d_weights.iter().map(|c| c.1).sum::<f64>() * dom.cell_volume();
    let missing = (d.measure() - covered).max(0.0) + outside;
    if missing >= (2.0 * r).powi(dom.dimension() as i32) {
        return Err(precondition("|D \\ E| must be smaller than (2r)^n"));
    }
    if d_weights
        .iter()
        .any(|&(i, _)| keep[i] && p.values()[i].is_infinite())
    {
        return Err(precondition("p must be finite on D ∩ E"));
    }
    let hm = |q: &Cube| -> Result<f64> { Ok(oracle.distribution(q)?.harmonic_mean()?.to_f64()) };
    let h = dom.h();
    let candidates = centers_in(d, big_r - r, h, usize::MAX);
    let values = candidates
        .par_iter()
        .map(|c| hm(&Cube::new(c.clone(), r)?))
        .collect::<Result<Vec<f64>>>()?;
    let (mut bi, mut bv) = (0, f64::INFINITY);
    for (i, v) in values.iter().enumerate() {
        if *v < bv {
            bv = *v;
            bi = i;
        }
    }
    let cube = Cube::new(candidates[bi].clone(), r)?;
    let mut checks = Vec::new();
    let mut m = 1;
    while (m as f64) * r <= big_r * (1.0 + 1e-12) {
        let rad = m as f64 * r;
        let cap = if dom.dimension() == 1 { 257 } else { 17 };
        let sampled = centers_in(d, (big_r - rad).max(0.0), h, cap)
            .par_iter()
            .map(|c| hm(&Cube::new(c.clone(), rad)?))
            .collect::<Result<Vec<f64>>>()?;
        let min_sampled = sampled.into_iter().fold(f64::INFINITY, f64::min);
        checks.push(ScalingCheck {
            m,
            min_sampled,
            holds: bv <= min_sampled + 1e-9,
        });
        m += 1;
    }
    Ok(MinimalCube {
        cube,
        value: bv,
        checks,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Subdivision {
    /// 1/p_{K∩E}.
    pub whole: f64,
    /// Σ |K_i∩E|/|K∩E| · 1/p_{K_i∩E}.
    pub weighted: f64,
    /// min over subcubes of p_{K_i∩E}.
    pub min_sub: f64,
}

/// Splits K into m^n equal subcubes and compares 1/p_{K∩E} with the
/// measure-weighted average of the subcube values.
pub fn subdivision_identity(p: &impl ExponentOracle, k: &Cube, m: usize) -> Result<Subdivision> {
    if m == 0 || !k.is_axis_aligned() {
        return Err(precondition("need m >= 1 and an axis-aligned cube"));
    }
    let whole_d = p.distribution(k)?;
    let n = k.dimension();
    let r = k.radius / m as f64;
    let total = m.pow(n as u32);
    let mut weighted = 0.0;
    let mut min_sub = f64::INFINITY;
    let mass = whole_d.mass();
    for mut idx in 0..total {
        let mut c = k.center.clone();
        for v in c.iter_mut() {
            *v += -k.radius + r * (2 * (idx % m) + 1) as f64;
            idx /= m;
        }
        match p.distribution(&Cube::new(c, r)?) {
            Ok(d) => {
                let hm = d.harmonic_mean()?;
                weighted += d.mass() / mass * hm.recip();
                min_sub = min_sub.min(hm.to_f64());
            }
            Err(Error::DegenerateSet(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(Subdivision {
        whole: whole_d.harmonic_mean()?.recip(),
        weighted,
        min_sub,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::ExponentFunction;
    use crate::geometry::AxisBox;
    use crate::grid::GridDomain;

    fn fin(v: f64) -> ExpValue {
        ExpValue::Finite(v)
    }

    #[test]
    fn constant_exponent_samples_are_one() {
        let p = ExponentFunction::constant(AxisBox::interval(-10.0, 10.0).unwrap(), fin(1.5)).unwrap();
        let fam = CubeFamily::lattice(&center_lattice(-3.0, 3.0, 5), &log_ladder(0.01, 5.0, 7)).unwrap();
        for alpha in [0.0, 0.3, 0.6] {
            let r = k0alpha_constant(&p, alpha, &fam).unwrap();
            assert!(r.samples.iter().all(|s| (s.value - 1.0).abs() < 1e-9), "alpha {alpha}");
        }
        assert!(k0alpha_constant(&p, 0.7, &fam).is_err());
    }

    #[test]
    fn alpha_zero_reduces_to_k0() {
        let p = ExponentFunction::steps(&[0.0, 1.0, 2.0], &[fin(1.5), fin(3.0)]).unwrap();
        let fam = CubeFamily::intervals(&[(0.5, 1.5), (0.0, 2.0), (0.9, 1.2)]).unwrap();
        assert_eq!(
            k0alpha_constant(&p, 0.0, &fam).unwrap().best_value,
            k0_constant(&p, &fam).unwrap().best_value
        );
    }

    #[test]
    fn sandwich_trivial_case() {
        let p = ExponentFunction::constant(AxisBox::interval(0.0, 4.0).unwrap(), fin(2.0)).unwrap();
        let r = norm_harmonic_sandwich(&p, &CubeFamily::intervals(&[(0.0, 4.0)]).unwrap()).unwrap();
        let row = &r.rows[0];
        assert!((row.norm - 2.0).abs() < 1e-12);
        assert!((row.lower - 1.0).abs() < 1e-12 && (row.upper - 4.0).abs() < 1e-9);
    }

    #[test]
    fn hm_counterexample_search() {
        let q = AxisBox::new(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap();
        let inner = AxisBox::new(vec![-0.5, -0.5], vec![0.5, 0.5]).unwrap();
        let p = ExponentFunction::new(
            2,
            q.clone(),
            vec![
                crate::exponent::Piece::constant(inner, fin(2.0)),
                crate::exponent::Piece::constant(q, fin(1.0)),
            ],
        )
        .unwrap();
        let g = GridDomain::cube(-1.0, 1.0, 2, 40).unwrap();
        let gp = GridExponent::sample(&p, &g).unwrap();
        let keep = vec![true; g.len()];
        let d = Cube::new(vec![0.0, 0.0], 1.0).unwrap();
        let m = minimal_harmonic_mean_cube(&gp, &d, 0.75, &keep).unwrap();
        assert!((m.value - 9.0 / 7.0).abs() < 1e-12);
        assert_eq!(m.checks.len(), 1);
        assert!(m.checks[0].holds);
        let whole = harmonic(&gp, &d);
        assert!(whole < m.value);
    }

    fn harmonic(p: &GridExponent, c: &Cube) -> f64 {
        crate::vnorm::harmonic_mean(p, &MeasurableSet::Cube(c.clone())).unwrap().to_f64()
    }

    #[test]
    fn minimal_cube_hugs_low_side() {
        let p = ExponentFunction::steps(&[0.0, 1.0, 2.0], &[fin(1.2), fin(2.5)]).unwrap();
        let g = GridDomain::cube(0.0, 2.0, 1, 64).unwrap();
        let gp = GridExponent::sample(&p, &g).unwrap();
        let d = Cube::new(vec![1.0], 1.0).unwrap();
        let m = minimal_harmonic_mean_cube(&gp, &d, 0.25, &vec![true; 64]).unwrap();
        assert!(m.cube.center[0] <= 0.75 + 1e-12);
        assert!((m.value - 1.2).abs() < 1e-12);
        assert!(m.checks.iter().all(|c| c.holds));
    }

    #[test]
    fn subdivision_is_a_weighted_average() {
        let p = ExponentFunction::steps(&[0.0, 0.3, 1.1, 2.0], &[fin(1.2), fin(2.5), fin(1.7)]).unwrap();
        let s = subdivision_identity(&p, &Cube::interval(0.1, 1.9).unwrap(), 3).unwrap();
        assert!((s.whole - s.weighted).abs() < 1e-12);
        assert!(s.min_sub <= 1.0 / s.whole + 1e-12);
    }

    #[test]
    fn averaging_bound_constant_exponent() {
        let g = GridDomain::cube(0.0, 4.0, 1, 64).unwrap();
        let p = GridExponent::sample(
            &ExponentFunction::constant(AxisBox::interval(0.0, 4.0).unwrap(), fin(1.5)).unwrap(),
            &g,
        )
        .unwrap();
        let fam = CubeFamily::intervals(&[(0.0, 1.0), (1.0, 3.0), (0.5, 4.0)]).unwrap();
        let e = Cube::interval(1.0, 3.0).unwrap();
        let chi = GridFunction::indicator(g.clone(), &MeasurableSet::Cube(e.clone()), None).unwrap();
        let ratio = averaging_norm(&p, 0.25, &e, &chi).unwrap() / luxemburg_norm(&chi, &p).unwrap();
        assert!((ratio - 1.0).abs() < 1e-9);
        let r = averaging_uniform_bound(&p, 0.25, &fam, &[chi]).unwrap();
        assert!(r.upper_holds && r.lower_holds, "{r:?}");
    }
}

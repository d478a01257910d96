//! Modulars, Luxemburg norms, harmonic means and the Hölder pairing check.
//!
//! Every norm here reduces to a [`ModularSum`]: a list of terms
//! `(value, exponent, measure)` whose modular at scale λ is
//! `Σ measure·(value/λ)^exponent` plus `sup value/λ` over the terms with
//! infinite exponent. Grid functions and exact value distributions both
//! produce one, so the same bisection serves both.

use crate::error::{precondition, Error, Result};
use crate::exponent::{ExpValue, ExponentFunction, PointwiseMap, Strata, ValueDistribution};
use crate::geometry::Cube;
use crate::grid::{GridExponent, GridFunction, MeasurableSet};
use crate::numeric::par_sum_by;

/// Relative tolerance of the Luxemburg bisection.
pub const NORM_RTOL: f64 = 1e-13;

#[derive(Clone, Debug, Default)]
pub struct ModularSum {
    terms: Vec<(f64, f64, f64)>,
    sup: f64,
}

impl ModularSum {
    pub fn new() -> Self {
        ModularSum::default()
    }

    pub fn push(&mut self, value: f64, exponent: ExpValue, measure: f64) {
        if value == 0.0 || measure == 0.0 {
            return;
        }
        match exponent {
            ExpValue::Infinite => self.sup = self.sup.max(value),
            ExpValue::Finite(p) => self.terms.push((value, p, measure)),
        }
    }

    pub fn from_distribution(dist: &ValueDistribution) -> Self {
        let mut s = ModularSum::new();
        for (p, w) in &dist.atoms {
            s.push(1.0, *p, *w);
        }
        s.compact();
        s
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty() && self.sup == 0.0
    }

    /// Merges terms with equal value and exponent.
    pub fn compact(&mut self) {
        if self.terms.len() < 2 {
            return;
        }
        self.terms
            .sort_unstable_by(|a, b| (a.0, a.1).partial_cmp(&(b.0, b.1)).unwrap());
        let mut out: Vec<(f64, f64, f64)> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match out.last_mut() {
                Some(last) if last.0 == t.0 && last.1 == t.1 => last.2 += t.2,
                _ => out.push(t),
            }
        }
        self.terms = out;
    }

    /// ρ(f/λ); +∞ when a term overflows.
    pub fn eval(&self, lambda: f64) -> f64 {
        let ln_l = lambda.ln();
        let finite = par_sum_by(self.terms.len(), |i| {
            let (a, p, w) = self.terms[i];
            w * (p * (a.ln() - ln_l)).exp()
        });
        finite + self.sup / lambda
    }

    /// inf{λ > 0 : ρ(f/λ) ≤ 1} by bisection in log λ.
    pub fn luxemburg(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        let top = self.terms.iter().map(|t| t.0).fold(self.sup, f64::max);
        let (mut lo, mut hi) = (top, top);
        let mut guard = 0;
        while self.eval(lo) <= 1.0 && guard < 4000 {
            lo *= 0.5;
            guard += 1;
        }
        while self.eval(hi) > 1.0 && guard < 8000 {
            hi *= 2.0;
            guard += 1;
        }
        if lo == hi {
            // ρ(top) ≤ 1 failed to bracket only if lo was never moved
            lo = hi * 0.5;
        }
        while hi / lo - 1.0 > NORM_RTOL {
            let mid = (lo * hi).sqrt();
            if self.eval(mid) > 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    }
}

fn check_shared(f: &GridFunction, p: &GridExponent) -> Result<()> {
    if f.domain() != p.domain() {
        return Err(precondition("function and exponent live on different grids"));
    }
    Ok(())
}

/// Modular terms of `f` over `region` (cell weights times h^n).
pub fn modular_sum(f: &GridFunction, p: &GridExponent, region: &MeasurableSet) -> Result<ModularSum> {
    check_shared(f, p)?;
    let cells = region.cells(f.domain(), Some(p))?;
    if cells.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    let cv = f.domain().cell_volume();
    let mut s = ModularSum::new();
    for (i, w) in cells {
        s.push(f.values()[i], p.values()[i], w * cv);
    }
    Ok(s)
}

/// ρ_{p(·)}(f) over `region`, midpoint quadrature.
pub fn modular(f: &GridFunction, p: &GridExponent, region: &MeasurableSet) -> Result<f64> {
    Ok(modular_sum(f, p, region)?.eval(1.0))
}

fn whole(f: &GridFunction) -> MeasurableSet {
    MeasurableSet::Mask(vec![true; f.domain().len()])
}

pub fn luxemburg_norm(f: &GridFunction, p: &GridExponent) -> Result<f64> {
    luxemburg_norm_on(f, p, &whole(f))
}

pub fn luxemburg_norm_on(f: &GridFunction, p: &GridExponent, region: &MeasurableSet) -> Result<f64> {
    Ok(modular_sum(f, p, region)?.luxemburg())
}

/// ‖χ_E‖ from the distribution of p over E.
pub fn indicator_norm(dist: &ValueDistribution) -> f64 {
    ModularSum::from_distribution(dist).luxemburg()
}

/// Distribution of the sampled exponent over the cells of `set`.
pub fn grid_distribution(p: &GridExponent, set: &MeasurableSet) -> Result<ValueDistribution> {
    let cv = p.domain().cell_volume();
    let atoms: Vec<(ExpValue, f64)> = set
        .cells(p.domain(), Some(p))?
        .into_iter()
        .map(|(i, w)| (p.values()[i], w * cv))
        .collect();
    if atoms.is_empty() {
        return Err(Error::DegenerateSet("set contains no cells".into()));
    }
    Ok(ValueDistribution { atoms })
}

/// p_E = (avg_E 1/p)⁻¹ on the grid.
pub fn harmonic_mean(p: &GridExponent, set: &MeasurableSet) -> Result<ExpValue> {
    grid_distribution(p, set)?.harmonic_mean()
}

pub fn holder_constant(p: &GridExponent) -> Result<f64> {
    Ok(p.strata()?.holder_constant())
}

pub fn duality_constant(p: &GridExponent) -> Result<f64> {
    Ok(p.strata()?.duality_constant())
}

#[derive(Clone, Debug, PartialEq)]
pub struct HolderReport {
    pub lhs: f64,
    pub rhs: f64,
    pub constant: f64,
    pub holds: bool,
}

/// ∫|fg| ≤ K_{p(·)}‖f‖_{p(·)}‖g‖_{p′(·)}.
pub fn holder_pairing_check(f: &GridFunction, g: &GridFunction, p: &GridExponent) -> Result<HolderReport> {
    check_shared(f, p)?;
    check_shared(g, p)?;
    let cv = f.domain().cell_volume();
    let lhs = par_sum_by(f.values().len(), |i| f.values()[i] * g.values()[i]) * cv;
    let constant = holder_constant(p)?;
    let rhs = constant * luxemburg_norm(f, p)? * luxemburg_norm(g, &p.conjugate())?;
    Ok(HolderReport {
        lhs,
        rhs,
        constant,
        holds: lhs <= rhs * (1.0 + 1e-6),
    })
}

/// Something that can report the distribution of p over a cube. Grid and
/// exact backends implement it so cube-family scans work with either.
pub trait ExponentOracle: Sync {
    fn dimension(&self) -> usize;
    fn distribution(&self, q: &Cube) -> Result<ValueDistribution>;
    fn strata(&self) -> Result<Strata>;
}

impl ExponentOracle for ExponentFunction {
    fn dimension(&self) -> usize {
        ExponentFunction::dimension(self)
    }

    fn distribution(&self, q: &Cube) -> Result<ValueDistribution> {
        if !q.is_axis_aligned() {
            return Err(precondition("exact distributions need axis-aligned cubes"));
        }
        ExponentFunction::distribution(self, &q.as_box())
    }

    fn strata(&self) -> Result<Strata> {
        ExponentFunction::strata(self)
    }
}

impl ExponentOracle for GridExponent {
    fn dimension(&self) -> usize {
        self.domain().dimension()
    }

    fn distribution(&self, q: &Cube) -> Result<ValueDistribution> {
        grid_distribution(self, &MeasurableSet::Cube(q.clone()))
    }

    fn strata(&self) -> Result<Strata> {
        GridExponent::strata(self)
    }
}

/// The sampled exponent restricted to a cell mask: distributions are taken
/// over Q ∩ E.
pub struct Restricted<'a> {
    pub p: &'a GridExponent,
    pub keep: &'a [bool],
}

impl ExponentOracle for Restricted<'_> {
    fn dimension(&self) -> usize {
        self.p.domain().dimension()
    }

    fn distribution(&self, q: &Cube) -> Result<ValueDistribution> {
        let cv = self.p.domain().cell_volume();
        let atoms: Vec<(ExpValue, f64)> = self
            .p
            .domain()
            .cube_weights(q)
            .into_iter()
            .filter(|&(i, _)| self.keep[i])
            .map(|(i, w)| (self.p.values()[i], w * cv))
            .collect();
        if atoms.is_empty() {
            return Err(Error::DegenerateSet("cube misses the restricted set".into()));
        }
        Ok(ValueDistribution { atoms })
    }

    fn strata(&self) -> Result<Strata> {
        Strata::from_samples(
            self.p
                .values()
                .iter()
                .zip(self.keep)
                .filter(|(_, k)| **k)
                .map(|(v, _)| *v),
        )
    }
}

/// Norms of χ_E for p, p′ and q from one distribution, plus p_E.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IndicatorNorms {
    pub measure: f64,
    pub harmonic_mean: ExpValue,
    pub norm_p: f64,
    pub norm_conj: f64,
    pub norm_q: f64,
}

pub fn indicator_norms(dist: &ValueDistribution, alpha: f64, n: usize) -> Result<IndicatorNorms> {
    let q = dist.map(PointwiseMap::SobolevDual { alpha, n })?;
    Ok(IndicatorNorms {
        measure: dist.mass(),
        harmonic_mean: dist.harmonic_mean()?,
        norm_p: indicator_norm(dist),
        norm_conj: indicator_norm(&dist.map(PointwiseMap::Conjugate)?),
        norm_q: indicator_norm(&q),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::AxisBox;
    use crate::grid::GridDomain;

    fn fin(v: f64) -> ExpValue {
        ExpValue::Finite(v)
    }

    fn steps(g: &GridDomain, breaks: &[f64], vals: &[ExpValue]) -> GridExponent {
        let p = ExponentFunction::steps(breaks, vals).unwrap();
        GridExponent::sample(&p, g).unwrap()
    }

    #[test]
    fn unit_interval_modular() {
        let g = GridDomain::cube(0.0, 1.0, 1, 64).unwrap();
        let f = GridFunction::from_fn(g.clone(), |_| 1.0).unwrap();
        let p = steps(&g, &[0.0, 1.0], &[fin(2.0)]);
        assert!((modular(&f, &p, &MeasurableSet::Mask(vec![true; 64])).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn golden_ratio_norm() {
        let g = GridDomain::cube(0.0, 2.0, 1, 64).unwrap();
        let f = GridFunction::from_fn(g.clone(), |_| 1.0).unwrap();
        let p = steps(&g, &[0.0, 1.0, 2.0], &[fin(1.0), fin(2.0)]);
        let golden = 0.5 * (1.0 + 5f64.sqrt());
        assert!((luxemburg_norm(&f, &p).unwrap() - golden).abs() < 1e-12);
        assert!((modular(&f, &p, &MeasurableSet::Mask(vec![true; 64])).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn constant_exponent_closed_form() {
        let g = GridDomain::cube(0.0, 4.0, 1, 16).unwrap();
        let f = GridFunction::from_fn(g.clone(), |_| 1.0).unwrap();
        let p = steps(&g, &[0.0, 4.0], &[fin(2.0)]);
        assert!((luxemburg_norm(&f, &p).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(luxemburg_norm(&GridFunction::zeros(g), &p).unwrap(), 0.0);
    }

    #[test]
    fn infinite_exponent_uses_sup() {
        let g = GridDomain::cube(0.0, 1.0, 1, 8).unwrap();
        let f = GridFunction::from_fn(g.clone(), |x| x[0]).unwrap();
        let p = steps(&g, &[0.0, 1.0], &[ExpValue::Infinite]);
        assert!((luxemburg_norm(&f, &p).unwrap() - f.max()).abs() < 1e-12);
    }

    #[test]
    fn holder_equality_case() {
        let g = GridDomain::cube(0.0, 1.0, 1, 32).unwrap();
        let f = GridFunction::from_fn(g.clone(), |_| 1.0).unwrap();
        let p = steps(&g, &[0.0, 1.0], &[fin(2.0)]);
        let r = holder_pairing_check(&f, &f, &p).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-14 && (r.rhs - 1.0).abs() < 1e-12 && r.holds);
    }

    #[test]
    fn holder_mixed_strata_uses_four() {
        let g = GridDomain::cube(0.0, 3.0, 1, 96).unwrap();
        let f = GridFunction::from_fn(g.clone(), |x| if x[0] < 2.0 { 1.0 } else { 0.0 }).unwrap();
        let p = steps(&g, &[0.0, 1.0, 2.0, 3.0], &[fin(1.0), fin(2.0), ExpValue::Infinite]);
        let r = holder_pairing_check(&f, &f, &p).unwrap();
        assert_eq!(r.constant, 4.0);
        assert!(r.holds);
    }

    #[test]
    fn grid_and_exact_harmonic_means_agree() {
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
        let c = Cube::new(vec![0.0, 0.0], 1.0).unwrap();
        let a = harmonic_mean(&gp, &MeasurableSet::Cube(c.clone())).unwrap().to_f64();
        let b = ExponentOracle::distribution(&p, &c).unwrap().harmonic_mean().unwrap().to_f64();
        assert!((a - 8.0 / 7.0).abs() < 1e-12 && (b - 8.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_set_is_an_error() {
        let g = GridDomain::cube(0.0, 1.0, 1, 8).unwrap();
        let p = steps(&g, &[0.0, 1.0], &[fin(2.0)]);
        assert!(matches!(
            harmonic_mean(&p, &MeasurableSet::Mask(vec![false; 8])),
            Err(Error::DegenerateSet(_))
        ));
    }
}

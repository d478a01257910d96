//! Exponent functions p(·): evaluation, conjugation, the Sobolev dual,
//! strata, value distributions over boxes, and log-Hölder estimates.

pub mod bump;
pub mod spec;
pub mod value;

pub use bump::{BumpSum, CenterKind, CenterSeq, PlateauBump};
pub use value::{ExpValue, PointwiseMap, Strata, ValueClass};

use crate::error::{Error, Result};
use crate::geometry::AxisBox;
use rayon::prelude::*;

/// What an exponent piece evaluates to on its box.
#[derive(Clone, Debug, PartialEq)]
pub enum ValueSpec {
    Constant(ExpValue),
    Bumps(BumpSum),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Piece {
    pub region: AxisBox,
    pub spec: ValueSpec,
}

impl Piece {
    pub fn constant(region: AxisBox, v: ExpValue) -> Self {
        Piece {
            region,
            spec: ValueSpec::Constant(v),
        }
    }

    pub fn bumps(region: AxisBox, b: BumpSum) -> Self {
        Piece {
            region,
            spec: ValueSpec::Bumps(b),
        }
    }

    fn eval(&self, x: &[f64]) -> ExpValue {
        match &self.spec {
            ValueSpec::Constant(v) => *v,
            ValueSpec::Bumps(b) => ExpValue::Finite(b.eval(x[0])),
        }
    }

    fn range(&self) -> (f64, f64) {
        match &self.spec {
            ValueSpec::Constant(v) => (v.to_f64(), v.to_f64()),
            ValueSpec::Bumps(b) => b.range(),
        }
    }
}

/// Piecewise exponent on an axis-aligned domain. Overlapping pieces are
/// resolved by first match. Bump sums vary along the first coordinate only.
#[derive(Clone, Debug)]
pub struct ExponentFunction {
    dimension: usize,
    domain: AxisBox,
    pieces: Vec<Piece>,
    /// Per piece: the part of the domain where it is the first match.
    effective: Vec<Vec<AxisBox>>,
    maps: Vec<PointwiseMap>,
    declared: (ExpValue, ExpValue),
}

/// Pushforward of Lebesgue measure on a set under p: (value, mass) atoms.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValueDistribution {
    pub atoms: Vec<(ExpValue, f64)>,
}

impl ValueDistribution {
    pub fn mass(&self) -> f64 {
        crate::numeric::pairwise_sum(&self.atoms.iter().map(|a| a.1).collect::<Vec<_>>())
    }

    pub fn map(&self, m: PointwiseMap) -> Result<ValueDistribution> {
        Ok(ValueDistribution {
            atoms: self
                .atoms
                .iter()
                .map(|(v, w)| Ok((m.apply(*v)?, *w)))
                .collect::<Result<_>>()?,
        })
    }

    /// Harmonic mean p_E = (avg_E 1/p)⁻¹ with 1/∞ = 0.
    pub fn harmonic_mean(&self) -> Result<ExpValue> {
        let mass = self.mass();
        if !(mass > 0.0) {
            return Err(Error::DegenerateSet("set has zero measure".into()));
        }
        let s = crate::numeric::pairwise_sum(
            &self.atoms.iter().map(|(v, w)| v.recip() * w).collect::<Vec<_>>(),
        );
        Ok(ExpValue::from_recip(s / mass))
    }

    /// Largest finite value, or ∞ if an infinite atom carries mass.
    pub fn sup(&self) -> ExpValue {
        let mut best = ExpValue::Finite(1.0);
        for (v, w) in &self.atoms {
            if *w > 0.0 && *v > best {
                best = *v;
            }
        }
        best
    }
}

impl ExponentFunction {
    pub fn new(dimension: usize, domain: AxisBox, pieces: Vec<Piece>) -> Result<Self> {
        let bad = |m: &str| Error::InvalidSpec(m.to_string());
        if dimension == 0 || dimension > 3 {
            return Err(bad("dimension must be 1, 2 or 3"));
        }
        if domain.dimension() != dimension {
            return Err(bad("domain dimension mismatch"));
        }
        if !domain.has_interior() {
            return Err(bad("domain has empty interior"));
        }
        if pieces.iter().any(|p| p.region.dimension() != dimension) {
            return Err(bad("piece box dimension mismatch"));
        }
        let mut effective = Vec::with_capacity(pieces.len());
        let mut uncovered = vec![domain.clone()];
        for piece in &pieces {
            let mine: Vec<AxisBox> = uncovered
                .iter()
                .filter_map(|u| u.intersect(&piece.region))
                .filter(|b| b.has_interior())
                .collect();
            uncovered = uncovered
                .iter()
                .flat_map(|u| u.subtract(&piece.region))
                .filter(|b| b.has_interior())
                .collect();
            effective.push(mine);
        }
        if !uncovered.is_empty() {
            return Err(bad("pieces do not cover the domain"));
        }
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for (piece, eff) in pieces.iter().zip(&effective) {
            if !eff.is_empty() {
                let (a, b) = piece.range();
                lo = lo.min(a);
                hi = hi.max(b);
            }
        }
        if lo < 1.0 {
            return Err(bad("exponent takes values below 1"));
        }
        let declared = (ExpValue::new(lo)?, ExpValue::new(hi)?);
        Ok(ExponentFunction {
            dimension,
            domain,
            pieces,
            effective,
            maps: Vec::new(),
            declared,
        })
    }

    /// p ≡ v on `domain`.
    pub fn constant(domain: AxisBox, v: ExpValue) -> Result<Self> {
        let n = domain.dimension();
        ExponentFunction::new(n, domain.clone(), vec![Piece::constant(domain, v)])
    }

    /// 1-D step exponent: values[i] on [breaks[i], breaks[i+1]].
    pub fn steps(breaks: &[f64], values: &[ExpValue]) -> Result<Self> {
        if breaks.len() != values.len() + 1 || values.is_empty() {
            return Err(Error::InvalidSpec("steps need one more break than values".into()));
        }
        let pieces = values
            .iter()
            .enumerate()
            .map(|(i, v)| Ok(Piece::constant(AxisBox::interval(breaks[i], breaks[i + 1])?, *v)))
            .collect::<Result<Vec<_>>>()?;
        ExponentFunction::new(1, AxisBox::interval(breaks[0], *breaks.last().unwrap())?, pieces)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn domain(&self) -> &AxisBox {
        &self.domain
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn maps(&self) -> &[PointwiseMap] {
        &self.maps
    }

    /// Declared bounds (p₋, p₊) from the piece specs, after any maps.
    pub fn declared_bounds(&self) -> (ExpValue, ExpValue) {
        self.declared
    }

    pub fn eval(&self, x: &[f64]) -> Result<ExpValue> {
        if x.len() != self.dimension || !self.domain.contains(x) {
            return Err(Error::Domain { point: x.to_vec() });
        }
        let piece = self
            .pieces
            .iter()
            .find(|p| p.region.contains(x))
            .ok_or_else(|| Error::Domain { point: x.to_vec() })?;
        self.apply_maps(piece.eval(x))
    }

    fn apply_maps(&self, mut v: ExpValue) -> Result<ExpValue> {
        for m in &self.maps {
            v = m.apply(v)?;
        }
        Ok(v)
    }

    pub(crate) fn with_map(&self, m: PointwiseMap) -> Result<Self> {
        let (a, b) = self.declared;
        let (x, y) = (m.apply(a)?, m.apply(b)?);
        let declared = if x <= y { (x, y) } else { (y, x) };
        let mut out = self.clone();
        out.maps.push(m);
        out.declared = declared;
        Ok(out)
    }

    /// p′ with 1/p + 1/p′ = 1.
    pub fn conjugate(&self) -> Self {
        self.with_map(PointwiseMap::Conjugate)
            .expect("conjugation is total on [1, inf]")
    }

    /// q with 1/p − 1/q = α/n. Requires p₊ ≤ n/α.
    pub fn sobolev_dual(&self, alpha: f64) -> Result<Self> {
        let n = self.dimension as f64;
        if !(alpha >= 0.0 && alpha < n) {
            return Err(Error::Precondition(format!("alpha must lie in [0, {n})")));
        }
        let p_plus = self.strata()?.p_plus();
        p_plus.sobolev(alpha, self.dimension)?;
        self.with_map(PointwiseMap::SobolevDual {
            alpha,
            n: self.dimension,
        })
    }

    /// Value classes on positive-measure parts of the domain.
    pub fn strata(&self) -> Result<Strata> {
        let mut classes = Vec::new();
        for (piece, eff) in self.pieces.iter().zip(&self.effective) {
            for b in eff {
                match &piece.spec {
                    ValueSpec::Constant(v) => classes.push(ValueClass::Point(*v)),
                    ValueSpec::Bumps(s) => classes.extend(s.classes_on(b.lo[0], b.hi[0])),
                }
            }
        }
        let mut strata = Strata::new(classes)?;
        for m in &self.maps {
            strata = strata.map(*m)?;
        }
        Ok(strata)
    }

    pub fn holder_constant(&self) -> Result<f64> {
        Ok(self.strata()?.holder_constant())
    }

    pub fn duality_constant(&self) -> Result<f64> {
        Ok(self.strata()?.duality_constant())
    }

    /// Exact value distribution of p over a bounded box (clipped to the
    /// domain). Bump shoulders are integrated with composite Gauss rules.
    pub fn distribution(&self, set: &AxisBox) -> Result<ValueDistribution> {
        if !set.is_finite() {
            return Err(Error::Precondition("distribution needs a bounded box".into()));
        }
        let clipped = self
            .domain
            .intersect(set)
            .filter(|b| b.has_interior())
            .ok_or(Error::EmptyIntersection)?;
        let mut atoms = Vec::new();
        for (piece, eff) in self.pieces.iter().zip(&self.effective) {
            for e in eff {
                let Some(cut) = e.intersect(&clipped).filter(|b| b.has_interior()) else {
                    continue;
                };
                match &piece.spec {
                    ValueSpec::Constant(v) => atoms.push((*v, cut.volume())),
                    ValueSpec::Bumps(s) => {
                        let cross: f64 = (1..self.dimension).map(|d| cut.side(d)).product();
                        let mut raw = Vec::new();
                        s.atoms_on(cut.lo[0], cut.hi[0], cross, &mut raw)?;
                        atoms.extend(raw.into_iter().map(|(v, w)| (ExpValue::Finite(v), w)));
                    }
                }
            }
        }
        let mut dist = ValueDistribution { atoms };
        for m in &self.maps {
            dist = dist.map(*m)?;
        }
        Ok(dist)
    }

    /// The quotient |p(x) − p(y)|·(−log|x − y|) from the LH₀ condition.
    pub fn lh0_quotient(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        let d: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        let (px, py) = (self.eval(x)?, self.eval(y)?);
        match (px, py) {
            (ExpValue::Finite(a), ExpValue::Finite(b)) => Ok((a - b).abs() * -d.ln()),
            _ => Err(Error::Precondition("LH0 needs a finite exponent".into())),
        }
    }

    /// Lower estimate of the LH₀ constant along the first axis of the domain.
    pub fn lh0_modulus(&self, sample_pairs: usize) -> Result<f64> {
        if !self.domain.is_finite() {
            return Err(Error::Precondition(
                "domain is unbounded; use lh0_modulus_on with a window".into(),
            ));
        }
        self.lh0_modulus_on(self.domain.lo[0], self.domain.hi[0], sample_pairs)
    }

    /// Pairs are points of a uniform lattice with `sample_pairs` intervals
    /// on [lo, hi] (other coordinates at the domain midpoint) separated by
    /// dyadic multiples of the lattice step below 1/2.
    pub fn lh0_modulus_on(&self, lo: f64, hi: f64, sample_pairs: usize) -> Result<f64> {
        if self.strata()?.p_plus().is_infinite() {
            return Err(Error::Precondition("LH0 estimate requires p+ < inf".into()));
        }
        if !(hi > lo) || sample_pairs == 0 {
            return Err(Error::Precondition("need lo < hi and at least one pair".into()));
        }
        let rest: Vec<f64> = (1..self.dimension)
            .map(|d| {
                let m = 0.5 * (self.domain.lo[d] + self.domain.hi[d]);
                if m.is_finite() {
                    m
                } else {
                    0.0f64.clamp(self.domain.lo[d], self.domain.hi[d])
                }
            })
            .collect();
        let step = (hi - lo) / sample_pairs as f64;
        let values: Vec<f64> = (0..=sample_pairs)
            .into_par_iter()
            .map(|i| {
                let mut x = vec![lo + i as f64 * step];
                x.extend_from_slice(&rest);
                self.eval(&x).map(|v| v.to_f64())
            })
            .collect::<Result<_>>()?;
        let mut best: f64 = 0.0;
        let mut m = 1usize;
        while m <= sample_pairs && (m as f64) * step < 0.5 {
            let w = -((m as f64) * step).ln();
            let jump = (0..=sample_pairs - m)
                .into_par_iter()
                .map(|i| (values[i] - values[i + m]).abs())
                .reduce(|| 0.0, f64::max);
            best = best.max(jump * w);
            m *= 2;
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(v: f64) -> ExpValue {
        ExpValue::Finite(v)
    }

    fn mixed() -> ExponentFunction {
        ExponentFunction::steps(&[0.0, 1.0, 2.0, 3.0], &[fin(1.0), fin(2.0), ExpValue::Infinite]).unwrap()
    }

    #[test]
    fn constant_eval_and_domain_error() {
        let p = ExponentFunction::constant(AxisBox::interval(0.0, 1.0).unwrap(), fin(2.0)).unwrap();
        assert_eq!(p.eval(&[0.3]).unwrap(), fin(2.0));
        assert!(matches!(p.eval(&[1.5]), Err(Error::Domain { .. })));
    }

    #[test]
    fn first_match_on_boundaries() {
        let p = mixed();
        assert_eq!(p.eval(&[1.0]).unwrap(), fin(1.0));
        assert_eq!(p.eval(&[2.0]).unwrap(), fin(2.0));
    }

    #[test]
    fn conjugate_swaps_bounds() {
        let p = ExponentFunction::steps(&[0.0, 1.0, 2.0], &[fin(1.5), fin(4.0)]).unwrap();
        let c = p.conjugate();
        assert_eq!(c.declared_bounds(), (fin(4.0 / 3.0), fin(3.0)));
        assert_eq!(c.eval(&[0.5]).unwrap(), fin(3.0));
        let one = ExponentFunction::constant(AxisBox::interval(0.0, 1.0).unwrap(), fin(1.0)).unwrap();
        assert_eq!(one.conjugate().eval(&[0.5]).unwrap(), ExpValue::Infinite);
    }

    #[test]
    fn sobolev_precondition() {
        let p = ExponentFunction::constant(AxisBox::interval(0.0, 1.0).unwrap(), fin(3.0)).unwrap();
        assert!(p.sobolev_dual(0.5).is_err());
        let q = p.sobolev_dual(0.25).unwrap();
        assert!((q.eval(&[0.1]).unwrap().to_f64() - 12.0).abs() < 1e-12);
    }

    #[test]
    fn holder_constant_of_mixed_steps() {
        let p = mixed();
        assert_eq!(p.holder_constant().unwrap(), 4.0);
        assert!((p.duality_constant().unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let two = ExponentFunction::steps(&[0.0, 1.0, 2.0], &[fin(1.0), fin(3.0)]).unwrap();
        assert_eq!(two.duality_constant().unwrap(), 0.5);
    }

    #[test]
    fn uncovered_domain_is_rejected() {
        let pieces = vec![Piece::constant(AxisBox::interval(0.0, 1.0).unwrap(), fin(2.0))];
        assert!(ExponentFunction::new(1, AxisBox::interval(0.0, 2.0).unwrap(), pieces).is_err());
    }

    #[test]
    fn distribution_of_nested_squares() {
        let q = AxisBox::new(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap();
        let inner = AxisBox::new(vec![-0.5, -0.5], vec![0.5, 0.5]).unwrap();
        let p = ExponentFunction::new(
            2,
            q.clone(),
            vec![Piece::constant(inner, fin(2.0)), Piece::constant(q.clone(), fin(1.0))],
        )
        .unwrap();
        let hm = p.distribution(&q).unwrap().harmonic_mean().unwrap().to_f64();
        assert!((hm - 8.0 / 7.0).abs() < 1e-14);
    }

    #[test]
    fn lh0_of_step_grows_with_resolution() {
        let p = ExponentFunction::steps(&[-1.0, 0.0, 1.0], &[fin(1.0), fin(2.0)]).unwrap();
        let coarse = p.lh0_modulus(2_000).unwrap();
        let fine = p.lh0_modulus(2_000_000).unwrap();
        assert!(fine >= 13.8 && fine > coarse + 5.0, "{coarse} {fine}");
        let q = p.lh0_quotient(&[-0.5e-6], &[0.5e-6]).unwrap();
        assert!((q - 13.815510557964274).abs() < 1e-9);
    }

    #[test]
    fn lh0_of_constant_is_zero() {
        let p = ExponentFunction::constant(AxisBox::interval(0.0, 1.0).unwrap(), fin(2.0)).unwrap();
        assert_eq!(p.lh0_modulus(1000).unwrap(), 0.0);
    }
}

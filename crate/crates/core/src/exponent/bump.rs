//! Plateau bumps and bump sums `base + height·Σ_k φ(x₁ − c_k)`.

use super::value::{ExpValue, ValueClass};
use crate::error::{Error, Result};
use crate::numeric::composite_gauss;

/// Gauss panels used across one shoulder when integrating over a bump.
const SHOULDER_PANELS: usize = 4;

/// Profile with a flat top of half-width `plateau_halfwidth`, a cubic
/// smoothstep shoulder, and support `[-support_halfwidth, support_halfwidth]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlateauBump {
    pub support_halfwidth: f64,
    pub plateau_halfwidth: f64,
    pub height: f64,
}

impl PlateauBump {
    pub fn new(support_halfwidth: f64, plateau_halfwidth: f64, height: f64) -> Result<Self> {
        if !(support_halfwidth > 0.0 && support_halfwidth.is_finite()) {
            return Err(Error::InvalidSpec("support_halfwidth must be positive".into()));
        }
        if !(plateau_halfwidth > 0.0 && plateau_halfwidth < support_halfwidth) {
            return Err(Error::InvalidSpec(
                "plateau_halfwidth must lie in (0, support_halfwidth)".into(),
            ));
        }
        if !(height >= 0.0 && height.is_finite()) {
            return Err(Error::InvalidSpec("bump height must be finite and >= 0".into()));
        }
        Ok(PlateauBump {
            support_halfwidth,
            plateau_halfwidth,
            height,
        })
    }

    /// Shoulder ramp in [0, 1]: 0 at the support edge, 1 at the plateau edge.
    pub fn ramp(&self, u: f64) -> f64 {
        let a = u.abs();
        if a <= self.plateau_halfwidth {
            1.0
        } else if a >= self.support_halfwidth {
            0.0
        } else {
            let s = (self.support_halfwidth - a) / (self.support_halfwidth - self.plateau_halfwidth);
            s * s * (3.0 - 2.0 * s)
        }
    }

    /// φ(u) for an offset `u` from the bump center.
    pub fn profile(&self, u: f64) -> f64 {
        self.height * self.ramp(u)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CenterKind {
    /// c_k = e^{rate·k} + offset
    Exp,
    /// c_k = k^rate + offset
    Power,
}

/// Increasing center sequence indexed by k = 1, 2, …, `count` (None = unbounded).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CenterSeq {
    pub kind: CenterKind,
    pub rate: f64,
    pub count: Option<u64>,
    pub offset: f64,
}

impl CenterSeq {
    pub fn center(&self, k: u64) -> f64 {
        let kf = k as f64;
        match self.kind {
            CenterKind::Exp => (self.rate * kf).exp() + self.offset,
            CenterKind::Power => kf.powf(self.rate) + self.offset,
        }
    }

    fn last(&self) -> u64 {
        self.count.unwrap_or(u64::MAX / 4)
    }

    /// Largest k with c_k <= x, or 0 when x lies left of c_1.
    pub fn index_floor(&self, x: f64) -> u64 {
        if self.count == Some(0) || x < self.center(1) {
            return 0;
        }
        let last = self.last();
        if x == f64::INFINITY {
            return last;
        }
        let y = x - self.offset;
        let guess = match self.kind {
            CenterKind::Exp => y.ln() / self.rate,
            CenterKind::Power => y.powf(1.0 / self.rate),
        };
        let mut k = if guess.is_finite() && guess >= 1.0 {
            (guess.floor() as u64).clamp(1, last)
        } else {
            1
        };
        while k < last && self.center(k + 1) <= x {
            k += 1;
        }
        while k > 1 && self.center(k) > x {
            k -= 1;
        }
        k
    }

    /// Smallest gap between consecutive centers, if it is attained.
    fn min_spacing(&self) -> Option<f64> {
        let last = self.last();
        if last < 2 {
            return None;
        }
        let first = self.center(2) - self.center(1);
        let grows = match self.kind {
            CenterKind::Exp => true,
            CenterKind::Power => self.rate >= 1.0,
        };
        if grows {
            Some(first)
        } else if let Some(c) = self.count {
            Some(self.center(c) - self.center(c - 1))
        } else {
            Some(0.0)
        }
    }
}

/// `base ± Σ_k φ(x₁ − c_k)` along the first coordinate. A negative
/// `amplitude` makes the bumps dip below the base; `shape.height` is its
/// absolute value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BumpSum {
    pub base: f64,
    pub amplitude: f64,
    pub shape: PlateauBump,
    pub centers: CenterSeq,
}

/// One atom of the pushforward of Lebesgue measure under p: value and mass.
pub type Atom = (f64, f64);

impl BumpSum {
    pub fn new(
        base: f64,
        amplitude: f64,
        support_halfwidth: f64,
        plateau_halfwidth: f64,
        centers: CenterSeq,
    ) -> Result<Self> {
        let shape = PlateauBump::new(support_halfwidth, plateau_halfwidth, amplitude.abs())?;
        if !(centers.rate > 0.0 && centers.rate.is_finite()) {
            return Err(Error::InvalidSpec("center rate must be positive".into()));
        }
        if !centers.offset.is_finite() {
            return Err(Error::InvalidSpec("center offset must be finite".into()));
        }
        if let Some(gap) = centers.min_spacing() {
            if gap < 2.0 * shape.support_halfwidth * (1.0 - 1e-12) {
                return Err(Error::InvalidSpec(format!(
                    "bump supports overlap: minimum center spacing {gap} < {}",
                    2.0 * shape.support_halfwidth
                )));
            }
        }
        let lo = base.min(base + amplitude);
        if !(base.is_finite() && amplitude.is_finite()) || lo < 1.0 {
            return Err(Error::InvalidSpec(format!(
                "bump sum takes values below 1 (base {base}, amplitude {amplitude})"
            )));
        }
        Ok(BumpSum {
            base,
            amplitude,
            shape,
            centers,
        })
    }

    pub fn range(&self) -> (f64, f64) {
        let top = self.base + self.amplitude;
        (self.base.min(top), self.base.max(top))
    }

    pub fn plateau_value(&self) -> f64 {
        self.base + self.amplitude
    }

    /// Value at offset `u` from a single bump's center.
    pub fn local(&self, u: f64) -> f64 {
        self.base + self.amplitude * self.shape.ramp(u)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let k = self.centers.index_floor(x);
        let mut v = self.base;
        for j in [k, k + 1] {
            if j >= 1 && self.centers.count.map_or(true, |c| j <= c) {
                let u = x - self.centers.center(j);
                if u.abs() < self.shape.support_halfwidth {
                    v = self.local(u);
                }
            }
        }
        v
    }

    /// Indices of bumps whose open support meets the open interval (a, b).
    fn touching(&self, a: f64, b: f64) -> Option<(u64, u64)> {
        let s = self.shape.support_halfwidth;
        let last = self.centers.last();
        let mut first = self.centers.index_floor(a - s).max(1);
        while first <= last && self.centers.center(first) + s <= a {
            first += 1;
        }
        let mut hi = if b.is_finite() {
            self.centers.index_floor(b + s)
        } else {
            last.min(first.saturating_add(1_000_000))
        };
        while b.is_finite() && hi >= first && hi >= 1 && self.centers.center(hi) - s >= b {
            hi -= 1;
        }
        if hi == 0 || first > hi || first > last {
            None
        } else {
            Some((first, hi.min(last)))
        }
    }

    /// Value classes of positive measure on the interval (a, b).
    pub fn classes_on(&self, a: f64, b: f64) -> Vec<ValueClass> {
        let mut out = Vec::new();
        let point = |v: f64| ValueClass::Point(ExpValue::Finite(v));
        let (s, w) = (self.shape.support_halfwidth, self.shape.plateau_halfwidth);
        let Some((k1, k2)) = self.touching(a, b) else {
            out.push(point(self.base));
            return out;
        };
        if self.amplitude == 0.0 {
            out.push(point(self.base));
            return out;
        }
        let overlaps = |lo: f64, hi: f64| lo.max(a) < hi.min(b);
        let mut plateau = false;
        let mut shoulder = false;
        let mut candidates = vec![k1, k2];
        if k2 > k1 + 1 {
            candidates.push(k1 + 1);
        }
        for k in candidates {
            let c = self.centers.center(k);
            plateau |= overlaps(c - w, c + w);
            shoulder |= overlaps(c - s, c - w) || overlaps(c + w, c + s);
        }
        let c1 = self.centers.center(k1);
        let c2 = self.centers.center(k2);
        let mut base = a < c1 - s || b > c2 + s;
        if k2 > k1 {
            let gap_lo = self.centers.center(k1 + 1) - c1;
            let gap_hi = c2 - self.centers.center(k2 - 1);
            base |= gap_lo.max(gap_hi) > 2.0 * s * (1.0 + 1e-12);
        }
        if base {
            out.push(point(self.base));
        }
        if plateau {
            out.push(point(self.plateau_value()));
        }
        if shoulder {
            let (lo, hi) = self.range();
            out.push(ValueClass::Open(lo, hi));
        }
        out
    }

    /// Atoms of the value distribution on [a, b] (finite), each mass scaled
    /// by `cross` (the measure of the box's remaining sides). Full bumps are
    /// counted in O(1), so intervals holding billions of bumps are cheap.
    pub fn atoms_on(&self, a: f64, b: f64, cross: f64, out: &mut Vec<Atom>) -> Result<()> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::Precondition(
                "value distribution needs a bounded interval".into(),
            ));
        }
        if b <= a {
            return Ok(());
        }
        let s = self.shape.support_halfwidth;
        let mut covered = 0.0;
        if let Some((k1, k2)) = self.touching(a, b) {
            let inside = |k: u64| {
                let c = self.centers.center(k);
                c - s >= a && c + s <= b
            };
            let full_lo = if inside(k1) { k1 } else { k1 + 1 };
            let full_hi = if inside(k2) { k2 } else { k2.saturating_sub(1) };
            let full = if full_hi >= full_lo { (full_hi - full_lo + 1) as f64 } else { 0.0 };
            if full > 0.0 {
                self.full_bump_atoms(full * cross, out);
                covered += full * 2.0 * s;
            }
            let mut partial = Vec::new();
            if !inside(k1) {
                partial.push(k1);
            }
            if k2 != k1 && !inside(k2) {
                partial.push(k2);
            }
            for k in partial {
                let c = self.centers.center(k);
                let (ul, uh) = ((a - c).max(-s), (b - c).min(s));
                if uh > ul {
                    self.partial_bump_atoms(ul, uh, cross, out);
                    covered += uh - ul;
                }
            }
        }
        let gap = ((b - a) - covered).max(0.0);
        if gap > 0.0 {
            out.push((self.base, gap * cross));
        }
        Ok(())
    }

    fn full_bump_atoms(&self, weight: f64, out: &mut Vec<Atom>) {
        let (s, w) = (self.shape.support_halfwidth, self.shape.plateau_halfwidth);
        out.push((self.plateau_value(), 2.0 * w * weight));
        for (u, wt) in composite_gauss(w, s, SHOULDER_PANELS) {
            out.push((self.local(u), 2.0 * wt * weight));
        }
    }

    fn partial_bump_atoms(&self, ul: f64, uh: f64, cross: f64, out: &mut Vec<Atom>) {
        let (s, w) = (self.shape.support_halfwidth, self.shape.plateau_halfwidth);
        let pl = (ul.max(-w), uh.min(w));
        if pl.1 > pl.0 {
            out.push((self.plateau_value(), (pl.1 - pl.0) * cross));
        }
        for (lo, hi) in [(-s, -w), (w, s)] {
            let (x, y) = (ul.max(lo), uh.min(hi));
            if y > x {
                for (u, wt) in composite_gauss(x, y, SHOULDER_PANELS) {
                    out.push((self.local(u), wt * cross));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex62_like() -> BumpSum {
        BumpSum::new(
            1.2,
            0.8,
            0.5,
            0.25,
            CenterSeq {
                kind: CenterKind::Power,
                rate: 2.0,
                count: None,
                offset: 0.5,
            },
        )
        .unwrap()
    }

    #[test]
    fn ramp_is_monotone_and_continuous() {
        let b = PlateauBump::new(0.5, 0.25, 2.0).unwrap();
        let mut prev = b.profile(0.5);
        assert_eq!(prev, 0.0);
        for i in 1..=1000 {
            let u = 0.5 - 0.25 * i as f64 / 1000.0;
            let v = b.profile(u);
            assert!(v >= prev && v <= 2.0);
            prev = v;
        }
        assert!((prev - 2.0).abs() < 1e-15);
    }

    #[test]
    fn eval_on_plateau_and_gap() {
        let p = ex62_like();
        assert_eq!(p.eval(1.5), 2.0);
        assert_eq!(p.eval(4.5), 2.0);
        assert_eq!(p.eval(3.0), 1.2);
        assert_eq!(p.eval(-7.0), 1.2);
    }

    #[test]
    fn index_floor_brackets() {
        let c = ex62_like().centers;
        assert_eq!(c.index_floor(1.4), 0);
        assert_eq!(c.index_floor(1.5), 1);
        assert_eq!(c.index_floor(4.49), 1);
        assert_eq!(c.index_floor(1e12 + 0.5), 1_000_000);
    }

    #[test]
    fn overlapping_supports_rejected() {
        let r = BumpSum::new(
            2.0,
            1.0,
            0.6,
            0.25,
            CenterSeq {
                kind: CenterKind::Power,
                rate: 1.0,
                count: None,
                offset: 0.0,
            },
        );
        assert!(r.is_err());
    }

    #[test]
    fn atoms_have_total_mass_of_interval() {
        let p = ex62_like();
        for (a, b) in [(0.0, 10.0), (1.3, 1.6), (0.7, 1e6), (2.0, 3.0)] {
            let mut atoms = Vec::new();
            p.atoms_on(a, b, 1.0, &mut atoms).unwrap();
            let m: f64 = atoms.iter().map(|x| x.1).sum();
            assert!((m - (b - a)).abs() < 1e-9 * (b - a), "{a} {b} {m}");
        }
    }

    #[test]
    fn atoms_integrate_reciprocal_against_fine_midpoint_rule() {
        let p = ex62_like();
        let (a, b) = (0.3, 17.9);
        let mut atoms = Vec::new();
        p.atoms_on(a, b, 1.0, &mut atoms).unwrap();
        let exact: f64 = atoms.iter().map(|(v, m)| m / v).sum();
        let n = 400_000;
        let h = (b - a) / n as f64;
        let mid: f64 = (0..n).map(|i| h / p.eval(a + (i as f64 + 0.5) * h)).sum();
        assert!((exact - mid).abs() < 1e-8, "{exact} {mid}");
    }

    #[test]
    fn classes_detect_gaps_and_plateaus() {
        let p = ex62_like();
        // inside a plateau only
        assert_eq!(p.classes_on(1.3, 1.7), vec![ValueClass::Point(ExpValue::Finite(2.0))]);
        // strictly between supports
        assert_eq!(p.classes_on(2.1, 3.9), vec![ValueClass::Point(ExpValue::Finite(1.2))]);
        let all = p.classes_on(f64::NEG_INFINITY, f64::INFINITY);
        assert_eq!(all.len(), 3);
    }
}

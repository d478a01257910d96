//! Exponent values in [1, ∞], the pointwise maps p ↦ p′ and p ↦ q, and the
//! stratification Ω₁ / Ω_* / Ω_∞ used by the Hölder and duality constants.

use crate::error::{precondition, Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

/// A value in [1, ∞]. Infinity is its own variant, never a large float.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExpValue {
    Finite(f64),
    Infinite,
}

impl ExpValue {
    pub fn new(v: f64) -> Result<Self> {
        if v == f64::INFINITY {
            Ok(ExpValue::Infinite)
        } else if v.is_finite() && v >= 1.0 {
            Ok(ExpValue::Finite(v))
        } else {
            Err(precondition(format!("exponent value {v} is not in [1, inf]")))
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExpValue::Infinite)
    }

    pub fn is_one(self) -> bool {
        self == ExpValue::Finite(1.0)
    }

    /// 1/p with 1/∞ = 0.
    pub fn recip(self) -> f64 {
        match self {
            ExpValue::Finite(v) => 1.0 / v,
            ExpValue::Infinite => 0.0,
        }
    }

    /// Build from a reciprocal in [0, 1]; 0 maps to ∞.
    pub fn from_recip(r: f64) -> Self {
        if r <= 0.0 {
            ExpValue::Infinite
        } else {
            ExpValue::Finite((1.0 / r).max(1.0))
        }
    }

    /// Float view for printing and comparisons; ∞ becomes `f64::INFINITY`.
    pub fn to_f64(self) -> f64 {
        match self {
            ExpValue::Finite(v) => v,
            ExpValue::Infinite => f64::INFINITY,
        }
    }

    /// Hölder conjugate: 1 ↔ ∞, otherwise p/(p−1).
    pub fn conjugate(self) -> Self {
        match self {
            ExpValue::Infinite => ExpValue::Finite(1.0),
            ExpValue::Finite(v) if v == 1.0 => ExpValue::Infinite,
            ExpValue::Finite(v) => ExpValue::Finite(v / (v - 1.0)),
        }
    }

    /// Sobolev exponent q with 1/p − 1/q = α/n. Fails when p > n/α.
    pub fn sobolev(self, alpha: f64, n: usize) -> Result<Self> {
        if alpha == 0.0 {
            return Ok(self);
        }
        let nf = n as f64;
        let limit = nf / alpha;
        match self {
            ExpValue::Infinite => Err(precondition(format!(
                "p = inf exceeds n/alpha = {limit}; the Sobolev exponent is undefined"
            ))),
            ExpValue::Finite(v) => {
                let gap = nf - alpha * v;
                if gap.abs() <= 1e-13 * nf {
                    Ok(ExpValue::Infinite)
                } else if gap < 0.0 {
                    Err(precondition(format!(
                        "p = {v} exceeds n/alpha = {limit}; the Sobolev exponent is undefined"
                    )))
                } else {
                    Ok(ExpValue::Finite(nf * v / gap))
                }
            }
        }
    }
}

impl PartialOrd for ExpValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.to_f64().partial_cmp(&other.to_f64())
    }
}

impl fmt::Display for ExpValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpValue::Finite(v) => write!(f, "{v}"),
            ExpValue::Infinite => write!(f, "inf"),
        }
    }
}

/// Either a JSON number or one of the strings "inf", "+inf", "-inf".
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtNumber(pub f64);

impl Serialize for ExtNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0 == f64::INFINITY {
            s.serialize_str("inf")
        } else if self.0 == f64::NEG_INFINITY {
            s.serialize_str("-inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for ExtNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(ExtNumber(v)),
            Raw::Text(t) => match t.trim().to_ascii_lowercase().as_str() {
                "inf" | "+inf" | "infinity" => Ok(ExtNumber(f64::INFINITY)),
                "-inf" | "-infinity" => Ok(ExtNumber(f64::NEG_INFINITY)),
                other => Err(serde::de::Error::custom(format!(
                    "expected a number or \"inf\", got \"{other}\""
                ))),
            },
        }
    }
}

/// Pointwise transformation applied after evaluating the base exponent.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PointwiseMap {
    Conjugate,
    SobolevDual { alpha: f64, n: usize },
}

impl PointwiseMap {
    pub fn apply(self, v: ExpValue) -> Result<ExpValue> {
        match self {
            PointwiseMap::Conjugate => Ok(v.conjugate()),
            PointwiseMap::SobolevDual { alpha, n } => v.sobolev(alpha, n),
        }
    }

    fn apply_f64(self, v: f64) -> Result<f64> {
        Ok(self.apply(ExpValue::new(v)?)?.to_f64())
    }
}

/// A set of values attained on a set of positive measure: a single value
/// or an open range of finite values (a bump shoulder).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ValueClass {
    Point(ExpValue),
    Open(f64, f64),
}

impl ValueClass {
    pub fn map(self, m: PointwiseMap) -> Result<ValueClass> {
        Ok(match self {
            ValueClass::Point(v) => ValueClass::Point(m.apply(v)?),
            ValueClass::Open(a, b) => {
                let (x, y) = (m.apply_f64(a)?, m.apply_f64(b)?);
                ValueClass::Open(x.min(y), x.max(y))
            }
        })
    }

    fn bounds(self) -> (f64, f64) {
        match self {
            ValueClass::Point(v) => (v.to_f64(), v.to_f64()),
            ValueClass::Open(a, b) => (a, b),
        }
    }
}

/// Which of Ω₁, Ω_*, Ω_∞ carry positive measure, plus the essential range.
#[derive(Clone, Debug, PartialEq)]
pub struct Strata {
    pub classes: Vec<ValueClass>,
}

impl Strata {
    pub fn new(classes: Vec<ValueClass>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::DegenerateSet("exponent has no values on a set of positive measure".into()));
        }
        Ok(Strata { classes })
    }

    /// Collect the distinct values of a finite sample.
    pub fn from_samples(values: impl IntoIterator<Item = ExpValue>) -> Result<Self> {
        let mut classes: Vec<ValueClass> = Vec::new();
        let (mut has_one, mut has_inf) = (false, false);
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values {
            match v {
                ExpValue::Infinite => has_inf = true,
                ExpValue::Finite(x) if x == 1.0 => has_one = true,
                ExpValue::Finite(x) => {
                    lo = lo.min(x);
                    hi = hi.max(x);
                }
            }
        }
        if has_one {
            classes.push(ValueClass::Point(ExpValue::Finite(1.0)));
        }
        if has_inf {
            classes.push(ValueClass::Point(ExpValue::Infinite));
        }
        if lo <= hi {
            classes.push(ValueClass::Point(ExpValue::Finite(lo)));
            classes.push(ValueClass::Point(ExpValue::Finite(hi)));
        }
        Strata::new(classes)
    }

    pub fn map(&self, m: PointwiseMap) -> Result<Strata> {
        Strata::new(self.classes.iter().map(|c| c.map(m)).collect::<Result<_>>()?)
    }

    pub fn has_one(&self) -> bool {
        self.classes
            .iter()
            .any(|c| matches!(c, ValueClass::Point(v) if v.is_one()))
    }

    pub fn has_infinite(&self) -> bool {
        self.classes
            .iter()
            .any(|c| matches!(c, ValueClass::Point(ExpValue::Infinite)))
    }

    pub fn has_star(&self) -> bool {
        self.classes.iter().any(|c| match c {
            ValueClass::Open(..) => true,
            ValueClass::Point(ExpValue::Finite(v)) => *v > 1.0,
            ValueClass::Point(ExpValue::Infinite) => false,
        })
    }

    /// Essential infimum p₋.
    pub fn p_minus(&self) -> ExpValue {
        let lo = self.classes.iter().map(|c| c.bounds().0).fold(f64::INFINITY, f64::min);
        ExpValue::new(lo).unwrap_or(ExpValue::Finite(1.0))
    }

    /// Essential supremum p₊.
    pub fn p_plus(&self) -> ExpValue {
        let hi = self.classes.iter().map(|c| c.bounds().1).fold(1.0, f64::max);
        ExpValue::new(hi).unwrap_or(ExpValue::Infinite)
    }

    /// K_{p(·)} = (1/p₋ − 1/p₊ + 1)[Ω_*] + [Ω_∞] + [Ω₁], at most 4.
    pub fn holder_constant(&self) -> f64 {
        let mut k = 0.0;
        if self.has_star() {
            k += self.p_minus().recip() - self.p_plus().recip() + 1.0;
        }
        if self.has_infinite() {
            k += 1.0;
        }
        if self.has_one() {
            k += 1.0;
        }
        k
    }

    /// k_{p(·)} = 1 / (number of strata present).
    pub fn duality_constant(&self) -> f64 {
        let count = [self.has_star(), self.has_infinite(), self.has_one()]
            .iter()
            .filter(|b| **b)
            .count();
        1.0 / count as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(v: f64) -> ExpValue {
        ExpValue::Finite(v)
    }

    #[test]
    fn conjugate_conventions() {
        assert_eq!(fin(2.0).conjugate(), fin(2.0));
        assert_eq!(fin(1.0).conjugate(), ExpValue::Infinite);
        assert_eq!(ExpValue::Infinite.conjugate(), fin(1.0));
        assert_eq!(fin(1.5).conjugate(), fin(3.0));
    }

    #[test]
    fn sobolev_examples() {
        assert_eq!(fin(1.5).sobolev(0.5, 1).unwrap(), fin(6.0));
        assert_eq!(fin(3.7).sobolev(0.0, 2).unwrap(), fin(3.7));
        assert_eq!(fin(2.0).sobolev(0.5, 1).unwrap(), ExpValue::Infinite);
        assert!(fin(2.5).sobolev(0.5, 1).is_err());
        // 10/7 with α = 1/4 gives 20/9
        let q = fin(10.0 / 7.0).sobolev(0.25, 1).unwrap().to_f64();
        assert!((q - 20.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn holder_constant_three_strata() {
        let s = Strata::from_samples([fin(1.0), fin(2.0), ExpValue::Infinite]).unwrap();
        assert_eq!(s.holder_constant(), 4.0);
        assert!((s.duality_constant() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn holder_constant_single_strata() {
        assert_eq!(Strata::from_samples([fin(2.0)]).unwrap().holder_constant(), 1.0);
        assert_eq!(Strata::from_samples([fin(1.0)]).unwrap().holder_constant(), 1.0);
        let two = Strata::from_samples([fin(1.0), fin(3.0)]).unwrap();
        assert_eq!(two.duality_constant(), 0.5);
    }

    #[test]
    fn strata_map_moves_one_to_infinity() {
        let s = Strata::from_samples([fin(1.0), fin(2.0)]).unwrap();
        let c = s.map(PointwiseMap::Conjugate).unwrap();
        assert!(c.has_infinite() && c.has_star() && !c.has_one());
        assert_eq!(c.p_minus(), fin(2.0));
    }

    #[test]
    fn ext_number_roundtrip() {
        let v: Vec<ExtNumber> = serde_json::from_str(r#"[1.5, "inf", "-inf"]"#).unwrap();
        assert_eq!(v[1].0, f64::INFINITY);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"[1.5,"inf","-inf"]"#);
    }
}

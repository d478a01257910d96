//! Axis-aligned boxes and cubes.

use crate::error::{precondition, Result};

/// Closed axis-aligned box `[lo, hi]`. Bounds may be infinite.
#[derive(Clone, Debug, PartialEq)]
pub struct AxisBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl AxisBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(precondition("box bounds must have equal, positive length"));
        }
        if lo.iter().zip(&hi).any(|(a, b)| a.is_nan() || b.is_nan() || a > b) {
            return Err(precondition("box requires lo <= hi on every axis"));
        }
        Ok(AxisBox { lo, hi })
    }

    pub fn interval(a: f64, b: f64) -> Result<Self> {
        AxisBox::new(vec![a], vec![b])
    }

    pub fn whole(n: usize) -> Self {
        AxisBox {
            lo: vec![f64::NEG_INFINITY; n],
            hi: vec![f64::INFINITY; n],
        }
    }

    pub fn dimension(&self) -> usize {
        self.lo.len()
    }

    pub fn side(&self, d: usize) -> f64 {
        self.hi[d] - self.lo[d]
    }

    pub fn volume(&self) -> f64 {
        (0..self.dimension()).map(|d| self.side(d)).product()
    }

    /// True when every side has positive length.
    pub fn has_interior(&self) -> bool {
        (0..self.dimension()).all(|d| self.side(d) > 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.lo.iter().chain(&self.hi).all(|v| v.is_finite())
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(v, (a, b))| *a <= *v && *v <= *b)
    }

    pub fn contains_box(&self, other: &AxisBox, tol: f64) -> bool {
        (0..self.dimension())
            .all(|d| other.lo[d] >= self.lo[d] - tol && other.hi[d] <= self.hi[d] + tol)
    }

    pub fn intersect(&self, other: &AxisBox) -> Option<AxisBox> {
        let n = self.dimension();
        let mut lo = Vec::with_capacity(n);
        let mut hi = Vec::with_capacity(n);
        for d in 0..n {
            let a = self.lo[d].max(other.lo[d]);
            let b = self.hi[d].min(other.hi[d]);
            if a > b {
                return None;
            }
            lo.push(a);
            hi.push(b);
        }
        Some(AxisBox { lo, hi })
    }

    /// `self \ other` as a list of boxes with disjoint interiors.
    pub fn subtract(&self, other: &AxisBox) -> Vec<AxisBox> {
        match self.intersect(other) {
            Some(cut) if cut.has_interior() => {}
            _ => return vec![self.clone()],
        }
        let mut rest = self.clone();
        let mut out = Vec::new();
        for d in 0..self.dimension() {
            if rest.lo[d] < other.lo[d] {
                let mut piece = rest.clone();
                piece.hi[d] = other.lo[d];
                out.push(piece);
                rest.lo[d] = other.lo[d];
            }
            if rest.hi[d] > other.hi[d] {
                let mut piece = rest.clone();
                piece.lo[d] = other.hi[d];
                out.push(piece);
                rest.hi[d] = other.hi[d];
            }
        }
        out
    }

    /// Euclidean distance between two boxes (0 when they touch or overlap).
    pub fn distance(&self, other: &AxisBox) -> f64 {
        (0..self.dimension())
            .map(|d| {
                let gap = (other.lo[d] - self.hi[d]).max(self.lo[d] - other.hi[d]).max(0.0);
                gap * gap
            })
            .sum::<f64>()
            .sqrt()
    }
}

/// Cube `Q(center, radius)` of side `2·radius`, optionally rotated by an
/// orthonormal basis whose rows are the cube's axes.
#[derive(Clone, Debug, PartialEq)]
pub struct Cube {
    pub center: Vec<f64>,
    pub radius: f64,
    pub basis: Option<Vec<Vec<f64>>>,
}

impl Cube {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(precondition(format!("cube radius must be positive, got {radius}")));
        }
        if center.is_empty() || center.iter().any(|c| !c.is_finite()) {
            return Err(precondition("cube center must be a finite point"));
        }
        Ok(Cube {
            center,
            radius,
            basis: None,
        })
    }

    pub fn oriented(center: Vec<f64>, radius: f64, basis: Vec<Vec<f64>>) -> Result<Self> {
        let n = center.len();
        if basis.len() != n || basis.iter().any(|u| u.len() != n) {
            return Err(precondition("basis must be n vectors of length n"));
        }
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = basis[i].iter().zip(&basis[j]).map(|(a, b)| a * b).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                if (dot - want).abs() > 1e-10 {
                    return Err(precondition("basis is not orthonormal within 1e-10"));
                }
            }
        }
        let mut q = Cube::new(center, radius)?;
        q.basis = Some(basis);
        Ok(q)
    }

    pub fn interval(a: f64, b: f64) -> Result<Self> {
        Cube::new(vec![0.5 * (a + b)], 0.5 * (b - a))
    }

    pub fn dimension(&self) -> usize {
        self.center.len()
    }

    pub fn side(&self) -> f64 {
        2.0 * self.radius
    }

    pub fn measure(&self) -> f64 {
        self.side().powi(self.dimension() as i32)
    }

    pub fn is_axis_aligned(&self) -> bool {
        self.basis.is_none()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        match &self.basis {
            None => x
                .iter()
                .zip(&self.center)
                .all(|(v, c)| (v - c).abs() <= self.radius),
            Some(b) => b.iter().all(|u| {
                let s: f64 = u
                    .iter()
                    .zip(x.iter().zip(&self.center))
                    .map(|(ui, (v, c))| ui * (v - c))
                    .sum();
                s.abs() <= self.radius
            }),
        }
    }

    /// Tightest axis-aligned box containing the cube.
    pub fn bounding_box(&self) -> AxisBox {
        let n = self.dimension();
        let mut ext = vec![self.radius; n];
        if let Some(b) = &self.basis {
            for (d, e) in ext.iter_mut().enumerate() {
                *e = self.radius * b.iter().map(|u| u[d].abs()).sum::<f64>();
            }
        }
        AxisBox {
            lo: (0..n).map(|d| self.center[d] - ext[d]).collect(),
            hi: (0..n).map(|d| self.center[d] + ext[d]).collect(),
        }
    }

    /// The cube as a box; only meaningful for axis-aligned cubes.
    pub fn as_box(&self) -> AxisBox {
        self.bounding_box()
    }

    /// Corner `center − r·Σ u_i` in the cube's own frame.
    pub fn lower_corner(&self) -> Vec<f64> {
        let mut lc = self.center.clone();
        for (i, v) in lc.iter_mut().enumerate() {
            let shift: f64 = match &self.basis {
                None => 1.0,
                Some(b) => b.iter().map(|u| u[i]).sum(),
            };
            *v -= self.radius * shift;
        }
        lc
    }

    /// Every corner of the cube (2^n points).
    pub fn corners(&self) -> Vec<Vec<f64>> {
        let n = self.dimension();
        let axes: Vec<Vec<f64>> = match &self.basis {
            None => (0..n)
                .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
                .collect(),
            Some(b) => b.clone(),
        };
        (0..1usize << n)
            .map(|mask| {
                let mut x = self.center.clone();
                for (i, u) in axes.iter().enumerate() {
                    let s = if mask >> i & 1 == 1 { 1.0 } else { -1.0 };
                    for d in 0..n {
                        x[d] += s * self.radius * u[d];
                    }
                }
                x
            })
            .collect()
    }

    /// Containment via corners (exact for convex bodies).
    pub fn contains_cube(&self, other: &Cube, tol: f64) -> bool {
        let grown = Cube {
            radius: self.radius + tol,
            ..self.clone()
        };
        other.corners().iter().all(|c| grown.contains(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subtract_leaves_frame() {
        let a = AxisBox::new(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap();
        let b = AxisBox::new(vec![-0.5, -0.5], vec![0.5, 0.5]).unwrap();
        let pieces = a.subtract(&b);
        let total: f64 = pieces.iter().map(|p| p.volume()).sum();
        assert!((total - 3.0).abs() < 1e-15);
        for p in &pieces {
            assert!(p.intersect(&b).map_or(true, |c| !c.has_interior()));
        }
    }

    #[test]
    fn subtract_disjoint_is_identity() {
        let a = AxisBox::interval(0.0, 1.0).unwrap();
        let b = AxisBox::interval(1.0, 2.0).unwrap();
        assert_eq!(a.subtract(&b), vec![a.clone()]);
    }

    #[test]
    fn cube_measure_and_corners() {
        let q = Cube::new(vec![0.0, 0.0], 0.5).unwrap();
        assert_eq!(q.measure(), 1.0);
        assert_eq!(q.corners().len(), 4);
        assert_eq!(q.lower_corner(), vec![-0.5, -0.5]);
    }

    #[test]
    fn rotated_cube_contains_its_center_region() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let q = Cube::oriented(vec![0.0, 0.0], 1.0, vec![vec![s, s], vec![-s, s]]).unwrap();
        assert!(q.contains(&[1.4, 0.0]));
        assert!(!q.contains(&[1.0, 1.0 + 1e-9]));
        let bb = q.bounding_box();
        assert!((bb.hi[0] - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn non_orthonormal_basis_rejected() {
        assert!(Cube::oriented(vec![0.0, 0.0], 1.0, vec![vec![1.0, 0.0], vec![1.0, 0.0]]).is_err());
    }

    #[test]
    fn box_distance() {
        let a = AxisBox::interval(0.0, 1.0).unwrap();
        let b = AxisBox::interval(3.0, 4.0).unwrap();
        assert_eq!(a.distance(&b), 2.0);
        assert_eq!(b.distance(&a), 2.0);
    }
}

//! The blow-up family behind the necessity of p₋ > 1: for each k a small
//! cube D_k around a point where p = 1, the sublevel set E_k = {p < β_k},
//! a dyadic chain of cubes Q_j sharing a lower corner, their (t, u₁)
//! partners P_j, and the normalized indicator f_k of Q_1 ∩ E_k. The
//! q-modular of M_α f_k / C then grows at least linearly in k.

use crate::error::{precondition, Error, Result};
use crate::exponent::{ExpValue, ExponentFunction};
use crate::geometry::Cube;
use crate::grid::{GridDomain, GridExponent, GridFunction, SummedArea};
use crate::k0::{k0_constant, minimal_harmonic_mean_cube, CubeFamily};
use crate::operators::{make_tu_pair, MaximalEvaluator, RadiusPolicy};
use crate::vnorm::{luxemburg_norm, Restricted};
use rayon::prelude::*;

/// Side-length fraction S used for D_k before any halving.
const START_SIDE: f64 = 0.49;
const MAX_HALVINGS: usize = 6;
/// Candidate density points per axis of the exponent's domain.
const SCAN_POINTS: usize = 33;

/// β_k = (n²k + n)/(n²k + α).
pub fn beta_k(n: usize, k: usize, alpha: f64) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    (nf * nf * kf + nf) / (nf * nf * kf + alpha)
}

/// −nk(1 − 1/β_k)·q(β_k) with q(β) = nβ/(n − αβ); identically −1.
/// 1 − 1/β_k is taken as (n − α)/(n²k + n), which avoids cancelling
/// digits when β_k is close to 1.
pub fn beta_identity(n: usize, k: usize, alpha: f64) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    let b = beta_k(n, k, alpha);
    let gap = (nf - alpha) / (nf * nf * kf + nf);
    -nf * kf * gap * (nf * b / (nf - alpha * b))
}

/// p = 2 − φ with φ = 1 on [−1, 1] and supported in [−2, 2] (first
/// coordinate), on the cube [−4, 4]ⁿ.
pub fn default_blowup_exponent(n: usize) -> Result<ExponentFunction> {
    use crate::exponent::{BumpSum, CenterKind, CenterSeq, Piece};
    use crate::geometry::AxisBox;
    let domain = AxisBox::new(vec![-4.0; n], vec![4.0; n])?;
    let bumps = BumpSum::new(
        2.0,
        -1.0,
        2.0,
        1.0,
        CenterSeq {
            kind: CenterKind::Power,
            rate: 1.0,
            count: Some(1),
            offset: -1.0,
        },
    )?;
    ExponentFunction::new(n, domain.clone(), vec![Piece::bumps(domain, bumps)])
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantCheck {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    pub holds: bool,
}

impl InvariantCheck {
    fn at_most(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        InvariantCheck {
            name: name.into(),
            measured,
            bound,
            holds: measured <= bound,
        }
    }

    fn above(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        InvariantCheck {
            name: name.into(),
            measured,
            bound,
            holds: measured > bound,
        }
    }
}

/// One index k of the family.
#[derive(Clone, Debug)]
pub struct BlowupLevel {
    pub k: usize,
    pub beta: f64,
    pub center: Vec<f64>,
    pub big_r: f64,
    pub r: f64,
    pub d: Cube,
    /// Signed coordinate axes u₁..u_n pointing from Q_1 into D_k.
    pub basis: Vec<Vec<f64>>,
    pub chain: Vec<Cube>,
    pub pairs: Vec<Cube>,
    /// p sampled on the grid of D_k (spacing ≤ r/4).
    pub p: GridExponent,
    /// Cells of D_k inside E_k.
    pub mask: Vec<bool>,
    pub f: GridFunction,
    pub density: f64,
    pub checks: Vec<InvariantCheck>,
}

impl BlowupLevel {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

#[derive(Clone, Debug)]
pub struct BlowupFamily {
    pub n: usize,
    pub alpha: f64,
    pub t: f64,
    pub k_max: usize,
    pub exponent: ExponentFunction,
    pub levels: Vec<BlowupLevel>,
}

impl BlowupFamily {
    pub fn all_hold(&self) -> bool {
        self.levels.iter().all(BlowupLevel::all_hold)
    }
}

fn density_candidates(p: &ExponentFunction) -> Vec<Vec<f64>> {
    let dom = p.domain();
    let n = p.dimension();
    let mid: Vec<f64> = (0..n).map(|d| 0.5 * (dom.lo[d] + dom.hi[d])).collect();
    let total = SCAN_POINTS.pow(n as u32);
    let mut pts: Vec<(f64, usize, Vec<f64>)> = (0..total)
        .filter_map(|i| {
            let mut idx = i;
            let mut x = vec![0.0; n];
            for (d, v) in x.iter_mut().enumerate() {
                let s = (idx % SCAN_POINTS) as f64 + 0.5;
                *v = dom.lo[d] + dom.side(d) * s / SCAN_POINTS as f64;
                idx /= SCAN_POINTS;
            }
            match p.eval(&x) {
                Ok(v) if v.is_one() => {
                    let dist = x.iter().zip(&mid).map(|(a, b)| (a - b) * (a - b)).sum::<f64>();
                    Some((dist, i, x))
                }
                _ => None,
            }
        })
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    pts.into_iter().map(|e| e.2).collect()
}

struct Placement {
    center: Vec<f64>,
    big_r: f64,
    r: f64,
    p: GridExponent,
    mask: Vec<bool>,
    density: f64,
    threshold: f64,
}

fn place(p: &ExponentFunction, t: f64, k: usize, beta: f64, candidates: &[Vec<f64>]) -> Result<Placement> {
    let n = p.dimension();
    let nf = n as f64;
    let spread = 2f64.powi(k as i32 - 1) * (t * nf.sqrt() + 2.0);
    let threshold = 1.0 - 2f64.powf(-nf * k as f64) * (t * nf.sqrt() + 2.0).powf(-nf);
    let mut side = START_SIDE;
    for _ in 0..=MAX_HALVINGS {
        let big_r = side / nf.sqrt();
        let r = big_r / spread;
        let cells = (2.0 * big_r / (0.25 * r)).ceil() as usize;
        for x in candidates {
            let lo: Vec<f64> = x.iter().map(|c| c - big_r).collect();
            let inside = (0..n).all(|d| lo[d] >= p.domain().lo[d] && x[d] + big_r <= p.domain().hi[d]);
            if !inside {
                continue;
            }
            let grid = GridDomain::new(lo, vec![cells; n], 2.0 * big_r / cells as f64)?;
            let pg = GridExponent::sample(p, &grid)?;
            let mask: Vec<bool> = pg
                .values()
                .iter()
                .map(|v| matches!(v, ExpValue::Finite(a) if *a < beta))
                .collect();
            let density = mask.iter().filter(|m| **m).count() as f64 / grid.len() as f64;
            if density > threshold {
                return Ok(Placement {
                    center: x.clone(),
                    big_r,
                    r,
                    p: pg,
                    mask,
                    density,
                    threshold,
                });
            }
        }
        side *= 0.5;
    }
    Err(Error::Construction(format!(
        "no point with p = 1 where {{p < {beta}}} has density above {threshold} in D_{k} \
         ({} candidates scanned)",
        candidates.len()
    )))
}

fn masked_measure(level_p: &GridExponent, mask: &[bool], q: &Cube) -> f64 {
    let dom = level_p.domain();
    dom.cube_weights(q)
        .iter()
        .filter(|&&(i, _)| mask[i])
        .map(|c| c.1)
        .sum::<f64>()
        * dom.cell_volume()
}

fn build_level(p: &ExponentFunction, alpha: f64, t: f64, k: usize, candidates: &[Vec<f64>]) -> Result<BlowupLevel> {
    let n = p.dimension();
    let nf = n as f64;
    let beta = beta_k(n, k, alpha);
    let pl = place(p, t, k, beta, candidates)?;
    let d = Cube::new(pl.center.clone(), pl.big_r)?;
    let minimal = minimal_harmonic_mean_cube(&pl.p, &d, pl.r, &pl.mask)?;
    let q1 = minimal.cube.clone();

    let signs: Vec<f64> = (0..n)
        .map(|i| if q1.center[i] <= pl.center[i] { 1.0 } else { -1.0 })
        .collect();
    let basis: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut u = vec![0.0; n];
            u[i] = signs[i];
            u
        })
        .collect();
    let corner: Vec<f64> = q1.center.iter().zip(&signs).map(|(c, s)| c - pl.r * s).collect();
    let mut chain = Vec::with_capacity(k);
    let mut pairs = Vec::with_capacity(k);
    for j in 1..=k {
        let rj = 2f64.powi(j as i32 - 1) * pl.r;
        let q = Cube::new(corner.iter().zip(&signs).map(|(c, s)| c + rj * s).collect(), rj)?;
        pairs.push(make_tu_pair(&q, t, &basis[0])?.p);
        chain.push(q);
    }

    let grid = pl.p.domain().clone();
    let raw: Vec<f64> = (0..grid.len())
        .map(|i| if pl.mask[i] && q1.contains(&grid.midpoint(i)) { 1.0 } else { 0.0 })
        .collect();
    let raw = GridFunction::new(grid.clone(), raw)?;
    if raw.is_zero() {
        return Err(Error::Construction(format!("Q_1 ∩ E_{k} has no cells")));
    }
    let norm = luxemburg_norm(&raw, &pl.p)?;
    let f = raw.scaled(1.0 / norm)?;

    let mut checks = vec![
        InvariantCheck::at_most("beta identity |value + 1|", (beta_identity(n, k, alpha) + 1.0).abs(), 1e-12),
        InvariantCheck::above("density of E_k in D_k", pl.density, pl.threshold),
        InvariantCheck::at_most("|norm of f_k - 1|", (luxemburg_norm(&f, &pl.p)? - 1.0).abs(), 1e-6),
    ];
    let tol = 1e-12 * pl.big_r;
    for (j, (q, pj)) in chain.iter().zip(&pairs).enumerate() {
        let jj = j + 1;
        let out = |c: &Cube| -> f64 {
            (0..n)
                .map(|i| {
                    let below = (d.center[i] - d.radius) - (c.center[i] - c.radius);
                    let above = (c.center[i] + c.radius) - (d.center[i] + d.radius);
                    below.max(above).max(0.0)
                })
                .fold(0.0, f64::max)
        };
        checks.push(InvariantCheck::at_most(format!("Q_{jj} inside D (overhang)"), out(q), tol));
        checks.push(InvariantCheck::at_most(format!("P_{jj} inside D (overhang)"), out(pj), tol));
        let shift = t * q.radius * nf.sqrt();
        let err = (0..n)
            .map(|i| (pj.center[i] - q.center[i] - shift * basis[0][i]).abs())
            .fold((pj.radius - q.radius).abs(), f64::max);
        checks.push(InvariantCheck::at_most(format!("(t,u1) pair offset error {jj}"), err, tol));
        checks.push(InvariantCheck::above(
            format!("|Q_{jj} ∩ E|/|Q_{jj}|"),
            masked_measure(&pl.p, &pl.mask, q) / q.measure(),
            0.5,
        ));
        checks.push(InvariantCheck::above(
            format!("|P_{jj} ∩ E|/|P_{jj}|"),
            masked_measure(&pl.p, &pl.mask, pj) / pj.measure(),
            0.5,
        ));
    }
    for j1 in 1..k {
        for j2 in 0..j1 {
            let gap = pairs[j1].as_box().distance(&pairs[j2].as_box());
            let need = (t - 4.0) / 2.0 * pairs[j1].radius;
            checks.push(InvariantCheck {
                name: format!("dist(P_{}, P_{}) >= (t-4)/2 r", j1 + 1, j2 + 1),
                measured: gap,
                bound: need,
                holds: gap >= need * (1.0 - 1e-12) && gap > 0.0,
            });
        }
    }
    let q_plus = pl
        .p
        .values()
        .iter()
        .zip(&pl.mask)
        .filter(|(_, m)| **m)
        .map(|(v, _)| v.sobolev(alpha, n).map(|q| q.to_f64()))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(1.0, f64::max);
    checks.push(InvariantCheck::at_most("q+ on D ∩ E", q_plus, (nf + 1.0) / (nf - alpha)));
    let worst = minimal
        .checks
        .iter()
        .map(|c| minimal.value - c.min_sampled)
        .fold(f64::NEG_INFINITY, f64::max);
    checks.push(InvariantCheck::at_most("minimal cube beats every sampled m·r cube", worst, 1e-9));

    Ok(BlowupLevel {
        k,
        beta,
        center: pl.center,
        big_r: pl.big_r,
        r: pl.r,
        d,
        basis,
        chain,
        pairs,
        p: pl.p,
        mask: pl.mask,
        f,
        density: pl.density,
        checks,
    })
}

pub fn build_blowup(p: &ExponentFunction, alpha: f64, t: f64, k_max: usize) -> Result<BlowupFamily> {
    let n = p.dimension();
    if !(alpha >= 0.0 && alpha < n as f64) {
        return Err(precondition(format!("alpha must lie in [0, {n})")));
    }
    if !(t > 4.0 && t.is_finite()) {
        return Err(precondition(format!("blow-up needs t > 4, got {t}")));
    }
    if k_max == 0 {
        return Err(precondition("k_max must be at least 1"));
    }
    if !p.domain().is_finite() {
        return Err(precondition("blow-up scans a bounded exponent domain"));
    }
    let candidates = density_candidates(p);
    if candidates.is_empty() {
        return Err(Error::Construction("the exponent never equals 1 on the scan lattice".into()));
    }
    let levels = (1..=k_max)
        .into_par_iter()
        .map(|k| build_level(p, alpha, t, k, &candidates))
        .collect::<Result<Vec<_>>>()?;
    Ok(BlowupFamily {
        n,
        alpha,
        t,
        k_max,
        exponent: p.clone(),
        levels,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthRow {
    pub k: usize,
    pub series: f64,
    pub lower_bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    /// The divisor C in M_α f_k / C.
    pub divisor: f64,
    pub holder_constant: f64,
    pub duality_constant: f64,
    /// K₀ over all Q_j ∩ E_k and P_j ∩ E_k.
    pub k0_family: f64,
    /// Per-k constant in the linear lower bound series ≥ k·slope.
    pub slope: f64,
    pub rows: Vec<GrowthRow>,
    pub monotone: bool,
    pub linear_holds: bool,
}

/// Σ_j ∫_{P_j ∩ E_k} (M_α f_k / C)^{q(x)} dx for each k. At y ∈ P_j the
/// maximal function is the larger of the centered EXACT value and the
/// average over the cube Q_B of side (t+2)√n·r_j holding Q_j ∪ P_j.
pub fn blowup_modular_growth(fam: &BlowupFamily, c: f64) -> Result<GrowthReport> {
    if !(c > 0.0) {
        return Err(precondition("C must be positive"));
    }
    let (n, alpha, t) = (fam.n, fam.alpha, fam.t);
    let nf = n as f64;
    let strata = fam.exponent.strata()?;
    let (kk, kd) = (strata.holder_constant(), strata.duality_constant());

    let k0s = fam
        .levels
        .par_iter()
        .map(|lv| {
            let mut cubes = lv.chain.clone();
            cubes.extend(lv.pairs.iter().cloned());
            let oracle = Restricted {
                p: &lv.p,
                keep: &lv.mask,
            };
            Ok(k0_constant(&oracle, &CubeFamily::explicit(cubes))?.best_value)
        })
        .collect::<Result<Vec<f64>>>()?;
    let k0_family = k0s.into_iter().fold(0.0, f64::max);

    let base = 2f64.powf(-alpha - nf - 5.0) * ((t + 2.0) * nf.sqrt()).powf(alpha - nf) * kd
        / (c * kk.powi(3) * k0_family);
    let slope = base.powf((nf + 1.0) / (nf - alpha));

    let series = fam
        .levels
        .par_iter()
        .map(|lv| level_series(lv, alpha, t, c))
        .collect::<Result<Vec<f64>>>()?;
    let rows: Vec<GrowthRow> = fam
        .levels
        .iter()
        .zip(series)
        .map(|(lv, s)| GrowthRow {
            k: lv.k,
            series: s,
            lower_bound: slope * lv.k as f64,
        })
        .collect();
    let monotone = rows.windows(2).all(|w| w[1].series >= w[0].series * (1.0 - 1e-9));
    let linear_holds = rows.iter().all(|r| r.series >= r.lower_bound);
    Ok(GrowthReport {
        divisor: c,
        holder_constant: kk,
        duality_constant: kd,
        k0_family,
        slope,
        rows,
        monotone,
        linear_holds,
    })
}

fn level_series(lv: &BlowupLevel, alpha: f64, t: f64, c: f64) -> Result<f64> {
    let grid = lv.p.domain();
    let n = grid.dimension();
    let nf = n as f64;
    let g = lv.f.scaled(1.0 / c)?;
    let ev = MaximalEvaluator::new(&g, alpha, RadiusPolicy::Exact)?;
    let sat = SummedArea::new(&g);
    let mut total = 0.0;
    for (q, pj) in lv.chain.iter().zip(&lv.pairs) {
        let mid: Vec<f64> = q.center.iter().zip(&pj.center).map(|(a, b)| 0.5 * (a + b)).collect();
        let qb = Cube::new(mid, (t + 2.0) * q.radius * nf.sqrt() / 2.0)?;
        let qb_value = qb.measure().powf(alpha / nf - 1.0) * sat.box_integral(&qb.as_box());
        let cells: Vec<(usize, f64)> = grid
            .cube_weights(pj)
            .into_iter()
            .filter(|&(i, _)| lv.mask[i])
            .collect();
        let part = cells
            .par_iter()
            .map(|&(i, w)| {
                let x = grid.midpoint(i);
                let m = ev.at(&x).max(qb_value);
                let qx = lv.p.values()[i].sobolev(alpha, n)?.to_f64();
                Ok(w * m.powf(qx))
            })
            .collect::<Result<Vec<f64>>>()?;
        total += crate::numeric::pairwise_sum(&part) * grid.cell_volume();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_identity_is_minus_one() {
        for n in 1..=3 {
            for k in [1, 2, 7, 1000] {
                for a in [0.0, 0.25, 0.5, 0.9 * n as f64] {
                    assert!((beta_identity(n, k, a) + 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn default_exponent_has_unit_plateau() {
        let p = default_blowup_exponent(1).unwrap();
        assert!(p.eval(&[0.5]).unwrap().is_one());
        assert_eq!(p.eval(&[3.0]).unwrap(), ExpValue::Finite(2.0));
    }

    #[test]
    fn small_family_geometry() {
        let p = default_blowup_exponent(1).unwrap();
        let fam = build_blowup(&p, 0.0, 5.0, 4).unwrap();
        for lv in &fam.levels {
            for c in &lv.checks {
                assert!(c.holds, "k = {}: {} ({} vs {})", lv.k, c.name, c.measured, c.bound);
            }
            assert_eq!(lv.chain.len(), lv.k);
        }
    }

    #[test]
    fn growth_vanishes_as_c_grows() {
        let p = default_blowup_exponent(1).unwrap();
        let fam = build_blowup(&p, 0.25, 5.0, 3).unwrap();
        let a = blowup_modular_growth(&fam, 10.0).unwrap();
        let b = blowup_modular_growth(&fam, 1e6).unwrap();
        for (x, y) in a.rows.iter().zip(&b.rows) {
            assert!(y.series < x.series * 1e-3);
        }
        assert!(a.linear_holds && a.monotone);
    }

    #[test]
    fn exponent_without_unit_values_is_rejected() {
        let p = ExponentFunction::constant(
            crate::geometry::AxisBox::new(vec![-1.0], vec![1.0]).unwrap(),
            ExpValue::Finite(1.5),
        )
        .unwrap();
        assert!(matches!(build_blowup(&p, 0.0, 5.0, 2), Err(Error::Construction(_))));
    }
}

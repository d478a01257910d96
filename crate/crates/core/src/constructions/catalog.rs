//! Explicit exponents: the harmonic-mean counterexample, four bump-sum
//! exponents separating K₀-type conditions, and their quantitative checks.

use crate::error::{precondition, Result};
use crate::exponent::{BumpSum, CenterKind, CenterSeq, ExpValue, ExponentFunction, Piece};
use crate::geometry::{AxisBox, Cube};
use crate::grid::{GridDomain, GridExponent, GridFunction};
use crate::k0::{k0alpha_constant, log_ladder, CubeFamily, K0Report};
use crate::operators::{MaximalEvaluator, RadiusPolicy};
use crate::vnorm::indicator_norm;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExampleName {
    L1Failure,
    Ex61,
    Ex62,
    Ex63,
    Ex64,
    HmCounter,
}

impl ExampleName {
    pub const ALL: [ExampleName; 6] = [
        ExampleName::L1Failure,
        ExampleName::Ex61,
        ExampleName::Ex62,
        ExampleName::Ex63,
        ExampleName::Ex64,
        ExampleName::HmCounter,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExampleName::L1Failure => "L1_FAILURE",
            ExampleName::Ex61 => "EX61",
            ExampleName::Ex62 => "EX62",
            ExampleName::Ex63 => "EX63",
            ExampleName::Ex64 => "EX64",
            ExampleName::HmCounter => "HM_COUNTER",
        }
    }
}

impl fmt::Display for ExampleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExampleName {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase().replace('-', "_");
        ExampleName::ALL
            .into_iter()
            .find(|e| e.as_str() == up)
            .ok_or_else(|| crate::Error::Parse(format!("unknown example {s:?}")))
    }
}

/// Which norm of χ_{Q_j} the witness sequence blows up.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WitnessNorm {
    Conjugate,
    Sobolev,
}

/// Intervals Q_j = [1, j^power + 1] on which ‖χ_{Q_j}‖ ≥ j|Q_j|^{1/s_{Q_j}}
/// for the checked exponent s, once the harmonic mean s_{Q_j} passes
/// `threshold`.
#[derive(Clone, Debug)]
pub struct WitnessSeq {
    pub norm: WitnessNorm,
    pub checked: ExponentFunction,
    pub power: f64,
    pub threshold: Option<f64>,
    /// Centers of the plateaus making up B_j, and B_j's bump count exponent.
    pub plateaus: CenterSeq,
    pub plateau_halfwidth: f64,
    pub plateau_count_power: f64,
}

impl WitnessSeq {
    pub fn interval(&self, j: u64) -> Result<AxisBox> {
        AxisBox::interval(1.0, (j as f64).powf(self.power) + 1.0)
    }

    /// B_j = union of the first ⌊j^γ⌋ plateaus.
    pub fn plateau_count(&self, j: u64) -> u64 {
        (j as f64).powf(self.plateau_count_power).floor() as u64
    }

    pub fn plateau(&self, k: u64) -> Result<AxisBox> {
        let c = self.plateaus.center(k);
        AxisBox::interval(c - self.plateau_halfwidth, c + self.plateau_halfwidth)
    }

    /// Largest j ≤ 64 with |Q_j| ≤ 1e200 and at most 1e18 bumps in B_j, so
    /// bump indices stay exact in u64.
    pub fn max_index(&self) -> u64 {
        let ln10 = 10f64.ln();
        let by_measure = (200.0 * ln10 / self.power).exp();
        let by_count = (18.0 * ln10 / self.plateau_count_power.max(self.power / self.plateaus.rate)).exp();
        by_measure.min(by_count).floor().clamp(2.0, 64.0) as u64
    }
}

#[derive(Clone, Debug)]
pub struct ExampleSpec {
    pub name: ExampleName,
    pub alpha: Option<f64>,
    pub p_minus: f64,
    pub p_plus: f64,
    pub exponent: ExponentFunction,
    /// Derived constants in construction order.
    pub constants: Vec<(String, f64)>,
    pub witness: Option<WitnessSeq>,
}

impl ExampleSpec {
    pub fn constant(&self, key: &str) -> Option<f64> {
        self.constants.iter().find(|(k, _)| k == key).map(|c| c.1)
    }
}

fn bump_exponent(
    base: f64,
    amplitude: f64,
    support: f64,
    plateau: f64,
    kind: CenterKind,
    rate: f64,
    offset: f64,
) -> Result<ExponentFunction> {
    let b = BumpSum::new(
        base,
        amplitude,
        support,
        plateau,
        CenterSeq {
            kind,
            rate,
            count: None,
            offset,
        },
    )?;
    ExponentFunction::new(1, AxisBox::whole(1), vec![Piece::bumps(AxisBox::whole(1), b)])
}

fn consts(pairs: &[(&str, f64)]) -> Vec<(String, f64)> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// p = 1 everywhere, the L¹ endpoint.
pub fn build_l1_spec(alpha: f64, n: usize) -> Result<ExampleSpec> {
    if !(alpha >= 0.0 && alpha < n as f64) {
        return Err(precondition(format!("alpha must lie in [0, {n})")));
    }
    Ok(ExampleSpec {
        name: ExampleName::L1Failure,
        alpha: Some(alpha),
        p_minus: 1.0,
        p_plus: 1.0,
        exponent: ExponentFunction::constant(AxisBox::whole(n), ExpValue::Finite(1.0))?,
        constants: consts(&[("target exponent", n as f64 / (n as f64 - alpha))]),
        witness: None,
    })
}

/// p = base + Σ_k φ(x − e^k), φ = plateau − base on [−1/4, 1/4] and
/// supported in [−1/2, 1/2].
pub fn build_ex61(alpha: f64) -> Result<ExampleSpec> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(precondition(format!("EX61 needs 0 < alpha < 1/2, got {alpha}")));
    }
    let base = (1.0 + alpha) / (2.0 * alpha * (2.0 - alpha));
    let plateau = (2.0 - alpha) / (3.0 * alpha * (1.0 - alpha));
    let decay = 3.0 * alpha * (1.0 - alpha) / (1.0 + alpha);
    let exponent = bump_exponent(base, plateau - base, 0.5, 0.25, CenterKind::Exp, 1.0, 0.0)?;
    Ok(ExampleSpec {
        name: ExampleName::Ex61,
        alpha: Some(alpha),
        p_minus: base,
        p_plus: plateau,
        exponent,
        constants: consts(&[
            ("base", base),
            ("plateau", plateau),
            ("f decay", decay),
            ("q off the bumps", 1.0 / decay),
            ("conjugate off the bumps", (1.0 + alpha) / (2.0 * alpha * alpha - 3.0 * alpha + 1.0)),
            ("rho_p decay", (2.0 - alpha) / (1.0 + alpha)),
        ]),
        witness: None,
    })
}

impl ExampleSpec {
    /// A_k = e^k + [−1/2, 1/2], B_k = e^k + [−1/4, 1/4] and C_k = e^k +
    /// ([−3/2, 3/2] ∖ A_k), as offsets from e^k.
    pub fn ex61_sets() -> ((f64, f64), (f64, f64), [(f64, f64); 2]) {
        ((-0.5, 0.5), (-0.25, 0.25), [(-1.5, -0.5), (0.5, 1.5)])
    }

    /// Height k^{−3α(1−α)/(1+α)} of f on B_k.
    pub fn ex61_height(&self, k: u64) -> f64 {
        (k as f64).powf(-self.constant("f decay").unwrap_or(0.0))
    }
}

/// p = 6/5 + Σ_k φ(x − k²), φ = 4/5 on [1/4, 3/4], supported in [0, 1].
pub fn build_ex62() -> Result<ExampleSpec> {
    let exponent = bump_exponent(1.2, 0.8, 0.5, 0.25, CenterKind::Power, 2.0, 0.5)?;
    let centers = CenterSeq {
        kind: CenterKind::Power,
        rate: 2.0,
        count: None,
        offset: 0.5,
    };
    Ok(ExampleSpec {
        name: ExampleName::Ex62,
        alpha: None,
        p_minus: 1.2,
        p_plus: 2.0,
        witness: Some(WitnessSeq {
            norm: WitnessNorm::Conjugate,
            checked: exponent.conjugate(),
            power: 30.0,
            threshold: None,
            plateaus: centers,
            plateau_halfwidth: 0.25,
            plateau_count_power: 15.0,
        }),
        exponent,
        constants: consts(&[("conjugate min", 2.0), ("conjugate max", 6.0)]),
    })
}

fn window(alpha: f64, p_minus: f64, p_plus: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(precondition(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if !(1.0 < p_minus && p_minus < p_plus && p_plus < 1.0 / alpha) {
        return Err(precondition(format!(
            "need 1 < p- < p+ < 1/alpha, got p- = {p_minus}, p+ = {p_plus}, 1/alpha = {}",
            1.0 / alpha
        )));
    }
    Ok(())
}

/// γ = (1 + s₋)/(1 − 2/(δ + 1)).
fn gamma_of(s_minus: f64, delta: f64) -> f64 {
    (1.0 + s_minus) / (1.0 - 2.0 / (delta + 1.0))
}

/// p = p₊ − Σ_k φ(x − k^{β_p}) with β_p = p₊/p₋: p ∈ K₀ but q is not.
pub fn build_ex63(alpha: f64, p_minus: f64, p_plus: f64) -> Result<ExampleSpec> {
    window(alpha, p_minus, p_plus)?;
    let q_minus = 1.0 / (1.0 / p_minus - alpha);
    let q_plus = 1.0 / (1.0 / p_plus - alpha);
    let beta_p = p_plus / p_minus;
    let beta_q = q_plus / q_minus;
    let delta = beta_q / beta_p;
    let gamma = gamma_of(q_minus, delta);
    let exponent =
        bump_exponent(p_plus, -(p_plus - p_minus), 0.5, 0.25, CenterKind::Power, beta_p, 0.5)?;
    let threshold = (q_plus + beta_p * q_minus) / 2.0;
    Ok(ExampleSpec {
        name: ExampleName::Ex63,
        alpha: Some(alpha),
        p_minus,
        p_plus,
        witness: Some(WitnessSeq {
            norm: WitnessNorm::Sobolev,
            checked: exponent.sobolev_dual(alpha)?,
            power: beta_p * gamma,
            threshold: Some(threshold),
            plateaus: CenterSeq {
                kind: CenterKind::Power,
                rate: beta_p,
                count: None,
                offset: 0.5,
            },
            plateau_halfwidth: 0.25,
            plateau_count_power: gamma,
        }),
        exponent,
        constants: consts(&[
            ("q-", q_minus),
            ("q+", q_plus),
            ("beta_p", beta_p),
            ("beta_q", beta_q),
            ("delta", delta),
            ("gamma", gamma),
            ("harmonic mean threshold", threshold),
        ]),
    })
}

/// p = p₋ + Σ_k φ(x − k^{β_{q′}}): q ∈ K₀ but p′ is not.
pub fn build_ex64(alpha: f64, p_minus: f64, p_plus: f64) -> Result<ExampleSpec> {
    window(alpha, p_minus, p_plus)?;
    let beta_pc = p_minus * (p_plus - 1.0) / (p_plus * (p_minus - 1.0));
    let beta_qc = p_minus * (p_plus - 1.0 + alpha * p_plus) / (p_plus * (p_minus - 1.0 + alpha * p_minus));
    let pc_minus = p_plus / (p_plus - 1.0);
    let pc_plus = p_minus / (p_minus - 1.0);
    let delta = beta_pc / beta_qc;
    let gamma = gamma_of(pc_minus, delta);
    let exponent =
        bump_exponent(p_minus, p_plus - p_minus, 0.5, 0.25, CenterKind::Power, beta_qc, 0.5)?;
    let threshold = (pc_plus + beta_qc * pc_minus) / 2.0;
    Ok(ExampleSpec {
        name: ExampleName::Ex64,
        alpha: Some(alpha),
        p_minus,
        p_plus,
        witness: Some(WitnessSeq {
            norm: WitnessNorm::Conjugate,
            checked: exponent.conjugate(),
            power: beta_qc * gamma,
            threshold: Some(threshold),
            plateaus: CenterSeq {
                kind: CenterKind::Power,
                rate: beta_qc,
                count: None,
                offset: 0.5,
            },
            plateau_halfwidth: 0.25,
            plateau_count_power: gamma,
        }),
        exponent,
        constants: consts(&[
            ("conjugate min", pc_minus),
            ("conjugate max", pc_plus),
            ("beta_p'", beta_pc),
            ("beta_q'", beta_qc),
            ("delta", delta),
            ("gamma", gamma),
            ("harmonic mean threshold", threshold),
        ]),
    })
}

/// p = 2 on Q' = Q(0, 2r − 1), 1 on the rest of Q = Q(0, 1) ⊂ ℝ². Every
/// cube of radius r inside Q contains Q', so they all share one harmonic
/// mean, and it exceeds p_Q.
#[derive(Clone, Debug)]
pub struct HmCounter {
    pub spec: ExampleSpec,
    pub r: f64,
    pub whole: Cube,
    pub inner: Cube,
    pub small: Cube,
    /// p_Q, computed and closed form 2/(4r − 4r² + 1).
    pub whole_mean: f64,
    pub whole_closed: f64,
    /// p_{Q(0,r)}, computed and closed form.
    pub small_mean: f64,
    pub small_closed: f64,
}

pub fn hm_counter(r: f64) -> Result<HmCounter> {
    if !(r > 0.5 && r < 1.0) {
        return Err(precondition(format!("need 1/2 < r < 1, got {r}")));
    }
    let whole = Cube::new(vec![0.0, 0.0], 1.0)?;
    let inner = Cube::new(vec![0.0, 0.0], 2.0 * r - 1.0)?;
    let small = Cube::new(vec![0.0, 0.0], r)?;
    let exponent = ExponentFunction::new(
        2,
        whole.as_box(),
        vec![
            Piece::constant(inner.as_box(), ExpValue::Finite(2.0)),
            Piece::constant(whole.as_box(), ExpValue::Finite(1.0)),
        ],
    )?;
    let whole_mean = exponent.distribution(&whole.as_box())?.harmonic_mean()?.to_f64();
    let small_mean = exponent.distribution(&small.as_box())?.harmonic_mean()?.to_f64();
    let inner_m = inner.measure();
    let small_closed = small.measure() / (small.measure() - inner_m + inner_m / 2.0);
    Ok(HmCounter {
        spec: ExampleSpec {
            name: ExampleName::HmCounter,
            alpha: None,
            p_minus: 1.0,
            p_plus: 2.0,
            exponent,
            constants: consts(&[("r", r)]),
            witness: None,
        },
        r,
        whole,
        inner,
        small,
        whole_mean,
        whole_closed: 2.0 / (4.0 * r - 4.0 * r * r + 1.0),
        small_mean,
        small_closed,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessRow {
    pub j: u64,
    pub measure: f64,
    pub harmonic_mean: f64,
    pub norm: f64,
    /// ‖χ_{Q_j}‖ / |Q_j|^{1/s_{Q_j}}.
    pub ratio: f64,
    /// j ≥ J, where the threshold on s_{Q_j} has been reached.
    pub asserted: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessReport {
    pub start: Option<u64>,
    pub rows: Vec<WitnessRow>,
    pub all_hold: bool,
}

/// Checks ‖χ_{Q_j}‖ ≥ j|Q_j|^{1/s_{Q_j}} for 2 ≤ j ≤ j_max using exact value
/// distributions of the checked exponent on Q_j.
pub fn witness_growth(spec: &ExampleSpec, j_max: u64) -> Result<WitnessReport> {
    let w = spec
        .witness
        .as_ref()
        .ok_or_else(|| precondition(format!("{} has no witness sequence", spec.name)))?;
    let j_max = j_max.min(w.max_index());
    let mut rows = Vec::new();
    let mut start = None;
    for j in 2..=j_max {
        let q = w.interval(j)?;
        let dist = w.checked.distribution(&q)?;
        let hm = dist.harmonic_mean()?;
        let measure = dist.mass();
        let norm = indicator_norm(&dist);
        let ratio = norm / measure.powf(hm.recip());
        if start.is_none() && w.threshold.map_or(true, |th| hm.to_f64() >= th) {
            start = Some(j);
        }
        let asserted = start.is_some();
        rows.push(WitnessRow {
            j,
            measure,
            harmonic_mean: hm.to_f64(),
            norm,
            ratio,
            asserted,
            holds: ratio >= j as f64,
        });
    }
    let all_hold = rows.iter().filter(|r| r.asserted).all(|r| r.holds);
    Ok(WitnessReport { start, rows, all_hold })
}

/// The family of witness intervals Q_2..Q_{j_max}.
pub fn witness_family(spec: &ExampleSpec, j_max: u64) -> Result<CubeFamily> {
    let w = spec
        .witness
        .as_ref()
        .ok_or_else(|| precondition(format!("{} has no witness sequence", spec.name)))?;
    let cubes = (2..=j_max.min(w.max_index()))
        .map(|j| {
            let b = w.interval(j)?;
            Cube::interval(b.lo[0], b.hi[0])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CubeFamily::explicit(cubes))
}

/// Random intervals with log-uniform length in [1e-3, 1e6] and left end
/// uniform in [0, 1e4].
pub fn random_intervals(count: usize, seed: u64) -> Result<CubeFamily> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cubes = (0..count)
        .map(|_| {
            let a: f64 = rng.gen_range(0.0..1e4);
            let len = 10f64.powf(rng.gen_range(-3.0..6.0));
            Cube::interval(a, a + len)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CubeFamily::explicit(cubes))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwoSided {
    pub min_ratio: f64,
    pub max_ratio: f64,
    /// 1/(2K): the universal lower bound.
    pub lower: f64,
    pub lower_holds: bool,
}

/// ‖χ_Q‖_p / |Q|^{1/p_Q} over a family: the largest value is the measured
/// constant M of the upper estimate.
pub fn two_sided_ratio(p: &ExponentFunction, family: &CubeFamily) -> Result<TwoSided> {
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for q in &family.cubes {
        let dist = p.distribution(&q.as_box())?;
        let ratio = indicator_norm(&dist) / dist.mass().powf(dist.harmonic_mean()?.recip());
        lo = lo.min(ratio);
        hi = hi.max(ratio);
    }
    let lower = 1.0 / (2.0 * p.holder_constant()?);
    Ok(TwoSided {
        min_ratio: lo,
        max_ratio: hi,
        lower,
        lower_holds: lo >= lower * (1.0 - 1e-9),
    })
}

/// Intervals centered at 0 and at e^k + offset for k ≤ min(K, 12), with
/// log-spaced radii in [5e-4, e^K/2]. `refine` multiplies both densities.
pub fn ex61_scan_family(k_max: u64, refine: usize) -> Result<CubeFamily> {
    let refine = refine.max(1);
    let offsets = 8 * refine;
    let mut centers = vec![vec![0.0]];
    for k in 1..=k_max.min(12) {
        let c = (k as f64).exp();
        for i in 0..=offsets {
            centers.push(vec![c - 1.5 + 3.0 * i as f64 / offsets as f64]);
        }
    }
    let radii = log_ladder(5e-4, 0.5 * (k_max as f64).exp(), 24 * refine);
    CubeFamily::lattice(&centers, &radii)
}

#[derive(Clone, Debug)]
pub struct K0AlphaScan {
    pub coarse: K0Report,
    pub refined: K0Report,
    pub relative_change: f64,
    pub stable: bool,
}

/// K₀^α estimate over the scan family and its 2× refinement.
pub fn ex61_k0alpha_scan(spec: &ExampleSpec, k_max: u64) -> Result<K0AlphaScan> {
    let alpha = spec.alpha.ok_or_else(|| precondition("scan needs alpha"))?;
    let coarse = k0alpha_constant(&spec.exponent, alpha, &ex61_scan_family(k_max, 1)?)?;
    let refined = k0alpha_constant(&spec.exponent, alpha, &ex61_scan_family(k_max, 2)?)?;
    let relative_change = (refined.best_value - coarse.best_value).abs() / coarse.best_value;
    Ok(K0AlphaScan {
        coarse,
        refined,
        relative_change,
        stable: relative_change <= 0.05,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ex61Row {
    pub k: u64,
    pub rho_p_partial: f64,
    pub rho_p_oracle: f64,
    pub rho_q_partial: f64,
    /// 0.5·(3^{α−1}/2)^{(1+α)/(3α(1−α))}·H_k.
    pub rho_q_floor: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ex61Divergence {
    pub rows: Vec<Ex61Row>,
    pub window_cells: usize,
    pub h: f64,
    pub rho_p_matches: bool,
    pub rho_q_tracks: bool,
}

/// Cells per window of [−3/2, 3/2] around each e^k.
const EX61_WINDOW_CELLS: usize = 96;

/// Partial modulars of f and M_α f up to K. Each bump gets its own window
/// A_k ∪ C_k in local coordinates, so e^k never enters a grid coordinate.
/// M_α f on C_k is computed from the k-th bump alone, which can only
/// underestimate it; the gaps between windows are left out of ρ_q, and f
/// vanishes there so ρ_p is exact.
pub fn ex61_divergence_check(spec: &ExampleSpec, k_max: u64) -> Result<Ex61Divergence> {
    if spec.name != ExampleName::Ex61 {
        return Err(precondition("divergence check needs the EX61 exponent"));
    }
    let alpha = spec.alpha.unwrap_or(0.0);
    let bumps = match &spec.exponent.pieces()[0].spec {
        crate::exponent::ValueSpec::Bumps(b) => *b,
        _ => return Err(precondition("EX61 exponent must be a bump sum")),
    };
    let grid = GridDomain::cube(-1.5, 1.5, 1, EX61_WINDOW_CELLS)?;
    let h = grid.h();
    let local = GridExponent::from_values(
        grid.clone(),
        (0..grid.len())
            .map(|i| ExpValue::Finite(bumps.local(grid.midpoint(i)[0])))
            .collect(),
    )?;
    let q_local: Vec<f64> = local
        .values()
        .iter()
        .map(|v| v.sobolev(alpha, 1).map(|q| q.to_f64()))
        .collect::<Result<_>>()?;
    let ((_, _), (b_lo, b_hi), c_parts) = ExampleSpec::ex61_sets();
    let in_b = |x: f64| x > b_lo && x < b_hi;
    let in_c = |x: f64| c_parts.iter().any(|&(a, b)| x > a && x < b);
    let unit = GridFunction::from_fn(grid.clone(), |x| if in_b(x[0]) { 1.0 } else { 0.0 })?;
    let m_unit: Vec<f64> = {
        let ev = MaximalEvaluator::new(&unit, alpha, RadiusPolicy::Exact)?;
        (0..grid.len()).map(|i| ev.at(&grid.midpoint(i))).collect()
    };
    let rho_p_decay = spec.constant("rho_p decay").unwrap_or(0.0);
    let q_off = spec.constant("q off the bumps").unwrap_or(1.0);
    let floor_const = 0.5 * (3f64.powf(alpha - 1.0) / 2.0).powf(q_off);

    let mut rows = Vec::new();
    let (mut rp, mut rq, mut oracle, mut harmonic) = (0.0, 0.0, 0.0, 0.0);
    for k in 1..=k_max {
        let height = spec.ex61_height(k);
        for i in 0..grid.len() {
            let x = grid.midpoint(i)[0];
            if in_b(x) {
                rp += height.powf(local.values()[i].to_f64()) * h;
            }
            if in_c(x) {
                // M_α is positively homogeneous
                rq += (height * m_unit[i]).powf(q_local[i]) * h;
            }
        }
        oracle += 0.5 * (k as f64).powf(-rho_p_decay);
        harmonic += 1.0 / k as f64;
        rows.push(Ex61Row {
            k,
            rho_p_partial: rp,
            rho_p_oracle: oracle,
            rho_q_partial: rq,
            rho_q_floor: floor_const * harmonic,
        });
    }
    let rho_p_matches = rows
        .iter()
        .all(|r| (r.rho_p_partial - r.rho_p_oracle).abs() <= 1e-9 * r.rho_p_oracle);
    let rho_q_tracks = rows.iter().all(|r| r.rho_q_partial >= r.rho_q_floor);
    Ok(Ex61Divergence {
        rows,
        window_cells: EX61_WINDOW_CELLS,
        h,
        rho_p_matches,
        rho_q_tracks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ex61_closed_forms() {
        let s = build_ex61(0.25).unwrap();
        assert!((s.p_plus - 28.0 / 9.0).abs() < 1e-12);
        assert!((s.p_minus - 10.0 / 7.0).abs() < 1e-12);
        assert!((s.exponent.eval(&[1f64.exp()]).unwrap().to_f64() - 28.0 / 9.0).abs() < 1e-12);
        assert!(build_ex61(0.5).is_err());
    }

    #[test]
    fn ex62_ranges() {
        let s = build_ex62().unwrap();
        let st = s.exponent.strata().unwrap();
        assert_eq!(st.p_minus(), ExpValue::Finite(1.2));
        assert_eq!(st.p_plus(), ExpValue::Finite(2.0));
        let c = s.exponent.conjugate().strata().unwrap();
        assert!((c.p_minus().to_f64() - 2.0).abs() < 1e-12);
        assert!((c.p_plus().to_f64() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn ex63_constants() {
        let (a, pm, pp) = (0.25, 1.5, 3.0);
        let s = build_ex63(a, pm, pp).unwrap();
        let ratio = s.constant("beta_q").unwrap() / s.constant("beta_p").unwrap();
        assert!((ratio - (1.0 - a * pm) / (1.0 - a * pp)).abs() < 1e-12);
        let d = s.constant("delta").unwrap();
        let q_minus = s.constant("q-").unwrap();
        assert!((s.constant("gamma").unwrap() - (1.0 + q_minus) / (1.0 - 2.0 / (d + 1.0))).abs() < 1e-12);
        assert!(build_ex63(0.25, 1.5, 4.5).is_err());
    }

    #[test]
    fn ex64_beta_order() {
        let s = build_ex64(0.25, 1.5, 3.0).unwrap();
        assert!(s.constant("beta_p'").unwrap() > s.constant("beta_q'").unwrap());
    }

    #[test]
    fn hm_counter_values() {
        let h = hm_counter(0.75).unwrap();
        assert!((h.whole_mean - 8.0 / 7.0).abs() < 1e-12);
        assert!((h.whole_closed - 8.0 / 7.0).abs() < 1e-12);
        assert!((h.small_mean - 9.0 / 7.0).abs() < 1e-12);
        assert!((h.small_closed - 9.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn ex61_single_term() {
        let s = build_ex61(0.25).unwrap();
        let d = ex61_divergence_check(&s, 1).unwrap();
        assert_eq!(d.rows.len(), 1);
        assert!((d.rows[0].rho_p_partial - 0.5).abs() < 1e-12);
    }

    #[test]
    fn example_names_round_trip() {
        for e in ExampleName::ALL {
            assert_eq!(e.as_str().parse::<ExampleName>().unwrap(), e);
        }
        assert!("EX65".parse::<ExampleName>().is_err());
    }

    #[test]
    fn ex62_witness_grows() {
        let s = build_ex62().unwrap();
        let r = witness_growth(&s, 8).unwrap();
        assert_eq!(r.start, Some(2));
        assert!(r.all_hold, "{:?}", r.rows);
    }
}

//! Command-line runner: each subcommand writes `<name>.csv`,
//! `<name>.summary.txt` and `<name>.config.json` into the output directory.

use crate::constructions::{
    blowup_modular_growth, build_blowup, build_ex61, build_ex62, build_ex63, build_ex64, build_l1_failure,
    default_blowup_exponent, ex61_divergence_check, ex61_k0alpha_scan, ex61_scan_family, hm_counter,
    random_intervals, two_sided_ratio, witness_family, witness_growth, ExampleName, ExampleSpec,
};
use crate::error::{precondition, Error, Result};
use crate::exponent::spec::parse_exponent;
use crate::exponent::ExponentFunction;
use crate::geometry::Cube;
use crate::grid::{GridDomain, GridExponent, GridFunction, MeasurableSet};
use crate::k0::{center_lattice, k0alpha_constant, k0alpha_iff_k0_check, log_ladder, norm_harmonic_sandwich, CubeFamily};
use crate::operators::{
    czo_pair_lower_bound, fractional_maximal, make_tu_pair, maximal_pair_lower_bound, riesz_potential,
    FractionalKernel, RadiusPolicy,
};
use crate::report::{fmt_sig, Table};
use crate::vnorm::{luxemburg_norm, modular, NORM_RTOL};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

#[derive(Parser, Debug, Clone, Serialize)]
#[command(name = "varlp", version, about = "Variable-exponent Lebesgue space experiments")]
pub struct RunConfig {
    /// Exponent function as a JSON document.
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0.0)]
    pub alpha: f64,
    /// Grid cells per axis.
    #[arg(long, global = true, default_value_t = 256, value_parser = clap::value_parser!(u64).range(16..))]
    pub cells: u64,
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct FunctionArgs {
    /// Grid function CSV (x0,..,value) as written by this tool.
    #[arg(long)]
    pub function: Option<PathBuf>,
    /// f = indicator of the cube [LO,HI]^n.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub set: Option<Vec<f64>>,
    /// Grid domain [LO,HI]^n; defaults to the exponent's domain.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub domain: Option<Vec<f64>>,
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize)]
pub enum PolicyArg {
    Exact,
    Dyadic,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
pub enum Command {
    /// Luxemburg norm of f.
    Norm(FunctionArgs),
    /// Modular of f/λ.
    Modular {
        #[command(flatten)]
        f: FunctionArgs,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
    },
    /// Centered fractional maximal function on the grid.
    Maximal {
        #[command(flatten)]
        f: FunctionArgs,
        #[arg(long, value_enum, default_value = "exact")]
        policy: PolicyArg,
    },
    /// Riesz potential on the grid.
    Riesz {
        #[command(flatten)]
        f: FunctionArgs,
    },
    /// K0^alpha samples, the norm/harmonic-mean sandwich and the K0 equivalence.
    K0scan {
        #[arg(long, default_value_t = 9)]
        centers: usize,
        #[arg(long, default_value_t = 16)]
        radii: usize,
        #[arg(long)]
        rmin: Option<f64>,
        #[arg(long)]
        rmax: Option<f64>,
    },
    /// Randomized pointwise lower bounds on (t,u) pairs.
    Paircheck {
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[arg(long, default_value_t = 50)]
        kernel_instances: usize,
    },
    /// One of L1_FAILURE, EX61, EX62, EX63, EX64, HM_COUNTER.
    Example {
        name: String,
        /// Series length (EX61) or largest witness index (EX62-EX64).
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, default_value_t = 1.5)]
        p_minus: f64,
        #[arg(long, default_value_t = 3.0)]
        p_plus: f64,
        #[arg(long, default_value_t = 0.75)]
        r: f64,
        #[arg(long, default_value_t = 1000.0)]
        rmax: f64,
        #[arg(long, default_value_t = 1)]
        dim: usize,
    },
    /// Blow-up family invariants and modular growth.
    Blowup {
        #[arg(long, default_value_t = 5.0)]
        t: f64,
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long, default_value_t = 10.0)]
        c: f64,
        #[arg(long, default_value_t = 1)]
        dim: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Norm(_) => "norm",
            Command::Modular { .. } => "modular",
            Command::Maximal { .. } => "maximal",
            Command::Riesz { .. } => "riesz",
            Command::K0scan { .. } => "k0scan",
            Command::Paircheck { .. } => "paircheck",
            Command::Example { .. } => "example",
            Command::Blowup { .. } => "blowup",
        }
    }
}

/// What a run produced.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub summary: String,
    pub csv: String,
    pub files: Vec<PathBuf>,
}

/// 2 for malformed input, 1 for everything else.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidSpec(_) => 2,
        _ => 1,
    }
}

struct Report {
    table: Table,
    lines: Vec<String>,
}

impl Report {
    fn new(table: Table) -> Self {
        Report {
            table,
            lines: Vec::new(),
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn constants(&mut self, p: &ExponentFunction) -> Result<()> {
        let st = p.strata()?;
        self.line(format!("K_p = {}", fmt_sig(st.holder_constant())));
        self.line(format!("k_p = {}", fmt_sig(st.duality_constant())));
        Ok(())
    }
}

fn load_exponent(cfg: &RunConfig) -> Result<Option<ExponentFunction>> {
    match &cfg.spec {
        None => Ok(None),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            parse_exponent(&text).map(Some)
        }
    }
}

fn need_exponent(cfg: &RunConfig) -> Result<ExponentFunction> {
    load_exponent(cfg)?.ok_or_else(|| precondition(format!("`{}` needs --spec", cfg.command.name())))
}

fn pair(v: &Option<Vec<f64>>, what: &str) -> Result<Option<(f64, f64)>> {
    match v.as_deref() {
        None => Ok(None),
        Some([a, b]) if a < b => Ok(Some((*a, *b))),
        Some(_) => Err(Error::Parse(format!("--{what} needs LO,HI with LO < HI"))),
    }
}

fn load_function(cfg: &RunConfig, fa: &FunctionArgs, p: Option<&ExponentFunction>) -> Result<GridFunction> {
    if let Some(path) = &fa.function {
        let file = fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        return GridFunction::read_csv(file);
    }
    let n = p.map_or(1, |p| p.dimension());
    let set = pair(&fa.set, "set")?;
    let (lo, hi) = match pair(&fa.domain, "domain")? {
        Some(d) => d,
        None => match p.map(|p| p.domain().clone()).filter(|d| d.is_finite()) {
            Some(d) if (0..n).all(|i| d.lo[i] == d.lo[0] && d.hi[i] == d.hi[0]) => (d.lo[0], d.hi[0]),
            _ => set.ok_or_else(|| precondition("give --domain LO,HI (the exponent domain is not a bounded cube)"))?,
        },
    };
    let grid = GridDomain::cube(lo, hi, n, cfg.cells as usize)?;
    let (a, b) = set.unwrap_or((lo, hi));
    GridFunction::from_fn(grid, move |x| if x.iter().all(|v| *v >= a && *v <= b) { 1.0 } else { 0.0 })
}

fn sample_exponent(p: &ExponentFunction, f: &GridFunction) -> Result<GridExponent> {
    if p.dimension() != f.domain().dimension() {
        return Err(precondition("exponent and function dimensions differ"));
    }
    GridExponent::sample(p, f.domain())
}

fn grid_table(g: &GridFunction) -> Table {
    let n = g.domain().dimension();
    let mut header: Vec<String> = (0..n).map(|d| format!("x{d}")).collect();
    header.push("value".into());
    let refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut t = Table::new(&refs);
    for (i, v) in g.values().iter().enumerate() {
        let mut row = g.domain().midpoint(i);
        row.push(*v);
        t.push(row);
    }
    t
}

fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn run_norm(cfg: &RunConfig, fa: &FunctionArgs, lambda: Option<f64>) -> Result<Report> {
    let p = need_exponent(cfg)?;
    let f = load_function(cfg, fa, Some(&p))?;
    let pg = sample_exponent(&p, &f)?;
    let mut rep;
    match lambda {
        None => {
            let norm = luxemburg_norm(&f, &pg)?;
            rep = Report::new(Table::new(&["norm"]));
            rep.table.push(vec![norm]);
            rep.line(format!("norm = {norm:.7}"));
        }
        Some(l) => {
            if !(l > 0.0) {
                return Err(precondition("--lambda must be positive"));
            }
            let m = modular(&f.scaled(1.0 / l)?, &pg, &MeasurableSet::Mask(vec![true; f.domain().len()]))?;
            rep = Report::new(Table::new(&["lambda", "modular"]));
            rep.table.push(vec![l, m]);
            rep.line(format!("modular(f/{l}) = {m:.7}"));
        }
    }
    rep.constants(&p)?;
    Ok(rep)
}

fn run_operator(cfg: &RunConfig, fa: &FunctionArgs, policy: Option<PolicyArg>) -> Result<Report> {
    let p = load_exponent(cfg)?;
    let f = load_function(cfg, fa, p.as_ref())?;
    let out = match policy {
        Some(pol) => fractional_maximal(
            &f,
            cfg.alpha,
            match pol {
                PolicyArg::Exact => RadiusPolicy::Exact,
                PolicyArg::Dyadic => RadiusPolicy::Dyadic,
            },
        )?,
        None => riesz_potential(&f, cfg.alpha)?,
    };
    let mut rep = Report::new(grid_table(&out));
    rep.line(format!("max = {}", fmt_sig(out.max())));
    rep.line(format!("integral of f = {}", fmt_sig(f.integral())));
    if let Some(p) = &p {
        rep.constants(p)?;
    }
    Ok(rep)
}

fn run_k0scan(cfg: &RunConfig, centers: usize, radii: usize, rmin: Option<f64>, rmax: Option<f64>) -> Result<Report> {
    let p = need_exponent(cfg)?;
    let n = p.dimension();
    let dom = p.domain();
    let (lo, hi) = if dom.is_finite() { (dom.lo.clone(), dom.hi.clone()) } else { (vec![-10.0; n], vec![10.0; n]) };
    let axis: Vec<Vec<f64>> = (0..n)
        .map(|d| center_lattice(lo[d], hi[d], centers).into_iter().map(|c| c[0]).collect())
        .collect();
    let total = axis.iter().map(Vec::len).product::<usize>();
    let pts: Vec<Vec<f64>> = (0..total)
        .map(|mut i| {
            axis.iter()
                .map(|a| {
                    let v = a[i % a.len()];
                    i /= a.len();
                    v
                })
                .collect()
        })
        .collect();
    let side = (0..n).map(|d| hi[d] - lo[d]).fold(f64::INFINITY, f64::min);
    let (r0, r1) = (rmin.unwrap_or(1e-3 * side), rmax.unwrap_or(0.5 * side));
    if !(r0 > 0.0 && r1 >= r0) {
        return Err(precondition("need 0 < rmin <= rmax"));
    }
    let family = CubeFamily::lattice(&pts, &log_ladder(r0, r1, radii))?;
    let k0 = k0alpha_constant(&p, cfg.alpha, &family)?;
    let sandwich = norm_harmonic_sandwich(&p, &family)?;
    let iff = k0alpha_iff_k0_check(&p, cfg.alpha, &family)?;
    let mut header: Vec<String> = (0..n).map(|d| format!("c{d}")).collect();
    for h in ["radius", "measure", "harmonic_mean", "norm_p", "norm_conj", "norm_q", "k0alpha", "sandwich_holds"] {
        header.push(h.into());
    }
    let refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut rep = Report::new(Table::new(&refs));
    for (s, row) in k0.samples.iter().zip(&sandwich.rows) {
        let mut r = s.cube.center.clone();
        r.extend([
            s.cube.radius,
            s.norms.measure,
            s.norms.harmonic_mean.to_f64(),
            s.norms.norm_p,
            s.norms.norm_conj,
            s.norms.norm_q,
            s.value,
            flag(row.holds),
        ]);
        rep.table.push(r);
    }
    rep.line(format!("cubes scanned = {}", family.len()));
    rep.line(format!("K0^alpha (family max) = {}", fmt_sig(k0.best_value)));
    rep.line(format!("K0 of p = {}, K0 of q = {}", fmt_sig(iff.max_k0_p), fmt_sig(iff.max_k0_q)));
    rep.line(format!("sandwich: {}", pass(sandwich.all_hold)));
    rep.line(format!("K0(p), K0(q) <= 5 K0^alpha per cube: {}", pass(iff.forward_holds)));
    rep.line(format!("K0^alpha <= product of sandwich bounds: {}", pass(iff.converse_holds)));
    rep.line(format!("1/p'_E + 1/q_E = 1 - alpha/n: {}", pass(iff.identity_holds)));
    rep.constants(&p)?;
    Ok(rep)
}

fn random_instance(rng: &mut ChaCha8Rng, cells: usize) -> Result<(GridFunction, Cube)> {
    let grid = GridDomain::cube(-4.0, 12.0, 1, cells)?;
    let a: f64 = rng.gen_range(-3.0..-0.5);
    let b: f64 = a + rng.gen_range(0.1..2.0);
    let vals: Vec<f64> = (0..grid.len())
        .map(|i| {
            let x = grid.midpoint(i)[0];
            if x > a && x < b {
                rng.gen_range(0.0..2.0)
            } else {
                0.0
            }
        })
        .collect();
    let f = GridFunction::new(grid, vals)?;
    let q = Cube::interval(a, b)?;
    Ok((f, q))
}

fn run_paircheck(cfg: &RunConfig, instances: usize, kernel_instances: usize) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rep = Report::new(Table::new(&["kind", "t", "alpha", "lhs", "rhs", "holds"]));
    let (mut ok_m, mut ok_k) = (0, 0);
    for _ in 0..instances {
        let (f, q) = random_instance(&mut rng, cfg.cells as usize)?;
        let t = rng.gen_range(4.0..=10.0);
        let alpha = rng.gen_range(0.0..0.9);
        let pr = make_tu_pair(&q, t, &[1.0])?;
        let r = maximal_pair_lower_bound(&f, &pr, alpha)?;
        ok_m += r.holds as usize;
        rep.table.push(vec![0.0, t, alpha, r.lhs_min_over_p, r.rhs, flag(r.holds)]);
    }
    for _ in 0..kernel_instances {
        let (f, q) = random_instance(&mut rng, cfg.cells as usize)?;
        let alpha = rng.gen_range(0.05..0.9);
        let kernel = FractionalKernel::riesz(1, alpha)?;
        let t = kernel.t0() * rng.gen_range(1.0..2.0);
        let pr = make_tu_pair(&q, t, &[1.0])?;
        let r = czo_pair_lower_bound(&kernel, &f, &pr)?;
        ok_k += r.holds as usize;
        rep.table.push(vec![1.0, t, alpha, r.lhs_min_over_p, r.rhs, flag(r.holds)]);
    }
    rep.line(format!("maximal pair bound: {ok_m}/{instances} hold"));
    rep.line(format!("Riesz kernel pair bound (t >= t0): {ok_k}/{kernel_instances} hold"));
    Ok(rep)
}

fn witness_report(spec: &ExampleSpec, j_max: u64) -> Result<Report> {
    let w = witness_growth(spec, j_max)?;
    let mut rep = Report::new(Table::new(&["j", "measure", "harmonic_mean", "norm", "ratio", "asserted", "holds"]));
    for r in &w.rows {
        rep.table.push(vec![
            r.j as f64,
            r.measure,
            r.harmonic_mean,
            r.norm,
            r.ratio,
            flag(r.asserted),
            flag(r.holds),
        ]);
    }
    for (k, v) in &spec.constants {
        rep.line(format!("{k} = {}", fmt_sig(*v)));
    }
    rep.line(format!("first asserted index J = {}", w.start.map_or("none".into(), |j| j.to_string())));
    rep.line(format!("norm >= j |Q_j|^(1/s_Q) for j >= J: {}", pass(w.all_hold)));
    let sw = norm_harmonic_sandwich(&spec.exponent, &witness_family(spec, j_max)?)?;
    rep.line(format!("sandwich on the witness intervals: {}", pass(sw.all_hold)));
    rep.constants(&spec.exponent)?;
    Ok(rep)
}

#[allow(clippy::too_many_arguments)]
fn run_example(
    cfg: &RunConfig,
    name: &str,
    k: Option<u64>,
    p_minus: f64,
    p_plus: f64,
    r: f64,
    rmax: f64,
    dim: usize,
) -> Result<Report> {
    let which: ExampleName = name.parse()?;
    match which {
        ExampleName::L1Failure => {
            let l1 = build_l1_failure(cfg.alpha, dim, rmax)?;
            let mut rep = Report::new(Table::new(&["R", "partial_modular"]));
            for &(big_r, v) in &l1.partials {
                rep.table.push(vec![big_r, v]);
            }
            rep.line(format!("slope vs log R = {}", fmt_sig(l1.slope)));
            rep.line(format!("analytic slope = {}", fmt_sig(l1.analytic_slope)));
            rep.line(format!("lattice spacing = {}", fmt_sig(l1.h)));
            Ok(rep)
        }
        ExampleName::Ex61 => {
            let spec = build_ex61(cfg.alpha)?;
            let kk = k.unwrap_or(50);
            let d = ex61_divergence_check(&spec, kk)?;
            let mut rep =
                Report::new(Table::new(&["k", "rho_p_partial", "rho_p_oracle", "rho_q_partial", "rho_q_floor"]));
            for row in &d.rows {
                rep.table.push(vec![
                    row.k as f64,
                    row.rho_p_partial,
                    row.rho_p_oracle,
                    row.rho_q_partial,
                    row.rho_q_floor,
                ]);
            }
            for (key, v) in &spec.constants {
                rep.line(format!("{key} = {}", fmt_sig(*v)));
            }
            rep.line(format!(
                "windows: {} cells of width {} around each e^k; gaps between windows omitted from rho_q",
                d.window_cells,
                fmt_sig(d.h)
            ));
            rep.line(format!("rho_p partials match the series: {}", pass(d.rho_p_matches)));
            rep.line(format!("rho_q partials above the harmonic floor: {}", pass(d.rho_q_tracks)));
            let scan = ex61_k0alpha_scan(&spec, kk)?;
            rep.line(format!(
                "K0^alpha scan: {} (coarse), {} (refined), change {}: {}",
                fmt_sig(scan.coarse.best_value),
                fmt_sig(scan.refined.best_value),
                fmt_sig(scan.relative_change),
                pass(scan.stable)
            ));
            let sw = norm_harmonic_sandwich(&spec.exponent, &ex61_scan_family(kk, 2)?)?;
            rep.line(format!("sandwich on the scan family: {}", pass(sw.all_hold)));
            rep.constants(&spec.exponent)?;
            Ok(rep)
        }
        ExampleName::Ex62 => {
            let spec = build_ex62()?;
            let mut rep = witness_report(&spec, k.unwrap_or(64))?;
            let ts = two_sided_ratio(&spec.exponent, &random_intervals(200, cfg.seed)?)?;
            rep.line(format!(
                "norm/|Q|^(1/p_Q) over 200 random intervals in [{}, {}], lower bound 1/(2K) = {}: {}",
                fmt_sig(ts.min_ratio),
                fmt_sig(ts.max_ratio),
                fmt_sig(ts.lower),
                pass(ts.lower_holds)
            ));
            Ok(rep)
        }
        ExampleName::Ex63 => witness_report(&build_ex63(cfg.alpha, p_minus, p_plus)?, k.unwrap_or(64)),
        ExampleName::Ex64 => witness_report(&build_ex64(cfg.alpha, p_minus, p_plus)?, k.unwrap_or(64)),
        ExampleName::HmCounter => {
            let h = hm_counter(r)?;
            let mut rep = Report::new(Table::new(&["r", "p_Q", "p_Q_closed", "p_small", "p_small_closed"]));
            rep.table.push(vec![h.r, h.whole_mean, h.whole_closed, h.small_mean, h.small_closed]);
            rep.line(format!(
                "p_Q = {} < p_Q(0,r) = {}: {}",
                fmt_sig(h.whole_mean),
                fmt_sig(h.small_mean),
                pass(h.whole_mean < h.small_mean)
            ));
            rep.constants(&h.spec.exponent)?;
            Ok(rep)
        }
    }
}

fn run_blowup(cfg: &RunConfig, t: f64, k: usize, c: f64, dim: usize) -> Result<Report> {
    let p = match load_exponent(cfg)? {
        Some(p) => p,
        None => default_blowup_exponent(dim)?,
    };
    let fam = build_blowup(&p, cfg.alpha, t, k)?;
    let g = blowup_modular_growth(&fam, c)?;
    let mut rep = Report::new(Table::new(&["k", "beta", "r", "R", "series", "lower_bound", "series_over_k"]));
    for (lv, row) in fam.levels.iter().zip(&g.rows) {
        rep.table.push(vec![
            row.k as f64,
            lv.beta,
            lv.r,
            lv.big_r,
            row.series,
            row.lower_bound,
            row.series / row.k as f64,
        ]);
    }
    for lv in &fam.levels {
        for chk in &lv.checks {
            rep.line(format!(
                "k={} {}: {} (measured {}, bound {})",
                lv.k,
                chk.name,
                pass(chk.holds),
                fmt_sig(chk.measured),
                fmt_sig(chk.bound)
            ));
        }
    }
    rep.line(format!("K0 over the Q_j, P_j family = {}", fmt_sig(g.k0_family)));
    rep.line(format!("linear lower-bound slope = {}", fmt_sig(g.slope)));
    rep.line(format!("series >= slope * k: {}", pass(g.linear_holds)));
    rep.line(format!("series nondecreasing in k: {}", pass(g.monotone)));
    rep.constants(&p)?;
    Ok(rep)
}

/// Runs one subcommand and writes its artifacts.
pub fn run(cfg: &RunConfig) -> Result<RunOutput> {
    let rep = match &cfg.command {
        Command::Norm(fa) => run_norm(cfg, fa, None)?,
        Command::Modular { f, lambda } => run_norm(cfg, f, Some(*lambda))?,
        Command::Maximal { f, policy } => run_operator(cfg, f, Some(*policy))?,
        Command::Riesz { f } => run_operator(cfg, f, None)?,
        Command::K0scan {
            centers,
            radii,
            rmin,
            rmax,
        } => run_k0scan(cfg, *centers, *radii, *rmin, *rmax)?,
        Command::Paircheck {
            instances,
            kernel_instances,
        } => run_paircheck(cfg, *instances, *kernel_instances)?,
        Command::Example {
            name,
            k,
            p_minus,
            p_plus,
            r,
            rmax,
            dim,
        } => run_example(cfg, name, *k, *p_minus, *p_plus, *r, *rmax, *dim)?,
        Command::Blowup { t, k, c, dim } => run_blowup(cfg, *t, *k, *c, *dim)?,
    };
    let config = serde_json::to_string_pretty(cfg).map_err(|e| Error::Io(e.to_string()))?;
    let mut summary = String::new();
    for l in &rep.lines {
        let _ = writeln!(summary, "{l}");
    }
    let _ = writeln!(summary, "norm tolerance (relative) = {NORM_RTOL:e}");
    let _ = writeln!(summary, "seed = {}", cfg.seed);
    let _ = writeln!(summary, "config = {}", serde_json::to_string(cfg).map_err(|e| Error::Io(e.to_string()))?);

    let stem = match &cfg.command {
        Command::Example { name, .. } => format!("example_{}", name.to_ascii_lowercase()),
        c => c.name().to_string(),
    };
    fs::create_dir_all(&cfg.out)?;
    let csv = rep.table.to_csv_string();
    let files = vec![
        cfg.out.join(format!("{stem}.csv")),
        cfg.out.join(format!("{stem}.summary.txt")),
        cfg.out.join(format!("{stem}.config.json")),
    ];
    fs::write(&files[0], &csv)?;
    fs::write(&files[1], &summary)?;
    fs::write(&files[2], config + "\n")?;
    Ok(RunOutput { summary, csv, files })
}

/// Parses `args`, runs, prints the summary and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cfg) {
        Ok(out) => {
            print!("{}", out.summary);
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_spec(dir: &std::path::Path, text: &str) -> PathBuf {
        let p = dir.join("p.json");
        fs::write(&p, text).unwrap();
        p
    }

    const CONST2: &str = r#"{"dimension": 1, "domain": {"lo": [0], "hi": [4]},
        "pieces": [{"kind": "constant", "box": {"lo": [0], "hi": [4]}, "value": 2}]}"#;

    #[test]
    fn norm_of_constant_two() {
        let dir = tempfile::tempdir().unwrap();
        let spec = write_spec(dir.path(), CONST2);
        let out = dir.path().join("o");
        let cfg = RunConfig::try_parse_from([
            "varlp",
            "norm",
            "--spec",
            spec.to_str().unwrap(),
            "--set",
            "0,4",
            "--out",
            out.to_str().unwrap(),
        ])
        .unwrap();
        let r = run(&cfg).unwrap();
        assert!(r.summary.contains("norm = 2.0000000"), "{}", r.summary);
        assert!(r.files.iter().all(|f| f.exists()));
    }

    #[test]
    fn exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let bad = write_spec(dir.path(), "{not json");
        let out = dir.path().join("o");
        let o = out.to_str().unwrap();
        assert_eq!(main_with_args(["varlp", "norm", "--spec", bad.to_str().unwrap(), "--out", o]), 2);
        assert_eq!(main_with_args(["varlp", "norm", "--out", o]), 1);
        assert_eq!(main_with_args(["varlp", "norm", "--cells", "8"]), 2);
        assert_eq!(main_with_args(["varlp", "example", "EX61", "--alpha", "0.7", "--out", o]), 1);
    }

    #[test]
    fn identical_runs_give_identical_csv() {
        let dir = tempfile::tempdir().unwrap();
        let o = dir.path().to_str().unwrap();
        let args = ["varlp", "paircheck", "--instances", "5", "--kernel-instances", "3", "--seed", "9", "--out", o];
        let a = run(&RunConfig::try_parse_from(args).unwrap()).unwrap();
        let b = run(&RunConfig::try_parse_from(args).unwrap()).unwrap();
        assert_eq!(a.csv, b.csv);
        assert!(a.summary.contains("seed = 9"));
    }
}

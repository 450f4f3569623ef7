//! The `cqg` command-line front end.
//!
//! Exit codes: 0 success, 1 usage or domain error, 2 an inequality check was violated,
//! 3 an iterative engine did not converge, 4 I/O failure.

mod args;
mod cache;

use std::ffi::OsString;
use std::path::PathBuf;

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::elements::{element_from_json, generate_family, Element, FamilySpec};
use crate::error::Error;
use crate::fusion::{
    growth_profile, lattice_sphere_points, level_dims, trivial_multiplicity_in_power, IrrLabel, RingId, RingKind,
    DEFAULT_MOMENT_CAP,
};
use crate::hl::{
    equivalence_check, hausdorff_young_check, hl_lhs, rd_verify, rhs_norm, sharpness_sweep, strong_haagerup_ratio,
    strong_haagerup_verify, LhsForm, SweepSpec, Trials,
};
use crate::norms::{dual_lp_norm, haar_moment, l2_norm, lattice_lp_norm, qtorus_lp_norm, NormResult, OpnormOptions, QuadratureConfig};
use crate::report::{write_atomic, Cell, Table};
use crate::weights::{paley_constant, paley_constant_rd, paley_rd_trace, paley_trace, zeta_probe, Constant, WeightSpec};

pub use args::{parse_config, validate, Command, Common, ElementSource, Format, RunConfig, Side, SweepFamilyArg};
pub use cache::{cache_key, Cache, CacheEntry, ARTIFACT_VERSION};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Clap(clap::Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) if !e.use_stderr() => 0,
            CliError::Clap(_) | CliError::Usage(_) => 1,
            CliError::Lib(Error::NonConvergence { .. }) => 3,
            CliError::Lib(_) => 1,
            CliError::Io(_) => 4,
        }
    }
}

/// What a command produced.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub table: Table,
    /// Replaces the table's JSON rendering when present.
    pub json: Option<String>,
    pub violations: usize,
    pub unconverged: usize,
}

impl Outcome {
    fn new(table: Table) -> Self {
        Outcome { table, json: None, violations: 0, unconverged: 0 }
    }

    pub fn exit_code(&self) -> i32 {
        if self.violations > 0 {
            2
        } else if self.unconverged > 0 {
            3
        } else {
            0
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.table.to_csv(),
            Format::Json => self.json.clone().unwrap_or_else(|| self.table.to_json()),
        }
    }
}

fn cache_for(common: &Common) -> Option<Cache> {
    if common.no_cache {
        return None;
    }
    let dir = common
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("CQG_CACHE_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(".cqg-cache"));
    Some(Cache::new(dir))
}

/// Function-side norm through the cache.
fn cached_norm(
    cache: Option<&Cache>,
    e: &Element,
    p: f64,
    q: &QuadratureConfig,
    op: &OpnormOptions,
) -> Result<(NormResult, &'static str), CliError> {
    let engine = if matches!(e.ring().kind(), RingKind::FreeGroup(_)) && (1.0..2.0).contains(&p) {
        "free-lp-lower"
    } else {
        crate::norms::engine_id(e, p)
    };
    let key = cache.map(|_| cache_key(e, engine, p, q, op));
    if let (Some(c), Some(k)) = (cache, &key) {
        if let Some(hit) = c.get(k) {
            return Ok((hit, engine));
        }
    }
    let (result, engine) = rhs_norm(e, p, q, op)?;
    if let (Some(c), Some(k)) = (cache, &key) {
        c.put(k, engine, &result).map_err(|err| CliError::Io(format!("cache {}: {err}", c.dir().display())))?;
    }
    Ok((result, engine))
}

fn load_elements(src: &ElementSource) -> Result<Vec<Element>, CliError> {
    let check_ring = |e: Element| -> Result<Element, CliError> {
        match src.ring {
            Some(r) if r != *e.ring() => Err(CliError::Usage(format!("--ring {r} does not match element ring {}", e.ring()))),
            _ => Ok(e),
        }
    };
    if let Some(path) = &src.element {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        return Ok(vec![check_ring(element_from_json(&text)?)?]);
    }
    if let Some(text) = &src.inline {
        return Ok(vec![check_ring(element_from_json(text)?)?]);
    }
    let (Some(kind), Some(ring)) = (src.family, src.ring) else {
        return Err(CliError::Usage("give exactly one of --element, --inline or --family".into()));
    };
    let spec = FamilySpec::new(kind, src.seed.unwrap_or(0), src.support_cap);
    Ok(generate_family(&ring, &spec, src.count)?.elements)
}

fn weight_for(text: &str, ring: &RingId) -> Result<WeightSpec, CliError> {
    let resolved = if text.contains("r0") {
        let r0 = ring.r0().ok_or_else(|| CliError::Usage(format!("r0 is only defined for onplus and snplus, not {ring}")))?;
        text.replace("r0", &format!("{r0:?}"))
    } else {
        text.to_string()
    };
    Ok(WeightSpec::parse(&resolved)?)
}

/// Converts a folded multiplier pair `(r^{(2−p)/p}, s(2−p)/p)` back to `(r, s)`.
fn unfold(w: WeightSpec, p: f64) -> Result<WeightSpec, CliError> {
    if p >= 2.0 {
        return Err(CliError::Usage("--folded needs p < 2".into()));
    }
    let f = p / (2.0 - p);
    Ok(WeightSpec::new(w.r.powf(f), w.s * f)?)
}

fn dims(ring: &RingId, kmax: usize) -> Result<Outcome, CliError> {
    let mut t = Table::new(&["k", "dim"]);
    for (k, n) in level_dims(ring, kmax)?.iter().enumerate() {
        t.push(vec![k.into(), n.to_string().into()]);
    }
    Ok(Outcome::new(t))
}

fn growth(ring: &RingId, kmax: usize) -> Result<Outcome, CliError> {
    let g = growth_profile(ring, kmax)?;
    let mut t = Table::new(&["k", "sphere", "ball"]);
    for (k, (s, b)) in g.spheres.iter().zip(&g.balls).enumerate() {
        t.push(vec![k.into(), s.to_string().into(), b.to_string().into()]);
    }
    Ok(Outcome::new(t))
}

fn moments(ring: &RingId, m: usize, level: u32, tol: f64, q: &QuadratureConfig) -> Result<Outcome, CliError> {
    let mut t = Table::new(&["m", "fusion_count", "quadrature", "difference"]);
    let mut out_violations = 0;
    for j in 0..=m {
        let levels = vec![level; 2 * j];
        let count = if j == 0 {
            1
        } else {
            let labels: Vec<IrrLabel> = levels.iter().map(|&l| IrrLabel::Level(l)).collect();
            trivial_multiplicity_in_power(ring, &labels, DEFAULT_MOMENT_CAP.max(2 * j))?
        };
        let quad = haar_moment(ring, &levels, q)?.value;
        let diff = quad - count as f64;
        out_violations += usize::from(diff.abs() > tol * (count as f64).max(1.0));
        t.push(vec![j.into(), Cell::Int(count as i128), quad.into(), diff.into()]);
    }
    let mut o = Outcome::new(t);
    o.violations = out_violations;
    Ok(o)
}

fn norm(src: &ElementSource, ps: &[f64], side: Side, common: &Common) -> Result<Outcome, CliError> {
    let (q, op) = (common.quadrature(), common.opnorm());
    let cache = cache_for(common);
    let mut t = Table::new(&["index", "p", "side", "value", "semantics", "error_estimate", "engine"]);
    let mut unconverged = 0;
    for (i, e) in load_elements(src)?.iter().enumerate() {
        for &p in ps {
            if matches!(side, Side::Dual | Side::Both) {
                let d = dual_lp_norm(e, p)?;
                t.push(vec![i.into(), p.into(), "dual".into(), d.value.into(), d.semantics.as_str().into(), 0.0.into(), "exact-sum".into()]);
            }
            if matches!(side, Side::Function | Side::Both) {
                match cached_norm(cache.as_ref(), e, p, &q, &op) {
                    Ok((r, engine)) => t.push(vec![
                        i.into(),
                        p.into(),
                        "function".into(),
                        r.value.into(),
                        r.semantics.as_str().into(),
                        r.error_estimate.into(),
                        engine.into(),
                    ]),
                    Err(CliError::Lib(Error::NonConvergence { partial, .. })) => {
                        unconverged += 1;
                        t.push(vec![i.into(), p.into(), "function".into(), partial.into(), "lower_bound".into(), f64::NAN.into(), "free-opnorm-lower".into()]);
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    let mut o = Outcome::new(t);
    o.unconverged = unconverged;
    Ok(o)
}

fn paley(ring: &RingId, weight: &str, kmax: usize, beta: Option<f64>, trace: bool) -> Result<Outcome, CliError> {
    let w = weight_for(weight, ring)?;
    if trace {
        let points = match beta {
            Some(b) => paley_rd_trace(&w, b, kmax)?,
            None => paley_trace(ring, &w, kmax)?,
        };
        let mut t = Table::new(&["k", "weight", "mass", "value"]);
        for pt in points {
            t.push(vec![pt.k.into(), pt.weight.into(), pt.mass.into(), pt.value.into()]);
        }
        return Ok(Outcome::new(t));
    }
    let rep = match beta {
        Some(b) => paley_constant_rd(&w, b, kmax)?,
        None => paley_constant(ring, &w, kmax)?,
    };
    let mut t = Table::new(&["constant", "scan_max", "attained_at", "truncation", "stabilized"]);
    let constant = match rep.constant {
        Constant::Finite(x) => Cell::Float(x),
        Constant::Divergent => Cell::Text("divergent".into()),
    };
    t.push(vec![constant, rep.scan_max.into(), rep.attained_at.into(), rep.truncation.into(), rep.stabilized.into()]);
    let mut o = Outcome::new(t);
    o.json = Some(serde_json::to_string_pretty(&rep).expect("report serializes") + "\n");
    Ok(o)
}

fn zeta(ring: &RingId, s: f64, kmax: usize) -> Result<Outcome, CliError> {
    let rep = zeta_probe(ring, s, kmax)?;
    let verdict = serde_json::to_value(rep.verdict).expect("verdict serializes");
    let mut t = Table::new(&["s", "kmax", "partial_sum", "previous_decade", "last_decade", "verdict"]);
    t.push(vec![
        s.into(),
        kmax.into(),
        (*rep.partial_sums.last().expect("nonempty")).into(),
        rep.previous_decade.into(),
        rep.last_decade.into(),
        verdict.as_str().expect("string verdict").into(),
    ]);
    Ok(Outcome::new(t))
}

#[allow(clippy::too_many_arguments)]
fn hl_ratio_cmd(
    src: &ElementSource,
    ps: &[f64],
    weight: &str,
    folded: bool,
    form: LhsForm,
    bound: Option<f64>,
    common: &Common,
) -> Result<Outcome, CliError> {
    let (q, op) = (common.quadrature(), common.opnorm());
    let cache = cache_for(common);
    let elements = load_elements(src)?;
    let mut t = Table::new(&["index", "p", "r", "s", "form", "lhs", "rhs", "ratio", "rhs_semantics", "engine", "upper_estimate"]);
    let mut violations = 0;
    for (i, e) in elements.iter().enumerate() {
        if e.is_zero() {
            return Err(CliError::Lib(Error::Domain(format!("element {i} is zero"))));
        }
        let base = weight_for(weight, e.ring())?;
        for &p in ps {
            let w = if folded { unfold(base, p)? } else { base };
            let lhs = hl_lhs(e, &w, p, form)?.value;
            let (rhs, engine) = cached_norm(cache.as_ref(), e, p, &q, &op)?;
            let ratio = lhs / rhs.value;
            violations += usize::from(bound.is_some_and(|b| !(ratio <= b)));
            t.push(vec![
                i.into(),
                p.into(),
                w.r.into(),
                w.s.into(),
                form.to_string().into(),
                lhs.into(),
                rhs.value.into(),
                ratio.into(),
                rhs.semantics.as_str().into(),
                engine.into(),
                (rhs.semantics == crate::norms::Semantics::LowerBound).into(),
            ]);
        }
    }
    let mut o = Outcome::new(t);
    o.violations = violations;
    Ok(o)
}

fn equiv(src: &ElementSource, ps: &[f64], d: Option<f64>, envelope: Option<f64>, q: &QuadratureConfig) -> Result<Outcome, CliError> {
    let elements = load_elements(src)?;
    let d_family = match (src.family, src.ring) {
        (Some(kind), Some(ring)) => generate_family(&ring, &FamilySpec::new(kind, src.seed.unwrap_or(0), src.support_cap), src.count)?
            .metadata
            .d_constant,
        _ => None,
    };
    let mut t = Table::new(&["index", "p", "d", "lp", "rhs_form", "lower_ratio", "upper_ratio"]);
    let mut violations = 0;
    for (i, e) in elements.iter().enumerate() {
        let Some(c) = e.central_coeffs() else {
            return Err(CliError::Usage("equiv needs central elements".into()));
        };
        if c.iter().any(|z| z.im != 0.0) {
            return Err(CliError::Lib(Error::Domain("equiv needs real coefficients".into())));
        }
        let real: Vec<f64> = c.iter().map(|z| z.re).collect();
        let dd = match d.or(d_family) {
            Some(x) => x,
            None => crate::elements::tail_constant(&real).unwrap_or(f64::INFINITY),
        };
        for &p in ps {
            let rep = equivalence_check(e.ring(), &real, p, dd, q)?;
            if let Some(k) = envelope {
                violations += usize::from(!(rep.lower_ratio <= k && rep.upper_ratio <= k));
            }
            t.push(vec![i.into(), p.into(), dd.into(), rep.lp.value.into(), rep.rhs_form.into(), rep.lower_ratio.into(), rep.upper_ratio.into()]);
        }
    }
    let mut o = Outcome::new(t);
    o.violations = violations;
    Ok(o)
}

fn sweep(cfg: &Command, common: &Common) -> Result<Outcome, CliError> {
    let Command::Sweep { ring, p, rate, s, sweep_family, params, support_cap, form } = cfg else {
        unreachable!("called for sweep")
    };
    let r = if rate.trim() == "r0" {
        ring.r0().ok_or_else(|| CliError::Usage(format!("r0 is only defined for onplus and snplus, not {ring}")))?
    } else {
        rate.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("--r {rate:?} is neither a number nor r0")))?
    };
    let spec = SweepSpec {
        ring: *ring,
        p_grid: p.clone(),
        r,
        s_grid: s.clone(),
        family: (*sweep_family).into(),
        params: params.clone(),
        support_cap: *support_cap,
        form: *form,
    };
    let rep = sharpness_sweep(&spec, &common.quadrature(), &common.opnorm())?;
    let mut t = Table::new(&["p", "r", "s", "family_param", "lhs", "rhs", "ratio", "rhs_semantics"]);
    for c in &rep.cells {
        t.push(vec![c.p.into(), c.r.into(), c.s.into(), c.family_param.into(), c.lhs.into(), c.rhs.value.into(), c.ratio.into(), c.rhs.semantics.as_str().into()]);
    }
    let mut o = Outcome::new(t);
    o.json = Some(serde_json::to_string_pretty(&rep).expect("report serializes") + "\n");
    Ok(o)
}

fn verify_table(k: usize, rep: &crate::hl::VerifyReport, tol: f64) -> Outcome {
    let mut t = Table::new(&["trial", "k", "ratio"]);
    for (i, r) in rep.ratios.iter().enumerate() {
        t.push(vec![i.into(), k.into(), (*r).into()]);
    }
    let mut o = Outcome::new(t);
    o.violations = rep.ratios.iter().filter(|&&r| !(r <= 1.0 + tol)).count();
    o.json = Some(serde_json::to_string_pretty(rep).expect("report serializes") + "\n");
    o
}

fn random_torus_element(ring: RingId, d: usize, radius: usize, cap: usize, rng: &mut ChaCha8Rng) -> Result<Element, CliError> {
    let labels: Vec<Vec<i64>> = (0..=radius).flat_map(|k| lattice_sphere_points(d, k)).collect();
    let size = rng.gen_range(1..=cap.min(labels.len()));
    let mut idx = sample(rng, labels.len(), size).into_vec();
    idx.sort_unstable();
    let terms: Vec<(IrrLabel, Complex64)> = idx
        .into_iter()
        .map(|i| (IrrLabel::Vector(labels[i].clone()), Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))))
        .collect();
    Ok(Element::points(ring, terms)?)
}

#[allow(clippy::too_many_arguments)]
fn qtorus_check(
    theta: &str,
    trials: usize,
    seed: u64,
    cap: usize,
    radius: usize,
    p: f64,
    tol: f64,
    common: &Common,
) -> Result<Outcome, CliError> {
    let q = common.quadrature();
    let ring: RingId = format!("qtorus:{theta}").parse()?;
    let classical = RingId::lattice(2)?;
    let weight = WeightSpec::new(1.0, 2.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Table::new(&["trial", "l2_quadrature", "l2_coefficients", "lp", "classical_lp", "lhs", "ratio"]);
    let mut violations = 0;
    let commutative = matches!(ring.kind(), RingKind::QTorus { num: 0, .. });
    for i in 0..trials {
        let e = random_torus_element(ring, 2, radius, cap, &mut rng)?;
        let l2q = qtorus_lp_norm(&e, 2.0, &q)?.value;
        let l2c = l2_norm(&e).value;
        let lp = qtorus_lp_norm(&e, p, &q)?.value;
        let twin = Element::points(classical, e.point_coeffs().expect("points").clone())?;
        let classical_lp = if commutative { lattice_lp_norm(&twin, p, &q)?.value } else { f64::NAN };
        let lhs = hl_lhs(&e, &weight, p, LhsForm::Schatten)?.value;
        violations += usize::from(!((l2q - l2c).abs() <= tol * l2c.max(1.0)));
        if commutative {
            violations += usize::from(!((lp - classical_lp).abs() <= 1e-12 * classical_lp.max(1.0)));
        }
        t.push(vec![i.into(), l2q.into(), l2c.into(), lp.into(), classical_lp.into(), lhs.into(), (lhs / lp).into()]);
    }
    let mut o = Outcome::new(t);
    o.violations = violations;
    Ok(o)
}

/// Executes a validated configuration.
pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let common = &cfg.common;
    let (q, op) = (common.quadrature(), common.opnorm());
    match &cfg.command {
        Command::Dims { ring, kmax } => dims(ring, *kmax),
        Command::Growth { ring, kmax } => growth(ring, *kmax),
        Command::Moments { ring, m, level, tol } => moments(ring, *m, *level, *tol, &q),
        Command::Norm { source, p, side } => norm(source, p, *side, common),
        Command::Paley { ring, weight, kmax, beta, trace } => paley(ring, weight, *kmax, *beta, *trace),
        Command::Zeta { ring, s, kmax } => zeta(ring, *s, *kmax),
        Command::HlRatio { source, p, weight, folded, form, bound } => {
            hl_ratio_cmd(source, p, weight, *folded, *form, *bound, common)
        }
        Command::Equiv { source, p, d, envelope } => equiv(source, p, *d, *envelope, &q),
        c @ Command::Sweep { .. } => sweep(c, common),
        Command::Rd { ring, k, beta, trials, seed, support_cap, tol } => {
            let trials = Trials { count: *trials, seed: seed.unwrap_or(0), support_cap: *support_cap };
            let rep = rd_verify(ring, *k, *beta, trials, &q, &op)?;
            let mut o = verify_table(*k, &rep, *tol);
            o.unconverged = rep.unconverged;
            Ok(o)
        }
        Command::Haagerup { n, k, trials, seed, support_cap, element, tol } => {
            if let Some(path) = element {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                let e = element_from_json(&text)?;
                if *e.ring() != RingId::free_group(*n)? {
                    return Err(CliError::Usage(format!("element ring {} is not free:{n}", e.ring())));
                }
                let (ratio, _) = strong_haagerup_ratio(&e, &op)?;
                let rep = crate::hl::VerifyReport { ratios: vec![ratio], max_ratio: ratio, unconverged: 0, min_effective_radius: None };
                return Ok(verify_table(e.max_length(), &rep, *tol));
            }
            let trials = Trials { count: *trials, seed: seed.expect("validated"), support_cap: *support_cap };
            let rep = strong_haagerup_verify(*n, *k, trials, &op)?;
            let mut o = verify_table(*k, &rep, *tol);
            o.unconverged = rep.unconverged;
            Ok(o)
        }
        Command::HyCheck { source, p, tol } => {
            let mut t = Table::new(&["index", "p", "lp", "dual", "margin", "lp_semantics", "engine"]);
            let mut violations = 0;
            for (i, e) in load_elements(source)?.iter().enumerate() {
                for &pp in p {
                    let rep = hausdorff_young_check(e, pp, &q, &op)?;
                    violations += usize::from(!(rep.margin >= -tol));
                    t.push(vec![i.into(), pp.into(), rep.lp.value.into(), rep.dual.into(), rep.margin.into(), rep.lp.semantics.as_str().into(), rep.engine.into()]);
                }
            }
            let mut o = Outcome::new(t);
            o.violations = violations;
            Ok(o)
        }
        Command::QtorusCheck { theta, trials, seed, support_cap, label_radius, p, tol } => {
            qtorus_check(theta, *trials, seed.expect("validated"), *support_cap, *label_radius, *p, *tol, common)
        }
    }
}

fn emit(cfg: &RunConfig, outcome: &Outcome) -> Result<(), CliError> {
    if let Some(path) = &cfg.common.out {
        write_atomic(path, outcome.render(cfg.common.format).as_bytes())
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    if !cfg.common.quiet {
        if cfg.common.out.is_none() && cfg.common.format == Format::Json {
            print!("{}", outcome.render(Format::Json));
        } else {
            for i in 0..outcome.table.rows.len() {
                println!("{}", outcome.table.summary_line(i));
            }
        }
    }
    Ok(())
}

/// Parses, runs and reports; returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = parse_config(argv).and_then(|cfg| {
        if let Some(n) = cfg.common.threads {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        let outcome = run(&cfg)?;
        emit(&cfg, &outcome)?;
        Ok(outcome)
    });
    match result {
        Ok(o) => {
            if o.violations > 0 {
                eprintln!("{} inequality check(s) violated", o.violations);
            }
            o.exit_code()
        }
        Err(CliError::Clap(e)) => {
            let _ = e.print();
            CliError::Clap(e).exit_code()
        }
        Err(e) => {
            eprintln!("cqg: {e}");
            e.exit_code()
        }
    }
}


//! Command-line arguments, JSON config merging and validation.

use std::path::PathBuf;

use clap::parser::ValueSource;
use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};

use super::CliError;
use crate::elements::FamilyKind;
use crate::fusion::RingId;
use crate::hl::{LhsForm, SweepFamily};
use crate::norms::{OpnormOptions, QuadratureConfig};

fn ring(s: &str) -> Result<RingId, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

fn family(s: &str) -> Result<FamilyKind, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

fn form(s: &str) -> Result<LhsForm, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

#[derive(Parser, Debug, Clone, PartialEq)]
#[command(name = "cqg", version, about = "Hardy–Littlewood and Paley inequality laboratory for compact quantum groups")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct Common {
    /// JSON file of option values; command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Report file; stdout only when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Cache directory (falls back to `CQG_CACHE_DIR`, then `.cqg-cache`).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Suppress the per-row summary on stdout.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Base quadrature node count (power of two ≥ 16).
    #[arg(long, global = true, default_value_t = QuadratureConfig::default().node_count)]
    pub nodes: usize,
    #[arg(long, global = true, default_value_t = QuadratureConfig::default().refinement_rounds)]
    pub refinement_rounds: usize,
    #[arg(long, global = true, default_value_t = QuadratureConfig::default().sup_grid)]
    pub sup_grid: usize,
    /// Domain ball radius of the free-group operator-norm bound.
    #[arg(long, global = true, default_value_t = OpnormOptions::default().radius)]
    pub radius: usize,
    #[arg(long, global = true, default_value_t = OpnormOptions::default().max_entries)]
    pub max_entries: usize,
    #[arg(long, global = true, default_value_t = OpnormOptions::default().max_iter)]
    pub max_iter: usize,
    #[arg(long, global = true, default_value_t = OpnormOptions::default().tolerance)]
    pub opnorm_tol: f64,
}

impl Common {
    pub fn quadrature(&self) -> QuadratureConfig {
        QuadratureConfig { node_count: self.nodes, refinement_rounds: self.refinement_rounds, sup_grid: self.sup_grid }
    }

    pub fn opnorm(&self) -> OpnormOptions {
        OpnormOptions {
            radius: self.radius,
            max_entries: self.max_entries,
            max_iter: self.max_iter,
            tolerance: self.opnorm_tol,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Function,
    Dual,
    Both,
}

/// Where the elements of a command come from.
#[derive(Args, Debug, Clone, PartialEq)]
pub struct ElementSource {
    /// Ring for `--family`; must match the ring of `--element`/`--inline` when given.
    #[arg(long, value_parser = ring)]
    pub ring: Option<RingId>,
    /// File with one element in canonical JSON.
    #[arg(long)]
    pub element: Option<PathBuf>,
    /// Element as an inline JSON string.
    #[arg(long)]
    pub inline: Option<String>,
    /// Family descriptor such as `heat:t=0.1` or `holomorphic:level=2`.
    #[arg(long, value_parser = family)]
    pub family: Option<FamilyKind>,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Largest level (radial families) or support size (sphere families).
    #[arg(long, default_value_t = 10)]
    pub support_cap: usize,
}

impl ElementSource {
    pub fn is_randomized(&self) -> bool {
        self.family.is_some_and(|f| !matches!(f, FamilyKind::Geometric { .. } | FamilyKind::Heat { .. }))
    }
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// Dimensions n_k of the irreducible representations of each level.
    Dims {
        #[arg(long, value_parser = ring)]
        ring: RingId,
        #[arg(long)]
        kmax: usize,
    },
    /// Sphere and ball sizes s_k, b_k.
    Growth {
        #[arg(long, value_parser = ring)]
        ring: RingId,
        #[arg(long)]
        kmax: usize,
    },
    /// Haar moments h(χ_l^{2m}) by fusion counting and by quadrature.
    Moments {
        #[arg(long, value_parser = ring)]
        ring: RingId,
        /// Largest m.
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        level: u32,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Function-side and dual-side norms of elements.
    Norm {
        #[command(flatten)]
        source: ElementSource,
        /// Exponents (repeatable; `inf` allowed).
        #[arg(long, required = true)]
        p: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Side::Function)]
        side: Side,
    },
    /// Paley admissibility constant of a weight.
    Paley {
        #[arg(long, value_parser = ring)]
        ring: RingId,
        /// `r=…,s=…`; `r=r0` uses the ring's exponential growth rate.
        #[arg(long)]
        weight: String,
        #[arg(long)]
        kmax: usize,
        /// Use the rapid-decay variant with exponent β.
        #[arg(long)]
        beta: Option<f64>,
        /// Emit the full scan instead of the summary.
        #[arg(long)]
        trace: bool,
    },
    /// Convergence probe for Σ_g (1+|g|)^{-s} on a lattice.
    Zeta {
        #[arg(long, value_parser = ring)]
        ring: RingId,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        kmax: usize,
    },
    /// Hardy–Littlewood ratios lhs / ‖f‖_p.
    HlRatio {
        #[command(flatten)]
        source: ElementSource,
        #[arg(long, required = true)]
        p: Vec<f64>,
        #[arg(long)]
        weight: String,
        /// Read the weight as the multiplier pair (r^{(2−p)/p}, s(2−p)/p).
        #[arg(long)]
        folded: bool,
        #[arg(long, value_parser = form, default_value = "schatten")]
        form: LhsForm,
        /// Report a violation when a ratio exceeds this bound.
        #[arg(long)]
        bound: Option<f64>,
    },
    /// Two-sided comparison with (Σ (1+k)^{2p−4} c_k^p)^{1/p} on O_N⁺.
    Equiv {
        #[command(flatten)]
        source: ElementSource,
        #[arg(long, required = true)]
        p: Vec<f64>,
        /// Tail constant D; defaults to the family's own constant.
        #[arg(long)]
        d: Option<f64>,
        /// Report a violation when a ratio leaves [1/K, K].
        #[arg(long)]
        envelope: Option<f64>,
    },
    /// Ratio sweep over decay exponents and a concentrating family.
    Sweep {
        #[arg(long, value_parser = ring)]
        ring: RingId,
        #[arg(long, required = true)]
        p: Vec<f64>,
        /// Exponential rate, a number or `r0`.
        #[arg(long = "r", default_value = "1")]
        rate: String,
        /// Displayed exponents s of (1+k)^{-s} (repeatable).
        #[arg(long, required = true)]
        s: Vec<f64>,
        #[arg(long = "sweep-family", value_enum, default_value_t = SweepFamilyArg::Heat)]
        sweep_family: SweepFamilyArg,
        /// Family parameters in sweep order (repeatable).
        #[arg(long = "param", required = true)]
        params: Vec<f64>,
        #[arg(long)]
        support_cap: Option<usize>,
        #[arg(long, value_parser = form, default_value = "schatten")]
        form: LhsForm,
    },
    /// Rapid decay check ‖f‖_∞ ≤ (1+k)^β ‖f‖_2 on level-k elements.
    Rd {
        #[arg(long, value_parser = ring)]
        ring: RingId,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 8)]
        support_cap: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Strong Haagerup check on positive words of length k.
    Haagerup {
        #[arg(long = "N")]
        n: u32,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 8)]
        support_cap: usize,
        /// Check this element instead of random trials.
        #[arg(long)]
        element: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Hausdorff–Young margins ‖f‖_p − ‖f̂‖_{p′}.
    HyCheck {
        #[command(flatten)]
        source: ElementSource,
        #[arg(long, required = true)]
        p: Vec<f64>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Rational rotation algebra checks against the classical torus and Plancherel.
    QtorusCheck {
        /// θ as `num/den`.
        #[arg(long)]
        theta: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 5)]
        support_cap: usize,
        /// ℓ¹ radius of the labels drawn.
        #[arg(long, default_value_t = 3)]
        label_radius: usize,
        #[arg(long, default_value_t = 1.5)]
        p: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepFamilyArg {
    Heat,
    Geometric,
}

impl From<SweepFamilyArg> for SweepFamily {
    fn from(f: SweepFamilyArg) -> Self {
        match f {
            SweepFamilyArg::Heat => SweepFamily::Heat,
            SweepFamilyArg::Geometric => SweepFamily::Geometric,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Turns one JSON value into flag tokens for `long`.
fn config_tokens(long: &str, value: &serde_json::Value, takes_value: bool) -> Result<Vec<String>, CliError> {
    use serde_json::Value;
    let flag = format!("--{long}");
    let scalar = |v: &Value| -> Result<String, CliError> {
        match v {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            other => Err(usage(format!("config key `{long}`: unsupported value {other}"))),
        }
    };
    match (value, takes_value) {
        (Value::Bool(true), false) => Ok(vec![flag]),
        (Value::Bool(false), false) => Ok(Vec::new()),
        (_, false) => Err(usage(format!("config key `{long}` is a switch and needs true or false"))),
        (Value::Array(items), true) => {
            let mut out = Vec::new();
            for v in items {
                out.push(flag.clone());
                out.push(scalar(v)?);
            }
            Ok(out)
        }
        (v, true) => Ok(vec![flag, scalar(v)?]),
    }
}

/// Parses `argv` (program name first), merging values from `--config` underneath the flags.
pub fn parse_config<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    // A lenient first pass finds `--config` even when the file supplies required options.
    let matches = RunConfig::command().ignore_errors(true).try_get_matches_from(&argv).map_err(CliError::Clap)?;
    let config = matches.get_one::<PathBuf>("config").cloned();
    let Some(path) = config else {
        let matches = RunConfig::command().try_get_matches_from(&argv).map_err(CliError::Clap)?;
        return validate(RunConfig::from_arg_matches(&matches).map_err(CliError::Clap)?);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let json: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| usage(format!("config {}: {e}", path.display())))?;
    let serde_json::Value::Object(map) = json else {
        return Err(usage(format!("config {} must be a JSON object", path.display())));
    };
    let (name, sub_matches) = matches.subcommand().ok_or_else(|| usage("missing subcommand"))?;
    let cmd = RunConfig::command();
    let sub = cmd.find_subcommand(name).expect("parsed subcommand exists");
    let mut extra = Vec::new();
    for (key, value) in &map {
        let long = key.replace('_', "-");
        if long == "config" {
            return Err(usage("config files cannot name another config"));
        }
        let arg = sub
            .get_arguments()
            .chain(cmd.get_arguments())
            .find(|a| a.get_long() == Some(long.as_str()))
            .ok_or_else(|| usage(format!("unknown config key `{key}` for `{name}`")))?;
        let id = arg.get_id().as_str();
        let from_cli = sub_matches.value_source(id) == Some(ValueSource::CommandLine);
        if from_cli {
            continue;
        }
        extra.extend(config_tokens(&long, value, arg.get_action().takes_values())?);
    }
    let pos = argv.iter().skip(1).position(|a| a == name).map(|i| i + 1).expect("subcommand token present");
    let mut merged: Vec<std::ffi::OsString> = argv[..=pos].to_vec();
    merged.extend(extra.into_iter().map(Into::into));
    merged.extend(argv[pos + 1..].iter().cloned());
    let matches = RunConfig::command().try_get_matches_from(&merged).map_err(CliError::Clap)?;
    validate(RunConfig::from_arg_matches(&matches).map_err(CliError::Clap)?)
}

fn check_p_list(key: &str, ps: &[f64], lo: f64, hi: f64, open_lo: bool) -> Result<(), CliError> {
    for &p in ps {
        let ok = if open_lo { p > lo } else { p >= lo } && p <= hi;
        if !ok {
            let bracket = if open_lo { "(" } else { "[" };
            return Err(usage(format!("--{key} {p} outside {bracket}{lo}, {hi}]")));
        }
    }
    Ok(())
}

fn require_seed(what: &str, seed: Option<u64>) -> Result<(), CliError> {
    if seed.is_none() {
        return Err(usage(format!("--seed is required for {what}")));
    }
    Ok(())
}

fn check_source(s: &ElementSource) -> Result<(), CliError> {
    let given = [s.element.is_some(), s.inline.is_some(), s.family.is_some()].iter().filter(|&&b| b).count();
    if given != 1 {
        return Err(usage("give exactly one of --element, --inline or --family"));
    }
    if s.family.is_some() && s.ring.is_none() {
        return Err(usage("--family needs --ring"));
    }
    if s.is_randomized() {
        require_seed("randomized families", s.seed)?;
    }
    if s.count == 0 {
        return Err(usage("--count must be positive"));
    }
    Ok(())
}

/// Range checks that clap cannot express.
pub fn validate(cfg: RunConfig) -> Result<RunConfig, CliError> {
    cfg.common.quadrature().validate().map_err(|e| usage(format!("--nodes/--refinement-rounds/--sup-grid: {e}")))?;
    if cfg.common.max_iter == 0 || !(cfg.common.opnorm_tol > 0.0) {
        return Err(usage("--max-iter and --opnorm-tol must be positive"));
    }
    if cfg.common.threads == Some(0) {
        return Err(usage("--threads must be positive"));
    }
    match &cfg.command {
        Command::Norm { source, p, .. } => {
            check_source(source)?;
            check_p_list("p", p, 1.0, f64::INFINITY, false)?;
        }
        Command::HlRatio { source, p, .. } => {
            check_source(source)?;
            check_p_list("p", p, 1.0, 2.0, true)?;
        }
        Command::Equiv { source, p, .. } => {
            check_source(source)?;
            check_p_list("p", p, 1.5, 2.0, true)?;
        }
        Command::HyCheck { source, p, .. } => {
            check_source(source)?;
            check_p_list("p", p, 1.0, 2.0, false)?;
        }
        Command::Sweep { p, s, params, .. } => {
            check_p_list("p", p, 1.0, 2.0, true)?;
            if p.contains(&2.0) {
                return Err(usage("--p 2 makes every weight trivial; sweep below 2"));
            }
            if s.iter().chain(params).any(|x| !x.is_finite()) {
                return Err(usage("--s and --param values must be finite"));
            }
        }
        Command::Rd { ring, seed, trials, .. } => {
            // Level-ring trials are multiples of one character, so the ratio does not depend on the draw.
            if !ring.is_level_ring() {
                require_seed("rd on free groups", *seed)?;
            }
            if *trials == 0 {
                return Err(usage("--trials must be positive"));
            }
        }
        Command::Haagerup { seed, element, trials, .. } => {
            if element.is_none() {
                require_seed("haagerup", *seed)?;
                if *trials == 0 {
                    return Err(usage("--trials must be positive"));
                }
            }
        }
        Command::QtorusCheck { seed, p, .. } => {
            require_seed("qtorus-check", *seed)?;
            check_p_list("p", &[*p], 1.0, 2.0, true)?;
        }
        Command::Moments { ring, .. } if !ring.is_level_ring() => {
            return Err(usage(format!("--ring {ring}: moments need onplus or snplus")));
        }
        _ => {}
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &str) -> Result<RunConfig, CliError> {
        parse_config(std::iter::once("cqg").chain(args.split_whitespace()))
    }

    #[test]
    fn spec_examples_parse() {
        let c = parse("dims --ring onplus:3 --kmax 5").unwrap();
        assert_eq!(c.command, Command::Dims { ring: RingId::on_plus(3).unwrap(), kmax: 5 });
        let c = parse("hl-ratio --ring lattice:1 --p 1.5 --weight r=1,s=1 --family heat:t=0.1 --seed 7").unwrap();
        assert!(matches!(c.command, Command::HlRatio { .. }));
        let c = parse("rd --ring onplus:3 --k 4").unwrap();
        assert!(matches!(c.command, Command::Rd { beta, .. } if beta == 1.0));
    }

    #[test]
    fn seeds_are_mandatory_for_random_commands() {
        assert!(matches!(parse("rd --ring free:2 --k 4"), Err(CliError::Usage(_))));
        assert!(matches!(parse("hl-ratio --ring free:2 --p 1.5 --weight s=1 --family holomorphic:level=2"), Err(CliError::Usage(_))));
        assert!(parse("hl-ratio --ring onplus:3 --p 1.5 --weight s=1 --family geometric:rho=0.5").is_ok());
    }

    #[test]
    fn invalid_values_are_usage_errors() {
        assert!(parse("dims --ring onplus:1 --kmax 5").is_err());
        assert!(matches!(parse("hl-ratio --ring onplus:3 --p 2.5 --weight s=1 --family heat:t=1"), Err(CliError::Usage(m)) if m.contains("--p")));
        assert!(matches!(parse("norm --ring onplus:3 --p 2 --nodes 100 --family heat:t=1"), Err(CliError::Usage(_))));
    }

    #[test]
    fn config_file_values_sit_under_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.json");
        std::fs::write(&path, r#"{"ring": "onplus:3", "kmax": 7, "quiet": true}"#).unwrap();
        let arg = format!("dims --config {} --kmax 3", path.display());
        let c = parse(&arg).unwrap();
        assert_eq!(c.command, Command::Dims { ring: RingId::on_plus(3).unwrap(), kmax: 3 });
        assert!(c.common.quiet);
        std::fs::write(&path, r#"{"ring": "onplus:3", "kmax": 7, "colour": "red"}"#).unwrap();
        assert!(matches!(parse(&arg), Err(CliError::Usage(m)) if m.contains("colour")));
        std::fs::write(&path, r#"{"p": [1.5, 1.8], "weight": "r=1,s=1", "family": "heat:t=0.1", "ring": "lattice:1"}"#)
            .unwrap();
        let c = parse(&format!("hl-ratio --config {}", path.display())).unwrap();
        assert!(matches!(c.command, Command::HlRatio { ref p, .. } if p == &vec![1.5, 1.8]));
    }
}

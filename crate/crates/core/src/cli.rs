//! Batch front end: verification suites, evolution runs and reports.
//!
//! Parameters come from an optional JSON config file, overridden by flags.
//! Every command writes its artifacts atomically and deterministically.
//!
//! | exit | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | configuration error |
//! | 2 | inequality violation |
//! | 3 | blowup detected |

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::evolution::{
    conservation_residual, make_initial_data, max_successive_uptick, monotonicity_report,
    Evolution, EvolutionConfig, EvolutionSeries, InitialData,
};
use crate::functionals::{maxwellian_report, MIN_SHARPNESS_BOX};
use crate::kernels::{check_delta_identity, check_evenness_psd, GaussianBump, KernelChoice};
use crate::radial::make_grid;
use crate::suite::{
    max_overshoot, max_ratio, random_profiles, run_inequality_suite, run_tensor_suite, SuiteRow,
    DEFAULT_EXPONENTS, DEFAULT_FUNCTION_COUNT, DEFAULT_TOLERANCE,
};
use crate::threshold::{admissible_gamma, decay_q_range, h, ALPHA_CRITICAL};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    ConfigError = 1,
    InequalityViolation = 2,
    Blowup = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

impl From<ExitStatus> for std::process::ExitCode {
    fn from(s: ExitStatus) -> Self {
        std::process::ExitCode::from(s as u8)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "nlheat",
    version,
    about = "Non-local quadratic heat equation laboratory"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    VerifyInequality,
    Evolve,
    Report,
    KernelCheck,
}

impl CommandName {
    pub fn as_str(self) -> &'static str {
        match self {
            CommandName::VerifyInequality => "verify-inequality",
            CommandName::Evolve => "evolve",
            CommandName::Report => "report",
            CommandName::KernelCheck => "kernel-check",
        }
    }

    fn default_out(self) -> &'static str {
        match self {
            CommandName::VerifyInequality => "inequality.csv",
            CommandName::Evolve => "evolution.csv",
            CommandName::Report => "report.json",
            CommandName::KernelCheck => "kernel_check.json",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Randomized inequality suite; one CSV row per (function, p).
    VerifyInequality(SharedArgs),
    /// Evolve radial initial data; series CSV plus a JSON summary.
    Evolve(SharedArgs),
    /// Threshold curve, admissible exponents, Maxwellian sharpness, kernels.
    Report(SharedArgs),
    /// Evenness, positive semi-definiteness and delta identity of the kernels.
    KernelCheck(SharedArgs),
}

impl Command {
    pub fn name(&self) -> CommandName {
        match self {
            Command::VerifyInequality(_) => CommandName::VerifyInequality,
            Command::Evolve(_) => CommandName::Evolve,
            Command::Report(_) => CommandName::Report,
            Command::KernelCheck(_) => CommandName::KernelCheck,
        }
    }

    pub fn args(&self) -> &SharedArgs {
        match self {
            Command::VerifyInequality(a)
            | Command::Evolve(a)
            | Command::Report(a)
            | Command::KernelCheck(a) => a,
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct SharedArgs {
    /// JSON config file; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub grid_n: Option<usize>,
    #[arg(long)]
    pub rmax: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub tend: Option<f64>,
    #[arg(long)]
    pub cfl: Option<f64>,
    /// coulomb | landau
    #[arg(long)]
    pub kernel: Option<KernelChoice>,
    /// Comma-separated exponents.
    #[arg(long = "p", value_delimiter = ',', num_args = 1..)]
    pub p: Option<Vec<f64>>,
}

/// Parameters of a run, as read from a config file or assembled from flags.
///
/// Unset fields take per-command defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<CommandName>,
    pub kernel: Option<KernelChoice>,
    #[serde(alias = "rmax")]
    pub r_max: Option<f64>,
    #[serde(alias = "n")]
    pub grid_n: Option<usize>,
    pub alpha: Option<f64>,
    pub t_end: Option<f64>,
    pub cfl: Option<f64>,
    /// Exponents for the suite, tracked norms, or the `h` table.
    pub p: Option<Vec<f64>>,
    /// `α` values for the admissible-exponent table.
    pub alphas: Option<Vec<f64>>,
    /// Tensor resolutions for the sharpness ratio.
    pub resolutions: Option<Vec<usize>>,
    pub box_half_width: Option<f64>,
    pub tensor_n: Option<usize>,
    pub functions: Option<usize>,
    pub tolerance: Option<f64>,
    pub samples: Option<usize>,
    pub record_interval: Option<f64>,
    pub initial: Option<InitialData>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| invalid(format!("malformed config {}: {e}", path.display())))
    }

    pub fn from_args(command: CommandName, args: &SharedArgs) -> Self {
        RunConfig {
            command: Some(command),
            kernel: args.kernel,
            r_max: args.rmax,
            grid_n: args.grid_n,
            alpha: args.alpha,
            t_end: args.tend,
            cfl: args.cfl,
            p: args.p.clone(),
            out: args.out.clone(),
            seed: args.seed,
            ..Default::default()
        }
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overridden_by(self, over: RunConfig) -> Self {
        RunConfig {
            command: over.command.or(self.command),
            kernel: over.kernel.or(self.kernel),
            r_max: over.r_max.or(self.r_max),
            grid_n: over.grid_n.or(self.grid_n),
            alpha: over.alpha.or(self.alpha),
            t_end: over.t_end.or(self.t_end),
            cfl: over.cfl.or(self.cfl),
            p: over.p.or(self.p),
            alphas: over.alphas.or(self.alphas),
            resolutions: over.resolutions.or(self.resolutions),
            box_half_width: over.box_half_width.or(self.box_half_width),
            tensor_n: over.tensor_n.or(self.tensor_n),
            functions: over.functions.or(self.functions),
            tolerance: over.tolerance.or(self.tolerance),
            samples: over.samples.or(self.samples),
            record_interval: over.record_interval.or(self.record_interval),
            initial: over.initial.or(self.initial),
            out: over.out.or(self.out),
            seed: over.seed.or(self.seed),
        }
    }

    /// Config file (if any) overridden by the flags of `command`.
    pub fn resolve(command: &Command) -> Result<Self> {
        let args = command.args();
        let base = match &args.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        if let Some(c) = base.command {
            if c != command.name() {
                return Err(invalid(format!(
                    "config is for `{}`, not `{}`",
                    c.as_str(),
                    command.name().as_str()
                )));
            }
        }
        Ok(base.overridden_by(RunConfig::from_args(command.name(), args)))
    }

    fn out_path(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| {
            PathBuf::from(self.command.unwrap_or(CommandName::Report).default_out())
        })
    }

    fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }
}

/// Top-level block of every JSON artifact.
#[derive(Debug, Serialize)]
pub struct Metadata<'a, C: Serialize> {
    pub tool: &'static str,
    pub artifact_version: &'static str,
    pub command: &'static str,
    pub config: &'a C,
}

fn metadata<C: Serialize>(command: CommandName, config: &C) -> Metadata<'_, C> {
    Metadata {
        tool: "nlheat",
        artifact_version: ARTIFACT_VERSION,
        command: command.as_str(),
        config,
    }
}

/// Writes to a temporary file beside `path`, then renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

/// `run.csv` → `run.summary.json`.
pub fn summary_path(out: &Path) -> PathBuf {
    out.with_extension("summary.json")
}

fn check_exponents(ps: &[f64]) -> Result<()> {
    if ps.is_empty() {
        return Err(invalid("exponent list is empty"));
    }
    match ps.iter().find(|p| !(**p > 0.0 && p.is_finite())) {
        Some(p) => Err(invalid(format!("exponents must be positive, got {p}"))),
        None => Ok(()),
    }
}

// verify-inequality

#[derive(Debug, Clone, Serialize)]
pub struct VerifySettings {
    pub kernel: KernelChoice,
    pub grid_n: usize,
    /// `None`: each profile's tail radius.
    pub r_max: Option<f64>,
    pub tensor_n: usize,
    pub exponents: Vec<f64>,
    pub functions: usize,
    pub tolerance: f64,
    pub seed: u64,
    pub out: PathBuf,
}

impl VerifySettings {
    pub fn from_config(c: &RunConfig) -> Result<Self> {
        let s = VerifySettings {
            kernel: c.kernel.unwrap_or_default(),
            grid_n: c.grid_n.unwrap_or(2048),
            r_max: c.r_max,
            tensor_n: c.tensor_n.unwrap_or(32),
            exponents: c.p.clone().unwrap_or_else(|| DEFAULT_EXPONENTS.to_vec()),
            functions: c.functions.unwrap_or(DEFAULT_FUNCTION_COUNT),
            tolerance: c.tolerance.unwrap_or(DEFAULT_TOLERANCE),
            seed: c.seed(),
            out: c.out_path(),
        };
        check_exponents(&s.exponents)?;
        make_grid(s.r_max.unwrap_or(1.0), s.grid_n)?;
        if s.functions == 0 {
            return Err(invalid("need at least one test function"));
        }
        if !(s.tolerance >= 0.0) {
            return Err(invalid(format!(
                "tolerance must be non-negative, got {}",
                s.tolerance
            )));
        }
        Ok(s)
    }
}

#[derive(Debug, Serialize)]
struct VerifySummary<'a> {
    metadata: Metadata<'a, VerifySettings>,
    rows: usize,
    max_ratio: f64,
    max_overshoot: f64,
    violations: usize,
    passed: bool,
}

pub fn suite_csv(rows: &[SuiteRow]) -> String {
    let mut out = String::from("function,p,n,r_max,lhs,rhs,ratio\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{:e},{:e},{}",
            r.function, r.p, r.n, r.r_max, r.lhs, r.rhs, r.ratio
        );
    }
    out
}

pub fn cmd_verify_inequality(config: &RunConfig) -> Result<ExitStatus> {
    let s = VerifySettings::from_config(config)?;
    let profiles = random_profiles(s.functions, s.seed);
    let rows = match s.kernel {
        KernelChoice::Coulomb => run_inequality_suite(&profiles, &s.exponents, s.grid_n, s.r_max)?,
        kernel => run_tensor_suite(&profiles, &s.exponents, kernel, s.tensor_n)?,
    };
    let violations = rows
        .iter()
        .filter(|r| !(r.ratio <= 1.0 + s.tolerance))
        .count();
    write_atomic(&s.out, suite_csv(&rows).as_bytes())?;
    let summary = VerifySummary {
        metadata: metadata(CommandName::VerifyInequality, &s),
        rows: rows.len(),
        max_ratio: max_ratio(&rows),
        max_overshoot: max_overshoot(&rows),
        violations,
        passed: violations == 0,
    };
    write_json(&summary_path(&s.out), &summary)?;
    println!(
        "{} rows, max ratio {:.6}, {violations} violations -> {}",
        rows.len(),
        summary.max_ratio,
        s.out.display()
    );
    Ok(if violations == 0 {
        ExitStatus::Success
    } else {
        ExitStatus::InequalityViolation
    })
}

// evolve

#[derive(Debug, Clone, Serialize)]
pub struct EvolveSettings {
    pub alpha: f64,
    pub t_end: f64,
    pub cfl: f64,
    pub grid_n: usize,
    pub r_max: f64,
    pub initial: InitialData,
    /// Requested exponents plus `3/2 + γ(α)` (when defined) and `75/74`.
    pub tracked: Vec<f64>,
    pub record_interval: f64,
    pub out: PathBuf,
}

impl EvolveSettings {
    pub fn from_config(c: &RunConfig) -> Result<Self> {
        let alpha = c.alpha.unwrap_or(1.0);
        let t_end = c.t_end.unwrap_or(0.5);
        let mut tracked = c.p.clone().unwrap_or_else(|| vec![1.5, 2.0]);
        check_exponents(&tracked)?;
        if (0.0..ALPHA_CRITICAL).contains(&alpha) {
            tracked.push(admissible_gamma(alpha)?.exponent());
        }
        tracked.push(decay_q_range().upper);
        let mut unique: Vec<f64> = Vec::with_capacity(tracked.len());
        for p in tracked {
            if !unique.iter().any(|q| (q - p).abs() <= 1e-12) {
                unique.push(p);
            }
        }
        Ok(EvolveSettings {
            alpha,
            t_end,
            cfl: c.cfl.unwrap_or(0.25),
            grid_n: c.grid_n.unwrap_or(1024),
            r_max: c.r_max.unwrap_or(8.0),
            initial: c.initial.unwrap_or_default(),
            tracked: unique,
            record_interval: c.record_interval.unwrap_or(t_end / 100.0),
            out: c.out_path(),
        })
    }

    pub fn evolution_config(&self) -> Result<EvolutionConfig> {
        let grid = make_grid(self.r_max, self.grid_n)?;
        let config = EvolutionConfig::new(self.alpha, self.t_end, self.cfl, grid)?
            .with_diag_ps(self.tracked.iter().copied())
            .with_record_interval(self.record_interval);
        config.validate()?;
        Ok(config)
    }
}

#[derive(Debug, Serialize)]
struct UptickRow {
    p: f64,
    /// `max_t (‖u(t)‖_p − ‖u₀‖_p) / ‖u₀‖_p`.
    relative_to_initial: f64,
    /// Largest relative increase between consecutive records.
    successive: f64,
    initial_norm: f64,
    final_norm: f64,
}

#[derive(Debug, Serialize)]
struct Blowup {
    detected: bool,
    time: Option<f64>,
}

#[derive(Debug, Serialize)]
struct EvolveSummary<'a> {
    metadata: Metadata<'a, EvolveSettings>,
    final_time: f64,
    records: usize,
    steps: u64,
    clamped_nodes: u64,
    clamp_fraction: f64,
    conservation_residual: f64,
    upticks: Vec<UptickRow>,
    blowup: Blowup,
}

fn uptick_rows(series: &EvolutionSeries) -> Result<Vec<UptickRow>> {
    series
        .lp_norms
        .iter()
        .map(|(p, norms)| {
            Ok(UptickRow {
                p: *p,
                relative_to_initial: monotonicity_report(series, *p)?,
                successive: max_successive_uptick(series, *p)?,
                initial_norm: norms.first().copied().unwrap_or(0.0),
                final_norm: norms.last().copied().unwrap_or(0.0),
            })
        })
        .collect()
}

pub fn cmd_evolve(config: &RunConfig) -> Result<ExitStatus> {
    let s = EvolveSettings::from_config(config)?;
    let evo_config = s.evolution_config()?;
    let u0 = make_initial_data(&s.initial, evo_config.grid)?;
    let mut evo = Evolution::new(&u0, evo_config)?;
    let status = match evo.run() {
        Ok(()) => ExitStatus::Success,
        Err(Error::BlowupDetected { time }) => {
            eprintln!("blowup detected at t = {time}");
            if evo.state().values().iter().all(|v| v.is_finite()) {
                evo.record();
            }
            ExitStatus::Blowup
        }
        Err(e) => return Err(e),
    };
    let series = evo.series();
    let mut csv = Vec::new();
    series.write_csv(&mut csv)?;
    write_atomic(&s.out, &csv)?;
    let summary = EvolveSummary {
        metadata: metadata(CommandName::Evolve, &s),
        final_time: series.times.last().copied().unwrap_or(0.0),
        records: series.len(),
        steps: series.steps,
        clamped_nodes: series.clamped,
        clamp_fraction: series.clamp_fraction(),
        conservation_residual: conservation_residual(series, s.alpha),
        upticks: uptick_rows(series)?,
        blowup: Blowup {
            detected: series.blowup_time.is_some(),
            time: series.blowup_time,
        },
    };
    write_json(&summary_path(&s.out), &summary)?;
    println!(
        "{} records to t = {}, conservation residual {:.3e} -> {}",
        summary.records,
        summary.final_time,
        summary.conservation_residual,
        s.out.display()
    );
    Ok(status)
}

// report

#[derive(Debug, Clone, Serialize)]
pub struct ReportSettings {
    pub h_exponents: Vec<f64>,
    pub alphas: Vec<f64>,
    pub resolutions: Vec<usize>,
    pub box_half_width: f64,
    pub kernels: Vec<KernelChoice>,
    pub samples: usize,
    pub delta_n: usize,
    pub seed: u64,
    pub out: PathBuf,
}

fn selected_kernels(c: &RunConfig) -> Vec<KernelChoice> {
    match c.kernel {
        Some(k) => vec![k],
        None => vec![KernelChoice::Coulomb, KernelChoice::Landau],
    }
}

impl ReportSettings {
    pub fn from_config(c: &RunConfig) -> Result<Self> {
        let s = ReportSettings {
            h_exponents: c
                .p
                .clone()
                .unwrap_or_else(|| vec![0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 8.0]),
            alphas: match (&c.alphas, c.alpha) {
                (Some(list), _) => list.clone(),
                (None, Some(a)) => vec![a],
                (None, None) => vec![0.5, 0.9, 0.98, 0.99],
            },
            resolutions: match (&c.resolutions, c.grid_n) {
                (Some(list), _) => list.clone(),
                (None, Some(n)) => vec![n],
                (None, None) => vec![32, 48],
            },
            box_half_width: c.box_half_width.unwrap_or(MIN_SHARPNESS_BOX),
            kernels: selected_kernels(c),
            samples: c.samples.unwrap_or(1000),
            delta_n: c.tensor_n.unwrap_or(64),
            seed: c.seed(),
            out: c.out_path(),
        };
        check_exponents(&s.h_exponents)?;
        Ok(s)
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
enum GammaEntry {
    Ok {
        alpha: f64,
        p_star: f64,
        gamma: f64,
        exponent: f64,
        q_max: f64,
    },
    OutOfRange {
        alpha: f64,
        message: String,
    },
}

#[derive(Debug, Serialize)]
struct SharpnessEntry {
    n_per_axis: usize,
    box_half_width: f64,
    lhs: f64,
    rhs: f64,
    ratio: f64,
}

#[derive(Debug, Serialize)]
struct KernelEntry {
    kernel: KernelChoice,
    samples: usize,
    max_evenness_violation: f64,
    min_quadratic_form: f64,
    admissible: bool,
    /// `(x, |reconstruction − φ(x)|)`.
    delta_identity: Vec<DeltaEntry>,
}

#[derive(Debug, Serialize)]
struct DeltaEntry {
    x: [f64; 3],
    n_per_axis: usize,
    box_half_width: f64,
    error: f64,
}

#[derive(Debug, Serialize)]
struct Report<'a> {
    metadata: Metadata<'a, ReportSettings>,
    #[serde(flatten)]
    h_values: BTreeMap<String, f64>,
    admissible_gamma: Vec<GammaEntry>,
    decay_q_range: [f64; 2],
    maxwellian_sharpness: Vec<SharpnessEntry>,
    kernels: Vec<KernelEntry>,
}

/// Box half width of the delta-identity lattice.
const DELTA_BOX: f64 = 5.0;
const DELTA_POINTS: [[f64; 3]; 2] = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]];
/// Entrywise tolerance for the admissibility verdict.
const ADMISSIBILITY_TOLERANCE: f64 = 1e-12;

fn kernel_entry(
    kernel: KernelChoice,
    samples: usize,
    seed: u64,
    delta_n: usize,
) -> Result<KernelEntry> {
    let k = kernel.build();
    let report = check_evenness_psd(k.as_ref(), samples, seed)?;
    let phi = GaussianBump::at([0.0; 3]);
    let delta_identity = DELTA_POINTS
        .iter()
        .map(|&x| {
            let value = check_delta_identity(k.as_ref(), &phi, x, DELTA_BOX, delta_n)?;
            let target = (-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2])).exp();
            Ok(DeltaEntry {
                x,
                n_per_axis: delta_n,
                box_half_width: DELTA_BOX,
                error: (value - target).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KernelEntry {
        kernel,
        samples,
        max_evenness_violation: report.max_evenness_violation,
        min_quadratic_form: report.min_quadratic_form,
        admissible: report.is_admissible(ADMISSIBILITY_TOLERANCE),
        delta_identity,
    })
}

pub fn cmd_report(config: &RunConfig) -> Result<ExitStatus> {
    let s = ReportSettings::from_config(config)?;
    let mut h_values = BTreeMap::new();
    for &p in &s.h_exponents {
        h_values.insert(format!("h_of_{p}"), h(p)?);
    }
    let admissible_gamma = s
        .alphas
        .iter()
        .map(|&alpha| match admissible_gamma(alpha) {
            Ok(t) => Ok(GammaEntry::Ok {
                alpha,
                p_star: t.p_star,
                gamma: t.gamma,
                exponent: t.exponent(),
                q_max: t.q_max,
            }),
            Err(e @ Error::OutOfRange(_)) => Ok(GammaEntry::OutOfRange {
                alpha,
                message: e.to_string(),
            }),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>>>()?;
    let maxwellian_sharpness = s
        .resolutions
        .iter()
        .map(|&n| {
            let r = maxwellian_report(1.0, s.box_half_width, n)?;
            Ok(SharpnessEntry {
                n_per_axis: n,
                box_half_width: s.box_half_width,
                lhs: r.lhs,
                rhs: r.rhs,
                ratio: r.ratio,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let kernels = s
        .kernels
        .iter()
        .map(|&k| kernel_entry(k, s.samples, s.seed, s.delta_n))
        .collect::<Result<Vec<_>>>()?;
    let q = decay_q_range();
    let report = Report {
        metadata: metadata(CommandName::Report, &s),
        h_values,
        admissible_gamma,
        decay_q_range: [q.lower, q.upper],
        maxwellian_sharpness,
        kernels,
    };
    write_json(&s.out, &report)?;
    println!("report -> {}", s.out.display());
    Ok(ExitStatus::Success)
}

// kernel-check

#[derive(Debug, Clone, Serialize)]
pub struct KernelCheckSettings {
    pub kernels: Vec<KernelChoice>,
    pub samples: usize,
    pub delta_n: usize,
    pub seed: u64,
    pub out: PathBuf,
}

#[derive(Debug, Serialize)]
struct KernelCheckDoc<'a> {
    metadata: Metadata<'a, KernelCheckSettings>,
    kernels: Vec<KernelEntry>,
}

pub fn cmd_kernel_check(config: &RunConfig) -> Result<ExitStatus> {
    let s = KernelCheckSettings {
        kernels: selected_kernels(config),
        samples: config.samples.unwrap_or(1000),
        delta_n: config.tensor_n.or(config.grid_n).unwrap_or(64),
        seed: config.seed(),
        out: config.out_path(),
    };
    let kernels = s
        .kernels
        .iter()
        .map(|&k| kernel_entry(k, s.samples, s.seed, s.delta_n))
        .collect::<Result<Vec<_>>>()?;
    let doc = KernelCheckDoc {
        metadata: metadata(CommandName::KernelCheck, &s),
        kernels,
    };
    write_json(&s.out, &doc)?;
    for k in &doc.kernels {
        println!(
            "{}: evenness {:.1e}, min quadratic form {:.1e}, admissible {}",
            k.kernel.as_str(),
            k.max_evenness_violation,
            k.min_quadratic_form,
            k.admissible
        );
    }
    Ok(ExitStatus::Success)
}

/// Resolves the config and dispatches; errors map to exit 1.
pub fn run(cli: &Cli) -> ExitStatus {
    let result = RunConfig::resolve(&cli.command).and_then(|config| match cli.command.name() {
        CommandName::VerifyInequality => cmd_verify_inequality(&config),
        CommandName::Evolve => cmd_evolve(&config),
        CommandName::Report => cmd_report(&config),
        CommandName::KernelCheck => cmd_kernel_check(&config),
    });
    match result {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            ExitStatus::ConfigError
        }
    }
}

/// Parses `args` (program name first) and runs; usage errors exit with 1.
pub fn main_with_args<I, T>(args: I) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                ExitStatus::ConfigError
            } else {
                ExitStatus::Success
            }
        }
    }
}

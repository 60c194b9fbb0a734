//! Command-line front end. Exit codes: 0 success, 1 property failure,
//! 2 invalid configuration, 64 usage error.

mod config;
mod selftest;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use config::{default_class, default_elements, CommandKind, RunConfig, SWEEP_EPSILONS};
pub use selftest::{run_selftest, PropertyResult};
pub use verify::{
    alpha_set, base_alphas, configurations_by_type, verify_case_table, verify_disc,
    verify_symbolic, CaseCheck, CaseTableReport,
};

use crate::conventions::Conventions;
use crate::error::{Error, Result};
use crate::integrator::{epsilon_sweep, mc_gamma_hat, EstimateReport};
use crate::trajectory::Surface;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "ggbraid",
    version,
    about = "Braids of model isotopies and Monte Carlo estimates of the cochains they induce"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check extracted braids against the symbolic case table.
    VerifyCaseTable(Flags),
    /// Estimate the cochain along a decreasing list of epsilons.
    Sweep(Flags),
    /// One Monte Carlo estimate per epsilon.
    Estimate(Flags),
    /// Run the invariant suite.
    Selftest(Flags),
}

#[derive(Args, Debug, Clone)]
struct Flags {
    /// JSON run config; its keys override the flags.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value = "disc")]
    surface: Surface,
    /// Comma-separated list.
    #[arg(long, value_delimiter = ',')]
    epsilon: Option<Vec<f64>>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Report path; a CSV with the same stem is written next to it for
    /// sweeps and estimates. Defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    audit_fraction: Option<f64>,
    /// Integrate the good set exactly and sample only the bad set.
    #[arg(long)]
    stratified: bool,
    /// Flip the crossing sign convention (mutation testing).
    #[arg(long, hide = true)]
    mutate_crossing_sign: bool,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    config: &'a RunConfig,
    regions: Vec<serde_json::Value>,
    passed: bool,
    result: T,
}

fn build_config(kind: CommandKind, f: &Flags) -> Result<RunConfig> {
    let mut c = RunConfig::defaults(kind, f.surface);
    if let Some(e) = &f.epsilon {
        c.epsilon = e.clone();
    }
    if let Some(n) = f.samples {
        c.n_samples = n;
    }
    if let Some(a) = f.audit_fraction {
        c.audit_fraction = a;
    }
    c.seed = f.seed;
    c.workers = f.workers;
    c.stratified = f.stratified;
    c.out = f.out.clone();
    if let Some(path) = &f.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?;
        let patch: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?;
        c = c.overlay(&patch)?;
        if c.command != kind {
            return Err(Error::InvalidConfig(format!(
                "config is for {:?}, not {kind:?}",
                c.command
            )));
        }
    }
    c.validate()?;
    Ok(c)
}

fn emit<T: Serialize>(cfg: &RunConfig, passed: bool, result: T) -> Result<()> {
    let regions = cfg.regions()?.iter().map(|r| r.to_json()).collect();
    let env = Envelope {
        config: cfg,
        regions,
        passed,
        result,
    };
    let text = serde_json::to_string_pretty(&env)? + "\n";
    match &cfg.out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// One row per `(epsilon, type)`, plus a `bad` row.
pub fn reports_csv(reports: &[EstimateReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "epsilon",
        "type",
        "count",
        "volume_fraction",
        "partial_mean",
        "partial_stderr",
        "mean",
        "stderr",
    ])?;
    for r in reports {
        for b in &r.per_type {
            w.write_record([
                r.epsilon.to_string(),
                b.signature.to_string(),
                b.count.to_string(),
                b.volume_fraction.to_string(),
                b.partial_mean.to_string(),
                b.partial_stderr.to_string(),
                r.mean.to_string(),
                r.standard_error.to_string(),
            ])?;
        }
        w.write_record([
            r.epsilon.to_string(),
            "bad".into(),
            ((r.bad_fraction * r.n_samples as f64).round() as usize).to_string(),
            r.bad_fraction.to_string(),
            r.bad_partial_mean.to_string(),
            r.bad_partial_stderr.to_string(),
            r.mean.to_string(),
            r.standard_error.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn write_csv(cfg: &RunConfig, reports: &[EstimateReport]) -> Result<()> {
    if let Some(p) = &cfg.out {
        std::fs::write(csv_path(p), reports_csv(reports)?)?;
    }
    Ok(())
}

fn csv_path(p: &Path) -> PathBuf {
    p.with_extension("csv")
}

fn conventions(f: &Flags) -> Conventions {
    let mut c = Conventions::default();
    if f.mutate_crossing_sign {
        c.crossing_sign = -c.crossing_sign;
    }
    c
}

fn cmd_verify_case_table(cfg: &RunConfig, conv: Conventions) -> Result<bool> {
    let alphas = alpha_set(cfg.surface, cfg.random_words, cfg.max_word_len, cfg.seed);
    let reports = cfg
        .regions()?
        .iter()
        .map(|spec| verify_case_table(spec, &alphas, cfg.configs_per_type, cfg.seed, conv))
        .collect::<Result<Vec<_>>>()?;
    let passed = reports.iter().all(|r| r.all_passed());
    emit(cfg, passed, &reports)?;
    Ok(passed)
}

fn cmd_sweep(cfg: &RunConfig, conv: Conventions) -> Result<bool> {
    let c = cfg.cochain()?;
    let el = cfg.parse_elements()?;
    let opts = crate::integrator::EstimateOptions {
        conventions: conv,
        ..cfg.options()
    };
    let s = epsilon_sweep(&c, &el, cfg.surface, &cfg.epsilon, &opts)?;
    let passed = s.all_within_budget;
    emit(cfg, passed, &s)?;
    write_csv(cfg, &s.reports)?;
    Ok(passed)
}

fn cmd_estimate(cfg: &RunConfig, conv: Conventions) -> Result<bool> {
    let c = cfg.cochain()?;
    let el = cfg.parse_elements()?;
    let opts = crate::integrator::EstimateOptions {
        conventions: conv,
        ..cfg.options()
    };
    let reports = cfg
        .regions()?
        .iter()
        .map(|spec| mc_gamma_hat(&c, &el, spec, &opts))
        .collect::<Result<Vec<_>>>()?;
    emit(cfg, true, &reports)?;
    write_csv(cfg, &reports)?;
    Ok(true)
}

fn cmd_selftest(cfg: &RunConfig, conv: Conventions) -> Result<bool> {
    let results = run_selftest(cfg.seed, conv);
    for r in &results {
        eprintln!(
            "{}: {} ({})",
            r.name,
            if r.passed { "ok" } else { "FAILED" },
            r.detail
        );
    }
    let passed = results.iter().all(|r| r.passed);
    emit(cfg, passed, &results)?;
    Ok(passed)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::AuditFailure(_)
        | Error::ImpureBraid(_)
        | Error::GenericPositionFailure(_)
        | Error::DegenerateTether { .. }
        | Error::Overflow(_) => EXIT_PROPERTY,
        Error::Io(_) => EXIT_PROPERTY,
        _ => EXIT_CONFIG,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let (kind, flags) = match &cli.command {
        Cmd::VerifyCaseTable(f) => (CommandKind::VerifyCaseTable, f),
        Cmd::Sweep(f) => (CommandKind::Sweep, f),
        Cmd::Estimate(f) => (CommandKind::Estimate, f),
        Cmd::Selftest(f) => (CommandKind::Selftest, f),
    };
    let cfg = match build_config(kind, flags) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_CONFIG;
        }
    };
    let conv = conventions(flags);
    let outcome = match kind {
        CommandKind::VerifyCaseTable => cmd_verify_case_table(&cfg, conv),
        CommandKind::Sweep => cmd_sweep(&cfg, conv),
        CommandKind::Estimate => cmd_estimate(&cfg, conv),
        CommandKind::Selftest => cmd_selftest(&cfg, conv),
    };
    match outcome {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_PROPERTY,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

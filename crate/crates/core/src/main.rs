use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use calogero_core::report::{emit_report, render, ReportFormat, Status};
use calogero_core::session::{document, exit_code, run_session, SessionConfig, REPORT_DIR_ENV};

#[derive(Parser, Debug)]
#[command(name = "calogero-verify", about = "Exact verification of the su(1,1) structure of the Calogero model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// su(1,1) commutators and [T+, f(T-)] on invariant bases.
    AlgebraCheck,
    /// Jastrow conjugation identity at random rational points.
    JastrowCheck,
    /// Zero-energy kernel of T+ per degree.
    Kernel,
    /// Coherent states and the shift identity.
    Coherent,
    /// Time operator commutator and eigenstates.
    TimeOp,
    /// Dressed R sector: spectrum, ladder commutators, dressing.
    RSpectrum,
    /// Every check group.
    All,
}

impl Command {
    fn checks(self) -> Vec<String> {
        let names: &[&str] = match self {
            Command::AlgebraCheck => &["algebra"],
            Command::JastrowCheck => &["jastrow"],
            Command::Kernel => &["kernel"],
            Command::Coherent => &["coherent"],
            Command::TimeOp => &["time-op"],
            Command::RSpectrum => &["r-sector"],
            Command::All => &calogero_core::session::CHECK_ORDER,
        };
        names.iter().map(|s| s.to_string()).collect()
    }

    fn file_stem(self) -> &'static str {
        match self {
            Command::AlgebraCheck => "algebra-check",
            Command::JastrowCheck => "jastrow-check",
            Command::Kernel => "kernel",
            Command::Coherent => "coherent",
            Command::TimeOp => "time-op",
            Command::RSpectrum => "r-spectrum",
            Command::All => "all",
        }
    }
}

#[derive(clap::Args, Debug)]
struct Opts {
    /// JSON session config; command-line flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    n_particles: Option<usize>,
    /// Exact rational coupling, e.g. 2 or -1/3.
    #[arg(long, global = true, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Invariant degree; repeatable.
    #[arg(long = "degree", global = true)]
    degrees: Vec<u32>,
    #[arg(long, global = true)]
    omega: Option<String>,
    /// Gaussian-rational energy, e.g. 3/7+2*i.
    #[arg(long, global = true, allow_hyphen_values = true)]
    energy: Option<String>,
    /// Time eigenvalue; repeatable.
    #[arg(long = "t", global = true, allow_hyphen_values = true)]
    t_values: Vec<String>,
    /// Truncation order K.
    #[arg(long, global = true)]
    order: Option<u32>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file; defaults to $CALOGERO_REPORT_DIR/<command>.<format>, else stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value = "json")]
    format: ReportFormat,
    /// commutator | positive-root
    #[arg(long, global = true)]
    root_policy: Option<String>,
    #[arg(long, global = true)]
    compare_order: bool,
}

fn build_config(cli: &Cli) -> Result<SessionConfig, String> {
    let o = &cli.opts;
    let mut cfg = match &o.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            SessionConfig::from_json(&text).map_err(|e| e.to_string())?
        }
        None => SessionConfig::default(),
    };
    if let Some(n) = o.n_particles {
        cfg.n_particles = n;
    }
    if let Some(l) = &o.lambda {
        cfg.lambda = l.clone();
    }
    if !o.degrees.is_empty() {
        cfg.degrees = o.degrees.clone();
    }
    if let Some(w) = &o.omega {
        cfg.omega = w.clone();
    }
    if let Some(e) = &o.energy {
        cfg.energy = e.clone();
    }
    if !o.t_values.is_empty() {
        cfg.t_values = o.t_values.clone();
    }
    if let Some(k) = o.order {
        cfg.truncation_k = k;
    }
    if let Some(s) = o.seed {
        cfg.seed = s;
    }
    if let Some(p) = &o.root_policy {
        cfg.root_policy = p.clone();
    }
    if o.compare_order {
        cfg.compare_order = true;
    }
    if !matches!(cli.command, Command::All) || o.config.is_none() {
        cfg.checks = cli.command.checks();
    }
    if let Some(out) = &o.out {
        cfg.out_path = Some(out.display().to_string());
    }
    Ok(cfg)
}

fn output_path(cli: &Cli, cfg: &SessionConfig) -> Option<PathBuf> {
    if let Some(p) = &cfg.out_path {
        return Some(PathBuf::from(p));
    }
    let dir = std::env::var_os(REPORT_DIR_ENV)?;
    let ext = match cli.opts.format {
        ReportFormat::Json => "json",
        ReportFormat::Csv => "csv",
    };
    Some(PathBuf::from(dir).join(format!("{}.{ext}", cli.command.file_stem())))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let cfg = match build_config(&cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let reports = match run_session(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    for r in &reports {
        let tag = match r.status {
            Status::Pass => "PASS",
            Status::Defect => "DEFECT",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        eprintln!("{tag:<6} {}", r.check_name);
    }
    let code = exit_code(&reports);
    let path = output_path(&cli, &cfg);
    let doc = document(&cfg, reports);
    let written = match &path {
        Some(p) => emit_report(&doc, cli.opts.format, p),
        None => render(&doc, cli.opts.format).map(|text| print!("{text}")),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use triality_core::verify::{self, BackendSelection, RunConfig};
use triality_core::{Error, DEFAULT_EPS};

mod explore;

/// Exact and floating-point verification of Spin(8) triality and the
/// antipodal sets of S7 x S7.
#[derive(Parser, Debug)]
#[command(name = "triality", version)]
struct Cli {
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_EPS, value_parser = positive_eps)]
    eps: f64,
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Both)]
    backend: BackendArg,
    /// Write the JSON output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every check and emit a JSON report.
    VerifyAll,
    /// The tau-fixed point (s, conj s) for a unit imaginary direction v.
    Fixset {
        /// Octonion literal such as "[0,3/5,4/5,0,0,0,0,0]".
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// The antipodal set {o, p, q} for v with certificates and a maximality scan.
    Antipodal {
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Check only the kai property.
    Kai,
    /// Print the octonion multiplication table.
    Table,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BackendArg {
    Exact,
    Float,
    Both,
}

impl From<BackendArg> for BackendSelection {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Exact => BackendSelection::Exact,
            BackendArg::Float => BackendSelection::Float,
            BackendArg::Both => BackendSelection::Both,
        }
    }
}

fn positive_eps(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        Ok(v) => Err(format!("eps must be positive and finite, got {v}")),
        Err(e) => Err(e.to_string()),
    }
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        seed: cli.seed,
        trials: cli.trials as usize,
        eps: cli.eps,
        backend: cli.backend.into(),
        output_path: cli.out.clone(),
    };
    match run(&cli.command, &cfg) {
        Ok((text, passed)) => {
            if let Err(e) = emit(&cfg, &text) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(EXIT_FAIL);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) | Error::NotImaginaryUnit { .. } | Error::NotUnit { .. } => {
                    ExitCode::from(EXIT_USAGE)
                }
                _ => ExitCode::from(EXIT_FAIL),
            }
        }
    }
}

/// Output text and whether every check passed.
fn run(command: &Command, cfg: &RunConfig) -> triality_core::Result<(String, bool)> {
    match command {
        Command::VerifyAll => report(verify::run(cfg)?),
        Command::Kai => report(verify::run_selected(cfg, &["kai_property"])?),
        Command::Fixset { v } => explore::fixset(v, cfg),
        Command::Antipodal { v } => explore::antipodal(v, cfg),
        Command::Table => Ok((triality_core::octonion::table().to_string(), true)),
    }
}

fn report(r: verify::Report) -> triality_core::Result<(String, bool)> {
    eprint!("{}", r.summary());
    Ok((r.to_json(), r.passed()))
}

fn emit(cfg: &RunConfig, text: &str) -> std::io::Result<()> {
    match &cfg.output_path {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

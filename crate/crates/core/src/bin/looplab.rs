use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use looplab::cpl::{GroundStateCache, MAX_GROUNDSTATE_SIZE};
use looplab::fpl::fpl_census;
use looplab::harness::{run_report, Suite, VerifyConfig, ROUTINE_MAX};
use looplab::qkz::QkzEngine;
use looplab::{parse_matching, Error};

#[derive(Parser)]
#[command(name = "looplab", version, about = "Loop model polynomials and conjecture checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Fully packed loop enumeration
    #[command(subcommand)]
    Fpl(FplCmd),
    /// Completely packed loop groundstates
    #[command(subcommand)]
    Cpl(CplCmd),
    /// Bivariate polynomials from the constant-term route
    #[command(subcommand)]
    Qkz(QkzCmd),
    /// Run conjecture suites and write a JSON report
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum FplCmd {
    /// Count configurations by link pattern
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CplCmd {
    /// Integer groundstate normalized so the fully nested component is 1
    Groundstate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum QkzCmd {
    /// Psi_pi(tau, t) for one matching
    Psi {
        #[arg(long)]
        matching: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON file with the same fields as the flags; flags are ignored when given
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    #[arg(long, default_value_t = ROUTINE_MAX)]
    n_max: usize,
    #[arg(long, value_delimiter = ',', default_value = "c1,c2,c3,c4,tau")]
    suites: Vec<String>,
    #[arg(long)]
    extended: bool,
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Record wall-clock time per report (makes the output nondeterministic)
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Run(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e.to_string())
    }
}

fn cache_dir(flag: Option<PathBuf>) -> Option<PathBuf> {
    match std::env::var_os("LOOPLAB_CACHE") {
        Some(v) if !v.is_empty() => Some(PathBuf::from(v)),
        _ => flag,
    }
}

fn emit(value: &serde_json::Value, out: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Run(e.to_string()))? + "\n";
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Run(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify_config(a: VerifyArgs) -> Result<VerifyConfig, Failure> {
    let cfg = match &a.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            serde_json::from_str::<VerifyConfig>(&text)
                .map_err(|e| Failure::Usage(format!("malformed config {}: {e}", path.display())))?
        }
        None => {
            let suites = a
                .suites
                .iter()
                .map(|s| s.parse::<Suite>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            VerifyConfig {
                n_min: a.n_min,
                n_max: a.n_max,
                suites,
                extended: a.extended,
                cache: a.cache,
                timing: a.timing,
            }
        }
    };
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.cmd {
        Cmd::Fpl(FplCmd::Census { n, out }) => {
            let census = fpl_census(n)?;
            let counts: BTreeMap<String, u64> = census.counts.iter().map(|(m, c)| (m.to_string(), *c)).collect();
            emit(&json!({ "n": n, "counts": counts }), out.as_deref())?;
            Ok(true)
        }
        Cmd::Cpl(CplCmd::Groundstate { n, out, cache }) => {
            let gs = GroundStateCache::new(cache_dir(cache), MAX_GROUNDSTATE_SIZE).get(n)?;
            let comps: BTreeMap<String, String> =
                gs.components().into_iter().map(|(m, v)| (m.to_string(), v.to_string())).collect();
            let value = json!({ "n": n, "sum": gs.sum().to_string(), "components": comps });
            emit(&value, out.as_deref())?;
            Ok(true)
        }
        Cmd::Qkz(QkzCmd::Psi { matching, out }) => {
            let pi = parse_matching(&matching).map_err(|e| Failure::Usage(e.to_string()))?;
            let psi = QkzEngine::new().psi_tau(&pi)?;
            emit(&psi.to_json(), out.as_deref())?;
            Ok(true)
        }
        Cmd::Verify(args) => {
            let out = args.out.clone();
            let cfg = verify_config(args)?;
            let report = run_report(&cfg)?;
            let value = serde_json::to_value(&report).map_err(|e| Failure::Run(e.to_string()))?;
            emit(&value, out.as_deref())?;
            for r in &report.reports {
                eprintln!(
                    "{:<6} n={} {}",
                    r.conjecture,
                    r.n,
                    if r.pass { "pass".to_string() } else { format!("FAIL {:?} {:?}", r.counterexamples, r.errors) }
                );
            }
            Ok(report.pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

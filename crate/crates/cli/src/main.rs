use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use usalg_cli::{parse_script, run_command, Args, CliError, Command, Property};
use usalg_core::Budget;

#[derive(Parser, Debug)]
#[command(name = "usalg", version, about = "Uniform S-properties of finite rings and modules")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Ring script to load.
    #[arg(long, global = true)]
    script: Option<PathBuf>,
    /// Property for `check`.
    #[arg(long, global = true)]
    property: Option<String>,
    /// Multiplicative set name.
    #[arg(long, global = true)]
    set: Option<String>,
    /// Module name.
    #[arg(long, global = true)]
    module: Option<String>,
    /// Ring name.
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Sequence name, for `check --property usexact`.
    #[arg(long, global = true)]
    sequence: Option<String>,
    /// Tor degree.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Left Tor argument, a module expression.
    #[arg(long, global = true)]
    left: Option<String>,
    /// Right Tor argument, a module expression.
    #[arg(long, global = true)]
    right: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[arg(long, global = true, env = "USALG_MAX_CARRIER")]
    max_carrier: Option<usize>,
    #[arg(long, global = true, env = "USALG_MAX_IDEALS")]
    max_ideals: Option<usize>,
    #[arg(long, global = true, env = "USALG_TOR_DEPTH")]
    tor_depth: Option<usize>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Cmd {
    /// Summarize a ring.
    Analyze,
    /// Decide a property.
    Check,
    /// Localize at a multiplicative set.
    Localize,
    /// Compute Tor_n.
    Tor,
    /// Run every invariant suite over the script.
    Verify,
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let command = match cli.command {
        Cmd::Analyze => Command::Analyze,
        Cmd::Check => Command::Check,
        Cmd::Localize => Command::Localize,
        Cmd::Tor => Command::Tor,
        Cmd::Verify => Command::Verify,
    };
    let path = cli.script.ok_or_else(|| CliError::Usage("--script is required".into()))?;
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let script = parse_script(&text)?;
    let property = match cli.property.as_deref() {
        None => None,
        Some(p) => Some(Property::parse(p).ok_or_else(|| {
            let known: Vec<&str> = Property::ALL.iter().map(|(n, _)| *n).collect();
            CliError::Usage(format!("unknown property `{p}`; expected one of {}", known.join(", ")))
        })?),
    };
    let mut budget = Budget::default();
    if let Some(v) = cli.max_carrier {
        budget.max_carrier = v;
    }
    if let Some(v) = cli.max_ideals {
        budget.max_ideals = v;
    }
    if let Some(v) = cli.tor_depth {
        budget.tor_depth = v;
    }
    let args = Args {
        property,
        ring: cli.ring,
        set: cli.set,
        module: cli.module,
        sequence: cli.sequence,
        n: cli.n,
        left: cli.left,
        right: cli.right,
        timing: cli.timing,
    };
    let outcome = run_command(&script, command, &args, budget)?;
    let text = if cli.json {
        outcome.report.to_json() + "\n"
    } else {
        outcome.report.to_text()
    };
    let _ = std::io::stdout().write_all(text.as_bytes());
    Ok(outcome.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("usalg: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

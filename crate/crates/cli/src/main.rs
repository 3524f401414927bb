use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use endok_core::completion::RationalTorusPoint;
use endok_core::job::{render, run, Command, Format, JobConfig, ReportEnvelope};
use endok_core::{Error, GroupFamily, IntMatrix};

#[derive(Parser)]
#[command(name = "endok", version, about = "K-theory and relation checks for A_phi and A_(phi,psi)")]
struct Cli {
    /// Output format; the default comes from ENDOK_FORMAT, then json.
    #[arg(long, global = true, env = "ENDOK_FORMAT")]
    format: Option<String>,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// K-theory of A_phi for one endomorphism or a built-in family.
    Endo(Opts),
    /// K-theory of A_(phi,psi) for an independent commuting pair.
    Poly(Opts),
    /// Finite-window operator relation checks.
    Verify(Opts),
    /// Odometer digit checks on the completion.
    Complete(Opts),
    /// Orbit witnesses on the torus.
    Orbit(Opts),
    /// Run a TOML job file.
    Run {
        job: PathBuf,
    },
}

#[derive(Args, Default)]
struct Opts {
    /// Matrix as a JSON array of rows, e.g. "[[2,1],[1,1]]".
    #[arg(long)]
    matrix: Option<String>,
    #[arg(long)]
    phi: Option<String>,
    #[arg(long)]
    psi: Option<String>,
    /// lattice:N, shift:N or solenoid:P,Q.
    #[arg(long)]
    family: Option<String>,
    /// Window radius M.
    #[arg(long)]
    window: Option<i64>,
    /// Depth K for completion and orbit searches.
    #[arg(long)]
    depth: Option<usize>,
    /// Truncation level for the shift model.
    #[arg(long)]
    level: Option<usize>,
    #[arg(long)]
    min_compared: Option<usize>,
    /// Torus point, e.g. "1/3" or "(1/2, 1/3)".
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    y: Option<String>,
}

fn matrix(flag: &str, s: &Option<String>) -> Result<Option<IntMatrix>, Error> {
    s.as_deref()
        .map(|s| serde_json::from_str(s).map_err(|e| Error::Parse(format!("--{flag}: {e}"))))
        .transpose()
}

fn point(flag: &str, s: &Option<String>) -> Result<Option<RationalTorusPoint>, Error> {
    s.as_deref()
        .map(|s| s.parse().map_err(|e: Error| Error::Parse(format!("--{flag}: {e}"))))
        .transpose()
}

fn config(command: Command, o: &Opts) -> Result<JobConfig, Error> {
    let mut c = JobConfig::new(command);
    c.family = o.family.as_deref().map(GroupFamily::parse).transpose()?;
    c.matrix = matrix("matrix", &o.matrix)?;
    c.phi = matrix("phi", &o.phi)?;
    c.psi = matrix("psi", &o.psi)?;
    c.parameters.window = o.window;
    c.parameters.depth = o.depth;
    c.parameters.level = o.level;
    c.parameters.min_compared = o.min_compared;
    c.parameters.x = point("x", &o.x)?;
    c.parameters.y = point("y", &o.y)?;
    Ok(c)
}

fn load_job(path: &PathBuf) -> Result<JobConfig, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    JobConfig::from_toml(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), String> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, built) = match &cli.command {
        Cmd::Endo(o) => (Command::Endo, config(Command::Endo, o)),
        Cmd::Poly(o) => (Command::Poly, config(Command::Poly, o)),
        Cmd::Verify(o) => (Command::Verify, config(Command::Verify, o)),
        Cmd::Complete(o) => (Command::Complete, config(Command::Complete, o)),
        Cmd::Orbit(o) => (Command::Orbit, config(Command::Orbit, o)),
        Cmd::Run { job } => match load_job(job) {
            Ok(c) => (c.command, Ok(c)),
            Err(e) => (Command::Endo, Err(e)),
        },
    };
    let format_flag = match cli.format.as_deref().map(str::parse::<Format>).transpose() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let (env, job_format, job_output) = match built {
        Ok(cfg) => (run(&cfg), cfg.format, cfg.output.clone().map(PathBuf::from)),
        Err(e) => (ReportEnvelope::parse_failure(command, &e), None, None),
    };
    let format = format_flag.or(job_format).unwrap_or_default();
    let output = cli.output.or(job_output);
    if let Some(e) = &env.error {
        eprintln!("error: {}", e.message);
    }
    for w in &env.warnings {
        eprintln!("warning: {w}");
    }
    if let Err(e) = emit(&render(&env, format), output.as_ref()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(env.exit_code() as u8)
}

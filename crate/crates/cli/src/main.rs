//! `trollconf`: simulate discussion threads, score them, flag trolls.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid input, 3 degenerate
//! clustering (no spread in user scores).

mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;
use trollconf::conflict::conflict_breakdown;
use trollconf::pipeline::{analyze, ThreadFile};
use trollconf::simulator::{generate_file, scenarios, ScenarioSpec};
use trollconf::Thread;

use report::{render_breakdown, render_table, ReportDocument, RunMeta};

const DEFAULT_SEED: u64 = 42;

#[derive(Parser)]
#[command(name = "trollconf", version, about = "Conflict-based troll detection for discussion threads")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic thread file.
    Simulate(SimulateArgs),
    /// Score every user of a thread and split trolls from the rest.
    Detect {
        #[arg(long)]
        thread: PathBuf,
        /// Also write the full report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Show the conflict between two messages of a thread.
    Conflict {
        #[arg(long)]
        thread: PathBuf,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "source")]
struct Source {
    /// Built-in scenario: example1, example1-unpinned or example2.
    #[arg(long)]
    scenario: Option<String>,
    /// Scenario spec JSON file.
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    source: Source,
    /// Overrides the spec's seed (default 42 for built-in scenarios).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Degenerate(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Invalid(_) => 2,
            CliError::Degenerate(_) => 3,
        }
    }

    fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

impl From<trollconf::Error> for CliError {
    fn from(err: trollconf::Error) -> Self {
        match err {
            trollconf::Error::Degenerate(_) | trollconf::Error::NoConvergence(_) => {
                CliError::Degenerate(format!("cannot split users into trolls and others: {err}"))
            }
            other => CliError::Invalid(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Writes through a temporary file in the target directory, so a failed
/// run never leaves a partial file behind.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(path, e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

fn load_thread(path: &Path) -> Result<Thread, CliError> {
    let text = read(path)?;
    Ok(ThreadFile::from_json(&text)?.to_thread()?)
}

fn simulate(args: SimulateArgs) -> Result<(), CliError> {
    let spec = match (&args.source.scenario, &args.source.spec) {
        (Some(name), _) => scenarios::by_name(name, args.seed.unwrap_or(DEFAULT_SEED))
            .ok_or_else(|| CliError::Invalid(format!("unknown scenario {name:?}")))?,
        (None, Some(path)) => {
            let spec = ScenarioSpec::from_json(&read(path)?)?;
            match args.seed {
                Some(seed) => spec.with_seed(seed),
                None => spec,
            }
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    let file = generate_file(&spec)?;
    write_atomic(&args.out, &file.to_json())?;
    eprintln!(
        "wrote {} messages from {} users to {}",
        file.messages.len(),
        file.users.len(),
        args.out.display()
    );
    Ok(())
}

fn detect(thread_path: &Path, json: Option<&Path>) -> Result<(), CliError> {
    let started = Instant::now();
    let thread = load_thread(thread_path)?;
    let report = analyze(&thread)?;
    print!("{}", render_table(&report));
    if let Some(out) = json {
        let meta = RunMeta {
            generated_unix_ms: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_millis())
                .unwrap_or(0),
            elapsed_us: started.elapsed().as_micros(),
        };
        let doc = ReportDocument::new(&thread_path.display().to_string(), report, meta);
        write_atomic(out, &doc.to_json())?;
    }
    Ok(())
}

fn inspect_conflict(thread_path: &Path, a: usize, b: usize) -> Result<(), CliError> {
    let thread = load_thread(thread_path)?;
    let ma = thread.message(a)?;
    let mb = thread.message(b)?;
    let breakdown = conflict_breakdown(&ma.bba, &mb.bba)?;
    print!("{}", render_breakdown(ma, mb, &breakdown));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(args) => simulate(args),
        Command::Detect { thread, json } => detect(&thread, json.as_deref()),
        Command::Conflict { thread, a, b } => inspect_conflict(&thread, a, b),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

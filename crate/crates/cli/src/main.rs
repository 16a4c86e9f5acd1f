//! `revschwarz`: evaluate bounds on user data, run fuzz and sharpness
//! campaigns, check identities and evaluate triangle reverses. JSON Lines
//! in, JSON Lines out.

mod commands;

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "revschwarz",
    version,
    about = "Reverse Schwarz and reverse triangle inequality workbench"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// One BoundReport per request line.
    Evaluate {
        /// JSON Lines file; standard input when omitted or `-`.
        input: Option<PathBuf>,
    },
    /// Soundness campaign; exit 1 if any violation is found.
    Fuzz,
    /// Constructed witness or extremal search per bound.
    Sharpen {
        /// Search even when a constructed witness exists.
        #[arg(long)]
        search: bool,
    },
    /// Residuals of the algebraic identities; exit 1 unless all are below 1e-12.
    Identities,
    /// One TriangleReport per request line.
    Triangle { input: Option<PathBuf> },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FieldArg {
    Real,
    Complex,
    Both,
}

#[derive(Args, Debug)]
struct Options {
    /// Bound id or triangle op; repeatable. Defaults to all.
    #[arg(long, global = true)]
    bound: Vec<String>,
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, value_delimiter = ',', default_value = "2,3,5")]
    dims: Vec<usize>,
    #[arg(long, global = true, value_enum, default_value_t = FieldArg::Both)]
    field: FieldArg,
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    #[arg(long, global = true, default_value_t = 1e-7)]
    slack_guard: f64,
    /// Exponent used when a request leaves `p` unset.
    #[arg(long, global = true, default_value_t = 2.0)]
    p: f64,
    /// Worker threads; 0 means available parallelism.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

/// Failure that aborts a run with exit code 2.
#[derive(Debug)]
pub(crate) struct Fatal(String);

impl From<revschwarz_core::Error> for Fatal {
    fn from(e: revschwarz_core::Error) -> Self {
        Fatal(format!("{}: {e}", e.code()))
    }
}

impl From<io::Error> for Fatal {
    fn from(e: io::Error) -> Self {
        Fatal(format!("io: {e}"))
    }
}

/// Collects JSON lines and whether any of them reports a failure.
pub(crate) struct Sink {
    out: Box<dyn Write>,
    pub(crate) failed: bool,
}

impl Sink {
    pub(crate) fn emit<T: serde::Serialize>(&mut self, value: &T) -> Result<(), Fatal> {
        let line = revschwarz_core::json::to_line(value)?;
        self.out.write_all(line.as_bytes())?;
        self.out.write_all(b"\n")?;
        Ok(())
    }
}

fn open_input(path: &Option<PathBuf>) -> Result<Box<dyn BufRead>, Fatal> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            let f =
                File::open(p).map_err(|e| Fatal(format!("cannot open {}: {e}", p.display())))?;
            Ok(Box::new(BufReader::new(f)))
        }
        _ => Ok(Box::new(BufReader::new(io::stdin()))),
    }
}

fn run(cli: Cli) -> Result<bool, Fatal> {
    let out: Box<dyn Write> = match &cli.opts.output {
        Some(p) => {
            Box::new(io::BufWriter::new(File::create(p).map_err(|e| {
                Fatal(format!("cannot create {}: {e}", p.display()))
            })?))
        }
        None => Box::new(io::BufWriter::new(io::stdout())),
    };
    let mut sink = Sink { out, failed: false };
    let opts = &cli.opts;
    match &cli.command {
        Command::Evaluate { input } => commands::evaluate(open_input(input)?, opts, &mut sink)?,
        Command::Triangle { input } => commands::triangle(open_input(input)?, opts, &mut sink)?,
        Command::Fuzz => commands::fuzz(opts, &mut sink)?,
        Command::Sharpen { search } => commands::sharpen(opts, *search, &mut sink)?,
        Command::Identities => commands::identities(opts, &mut sink)?,
    }
    sink.out.flush()?;
    Ok(!sink.failed)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fatal(msg)) => {
            eprintln!("revschwarz: {msg}");
            ExitCode::from(2)
        }
    }
}

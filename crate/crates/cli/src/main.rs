use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use depthzero_cli::{exit_code, parse_input, run_command, sweep, CliError, Command, Report, RunOptions, SweepOptions};
use depthzero_cli::EXIT_INVALID;

#[derive(Parser, Debug)]
#[command(name = "depthzero", version, about = "Galois cohomology and depth-zero checks for tori over local fields")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Input document (JSON); stdin when omitted.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Report destination; stdout when omitted.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest group order accepted (sweep default 12).
    #[arg(long, global = true)]
    max_order: Option<usize>,

    /// Residue field sizes, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    q: Option<Vec<u64>>,

    /// Machine-readable report (default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,

    /// Human-readable report.
    #[arg(long, global = true)]
    pretty: bool,

    /// Report `timing_ms` as 0 so identical runs give identical bytes.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Cmd {
    /// H¹ of the module (or of its torus dual with `task.coefficients = "torus"`).
    H1,
    /// Corestriction identities on every class.
    CorCheck,
    /// cor ∘ averaging = res ∘ cor over one chain or all chains.
    Prop18Check,
    /// Depth-zero characters against parameters, piece by piece.
    DepthZero,
    /// Weakly unramified characters by duality and by Frobenius coinvariants.
    Wur,
    /// Dual center and depth-zero central classes of a root datum.
    Center,
    /// The archimedean norm identity on sample points.
    ArchCheck,
    /// Every check over the built-in catalog.
    Sweep {
        /// Largest rank of unramified and archimedean tori.
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        /// Archimedean samples.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Io(format!("stdin: {e}"))),
    }
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    if let Cmd::Sweep { max_rank, samples } = cli.command {
        let d = SweepOptions::default();
        let o = SweepOptions {
            max_order: cli.max_order.unwrap_or(d.max_order),
            q: cli.q.clone().unwrap_or(d.q),
            max_rank,
            seed: cli.seed,
            samples,
            ..d
        };
        return Ok(sweep(&o));
    }
    let cmd = match cli.command {
        Cmd::H1 => Command::H1,
        Cmd::CorCheck => Command::CorCheck,
        Cmd::Prop18Check => Command::Prop18Check,
        Cmd::DepthZero => Command::DepthZero,
        Cmd::Wur => Command::Wur,
        Cmd::Center => Command::Center,
        Cmd::ArchCheck => Command::ArchCheck,
        Cmd::Sweep { .. } => unreachable!("handled above"),
    };
    let doc = parse_input(&read_input(&cli.input)?).map_err(CliError::Input)?;
    let opts = RunOptions { seed: cli.seed, max_order: cli.max_order, q: cli.q.clone() };
    run_command(cmd, &doc, &opts)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID as u8);
        }
    };
    if !cli.no_timing {
        report.timing_ms = start.elapsed().as_millis() as u64;
    }
    let text = if cli.pretty { report.to_text() } else { report.to_json() };
    let written = match &cli.output {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_INVALID as u8);
    }
    ExitCode::from(exit_code(&report) as u8)
}

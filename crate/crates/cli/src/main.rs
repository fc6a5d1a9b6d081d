use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use skh::{cmd_braid, cmd_compute, cmd_jones, cmd_verify, default_fixture_dir, load_corpus, CliResult, Report, Suite};

/// Khovanov homology of singular links over F2.
#[derive(Parser)]
#[command(name = "skh", version)]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Refuse diagrams with more crossings (double points included).
    #[arg(long, global = true, default_value_t = skh::DEFAULT_MAX_CROSSINGS)]
    max_crossings: usize,
    /// Include wall time in the report (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Betti table and Euler characteristic of a diagram (PD text or file).
    Compute { input: String },
    /// Run a verification suite over the fixture corpus.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Corpus directory containing manifest.txt.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Jones polynomial (or its Vassiliev derivative) by state sum.
    Jones {
        /// Also print the Euler characteristic of Kh and compare.
        #[arg(long)]
        both: bool,
        input: String,
    },
    /// Print the PD code of a braid closure, e.g. "s1 S2 t1".
    Braid { word: String },
}

fn run(cli: &Cli) -> CliResult<Option<Report>> {
    Ok(Some(match &cli.command {
        Command::Compute { input } => cmd_compute(input, cli.max_crossings)?,
        Command::Jones { both, input } => cmd_jones(input, *both, cli.max_crossings)?,
        Command::Verify { suite, fixtures } => {
            let dir = fixtures.clone().unwrap_or_else(default_fixture_dir);
            cmd_verify(*suite, &load_corpus(&dir)?, cli.max_crossings)?
        }
        Command::Braid { word } => {
            print!("{}", cmd_braid(word)?);
            return Ok(None);
        }
    }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("SKH_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let start = Instant::now();
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(mut report)) => {
            if cli.timing {
                report.wall_time_ms = Some(start.elapsed().as_millis());
            }
            if cli.json {
                print!("{}", report.to_json());
            } else {
                print!("{report}");
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

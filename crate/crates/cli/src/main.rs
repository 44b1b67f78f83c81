use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use siegel_kr::admissible::DEFAULT_MAX_G;
use siegel_kr::report::{run, Command, Format, ReportConfig};

/// Kottwitz-Rapoport and Ekedahl-Oort strata combinatorics for GSp_2g.
#[derive(Parser, Debug)]
#[command(name = "siegel-kr", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Rank g of the symplectic group.
    #[arg(long, global = true, default_value_t = 2)]
    g: usize,

    /// Output format; defaults to tsv, or svg for `figure`.
    #[arg(long, global = true, value_enum)]
    format: Option<Fmt>,

    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Raise the rank bound for enumerating the admissible set.
    #[arg(long, global = true)]
    max_g_override: Option<usize>,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
enum Cmd {
    /// The admissible set with its Bruhat covers.
    Adm,
    /// Final elements and their EO invariants.
    Eo,
    /// One row per KR stratum.
    Strata,
    /// Maximal p-rank 0 elements, one per permutation.
    Prank0,
    /// Dimensions of A_I, the p-rank 0 locus, the superspecial locus and S_I.
    Dims,
    /// Run a property suite; exits with 2 if it fails.
    Verify {
        #[arg(long)]
        suite: String,
    },
    /// SVG of the admissible alcoves for g = 2.
    Figure,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Fmt {
    Tsv,
    Json,
    Dot,
    Svg,
}

fn config(cli: &Cli) -> ReportConfig {
    let (command, suite) = match &cli.command {
        Cmd::Adm => (Command::Adm, None),
        Cmd::Eo => (Command::Eo, None),
        Cmd::Strata => (Command::Strata, None),
        Cmd::Prank0 => (Command::Prank0, None),
        Cmd::Dims => (Command::Dims, None),
        Cmd::Verify { suite } => (Command::Verify, Some(suite.clone())),
        Cmd::Figure => (Command::Figure, None),
    };
    let format = match cli.format {
        Some(Fmt::Tsv) => Format::Tsv,
        Some(Fmt::Json) => Format::Json,
        Some(Fmt::Dot) => Format::Dot,
        Some(Fmt::Svg) => Format::Svg,
        None if command == Command::Figure => Format::Svg,
        None => Format::Tsv,
    };
    ReportConfig { g: cli.g, command, format, suite, max_g: cli.max_g_override.unwrap_or(DEFAULT_MAX_G) }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match run(&config(&cli)) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &outcome.output).with_context(|| format!("writing {}", path.display())),
        None => std::io::stdout().write_all(outcome.output.as_bytes()).context("writing to stdout"),
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.status as u8)
}

//! `starph`: rank tables, chamber diagrams, decompositions and checks for
//! the two-robot configuration spaces of a star graph.

mod commands;
mod render;
mod scenario;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Outcome, UsageError, VerifyArgs};
use scenario::{Format, Scenario};

#[derive(Parser, Debug)]
#[command(name = "starph", version, about = "Persistent homology of two-robot star graph configuration spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; overrides the scenario's own selector.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Scenario JSON file.
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,

    /// Number of edges; defaults to the number of lengths.
    #[arg(long, global = true)]
    k: Option<usize>,

    /// Comma-separated lengths, first the long edge, e.g. "10,3,2,1/2".
    #[arg(long, global = true)]
    lengths: Option<String>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, default_value_t = 10)]
    trials: usize,

    /// Also compare against the configuration complex (k <= 5).
    #[arg(long, global = true)]
    with_oracle: bool,

    /// Shade an interval summand, as KIND:BOUND (trapezoid:2, rectangle:1/2).
    #[arg(long, global = true)]
    overlay: Option<String>,

    /// Write the document here instead of stdout. STARPH_OUT replaces the
    /// directory part.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Per-chamber ranks: Euler rank, reduced rank and closed form.
    Ranks,
    /// Diagram of the reduced arrangement.
    Arrangement,
    /// Interval decomposition with verification.
    Decompose,
    /// Property suite on random or given lengths.
    Verify,
    /// Biased spanning trees.
    Tree,
    /// Compare the model against the configuration complex.
    OracleCheck,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Ranks => "ranks",
            Command::Arrangement => "arrangement",
            Command::Decompose => "decompose",
            Command::Verify => "verify",
            Command::Tree => "tree",
            Command::OracleCheck => "oracle-check",
        }
    }
}

fn load_scenario(cli: &Cli) -> Result<Option<Scenario>, UsageError> {
    match (&cli.scenario, &cli.lengths) {
        (Some(_), Some(_)) => Err(UsageError("give either --scenario or --lengths, not both".into())),
        (Some(path), None) => Scenario::from_file(path).map(Some).map_err(|e| UsageError(e.0)),
        (None, Some(csv)) => Scenario::from_flags(cli.k, csv).map(Some).map_err(|e| UsageError(e.0)),
        (None, None) => Ok(None),
    }
}

fn run(cli: &Cli) -> Result<(Outcome, Format), UsageError> {
    let scenario = load_scenario(cli)?;
    let format = cli
        .format
        .or(scenario.as_ref().and_then(|s| s.format))
        .unwrap_or(Format::Json);
    if cli.command == Command::Verify {
        let args = VerifyArgs {
            k: cli.k,
            seed: cli.seed,
            trials: cli.trials,
            with_oracle: cli.with_oracle,
        };
        return commands::verify(scenario.as_ref(), &args, format).map(|o| (o, format));
    }
    let scenario = scenario.ok_or_else(|| UsageError(format!("{} needs --scenario or --lengths", cli.command.name())))?;
    let outcome = match cli.command {
        Command::Ranks => commands::ranks(&scenario, format),
        Command::Arrangement => {
            let overlay = cli.overlay.as_deref().map(commands::parse_overlay).transpose()?;
            commands::arrangement(&scenario, format, overlay)
        }
        Command::Decompose => commands::decompose(&scenario, format),
        Command::Tree => commands::tree(&scenario, format),
        Command::OracleCheck => commands::oracle(&scenario, format),
        Command::Verify => unreachable!("handled above"),
    }?;
    Ok((outcome, format))
}

/// `STARPH_OUT` wins over the directory of `--out`; with only the env var
/// the file is named after the command.
fn destination(out: Option<&Path>, env_dir: Option<PathBuf>, command: Command, format: Format) -> Option<PathBuf> {
    match (env_dir, out) {
        (Some(dir), Some(p)) => Some(dir.join(p.file_name().unwrap_or(p.as_os_str()))),
        (Some(dir), None) => Some(dir.join(format!("{}.{}", command.name(), format.extension()))),
        (None, Some(p)) => Some(p.to_path_buf()),
        (None, None) => None,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, format) = match run(&cli) {
        Ok(o) => o,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let env_dir = std::env::var_os("STARPH_OUT").filter(|v| !v.is_empty()).map(PathBuf::from);
    match destination(cli.out.as_deref(), env_dir, cli.command, format) {
        Some(path) => {
            let written = path
                .parent()
                .filter(|p| !p.as_os_str().is_empty())
                .map_or(Ok(()), std::fs::create_dir_all)
                .and_then(|()| std::fs::write(&path, &outcome.document));
            if let Err(e) = written {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", outcome.document),
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        if let Some(diagnostic) = &outcome.diagnostic {
            eprint!("{diagnostic}");
        }
        eprintln!("error: {} checks failed", cli.command.name());
        ExitCode::from(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn env_dir_overrides_out_directory() {
        let got = destination(Some(Path::new("a/b/x.svg")), Some(PathBuf::from("/tmp/o")), Command::Arrangement, Format::Svg);
        assert_eq!(got, Some(PathBuf::from("/tmp/o/x.svg")));
        let got = destination(None, Some(PathBuf::from("/tmp/o")), Command::Ranks, Format::Ascii);
        assert_eq!(got, Some(PathBuf::from("/tmp/o/ranks.txt")));
        assert_eq!(destination(None, None, Command::Ranks, Format::Json), None);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}

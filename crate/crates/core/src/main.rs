use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use skyrme_core::cli::{exit_status, report_status, run, ExitStatus, RunConfig};

/// Relaxation to the Skyrmion: static soliton, quasinormal ringing and
/// late-time tails.
#[derive(Parser)]
#[command(name = "skyrme", version)]
struct Cli {
    /// Plain-text key=value configuration; command-line pairs override it.
    #[arg(long, short, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, short, global = true, default_value = ".")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Pairs {
    /// Parameters as key=value.
    #[arg(value_name = "KEY=VALUE")]
    pairs: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Shoot for the static soliton; writes r, S, S'.
    Static(Pairs),
    /// Fundamental quasinormal mode.
    Qnm(Pairs),
    /// Nonlinear evolution with pointwise observers.
    Evolve(Pairs),
    /// Damped-sinusoid fit of an observer CSV.
    RingdownFit(Pairs),
    /// Power-law fit of an observer CSV.
    TailFit(Pairs),
    /// Third-order tail prediction for degree-zero data.
    TailPredict(Pairs),
    /// Degree-zero evolution against the predicted tail.
    Compare(Pairs),
    /// Plot-ready data for one figure (figure=1..4).
    Figure(Pairs),
}

impl Command {
    fn split(&self) -> (&'static str, &[String]) {
        match self {
            Command::Static(p) => ("static", &p.pairs),
            Command::Qnm(p) => ("qnm", &p.pairs),
            Command::Evolve(p) => ("evolve", &p.pairs),
            Command::RingdownFit(p) => ("ringdown-fit", &p.pairs),
            Command::TailFit(p) => ("tail-fit", &p.pairs),
            Command::TailPredict(p) => ("tail-predict", &p.pairs),
            Command::Compare(p) => ("compare", &p.pairs),
            Command::Figure(p) => ("figure", &p.pairs),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, pairs) = cli.command.split();
    let file = match &cli.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => Some(text),
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return ExitCode::from(ExitStatus::ConfigError as u8);
            }
        },
        None => None,
    };
    let result = RunConfig::from_sources(name, file.as_deref(), pairs, &cli.out).and_then(|cfg| run(&cfg));
    match result {
        Ok(report) => {
            print!("{}", report.render());
            ExitCode::from(report_status(&report) as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_status(&e) as u8)
        }
    }
}

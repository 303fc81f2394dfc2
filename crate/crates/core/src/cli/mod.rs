//! Batch front-end: one subcommand per experiment, `key=value`
//! configuration, CSV output with `#` metadata headers.

mod commands;
pub mod config;
mod figure;
pub mod output;
pub mod reference;

use std::time::Instant;

pub use config::RunConfig;
pub use output::{RunReport, Verdict};

use crate::error::{Error, Result};

pub const SUBCOMMANDS: [&str; 8] =
    ["static", "qnm", "evolve", "ringdown-fit", "tail-fit", "tail-predict", "compare", "figure"];

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    ConfigError = 1,
    NumericalFailure = 2,
    AcceptanceMismatch = 3,
}

/// Configuration problems (bad keys, unmet preconditions, unwritable
/// output) map to 1; everything the numerics reject maps to 2.
pub fn exit_status(err: &Error) -> ExitStatus {
    match err {
        Error::Config { .. } | Error::InvalidInput(_) | Error::Io(_) => ExitStatus::ConfigError,
        _ => ExitStatus::NumericalFailure,
    }
}

/// Execute one subcommand and write its outputs.
pub fn run(cfg: &RunConfig) -> Result<RunReport> {
    let start = Instant::now();
    std::fs::create_dir_all(&cfg.out_dir)
        .map_err(|e| Error::Io(format!("cannot create {}: {e}", cfg.out_dir.display())))?;
    let outcome = match cfg.subcommand.as_str() {
        "static" => commands::run_static(cfg),
        "qnm" => commands::run_qnm(cfg),
        "evolve" => commands::run_evolve(cfg),
        "ringdown-fit" => commands::run_ringdown_fit(cfg),
        "tail-fit" => commands::run_tail_fit(cfg),
        "tail-predict" => commands::run_tail_predict(cfg),
        "compare" => commands::run_compare(cfg),
        "figure" => figure::run_figure(cfg),
        other => Err(Error::config("subcommand", format!("unknown subcommand `{other}`"))),
    }?;
    let mut report = RunReport {
        subcommand: cfg.subcommand.clone(),
        params: cfg.resolved(),
        headlines: outcome.headlines,
        verdicts: outcome.verdicts,
        wall_time: start.elapsed(),
        files: outcome.files,
    };
    let path = cfg.out_dir.join(format!("{}_report.csv", cfg.subcommand));
    let mut meta = vec![("subcommand".to_string(), cfg.subcommand.clone())];
    meta.extend(report.params.iter().cloned());
    meta.extend(report.verdicts.iter().map(|v| {
        (format!("verdict {}", v.name), format!("{} in [{}, {}]", if v.pass() { "pass" } else { "fail" }, v.lower, v.upper))
    }));
    let names: Vec<&str> = report.headlines.iter().map(|(n, _)| n.as_str()).collect();
    output::write_csv(&path, &meta, &names, [report.headlines.iter().map(|&(_, v)| v).collect()])?;
    report.files.push(path);
    Ok(report)
}

/// Exit status for a finished run: only `compare` turns a failed verdict
/// into a non-zero status.
pub fn report_status(report: &RunReport) -> ExitStatus {
    if report.subcommand == "compare" && !report.all_pass() {
        ExitStatus::AcceptanceMismatch
    } else {
        ExitStatus::Success
    }
}

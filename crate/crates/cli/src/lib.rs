//! Command-line front end for the `qfoundry` experiments.
//!
//! Each subcommand writes `<name>.report.json`, one `<name>.<curve>.csv` per
//! curve and a `<name>.manifest.json` describing the run. Exit codes: 0 when
//! every verdict passes, 2 when one fails, 1 for usage, input or I/O errors.

pub mod args;
pub mod catalog;
pub mod constants;
pub mod error;
pub mod experiments;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command};
pub use error::CliError;
pub use experiments::Context;
pub use report::{ExperimentReport, RunManifest};

pub const OUT_ENV: &str = "QFOUNDRY_OUT";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FAIL: i32 = 2;

/// A finished experiment run.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: ExperimentReport,
    pub manifest: RunManifest,
    pub out_dir: PathBuf,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.report.passed() {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }
}

/// Parses `argv` (program name first), runs, prints a summary and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    EXIT_PASS
                }
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    eprint!("{e}");
                    EXIT_ERROR
                }
                _ => {
                    let text = e.to_string();
                    eprintln!("{}", text.lines().next().unwrap_or("invalid arguments"));
                    EXIT_ERROR
                }
            };
        }
    };
    let args: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let result = match &cli.command {
        Command::List { json } => list(*json).map(|()| None),
        Command::Replay { manifest } => replay(manifest, cli.global.out.clone()).map(Some),
        _ => execute(&cli, &args).map(Some),
    };
    match result {
        Ok(None) => EXIT_PASS,
        Ok(Some(outcome)) => {
            print_summary(&outcome);
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {}", e.to_string().replace('\n', " "));
            EXIT_ERROR
        }
    }
}

pub fn context(cli: &Cli) -> Result<Context, CliError> {
    let constants = match &cli.global.constants {
        Some(path) => constants::ConstantsFile::load(path)?,
        None => constants::ConstantsFile::builtin(),
    };
    Ok(Context { seed: cli.global.seed, units: cli.global.units, constants })
}

/// Output directory: `QFOUNDRY_OUT`, then `--out`, then the working directory.
pub fn out_dir(cli: &Cli) -> PathBuf {
    match std::env::var_os(OUT_ENV) {
        Some(v) if !v.is_empty() => PathBuf::from(v),
        _ => cli.global.out.clone().unwrap_or_else(|| PathBuf::from(".")),
    }
}

/// Runs the experiment in memory without writing anything.
pub fn report_for(cli: &Cli) -> Result<ExperimentReport, CliError> {
    experiments::run(&cli.command, &context(cli)?)
}

/// Runs an experiment and writes its report, curves and manifest.
pub fn execute(cli: &Cli, args: &[String]) -> Result<Outcome, CliError> {
    let ctx = context(cli)?;
    let start = Instant::now();
    let report = experiments::run(&cli.command, &ctx)?;
    let dir = out_dir(cli);
    let mut outputs = report::write_report(&report, &dir, cli.global.format.json(), cli.global.format.csv())?;
    let name = cli.command.name();
    let manifest_name = format!("{name}.manifest.json");
    outputs.push(manifest_name.clone());
    let manifest = RunManifest {
        subcommand: name.into(),
        args: args.to_vec(),
        params: cli.command.params(),
        seed: ctx.seed,
        units: serde_json::to_value(cli.global.units)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default(),
        format: serde_json::to_value(cli.global.format)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default(),
        out_dir: dir.display().to_string(),
        version: env!("CARGO_PKG_VERSION").into(),
        constants: ctx.constants.stamp.clone(),
        duration_seconds: start.elapsed().as_secs_f64(),
        outputs,
        passed: report.passed(),
    };
    let path = dir.join(&manifest_name);
    std::fs::write(&path, report::to_json_bytes(&manifest)?).map_err(|e| CliError::io(&path, e))?;
    Ok(Outcome { report, manifest, out_dir: dir })
}

/// Re-runs the experiment recorded in `manifest`, optionally into another
/// directory. Refuses when the constants no longer hash to the recorded value.
pub fn replay(manifest: &Path, out: Option<PathBuf>) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(manifest).map_err(|e| CliError::io(manifest, e))?;
    let recorded: RunManifest = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("{}: not a run manifest: {e}", manifest.display())))?;
    let argv = std::iter::once("qfoundry".to_string()).chain(recorded.args.iter().cloned());
    let mut cli = Cli::try_parse_from(argv).map_err(|e| {
        CliError::usage(format!("manifest arguments no longer parse: {}", e.to_string().lines().next().unwrap_or("")))
    })?;
    if matches!(cli.command, Command::Replay { .. } | Command::List { .. }) {
        return Err(CliError::usage("manifest does not describe an experiment"));
    }
    match out {
        Some(dir) => cli.global.out = Some(dir),
        None if cli.global.out.is_none() => cli.global.out = Some(PathBuf::from(&recorded.out_dir)),
        None => {}
    }
    let ctx = context(&cli)?;
    if ctx.constants.stamp.sha256 != recorded.constants.sha256 {
        return Err(CliError::usage(format!(
            "constants hash {} differs from the recorded {}",
            ctx.constants.stamp.sha256, recorded.constants.sha256
        )));
    }
    execute(&cli, &recorded.args)
}

fn list(json: bool) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    if json {
        let bytes = report::to_json_bytes(&catalog::CATALOG)?;
        let _ = out.write_all(&bytes);
    } else {
        for e in &catalog::CATALOG {
            let _ = writeln!(out, "{:<10} {:<48} {}", e.name, e.topic, e.summary);
        }
    }
    Ok(())
}

// Write errors (a closed pipe) are ignored: the files are the output.
fn print_summary(o: &Outcome) {
    let mut out = std::io::stdout().lock();
    let r = &o.report;
    let failed = r.verdicts.iter().filter(|v| !v.passed).count();
    let _ = writeln!(out, "{}: {} verdicts, {} failed", r.subcommand, r.verdicts.len(), failed);
    for s in &r.scalars {
        let _ = writeln!(out, "  {} = {} [{}]", s.name, report::format_float(s.value), unit_name(s.unit));
    }
    for v in &r.verdicts {
        let tag = if v.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "  {tag} {}: {} (tolerance {}) {}",
            v.name,
            report::format_float(v.value),
            report::format_float(v.tolerance),
            v.detail
        );
    }
    for n in &r.notes {
        let _ = writeln!(out, "  note: {n}");
    }
    let _ = writeln!(out, "  wrote {} files to {}", o.manifest.outputs.len(), o.out_dir.display());
}

fn unit_name(u: report::Unit) -> String {
    serde_json::to_value(u).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

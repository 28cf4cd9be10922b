//! Batch front end: read a job document, dispatch each job to the library,
//! print one report in input order.
//!
//! Exit codes: 0 when every job computed, 2 when the document itself does
//! not validate, 3 when a job errored (or `--verify` found a regression).

mod model;
mod run;
mod verify;

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use model::Job;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "eqsw",
    version,
    about = "Exact calculator for equivariant Seiberg-Witten invariants of cyclic group actions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a job document (JSON with a `jobs` array) and print the report.
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Path to the document, or `-` for standard input.
    path: String,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    output: Format,

    /// Cross-check the formula routes against each other first and refuse
    /// to run the jobs if any disagree.
    #[arg(long)]
    verify: bool,

    /// Reject jobs whose group order exceeds this bound.
    #[arg(long, default_value_t = 4096)]
    max_group_order: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Serialize)]
struct Record {
    index: usize,
    task: &'static str,
    input: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<Value>,
}

#[derive(Serialize)]
struct Report {
    schema_version: u32,
    results: Vec<Record>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run(args) => run(&args),
    }
}

fn run(args: &RunArgs) -> ExitCode {
    let text = match read_input(&args.path) {
        Ok(text) => text,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    let jobs = match parse_document(&text) {
        Ok(jobs) => jobs,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    if args.verify {
        if let Err(message) = verify::run_all() {
            eprintln!("verification failed: {message}");
            return ExitCode::from(3);
        }
    }

    let mut failed = false;
    let mut results = Vec::with_capacity(jobs.len());
    for (index, job) in jobs.iter().enumerate() {
        let (output, error) = match run::execute(job, args.max_group_order) {
            Ok(value) => (Some(value), None),
            Err(message) => {
                failed = true;
                (None, Some(message))
            }
        };
        results.push(Record {
            index,
            task: job.task_name(),
            input: serde_json::to_value(job).expect("job serializes"),
            error,
            output,
        });
    }
    let report = Report {
        schema_version: SCHEMA_VERSION,
        results,
    };

    if let Err(e) = emit(&report, args.output) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: cannot write the report: {e}");
            return ExitCode::from(3);
        }
    }

    if failed {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

fn emit(report: &Report, format: Format) -> std::io::Result<()> {
    use std::io::Write;

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => {
            let text = serde_json::to_string_pretty(report).expect("report serializes");
            writeln!(out, "{text}")?;
        }
        Format::Text => {
            for record in &report.results {
                if let Some(message) = &record.error {
                    writeln!(out, "job {} {}: error: {message}", record.index, record.task)?;
                } else if let Some(output) = &record.output {
                    writeln!(
                        out,
                        "job {} {}: {}",
                        record.index,
                        record.task,
                        run::text_summary(output)
                    )?;
                }
            }
        }
    }
    out.flush()
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| format!("cannot read standard input: {e}"))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
    }
}

fn parse_document(text: &str) -> Result<Vec<Job>, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    let document = value
        .as_object()
        .ok_or("the document must be an object with a jobs array")?;
    for key in document.keys() {
        if key != "jobs" {
            return Err(format!("unknown document field {key:?}"));
        }
    }
    let jobs = document
        .get("jobs")
        .ok_or("the document must have a jobs array")?
        .as_array()
        .ok_or("jobs must be an array")?;
    let mut parsed = Vec::with_capacity(jobs.len());
    for (index, job) in jobs.iter().enumerate() {
        let job: Job =
            serde_json::from_value(job.clone()).map_err(|e| format!("job {index}: {e}"))?;
        parsed.push(job);
    }
    Ok(parsed)
}

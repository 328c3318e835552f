//! `nichols`: compute and verify Nichols algebra data from a JSON spec file.
//!
//! Exit status: 0 when every verdict passes, 1 when a verdict fails or a budget
//! truncated the run, 2 on unreadable or invalid input.

mod render;
mod run;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use run::{Command, Engine, Job};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "nichols", version, about = "Nichols algebras of braided vector spaces and their liftings")]
struct Args {
    /// JSON spec file (braiding or lifting).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    command: Command,
    #[arg(long, default_value_t = 12)]
    max_degree: usize,
    /// Defaults to derivation, or symmetrizer for matrix braidings.
    #[arg(long, value_enum)]
    engine: Option<Engine>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    threads: Option<usize>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(t) = args.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let text = match std::fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", args.input.display());
            return ExitCode::from(2);
        }
    };
    let spec = match spec::parse_spec(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}: {e}", args.input.display());
            return ExitCode::from(2);
        }
    };
    let job = Job {
        command: args.command,
        input: args.input.display().to_string(),
        max_degree: args.max_degree,
        engine: args.engine,
    };
    let (report, engine) = match run::run(&job, &spec) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let doc = report.document(&job, engine);
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&doc).expect("report serializes")),
        Format::Text => print!("{}", render::render_text(&doc)),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

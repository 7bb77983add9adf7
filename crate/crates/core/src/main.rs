use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use difftann::cli::{self, Format};

/// Exact checks for parametrized linear differential systems.
#[derive(Parser, Debug)]
#[command(name = "difftann", version)]
struct Args {
    /// [VERB] INPUT: the verb is one of prolong, tensor, dual, verify, hopf-check,
    /// reconstruct-check, group-point and defaults to the job's command
    #[arg(num_args = 1..=2, required = true, value_names = ["VERB", "INPUT"])]
    positional: Vec<String>,
    #[arg(long)]
    order: Option<u16>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long)]
    trivial: bool,
    #[arg(long, value_parser = ["json", "text"])]
    format: Option<String>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (verb, input) = match args.positional.as_slice() {
        [input] => (None, PathBuf::from(input)),
        [verb, input] => (Some(verb.clone()), PathBuf::from(input)),
        _ => unreachable!("clap enforces one or two positionals"),
    };
    if let Some(v) = &verb {
        if !cli::VERBS.contains(&v.as_str()) {
            eprintln!("error: unknown verb `{v}`; expected one of {}", cli::VERBS.join(", "));
            return ExitCode::from(2);
        }
    }
    let mut job = match cli::load_job(&input) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if let Some(v) = verb {
        job.command = v;
    }
    if job.command.is_empty() {
        eprintln!("error: no command given on the command line or in the job");
        return ExitCode::from(2);
    }
    let o = &mut job.options;
    o.order = args.order.or(o.order);
    o.seed = args.seed.or(o.seed);
    o.cap = args.cap.or(o.cap);
    if args.trivial {
        o.trivial = Some(true);
    }
    match args.format.as_deref() {
        Some("text") => job.format = Format::Text,
        Some("json") => job.format = Format::Json,
        _ => {}
    }
    match cli::run(&job) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            if writeln!(out, "{}", report.render(job.format)).is_err() {
                return ExitCode::from(1);
            }
            if report.pass {
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

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser};

use wmtrop_cli::{run, Command, Format, Input, JobSpec, DEFAULT_TOL};

/// Weight-monodromy and tropical formal-model toolkit.
#[derive(Parser, Debug)]
#[command(name = "wmtrop", version)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "json"])))]
struct Args {
    command: Command,
    /// Read the job (or an array of jobs) from a file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Inline job JSON.
    #[arg(long)]
    json: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Tolerance for Weil-weight numerics (rational or decimal).
    #[arg(long, default_value = DEFAULT_TOL)]
    tol: String,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let input = match (args.input, args.json) {
        (Some(p), None) => Input::File(p),
        (None, Some(s)) => Input::Inline(s),
        _ => unreachable!("clap enforces exactly one source"),
    };
    let job = JobSpec { command: args.command, input, format: args.format, tol: Some(args.tol) };
    let out = run(&job);
    match out.render(job.format) {
        Ok(s) => {
            print!("{s}");
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

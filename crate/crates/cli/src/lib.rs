//! JSON/DOT front end for `wmtrop-core`: job specs, schemas and reports.

pub mod commands;
pub mod report;
pub mod schema;

pub use commands::{run, run_value, Command, Format, Input, JobSpec, RunOutput, DEFAULT_TOL};
pub use report::{Report, Status};

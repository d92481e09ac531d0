//! Command-line front end: algebra files, job configuration and reports.

pub mod algebra_file;
pub mod job;
pub mod report;

pub use algebra_file::{parse_algebra, ParseError};
pub use job::{run, AlgebraSource, CliError, Command, Format, JobConfig, Outcome};
pub use report::Report;

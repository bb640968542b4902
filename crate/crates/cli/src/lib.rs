//! File format, reports, and commands for the `leibniz` binary.

pub mod commands;
pub mod file;
pub mod report;

pub use commands::{flags_file, run_command, CommandOutput};
pub use file::{parse_algebra_file, serialize_algebra, ParseError, ParseErrorKind};
pub use report::{Format, ReportDocument};

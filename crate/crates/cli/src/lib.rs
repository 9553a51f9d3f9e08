//! Library side of the `semibrick` command: argument definitions, input
//! loading, dispatch and the JSON/text report.

pub mod args;
pub mod input;
pub mod report;
pub mod run;

pub use args::{Cli, Command, Format};
pub use report::{ErrorReport, Report, SCHEMA_VERSION};
pub use run::{exit_code, run};

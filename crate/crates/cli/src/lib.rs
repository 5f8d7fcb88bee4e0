//! Library side of the `antibidiag` command-line tool.

pub mod args;
pub mod error;
pub mod input;
pub mod report;
pub mod run;
pub mod verify;

pub use args::{Cli, Command, Format};
pub use error::CliError;
pub use report::Report;
pub use run::run;

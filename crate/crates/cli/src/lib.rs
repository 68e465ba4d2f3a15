//! Ring-description scripts, the `usalg` command set, and the invariant
//! harness behind `verify`.

pub mod ast;
pub mod commands;
pub mod env;
pub mod error;
pub mod harness;
pub mod parse;
pub mod report;

pub use ast::RingScript;
pub use commands::{run_command, Args, Command, Outcome, Property};
pub use env::Environment;
pub use error::{CliError, CliResult};
pub use parse::{parse_script, ParseError};
pub use report::{Report, SuiteResult, SuiteStatus};

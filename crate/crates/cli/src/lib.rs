//! Library surface of the command-line front end, exposed so the test
//! harness can drive subcommands in-process.

pub mod commands;
pub mod jobspec;
pub mod parse;
pub mod report;

pub use commands::{exit_status, CliError, Outcome};
pub use parse::{parse_operator, parse_poly, render_poly, ParseError};
pub use report::Report;

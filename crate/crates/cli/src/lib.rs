//! Command-line front end: polynomial parsing, command dispatch and report
//! emission.

pub mod app;
pub mod output;
pub mod parse;

pub use app::{run, Cli, EXIT_NEGATIVE, EXIT_OK, EXIT_TRUNCATED, EXIT_USAGE};

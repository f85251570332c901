//! File format and command dispatch for the `distlat` binary.

pub mod commands;
pub mod document;

pub use commands::{run_command, Outcome};
pub use document::{parse_input, InputDocument, Kind, ParseError};

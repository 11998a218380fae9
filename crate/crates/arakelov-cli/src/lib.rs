//! Library half of the command-line front end: report structures and
//! the per-subcommand builders. The binary in `main.rs` only parses
//! arguments, resolves precision settings, and prints.

pub mod commands;
pub mod report;

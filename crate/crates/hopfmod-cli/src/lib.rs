//! Library surface of the command-line tool: the instance file format,
//! the certificate report format, and the subcommand implementations.

pub mod commands;
pub mod format;
pub mod report;

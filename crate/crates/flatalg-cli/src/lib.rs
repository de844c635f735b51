//! Library backing the `flatalg` command-line tool: JSON document formats
//! and the command implementations, exposed so the test suites can drive
//! them in-process.

pub mod commands;
pub mod document;

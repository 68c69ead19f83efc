//! Library surface of the `cohomo` command-line tool; the binary in
//! `main.rs` is a thin wrapper so tests can drive everything in-process.

pub mod commands;
pub mod input;
pub mod report;

pub use commands::{cmd_check_cocycle, cmd_compute, cmd_verify_paper, InputError};
pub use report::{Format, Report};

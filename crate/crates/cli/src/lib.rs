//! Command-line interface and HTTP session server for `atam`.

pub mod bound;
pub mod commands;
pub mod server;

pub use commands::{exit, run};

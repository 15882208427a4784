//! File formats, report rendering and subcommands for the `stratifold` binary.

pub mod commands;
pub mod document;
pub mod dot;
pub mod render;

pub use commands::{CliError, ExitStatus};
pub use document::GraphDocument;

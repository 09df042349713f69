//! File formats, subcommands and text rendering for the `isotope` CLI.
//! The algebra lives in `isotope-core`.

pub mod commands;
pub mod error;
pub mod format;
pub mod render;

pub use error::CliError;

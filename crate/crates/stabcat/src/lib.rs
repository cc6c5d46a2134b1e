//! Command-line layer over `stabcat-core`: ambient specs, JSON documents,
//! golden tables and oracle suites.

pub mod ambient_spec;
pub mod cli;
pub mod error;
pub mod json;
pub mod suites;
pub mod tables;

pub use ambient_spec::{parse_ambient, Context, Model};
pub use error::CliError;

//! Command-line front end for `lattice-kit`: matrix ingestion, command
//! dispatch, result documents and the benchmark harness.

pub mod bench;
pub mod config;
pub mod document;
pub mod ingest;
pub mod run;

pub use config::{Cli, Command, Format, RunConfig};
pub use document::ResultDocument;
pub use run::{run, CliError, Outcome};

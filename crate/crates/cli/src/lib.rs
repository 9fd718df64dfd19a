//! Scenario files, reports and built-in examples on top of `rgroups-core`.

pub mod builtins;
pub mod documents;
pub mod error;
pub mod pipeline;
pub mod report;
pub mod scenario;

pub use error::{CliError, CliResult};

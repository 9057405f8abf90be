//! Experiment driver for `monopath-core`: parameter grids, parallel
//! reproducible Monte Carlo, and CSV/JSON tables.

pub mod commands;
pub mod error;
pub mod grid;
pub mod output;
pub mod runner;
pub mod spec;
pub mod table;

pub use error::CliError;
pub use spec::{Command, ExperimentSpec, OutputFormat, OutputTarget};
pub use table::{Table, Value};

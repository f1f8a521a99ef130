//! Experiment runner binding the computational modules into reproducible,
//! file-emitting experiments. See the `onticlab` binary for the CLI.

pub mod config;
pub mod experiments;
pub mod report;

pub use config::{parse_config, Experiment, ExperimentConfig, OutputFormat};
pub use experiments::{run, RunError};
pub use report::{csv_data_region, ExperimentReport};

//! Experiment driver for `stepbias-core`: JSON configs, synthetic data, CSV and
//! SVG outputs with a hashed manifest, and the `stepbias` command line tool.

pub mod config;
pub mod csvio;
pub mod dataset;
pub mod error;
pub mod experiments;
pub mod manifest;
pub mod seeds;
pub mod svg;
pub mod synth;

pub use config::{load_config, ExperimentConfig, ExperimentKind};
pub use error::{LabError, Result};
pub use experiments::run_experiment;
pub use manifest::Manifest;

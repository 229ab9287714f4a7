//! Shared fixtures for the benchmark suite.

use std::path::{Path, PathBuf};

use bladeopt_core::io::{load_case, parse_design_values, RunCase};

/// Location of the repository's example data set.
pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

/// Load the shipped example case.
pub fn example_case() -> RunCase {
    load_case(&data_dir().join("run.cfg")).expect("example data should load")
}

/// Load the shipped example design vector.
pub fn example_design() -> Vec<f64> {
    parse_design_values(&data_dir().join("design.dat")).expect("example design should load")
}

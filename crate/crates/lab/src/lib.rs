//! Command-line driver and file formats for `threshold-lab-core`.

pub mod cli;
pub mod error;
pub mod formats;
pub mod gen;
pub mod parallel;
pub mod suites;

pub use error::{LabError, LabResult};

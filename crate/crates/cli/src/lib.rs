//! Manifest-driven runner: parses a TOML manifest, executes the requested
//! commands and renders a deterministic JSON report.

pub mod manifest;
pub mod report;

pub use manifest::{parse_manifest, Command, Manifest, ManifestError};
pub use report::{run_manifest, Outcome, Overrides, SCHEMA_VERSION};

//! Library side of the `polysep` command: file formats, reports, and batches.

pub mod batch;
pub mod error;
pub mod names;
pub mod run;
pub mod vrep;

use std::path::Path;

use serde::Serialize;

pub use batch::{builtin_entries, read_catalog, run_batch, BatchResult, BatchRow, CatalogEntry};
pub use error::{CliError, Result};
pub use names::parse_spec;
pub use run::{analyze, exit_code, verify, Analysis, ReportDocument};
pub use vrep::{Expected, VRepDocument};

pub fn read_file(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Pretty JSON with fields in declaration order, newline-terminated.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    write_text(path, &text)
}

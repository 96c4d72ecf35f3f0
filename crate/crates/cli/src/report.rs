//! Machine-readable reports and atomic output.

use std::io::Write;
use std::path::Path;

use apolarity::FieldSpec;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub command: String,
    pub tool_version: String,
    /// SHA-256 of the input file, or of the normalized arguments for
    /// commands without one.
    pub input_digest: String,
    pub seed: Option<u64>,
    pub field: Option<FieldSpec>,
    pub result: Value,
}

impl ReportDocument {
    pub fn new(command: &str, input: &[u8], seed: Option<u64>, field: Option<FieldSpec>, result: Value) -> Self {
        ReportDocument {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            input_digest: sha256_hex(input),
            seed,
            field,
            result,
        }
    }

    /// Pretty JSON with a trailing newline. Key order is fixed by the
    /// struct layout and by `serde_json`'s sorted maps.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoldenStatus {
    /// No file existed; the value was written.
    Recorded,
    Matched,
    Mismatch {
        stored: String,
    },
}

/// Compares `value` with `dir/name.json`, writing the file when absent.
/// Documents are stored as pretty JSON with a trailing newline.
pub fn check_golden(dir: &Path, name: &str, value: &impl Serialize) -> Result<GoldenStatus> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))? + "\n";
    let path = dir.join(format!("{name}.json"));
    match fs::read_to_string(&path) {
        Ok(stored) if stored == text => Ok(GoldenStatus::Matched),
        Ok(stored) => Ok(GoldenStatus::Mismatch { stored }),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            fs::create_dir_all(dir).map_err(|e| Error::Io(e.to_string()))?;
            fs::write(&path, text).map_err(|e| Error::Io(e.to_string()))?;
            Ok(GoldenStatus::Recorded)
        }
        Err(e) => Err(Error::Io(e.to_string())),
    }
}

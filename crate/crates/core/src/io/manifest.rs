//! Line-delimited JSON manifests, one clip record per line.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use crate::cleaning::ClipManifestEntry;
use crate::error::{Error, Result};

/// Blank lines are skipped; line numbers in errors count from 1.
pub fn parse_manifest(text: &str) -> Result<Vec<ClipManifestEntry>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let entry: ClipManifestEntry =
            serde_json::from_str(line).map_err(|e| Error::ManifestParse {
                line: line_no,
                message: e.to_string(),
            })?;
        if !(entry.duration > 0.0 && entry.duration.is_finite()) {
            return Err(Error::ManifestParse {
                line: line_no,
                message: format!("duration {} must be positive", entry.duration),
            });
        }
        if !seen.insert(entry.id.clone()) {
            return Err(Error::ManifestParse {
                line: line_no,
                message: format!("duplicate id {:?}", entry.id),
            });
        }
        out.push(entry);
    }
    Ok(out)
}

pub fn format_manifest(entries: &[ClipManifestEntry]) -> String {
    entries
        .iter()
        .map(|e| serde_json::to_string(e).expect("plain data serializes") + "\n")
        .collect()
}

pub fn read_manifest(path: impl AsRef<Path>) -> Result<Vec<ClipManifestEntry>> {
    let path = path.as_ref();
    parse_manifest(&fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
}

pub fn write_manifest(entries: &[ClipManifestEntry], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_manifest(entries)).map_err(|e| Error::io(path, e))
}

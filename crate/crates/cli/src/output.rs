use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use gaborfeat::io::{encode_htk, format_csv_matrix};
use gaborfeat::FeatureMatrix;

use crate::config::OutputFormat;

/// Writes through a temporary file in the target directory, then renames it
/// into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot create a temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)
        .and_then(|_| tmp.as_file().sync_all())
        .with_context(|| format!("cannot write {}", path.display()))?;
    tmp.persist(path)
        .map_err(|e| e.error)
        .with_context(|| format!("cannot move output into place at {}", path.display()))?;
    Ok(())
}

pub fn encode_features(m: &FeatureMatrix, format: OutputFormat) -> Result<Vec<u8>> {
    Ok(match format {
        OutputFormat::Htk => encode_htk(m)?,
        OutputFormat::Csv => {
            let names: Vec<String> = m.provenance().iter().map(ToString::to_string).collect();
            format_csv_matrix(m.values(), None, Some(&names))?.into_bytes()
        }
    })
}

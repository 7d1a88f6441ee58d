//! Run manifests: command line, resolved configuration snapshot, library
//! version, timestamp, and the digest of every file a command wrote.

use serde::Serialize;
use time::format_description::well_known::Rfc3339;
use time::OffsetDateTime;

use wavephase::config::{snapshot, Resolved};

use crate::output::OutputSet;
use crate::CliResult;

#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub config_snapshot: String,
    pub library_version: String,
    pub timestamp: String,
    pub warnings: Vec<String>,
    pub outputs: Vec<OutputRecord>,
}

/// Write `manifest.json` as the final file of a command run.
///
/// The manifest lists every other output with its content digest; the
/// digests are reproducible for identical inputs (the timestamp lives
/// only here, never in the data files).
pub fn write(mut outputs: OutputSet, resolved: Option<&Resolved>, argv: &[String]) -> CliResult<()> {
    let config_snapshot = resolved
        .map(|r| snapshot(&r.params, &r.config, &r.hooks))
        .unwrap_or_default();
    let warnings = resolved.map(|r| r.warnings.clone()).unwrap_or_default();
    let manifest = RunManifest {
        command_line: argv.to_vec(),
        config_snapshot,
        library_version: wavephase::VERSION.to_string(),
        timestamp: OffsetDateTime::now_utc()
            .format(&Rfc3339)
            .unwrap_or_else(|_| "unknown".to_string()),
        warnings,
        outputs: outputs.records_snapshot(),
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    outputs.write("manifest.json", &text)?;
    Ok(())
}

impl OutputSet {
    fn records_snapshot(&self) -> Vec<OutputRecord> {
        self.records_ref().to_vec()
    }
}

//! Output-directory handling and CSV helpers.
//!
//! Every command writes through an [`OutputSet`], which confines writes
//! to the designated directory, records a SHA-256 digest per file, and
//! hands the records to the run manifest (written last).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::manifest::OutputRecord;
use crate::{CliError, CliResult};

pub struct OutputSet {
    dir: PathBuf,
    records: Vec<OutputRecord>,
}

impl OutputSet {
    pub fn create(dir: &Path) -> CliResult<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
            records: Vec::new(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Write one file inside the output directory. `name` must be a bare
    /// file name; anything that would escape the directory is rejected.
    pub fn write(&mut self, name: &str, contents: &str) -> CliResult<()> {
        self.write_bytes(name, contents.as_bytes())
    }

    pub fn write_bytes(&mut self, name: &str, contents: &[u8]) -> CliResult<()> {
        if name.contains('/') || name.contains('\\') || name.contains("..") {
            return Err(CliError::Usage(format!(
                "output name `{name}` must be a bare file name"
            )));
        }
        let path = self.dir.join(name);
        fs::write(&path, contents)?;
        let digest = Sha256::digest(contents);
        let mut hex = String::with_capacity(64);
        for byte in digest {
            let _ = write!(hex, "{byte:02x}");
        }
        self.records.push(OutputRecord {
            path: name.to_string(),
            sha256: hex,
        });
        Ok(())
    }

    pub(crate) fn records_ref(&self) -> &[OutputRecord] {
        &self.records
    }
}

/// CSV assembly with `#`-prefixed metadata comments and shortest
/// round-trip float formatting (plain `Display`).
pub struct Csv {
    buf: String,
}

impl Csv {
    pub fn new() -> Self {
        Self { buf: String::new() }
    }

    pub fn comment(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        let _ = writeln!(self.buf, "# {key} = {value}");
        self
    }

    pub fn header(&mut self, columns: &[&str]) -> &mut Self {
        let _ = writeln!(self.buf, "{}", columns.join(","));
        self
    }

    pub fn row(&mut self, cells: &[String]) -> &mut Self {
        let _ = writeln!(self.buf, "{}", cells.join(","));
        self
    }

    pub fn finish(&self) -> &str {
        &self.buf
    }
}

impl Default for Csv {
    fn default() -> Self {
        Self::new()
    }
}

/// Shortest round-trip decimal form of a float (empty cells stay empty).
pub fn fmt(x: f64) -> String {
    format!("{x}")
}

/// Inclusive linspace with `n >= 2` points.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

//! Table and summary writers. Every file starts with the tool version and
//! the config hash; nothing time- or host-dependent is written.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::{CliError, VERSION};

/// Output directory plus the version and config-hash stamp.
pub struct Sink {
    dir: PathBuf,
    hash: String,
    csv: bool,
    json: bool,
}

impl Sink {
    pub fn new(dir: &Path, hash: &str, csv: bool, json: bool) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::Config(format!("output.dir {}: {e}", dir.display())))?;
        Ok(Sink { dir: dir.to_owned(), hash: hash.to_owned(), csv, json })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Writes a CSV table whose first line is a `#` version and config-hash comment.
    pub fn table(&self, name: &str, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
        if !self.csv {
            return Ok(());
        }
        let mut out = BufWriter::new(File::create(self.dir.join(name))?);
        writeln!(out, "# elastoscat {VERSION} config-sha256 {}", self.hash)?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Writes `summary.json` with `version` and `config_sha256` first.
    pub fn summary<T: Serialize>(&self, body: &T) -> Result<(), CliError> {
        if !self.json {
            return Ok(());
        }
        #[derive(Serialize)]
        struct Stamped<'a, T> {
            version: &'a str,
            config_sha256: &'a str,
            #[serde(flatten)]
            body: &'a T,
        }
        let text = serde_json::to_string_pretty(&Stamped { version: VERSION, config_sha256: &self.hash, body })
            .map_err(|e| CliError::Config(format!("output: {e}")))?;
        fs::write(self.dir.join("summary.json"), text + "\n")?;
        Ok(())
    }
}

/// Shortest round-trip decimal form.
pub fn num(x: f64) -> String {
    format!("{x:e}")
}

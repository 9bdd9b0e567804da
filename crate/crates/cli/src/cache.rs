//! On-disk cache of triple reports, keyed by `(n, d, kappa)` and the crate
//! version. A file written by another version is ignored.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use hfmotive_core::report::TripleReport;
use serde::{Deserialize, Serialize};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: String,
    entries: BTreeMap<String, TripleReport>,
}

pub struct Cache {
    path: PathBuf,
    entries: BTreeMap<String, TripleReport>,
    dirty: bool,
}

fn key(n: u32, d: u32, kappa: u32) -> String {
    format!("{n},{d},{kappa}")
}

impl Cache {
    /// Loads `path`; a missing file, an unreadable file or a version mismatch
    /// all give an empty cache.
    pub fn open(path: &Path) -> Cache {
        let entries = fs::read_to_string(path)
            .ok()
            .and_then(|text| serde_json::from_str::<CacheFile>(&text).ok())
            .filter(|f| f.version == VERSION)
            .map(|f| f.entries)
            .unwrap_or_default();
        Cache { path: path.to_path_buf(), entries, dirty: false }
    }

    pub fn get(&self, n: u32, d: u32, kappa: u32) -> Option<&TripleReport> {
        self.entries.get(&key(n, d, kappa))
    }

    pub fn insert(&mut self, report: TripleReport) {
        self.entries.insert(key(report.n, report.d, report.kappa), report);
        self.dirty = true;
    }

    /// Writes through a temporary file.
    pub fn save(&self) -> io::Result<()> {
        if !self.dirty {
            return Ok(());
        }
        let file = CacheFile { version: VERSION.to_string(), entries: self.entries.clone() };
        let text = serde_json::to_string(&file).map_err(io::Error::other)?;
        let tmp = self.path.with_extension("tmp");
        fs::write(&tmp, text)?;
        fs::rename(&tmp, &self.path)
    }
}

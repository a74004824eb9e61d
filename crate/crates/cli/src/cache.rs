//! On-disk cache of computed polynomials.
//!
//! Entries are keyed by a SHA-256 of the tool version, the subcommand and the full
//! normalized configuration. Every read re-parses the polynomials and re-checks their
//! grading against the expected degrees; an entry that fails is discarded and recomputed.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use fmodule::coeff::KField;
use fmodule::gpoly::{poly_from_json, poly_to_json, KPoly};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A named polynomial with the homogeneous degree it must have.
#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub degree: u64,
    pub poly: KPoly,
}

#[derive(Serialize, Deserialize)]
struct StoredEntry {
    name: String,
    degree: u64,
    poly: Value,
}

#[derive(Serialize, Deserialize)]
struct Stored {
    version: String,
    subcommand: String,
    config: Value,
    entries: Vec<StoredEntry>,
}

pub struct Cache {
    dir: PathBuf,
}

pub fn key(subcommand: &str, config: &Value) -> String {
    let mut h = Sha256::new();
    h.update(VERSION.as_bytes());
    h.update([0]);
    h.update(subcommand.as_bytes());
    h.update([0]);
    h.update(config.to_string().as_bytes());
    hex::encode(h.finalize())
}

/// A cached polynomial is accepted only under the expected name, at the expected degree,
/// and zero or homogeneous of that degree.
fn graded_ok(e: &Entry, name: &str, degree: u64) -> bool {
    e.name == name && e.degree == degree && (e.poly.is_zero() || e.poly.homogeneous_degree() == Some(degree))
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The cached entries, or `None` when absent, stale or corrupt. `expected` lists the
    /// names and degrees the caller would compute.
    pub fn read(&self, field: &KField, subcommand: &str, config: &Value, expected: &[(String, u64)]) -> Option<Vec<Entry>> {
        let path = self.path(&key(subcommand, config));
        let text = std::fs::read_to_string(&path).ok()?;
        match parse(field, subcommand, config, expected, &text) {
            Some(entries) => Some(entries),
            None => {
                eprintln!("warning: discarding invalid cache entry {}", path.display());
                None
            }
        }
    }

    pub fn write(&self, subcommand: &str, config: &Value, entries: &[Entry]) -> std::io::Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let stored = Stored {
            version: VERSION.into(),
            subcommand: subcommand.into(),
            config: config.clone(),
            entries: entries
                .iter()
                .map(|e| StoredEntry { name: e.name.clone(), degree: e.degree, poly: poly_to_json(&e.poly) })
                .collect(),
        };
        let path = self.path(&key(subcommand, config));
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, serde_json::to_vec(&stored).expect("cache entry serializes"))?;
        std::fs::rename(tmp, path)
    }
}

fn parse(field: &KField, subcommand: &str, config: &Value, expected: &[(String, u64)], text: &str) -> Option<Vec<Entry>> {
    let stored: Stored = serde_json::from_str(text).ok()?;
    if stored.version != VERSION || stored.subcommand != subcommand || &stored.config != config {
        return None;
    }
    if stored.entries.len() != expected.len() {
        return None;
    }
    let mut out = Vec::with_capacity(stored.entries.len());
    for (s, (name, degree)) in stored.entries.into_iter().zip(expected) {
        let entry = Entry { name: s.name, degree: s.degree, poly: poly_from_json(field, &s.poly).ok()? };
        if !graded_ok(&entry, name, *degree) {
            return None;
        }
        out.push(entry);
    }
    Some(out)
}

//! Persistent count cells stored as JSON lines.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::counting::BigCount;
use crate::error::{Error, Result};

/// Identifies one cell: a statistic in dimension `d` at genus `g`, with an
/// optional depth.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CountKey {
    pub stat: String,
    pub d: usize,
    pub g: u32,
    pub q: Option<u32>,
}

impl CountKey {
    pub fn new(stat: &str, d: usize, g: u32) -> Self {
        CountKey { stat: stat.to_string(), d, g, q: None }
    }

    pub fn with_q(stat: &str, d: usize, g: u32, q: u32) -> Self {
        CountKey { stat: stat.to_string(), d, g, q: Some(q) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Computed,
    Cached,
}

#[derive(Serialize, Deserialize)]
struct Row {
    stat: String,
    d: usize,
    g: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<u32>,
    value: String,
}

fn write_row<W: Write>(out: &mut W, key: &CountKey, value: &BigCount) -> Result<()> {
    let row = Row { stat: key.stat.clone(), d: key.d, g: key.g, q: key.q, value: value.to_string() };
    writeln!(out, "{}", serde_json::to_string(&row)?)?;
    Ok(())
}

/// Count cells keyed by [`CountKey`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CountTable {
    cells: BTreeMap<CountKey, (BigCount, Provenance)>,
}

impl CountTable {
    pub fn new() -> Self {
        CountTable::default()
    }

    /// Reads a JSON-lines file; later lines override earlier ones. A missing
    /// file gives an empty table.
    pub fn load(path: &Path) -> Result<Self> {
        let mut table = CountTable::new();
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(table),
            Err(e) => return Err(e.into()),
        };
        for (n, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let row: Row = serde_json::from_str(&line)?;
            let value = BigUint::from_str(&row.value)
                .map_err(|_| Error::Json(format!("line {}: bad count {:?}", n + 1, row.value)))?;
            let key = CountKey { stat: row.stat, d: row.d, g: row.g, q: row.q };
            table.cells.insert(key, (value, Provenance::Cached));
        }
        Ok(table)
    }

    pub fn get(&self, key: &CountKey) -> Option<&BigCount> {
        self.cells.get(key).map(|(v, _)| v)
    }

    pub fn provenance(&self, key: &CountKey) -> Option<Provenance> {
        self.cells.get(key).map(|(_, p)| *p)
    }

    /// Stores a freshly computed value.
    pub fn record(&mut self, key: CountKey, value: BigCount) {
        self.cells.insert(key, (value, Provenance::Computed));
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CountKey, &BigCount)> {
        self.cells.iter().map(|(k, (v, _))| (k, v))
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Appends every computed cell to `path` and marks it cached.
    pub fn flush(&mut self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let mut out = OpenOptions::new().create(true).append(true).open(path)?;
        for (key, (value, prov)) in self.cells.iter_mut() {
            if *prov == Provenance::Computed {
                write_row(&mut out, key, value)?;
                *prov = Provenance::Cached;
            }
        }
        Ok(())
    }

    /// Writes every cell in the format [`CountTable::load`] reads.
    pub fn write_json_lines<W: Write>(&self, mut out: W) -> Result<()> {
        for (key, (value, _)) in &self.cells {
            write_row(&mut out, key, value)?;
        }
        Ok(())
    }

    /// Folds another table in; its cells win.
    pub fn extend(&mut self, other: CountTable) {
        self.cells.extend(other.cells);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_roundtrip_and_last_write_wins() {
        let dir = std::env::temp_dir().join(format!("gnslab-table-{}", std::process::id()));
        let path = dir.join("counts.jsonl");
        let _ = std::fs::remove_file(&path);
        let mut t = CountTable::new();
        t.record(CountKey::new("depth2", 2, 30), BigUint::from(12459909670309u64));
        t.record(CountKey::with_q("by_depth", 2, 5, 3), BigUint::from(44u32));
        t.flush(&path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains(r#"{"stat":"depth2","d":2,"g":30,"value":"12459909670309"}"#));
        assert!(text.contains(r#""q":3"#));
        let mut again = CountTable::new();
        again.record(CountKey::new("depth2", 2, 30), BigUint::from(7u32));
        again.flush(&path).unwrap();
        let loaded = CountTable::load(&path).unwrap();
        assert_eq!(loaded.get(&CountKey::new("depth2", 2, 30)), Some(&BigUint::from(7u32)));
        assert_eq!(loaded.provenance(&CountKey::new("depth2", 2, 30)), Some(Provenance::Cached));
        assert_eq!(loaded.len(), 2);
        assert!(CountTable::load(&dir.join("missing.jsonl")).unwrap().is_empty());
        let mut buf = Vec::new();
        loaded.write_json_lines(&mut buf).unwrap();
        let copy = dir.join("copy.jsonl");
        std::fs::write(&copy, &buf).unwrap();
        let reread = CountTable::load(&copy).unwrap();
        assert!(reread.iter().eq(loaded.iter()));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}

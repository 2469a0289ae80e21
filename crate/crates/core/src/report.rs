//! Sweep configuration files, the JSONL result cache and CSV tables.
//!
//! A configuration file is plain `key=value` text. Keys before any section
//! header are options; the `[grid]` section holds one range per parameter:
//!
//! ```text
//! cache = results.jsonl
//! csv = table.csv
//! budget = 5000000
//! hypergraph_cap = 120
//!
//! [grid]
//! n = 6..12
//! k = 2..3
//! r = 2
//! s = 2..4
//! mode = path, cycle
//! ```

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use crate::bounds::{Grid, ScanRecord};
use crate::stable::{Mode, ParamSet};
use crate::{Error, Result};

pub const CSV_COLUMNS: [&str; 14] = [
    "n",
    "k",
    "r",
    "s",
    "mode",
    "vertices",
    "edges",
    "lb_defect",
    "lb_topo",
    "ub",
    "exact",
    "status",
    "nodes",
    "millis",
];

/// Parsed configuration file.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScanConfig {
    pub grid: Grid,
    pub cache: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    /// Node budget per solve.
    pub budget: Option<u64>,
    pub solve_all: bool,
    pub timing: Option<bool>,
    /// Vertex caps for the exact solver (`r = 2` and `r ≥ 3`).
    pub graph_cap: Option<usize>,
    pub hypergraph_cap: Option<usize>,
}

fn parse_range(key: &str, value: &str) -> Result<RangeInclusive<u32>> {
    let bad = || Error::Malformed(format!("{key}: expected an integer or a range a..b, got {value:?}"));
    let number = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    let range = match value.split_once("..") {
        Some((lo, hi)) => number(lo)?..=number(hi.trim_start_matches('='))?,
        None => {
            let v = number(value)?;
            v..=v
        }
    };
    if range.is_empty() {
        return Err(bad());
    }
    Ok(range)
}

fn parse_int<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Malformed(format!("{key}: expected an integer, got {value:?}")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::Malformed(format!(
            "{key}: expected true or false, got {value:?}"
        ))),
    }
}

impl ScanConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ScanConfig::default();
        let mut section = String::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                section = name.trim().to_string();
                if section != "grid" {
                    return Err(Error::Malformed(format!(
                        "line {}: unknown section [{section}]",
                        lineno + 1
                    )));
                }
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::Malformed(format!("line {}: expected key=value", lineno + 1)))?;
            match (section.as_str(), key) {
                ("grid", "n") => cfg.grid.n = parse_range(key, value)?,
                ("grid", "k") => cfg.grid.k = parse_range(key, value)?,
                ("grid", "r") => cfg.grid.r = parse_range(key, value)?,
                ("grid", "s") => cfg.grid.s = parse_range(key, value)?,
                ("grid", "mode") => {
                    cfg.grid.modes = value
                        .split(',')
                        .map(|m| match m.trim() {
                            "both" | "all" => Ok(Mode::ALL.to_vec()),
                            one => one.parse::<Mode>().map(|m| vec![m]),
                        })
                        .collect::<Result<Vec<_>>>()?
                        .concat();
                    cfg.grid.modes.dedup();
                }
                ("", "cache") => cfg.cache = Some(PathBuf::from(value)),
                ("", "csv") => cfg.csv = Some(PathBuf::from(value)),
                ("", "budget") => cfg.budget = Some(parse_int(key, value)?),
                ("", "graph_cap") => cfg.graph_cap = Some(parse_int(key, value)?),
                ("", "hypergraph_cap") => cfg.hypergraph_cap = Some(parse_int(key, value)?),
                ("", "solve_all") => cfg.solve_all = parse_bool(key, value)?,
                ("", "timing") => cfg.timing = Some(parse_bool(key, value)?),
                _ => {
                    return Err(Error::Malformed(format!(
                        "line {}: unknown key {key:?}{}",
                        lineno + 1,
                        if section.is_empty() {
                            String::new()
                        } else {
                            format!(" in [{section}]")
                        }
                    )))
                }
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut cfg = Self::parse(&std::fs::read_to_string(path)?)?;
        // relative paths are taken from the config file's directory
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [&mut cfg.cache, &mut cfg.csv].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }
}

/// Append-only JSONL file of [`ScanRecord`]s. Later lines supersede earlier
/// ones with the same `(n,k,r,s,mode)`.
#[derive(Debug)]
pub struct ResultCache {
    path: PathBuf,
    records: HashMap<ParamSet, ScanRecord>,
    lines: usize,
}

impl ResultCache {
    /// Opens `path`, reading any existing lines. A missing file is an empty
    /// cache.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let mut cache = ResultCache {
            path,
            records: HashMap::new(),
            lines: 0,
        };
        let file = match File::open(&cache.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e.into()),
        };
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let rec: ScanRecord = serde_json::from_str(&line)
                .map_err(|e| Error::Malformed(format!("{}:{}: {e}", cache.path.display(), i + 1)))?;
            cache.lines += 1;
            cache.records.insert(rec.params(), rec);
        }
        Ok(cache)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, params: &ParamSet) -> Option<&ScanRecord> {
        self.records.get(params)
    }

    /// Number of logical records.
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Number of physical lines read or written.
    pub fn lines(&self) -> usize {
        self.lines
    }

    /// Appends one line and makes it the current record for its key.
    pub fn insert(&mut self, record: ScanRecord) -> Result<()> {
        let mut line = serde_json::to_string(&record)?;
        line.push('\n');
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        file.write_all(line.as_bytes())?;
        self.lines += 1;
        self.records.insert(record.params(), record);
        Ok(())
    }
}

fn exact_field(rec: &ScanRecord) -> String {
    match rec.exact {
        Some(x) => x.to_string(),
        None => format!("{}..{}", rec.lower, rec.upper),
    }
}

/// Writes the fixed-column table; an unknown chromatic number is shown as
/// its bracket `lower..upper`.
pub fn write_csv<W: Write>(records: &[ScanRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for rec in records {
        w.write_record([
            rec.n.to_string(),
            rec.k.to_string(),
            rec.r.to_string(),
            rec.s.to_string(),
            rec.mode.to_string(),
            rec.vertices.to_string(),
            rec.edges.to_string(),
            rec.lb_defect.to_string(),
            rec.lb_topo.map(|v| v.to_string()).unwrap_or_default(),
            rec.ub.to_string(),
            exact_field(rec),
            rec.status.to_string(),
            rec.nodes.to_string(),
            rec.millis.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

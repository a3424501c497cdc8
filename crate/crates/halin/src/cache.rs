//! On-disk persistence for extremal records.
//!
//! One text file per `(n, k)` pair, named `ex-n{n}-c{k}-v{version}.txt`, so
//! bumping the format version orphans old files instead of misreading
//! them. The format is line-oriented `key value` pairs followed by the
//! witness lines:
//!
//! ```text
//! halin-extremal-cache 1
//! tool-version 0.1.0
//! computed-at 1765731600
//! n 16
//! k 4
//! max-edges 25
//! num-extremal 1
//! enumerated-total 1475
//! witnesses 1
//! halin1 (((()())(()())(()())(()()))()())
//! ```
//!
//! `max-edges none` encodes the no-such-graph case. `tool-version` and
//! `computed-at` (unix seconds) are provenance only: loading ignores them,
//! so records compare equal across tool upgrades and re-runs.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use thiserror::Error;

use crate::enumeration::ExtremalRecord;
use crate::{CODE_VERSION, TOOL_VERSION};

/// Environment variable naming the cache directory.
pub const CACHE_DIR_ENV: &str = "HALIN_CACHE_DIR";
/// Fallback cache directory, relative to the working directory.
pub const DEFAULT_CACHE_DIR: &str = ".halin-cache";

const FILE_HEADER: &str = "halin-extremal-cache";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed cache file {path}, line {line}: {reason}")]
    Malformed {
        path: PathBuf,
        line: usize,
        reason: String,
    },
}

/// A cache directory; files are only created on `store`.
#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// Picks the directory: an explicit override wins, then
    /// `HALIN_CACHE_DIR`, then `./.halin-cache`.
    pub fn resolve(explicit: Option<PathBuf>) -> Self {
        let dir = explicit
            .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
        Cache::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, n: usize, k: usize) -> PathBuf {
        self.dir.join(format!("ex-n{n}-c{k}-v{CODE_VERSION}.txt"))
    }

    /// Loads the record for `(n, k)`; `Ok(None)` when it was never stored.
    pub fn load(&self, n: usize, k: usize) -> Result<Option<ExtremalRecord>, CacheError> {
        let path = self.path_for(n, k);
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(source) => return Err(CacheError::Io { path, source }),
        };
        parse_record(&text, &path, n, k).map(Some)
    }

    /// Writes the record to its file, creating the directory if needed.
    /// The write goes through a temporary file so a crash cannot leave a
    /// half-written record behind.
    pub fn store(&self, record: &ExtremalRecord) -> Result<PathBuf, CacheError> {
        let path = self.path_for(record.n, record.k);
        let io = |source| CacheError::Io {
            path: path.clone(),
            source,
        };
        fs::create_dir_all(&self.dir).map_err(io)?;
        let stamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let mut text = String::new();
        text.push_str(&format!("{FILE_HEADER} {CODE_VERSION}\n"));
        text.push_str(&format!("tool-version {TOOL_VERSION}\n"));
        text.push_str(&format!("computed-at {stamp}\n"));
        text.push_str(&format!("n {}\n", record.n));
        text.push_str(&format!("k {}\n", record.k));
        match record.max_edges {
            Some(e) => text.push_str(&format!("max-edges {e}\n")),
            None => text.push_str("max-edges none\n"),
        }
        text.push_str(&format!("num-extremal {}\n", record.num_extremal));
        text.push_str(&format!("enumerated-total {}\n", record.enumerated_total));
        text.push_str(&format!("witnesses {}\n", record.witnesses.len()));
        for w in &record.witnesses {
            text.push_str(w);
            text.push('\n');
        }
        let tmp = path.with_extension("txt.tmp");
        fs::write(&tmp, &text).map_err(io)?;
        fs::rename(&tmp, &path).map_err(io)?;
        Ok(path)
    }
}

fn parse_record(text: &str, path: &Path, n: usize, k: usize) -> Result<ExtremalRecord, CacheError> {
    let bad = |line: usize, reason: String| CacheError::Malformed {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let mut lines = text.lines().enumerate();
    let mut field = |name: &str| -> Result<(usize, String), CacheError> {
        let (i, line) = lines
            .next()
            .ok_or_else(|| bad(0, format!("missing `{name}` line")))?;
        let (key, value) = line
            .split_once(' ')
            .ok_or_else(|| bad(i + 1, format!("expected `{name} <value>`")))?;
        if key != name {
            return Err(bad(i + 1, format!("expected `{name}`, found `{key}`")));
        }
        Ok((i + 1, value.to_string()))
    };
    let (line_no, version) = field(FILE_HEADER)?;
    if version != CODE_VERSION.to_string() {
        return Err(bad(
            line_no,
            format!("format version {version}, this tool reads {CODE_VERSION}"),
        ));
    }
    field("tool-version")?;
    field("computed-at")?;
    let parse_num = |pair: (usize, String), what: &str| -> Result<u64, CacheError> {
        pair.1
            .parse::<u64>()
            .map_err(|_| bad(pair.0, format!("{what} is not a number: `{}`", pair.1)))
    };
    let got_n = parse_num(field("n")?, "n")? as usize;
    let got_k = parse_num(field("k")?, "k")? as usize;
    if (got_n, got_k) != (n, k) {
        return Err(bad(
            0,
            format!("file is for (n={got_n}, k={got_k}), expected (n={n}, k={k})"),
        ));
    }
    let max_pair = field("max-edges")?;
    let max_edges = if max_pair.1 == "none" {
        None
    } else {
        Some(parse_num(max_pair, "max-edges")? as usize)
    };
    let num_extremal = parse_num(field("num-extremal")?, "num-extremal")?;
    let enumerated_total = parse_num(field("enumerated-total")?, "enumerated-total")?;
    let wit_pair = field("witnesses")?;
    let wit_count = parse_num(wit_pair.clone(), "witnesses")? as usize;
    let mut witnesses = Vec::with_capacity(wit_count);
    for _ in 0..wit_count {
        let (i, line) = lines
            .next()
            .ok_or_else(|| bad(wit_pair.0, format!("expected {wit_count} witness lines")))?;
        if line.trim().is_empty() {
            return Err(bad(i + 1, "empty witness line".to_string()));
        }
        witnesses.push(line.to_string());
    }
    if max_edges.is_none() && num_extremal != 0 {
        return Err(bad(
            0,
            "record claims extremal graphs but no maximum".to_string(),
        ));
    }
    Ok(ExtremalRecord {
        n,
        k,
        max_edges,
        num_extremal,
        witnesses,
        enumerated_total,
    })
}

//! Append-only JSONL catalog of computed results.
//!
//! Each line is one record:
//!
//! ```text
//! {"schema_version":1,"kind":"tuple","payload":{...},"created_at":"2026-01-01T00:00:00Z"}
//! ```
//!
//! `created_at` is omitted when timestamps are disabled. Readers reject any
//! other schema version and any unknown kind, naming the offending line.

use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use chrono::{SecondsFormat, Utc};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::cover::{self, CoverType, DerivedParams, SurfaceInvariants};
use crate::discriminant::ZariskiCertificate;
use crate::search::CataneseTuple;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("schema mismatch at line {line}: {reason}")]
    SchemaMismatch { line: usize, reason: String },
    #[error("catalog {0} is locked by another writer")]
    Locked(PathBuf),
    #[error("serialization failed: {0}")]
    Serialize(#[from] serde_json::Error),
}

/// Everything the `invariants` command reports for one type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    #[serde(rename = "type")]
    pub cover: CoverType,
    pub canonical: CoverType,
    pub params: DerivedParams,
    pub invariants: SurfaceInvariants,
}

impl InvariantsReport {
    pub fn new(t: &CoverType) -> Self {
        InvariantsReport {
            cover: *t,
            canonical: cover::canonicalize(t),
            params: cover::derive_params(t),
            invariants: cover::surface_invariants(t),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordKind {
    Invariants,
    Tuple,
    Certificate,
}

impl RecordKind {
    fn parse(s: &str) -> Option<RecordKind> {
        match s {
            "invariants" => Some(RecordKind::Invariants),
            "tuple" => Some(RecordKind::Tuple),
            "certificate" => Some(RecordKind::Certificate),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Invariants(InvariantsReport),
    Tuple(CataneseTuple),
    Certificate(ZariskiCertificate),
}

impl Payload {
    pub fn kind(&self) -> RecordKind {
        match self {
            Payload::Invariants(_) => RecordKind::Invariants,
            Payload::Tuple(_) => RecordKind::Tuple,
            Payload::Certificate(_) => RecordKind::Certificate,
        }
    }

    fn to_value(&self) -> serde_json::Result<Value> {
        match self {
            Payload::Invariants(p) => serde_json::to_value(p),
            Payload::Tuple(p) => serde_json::to_value(p),
            Payload::Certificate(p) => serde_json::to_value(p),
        }
    }

    fn from_value(kind: RecordKind, value: Value) -> serde_json::Result<Payload> {
        Ok(match kind {
            RecordKind::Invariants => Payload::Invariants(serde_json::from_value(value)?),
            RecordKind::Tuple => Payload::Tuple(serde_json::from_value(value)?),
            RecordKind::Certificate => Payload::Certificate(serde_json::from_value(value)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogRecord {
    pub schema_version: u32,
    pub payload: Payload,
    pub created_at: Option<String>,
}

/// On-disk line layout; field order is the serialization order.
#[derive(Serialize, Deserialize)]
struct Line {
    schema_version: u32,
    kind: String,
    payload: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    created_at: Option<String>,
}

pub fn utc_now() -> String {
    Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true)
}

impl CatalogRecord {
    /// Current schema version, stamped with the current UTC time when
    /// `timestamp` is set.
    pub fn new(payload: Payload, timestamp: bool) -> Self {
        CatalogRecord {
            schema_version: SCHEMA_VERSION,
            payload,
            created_at: timestamp.then(utc_now),
        }
    }

    pub fn kind(&self) -> RecordKind {
        self.payload.kind()
    }

    pub fn to_json_line(&self) -> Result<String, CatalogError> {
        let kind = serde_json::to_value(self.kind())?;
        let line = Line {
            schema_version: self.schema_version,
            kind: kind.as_str().unwrap_or_default().to_string(),
            payload: self.payload.to_value()?,
            created_at: self.created_at.clone(),
        };
        Ok(serde_json::to_string(&line)?)
    }

    /// Parse one line; `line_no` is 1-based and only used in errors.
    pub fn from_json_line(text: &str, line_no: usize) -> Result<Self, CatalogError> {
        let mismatch = |reason: String| CatalogError::SchemaMismatch {
            line: line_no,
            reason,
        };
        let line: Line = serde_json::from_str(text).map_err(|e| mismatch(e.to_string()))?;
        if line.schema_version != SCHEMA_VERSION {
            return Err(mismatch(format!(
                "schema version {} (expected {SCHEMA_VERSION})",
                line.schema_version
            )));
        }
        let kind = RecordKind::parse(&line.kind)
            .ok_or_else(|| mismatch(format!("unknown kind {:?}", line.kind)))?;
        let payload = Payload::from_value(kind, line.payload)
            .map_err(|e| mismatch(format!("bad {} payload: {e}", line.kind)))?;
        Ok(CatalogRecord {
            schema_version: line.schema_version,
            payload,
            created_at: line.created_at,
        })
    }
}

/// Exclusive appender. Holds an advisory lock on the file for its whole
/// lifetime, so a second writer on the same path fails with `Locked`.
pub struct CatalogWriter {
    path: PathBuf,
    out: BufWriter<File>,
}

impl CatalogWriter {
    pub fn open(path: &Path) -> Result<Self, CatalogError> {
        let io_err = |source| CatalogError::Io {
            path: path.to_path_buf(),
            source,
        };
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(io_err)?;
        match file.try_lock() {
            Ok(()) => {}
            Err(std::fs::TryLockError::WouldBlock) => {
                return Err(CatalogError::Locked(path.to_path_buf()))
            }
            Err(std::fs::TryLockError::Error(e)) => return Err(io_err(e)),
        }
        Ok(CatalogWriter {
            path: path.to_path_buf(),
            out: BufWriter::new(file),
        })
    }

    pub fn append(&mut self, record: &CatalogRecord) -> Result<(), CatalogError> {
        let line = record.to_json_line()?;
        writeln!(self.out, "{line}").map_err(|source| self.io(source))
    }

    /// Flush and fsync. Dropping without calling this still flushes but
    /// swallows errors.
    pub fn finish(mut self) -> Result<(), CatalogError> {
        self.out.flush().map_err(|source| self.io(source))?;
        self.out
            .get_ref()
            .sync_all()
            .map_err(|source| self.io(source))
    }

    fn io(&self, source: io::Error) -> CatalogError {
        CatalogError::Io {
            path: self.path.clone(),
            source,
        }
    }
}

/// Append `records` to the catalog at `path`, creating it if needed.
pub fn write_catalog(path: &Path, records: &[CatalogRecord]) -> Result<(), CatalogError> {
    let mut writer = CatalogWriter::open(path)?;
    for record in records {
        writer.append(record)?;
    }
    writer.finish()
}

/// Records in file order. Blank lines are skipped.
pub fn read_catalog(path: &Path) -> Result<Vec<CatalogRecord>, CatalogError> {
    let io_err = |source| CatalogError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::open(path).map_err(io_err)?;
    let mut records = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err)?;
        if line.trim().is_empty() {
            continue;
        }
        records.push(CatalogRecord::from_json_line(&line, i + 1)?);
    }
    Ok(records)
}

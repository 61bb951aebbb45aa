//! Append-only JSON-lines checkpoints.
//!
//! The first line is a header with the configuration hash; every later line
//! is a sample record or a counterexample reference. A crash can only leave
//! a torn final line, which readers skip and writers truncate.

use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::SweepIdentity;
use crate::{Error, Result};

/// One analysed sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    #[serde(rename = "dimA")]
    pub dim_a: usize,
    #[serde(rename = "dimB")]
    pub dim_b: usize,
    pub sample_index: u64,
    pub negative_count: usize,
    pub most_negative: f64,
    pub negativity: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audenaert_min_eig: Option<f64>,
}

impl SweepRecord {
    pub fn key(&self) -> (usize, usize, u64) {
        (self.dim_a, self.dim_b, self.sample_index)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckpointHeader {
    pub config_hash: String,
    pub identity: SweepIdentity,
}

impl CheckpointHeader {
    pub fn new(identity: SweepIdentity) -> Self {
        Self { config_hash: identity.hash(), identity }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleRef {
    #[serde(rename = "dimA")]
    pub dim_a: usize,
    #[serde(rename = "dimB")]
    pub dim_b: usize,
    pub sample_index: u64,
    pub reason: String,
    pub path: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Line {
    Header(CheckpointHeader),
    Record(SweepRecord),
    Counterexample(CounterexampleRef),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Checkpoint {
    pub path: PathBuf,
    /// Absent for an empty file.
    pub header: Option<CheckpointHeader>,
    pub records: Vec<SweepRecord>,
    pub counterexamples: Vec<CounterexampleRef>,
    /// Byte length of the intact prefix.
    pub valid_len: u64,
    pub torn_tail: bool,
}

pub fn read_checkpoint(path: &Path) -> Result<Checkpoint> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_checkpoint(path, &bytes)
}

fn corrupt(path: &Path, message: String) -> Error {
    Error::Corruption { path: path.to_path_buf(), message }
}

fn parse_checkpoint(path: &Path, bytes: &[u8]) -> Result<Checkpoint> {
    let mut out = Checkpoint { path: path.to_path_buf(), ..Checkpoint::default() };
    let mut offset = 0usize;
    let mut line_no = 0usize;
    while offset < bytes.len() {
        line_no += 1;
        let rest = &bytes[offset..];
        let Some(end) = rest.iter().position(|&b| b == b'\n') else {
            // no newline: an interrupted append
            out.torn_tail = true;
            break;
        };
        let text = std::str::from_utf8(&rest[..end]).map_err(|_| corrupt(path, format!("line {line_no} is not UTF-8")))?;
        offset += end + 1;
        if text.trim().is_empty() {
            out.valid_len = offset as u64;
            continue;
        }
        let line: Line = serde_json::from_str(text).map_err(|e| corrupt(path, format!("line {line_no}: {e}")))?;
        match line {
            Line::Header(h) if out.header.is_none() && line_no == 1 => {
                if h.config_hash != h.identity.hash() {
                    return Err(corrupt(path, "header hash does not match its identity".into()));
                }
                out.header = Some(h);
            }
            Line::Header(_) => return Err(corrupt(path, format!("unexpected header on line {line_no}"))),
            _ if out.header.is_none() => return Err(corrupt(path, "first line is not a header".into())),
            Line::Record(r) => out.records.push(r),
            Line::Counterexample(c) => out.counterexamples.push(c),
        }
        out.valid_len = offset as u64;
    }
    Ok(out)
}

/// Serialized appends to one checkpoint file.
pub struct CheckpointWriter {
    path: PathBuf,
    out: BufWriter<File>,
}

impl CheckpointWriter {
    /// Opens `path` for appending, creating it with `header` if it is missing
    /// or empty. Returns the existing contents, which must carry the same hash.
    pub fn open(path: &Path, header: &CheckpointHeader) -> Result<(Self, Checkpoint)> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        }
        let existing = match fs::read(path) {
            Ok(bytes) => parse_checkpoint(path, &bytes)?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Checkpoint { path: path.to_path_buf(), ..Checkpoint::default() },
            Err(e) => return Err(Error::io(path, e)),
        };
        if let Some(h) = &existing.header {
            if h.config_hash != header.config_hash {
                return Err(Error::Input(format!(
                    "{} was written by a different configuration (hash {} vs {})",
                    path.display(),
                    h.config_hash,
                    header.config_hash
                )));
            }
        }
        let mut file = OpenOptions::new().create(true).write(true).truncate(false).open(path).map_err(|e| Error::io(path, e))?;
        // drop a torn tail before appending
        file.set_len(existing.valid_len)
            .and_then(|_| file.seek(SeekFrom::End(0)))
            .map_err(|e| Error::io(path, e))?;
        let mut writer = Self { path: path.to_path_buf(), out: BufWriter::new(file) };
        if existing.header.is_none() {
            writer.write_line(&Line::Header(header.clone()))?;
            writer.flush()?;
        }
        Ok((writer, existing))
    }

    fn write_line(&mut self, line: &Line) -> Result<()> {
        serde_json::to_writer(&mut self.out, line).map_err(|e| Error::io(&self.path, e.into()))?;
        self.out.write_all(b"\n").map_err(|e| Error::io(&self.path, e))
    }

    pub fn append_records(&mut self, records: &[SweepRecord]) -> Result<()> {
        for r in records {
            self.write_line(&Line::Record(r.clone()))?;
        }
        Ok(())
    }

    pub fn append_counterexample(&mut self, c: &CounterexampleRef) -> Result<()> {
        self.write_line(&Line::Counterexample(c.clone()))
    }

    /// Pushes buffered lines to the file and to stable storage.
    pub fn flush(&mut self) -> Result<()> {
        self.out.flush().map_err(|e| Error::io(&self.path, e))?;
        self.out.get_ref().sync_data().map_err(|e| Error::io(&self.path, e))
    }
}

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::checkpoint::{read_checkpoint, CounterexampleRef, SweepRecord};
use super::config::SweepIdentity;
use super::reference::{reference_max_count, REFERENCE_SOURCE};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellAggregate {
    #[serde(rename = "dimA")]
    pub dim_a: usize,
    #[serde(rename = "dimB")]
    pub dim_b: usize,
    pub max_negative_count: usize,
    /// Negative count → number of samples.
    pub histogram: BTreeMap<usize, u64>,
    pub samples_done: u64,
    /// Smallest eigenvalue of `ρᵀ` seen in the cell.
    pub most_negative: Option<f64>,
    pub max_negativity: f64,
    /// Smallest eigenvalue of `|ρᵀ|ᵀ` seen, when tracked.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audenaert_min_eig: Option<f64>,
    pub counterexample_refs: Vec<PathBuf>,
}

impl CellAggregate {
    fn empty(dim_a: usize, dim_b: usize) -> Self {
        Self {
            dim_a,
            dim_b,
            max_negative_count: 0,
            histogram: BTreeMap::new(),
            samples_done: 0,
            most_negative: None,
            max_negativity: 0.0,
            audenaert_min_eig: None,
            counterexample_refs: Vec::new(),
        }
    }

    fn add(&mut self, r: &SweepRecord) {
        *self.histogram.entry(r.negative_count).or_insert(0) += 1;
        self.samples_done += 1;
        self.max_negative_count = self.max_negative_count.max(r.negative_count);
        self.most_negative = Some(self.most_negative.map_or(r.most_negative, |x| x.min(r.most_negative)));
        self.max_negativity = self.max_negativity.max(r.negativity);
        if let Some(m) = r.audenaert_min_eig {
            self.audenaert_min_eig = Some(self.audenaert_min_eig.map_or(m, |x| x.min(m)));
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    /// Echo of the configuration that produced the records; absent when no
    /// checkpoint had a header.
    pub config_hash: Option<String>,
    pub identity: Option<SweepIdentity>,
    /// Sorted by `(dimA, dimB)`.
    pub cells: Vec<CellAggregate>,
}

impl SweepTable {
    pub fn empty() -> Self {
        Self { config_hash: None, identity: None, cells: Vec::new() }
    }

    /// Aggregates a set of records; the result does not depend on their order.
    pub fn from_records<'a>(
        identity: Option<SweepIdentity>,
        records: impl IntoIterator<Item = &'a SweepRecord>,
        counterexamples: &[CounterexampleRef],
    ) -> Self {
        let mut cells: BTreeMap<(usize, usize), CellAggregate> = BTreeMap::new();
        for r in records {
            cells.entry((r.dim_a, r.dim_b)).or_insert_with(|| CellAggregate::empty(r.dim_a, r.dim_b)).add(r);
        }
        let mut refs: BTreeSet<(usize, usize, &Path)> = BTreeSet::new();
        for c in counterexamples {
            refs.insert((c.dim_a, c.dim_b, c.path.as_path()));
        }
        for (a, b, path) in refs {
            cells.entry((a, b)).or_insert_with(|| CellAggregate::empty(a, b)).counterexample_refs.push(path.to_path_buf());
        }
        Self { config_hash: identity.as_ref().map(SweepIdentity::hash), identity, cells: cells.into_values().collect() }
    }

    pub fn cell(&self, dim_a: usize, dim_b: usize) -> Option<&CellAggregate> {
        self.cells.iter().find(|c| c.dim_a == dim_a && c.dim_b == dim_b)
    }

    pub fn total_samples(&self) -> u64 {
        self.cells.iter().map(|c| c.samples_done).sum()
    }
}

/// Union of several checkpoints of one configuration. Identical duplicate
/// records collapse; differing ones are corruption.
pub fn merge_checkpoints(paths: &[PathBuf]) -> Result<SweepTable> {
    let mut identity: Option<(SweepIdentity, PathBuf)> = None;
    let mut records: BTreeMap<(usize, usize, u64), SweepRecord> = BTreeMap::new();
    let mut counterexamples = Vec::new();
    for path in paths {
        let cp = read_checkpoint(path)?;
        let Some(header) = cp.header else { continue };
        match &identity {
            Some((id, first)) if id.hash() != header.config_hash => {
                return Err(Error::Merge(format!(
                    "{} has config hash {}, but {} has {}",
                    path.display(),
                    header.config_hash,
                    first.display(),
                    id.hash()
                )))
            }
            Some(_) => {}
            None => identity = Some((header.identity, path.clone())),
        }
        for r in cp.records {
            match records.get(&r.key()) {
                Some(old) if *old != r => {
                    return Err(Error::Corruption {
                        path: path.clone(),
                        message: format!("conflicting records for cell {}x{} sample {}", r.dim_a, r.dim_b, r.sample_index),
                    })
                }
                Some(_) => {}
                None => {
                    records.insert(r.key(), r);
                }
            }
        }
        counterexamples.extend(cp.counterexamples);
    }
    Ok(SweepTable::from_records(identity.map(|(id, _)| id), records.values(), &counterexamples))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableFormat {
    Markdown,
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "markdown" | "md" => Ok(TableFormat::Markdown),
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(format!("unknown table format `{other}` (markdown, csv, json)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceStatus {
    Match,
    /// Observed below the reference; more samples may reach it.
    UnderSampled,
    Exceeded,
    NoReference,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceComparison {
    #[serde(rename = "dimA")]
    pub dim_a: usize,
    #[serde(rename = "dimB")]
    pub dim_b: usize,
    pub observed: usize,
    pub reference: Option<usize>,
    pub status: ReferenceStatus,
}

pub fn compare_with_reference(table: &SweepTable) -> Vec<ReferenceComparison> {
    table
        .cells
        .iter()
        .filter(|c| c.samples_done > 0)
        .map(|c| {
            let reference = reference_max_count(c.dim_a, c.dim_b);
            let status = match reference {
                None => ReferenceStatus::NoReference,
                Some(r) if c.max_negative_count == r => ReferenceStatus::Match,
                Some(r) if c.max_negative_count < r => ReferenceStatus::UnderSampled,
                Some(_) => ReferenceStatus::Exceeded,
            };
            ReferenceComparison { dim_a: c.dim_a, dim_b: c.dim_b, observed: c.max_negative_count, reference, status }
        })
        .collect()
}

#[derive(Serialize)]
struct JsonTable<'a> {
    #[serde(flatten)]
    table: &'a SweepTable,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference_source: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference_comparison: Option<Vec<ReferenceComparison>>,
}

fn overlay_cell(cmp: &ReferenceComparison) -> String {
    match (cmp.status, cmp.reference) {
        (ReferenceStatus::Match, _) => format!("{} ✓", cmp.observed),
        (ReferenceStatus::UnderSampled, Some(r)) => format!("{} (ref {r}, under-sampled)", cmp.observed),
        (ReferenceStatus::Exceeded, Some(r)) => format!("{} (ref {r}, EXCEEDED)", cmp.observed),
        _ => format!("{} (no ref)", cmp.observed),
    }
}

fn histogram_text(h: &BTreeMap<usize, u64>) -> String {
    h.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(";")
}

/// Renders the table. Markdown is a grid with `dimA` rows and `dimB`
/// columns; CSV has one row per cell; JSON is the full structure.
pub fn emit_table(table: &SweepTable, format: TableFormat, with_reference: bool) -> String {
    let comparisons = with_reference.then(|| compare_with_reference(table));
    let lookup = |a: usize, b: usize| comparisons.as_ref().and_then(|cs| cs.iter().find(|c| c.dim_a == a && c.dim_b == b));
    match format {
        TableFormat::Json => {
            let body = JsonTable {
                table,
                reference_source: with_reference.then_some(REFERENCE_SOURCE),
                reference_comparison: comparisons.clone(),
            };
            let mut s = serde_json::to_string_pretty(&body).expect("table serializes");
            s.push('\n');
            s
        }
        TableFormat::Csv => {
            let mut s = String::from("dimA,dimB,samples_done,max_negative_count,histogram");
            if with_reference {
                s.push_str(",reference,status");
            }
            s.push('\n');
            for c in &table.cells {
                let _ = write!(s, "{},{},{},{},{}", c.dim_a, c.dim_b, c.samples_done, c.max_negative_count, histogram_text(&c.histogram));
                if with_reference {
                    match lookup(c.dim_a, c.dim_b) {
                        Some(cmp) => {
                            let status = serde_json::to_value(cmp.status).expect("status");
                            let _ = write!(s, ",{},{}", cmp.reference.map_or(String::new(), |r| r.to_string()), status.as_str().unwrap_or(""));
                        }
                        None => s.push_str(",,"),
                    }
                }
                s.push('\n');
            }
            s
        }
        TableFormat::Markdown => {
            let rows: BTreeSet<usize> = table.cells.iter().map(|c| c.dim_a).collect();
            let cols: BTreeSet<usize> = table.cells.iter().map(|c| c.dim_b).collect();
            let mut s = String::from("| M \\ N |");
            for n in &cols {
                let _ = write!(s, " {n} |");
            }
            s.push_str("\n|---|");
            for _ in &cols {
                s.push_str("---|");
            }
            s.push('\n');
            for &m in &rows {
                let _ = write!(s, "| {m} |");
                for &n in &cols {
                    let text = match (table.cell(m, n), lookup(m, n)) {
                        (Some(_), Some(cmp)) => overlay_cell(cmp),
                        (Some(c), None) if c.samples_done > 0 => c.max_negative_count.to_string(),
                        _ => String::new(),
                    };
                    let _ = write!(s, " {text} |");
                }
                s.push('\n');
            }
            if with_reference {
                let _ = writeln!(s, "\nReference: {REFERENCE_SOURCE}.");
            }
            s
        }
    }
}

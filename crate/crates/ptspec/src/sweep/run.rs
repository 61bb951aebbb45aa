use std::collections::{BTreeMap, HashSet};

use ptspec_core::analysis::{abs_pt_pt, count_negative};
use ptspec_core::ensembles::{EnsembleKind, SampleStream};
use ptspec_core::{BipartiteShape, DensityMatrix};
use rayon::prelude::*;

use super::checkpoint::{CheckpointHeader, CheckpointWriter, CounterexampleRef, SweepRecord};
use super::config::SweepConfig;
use super::table::SweepTable;
use crate::interchange::{write_counterexample, Provenance};
use crate::{Error, Result};

/// Samples computed between checkpoint flushes.
pub const CHUNK_SIZE: u64 = 10_000;
/// `|ρᵀ|ᵀ` eigenvalues below this count as violations.
pub const AUDENAERT_TOL: f64 = 1e-9;

/// Seed of the stream family for one cell. Sample `i` of the cell uses
/// stream `i` of this seed.
pub fn cell_seed(master_seed: u64, shape: BipartiteShape) -> u64 {
    SampleStream::derive_seed(master_seed, &[shape.dim_a() as u64, shape.dim_b() as u64])
}

/// The state behind a record, regenerated from its coordinates.
pub fn sample_state(ensemble: EnsembleKind, master_seed: u64, shape: BipartiteShape, index: u64) -> Result<DensityMatrix> {
    Ok(ensemble.sample(shape, &SampleStream::new(cell_seed(master_seed, shape), index))?)
}

pub fn compute_record(config: &SweepConfig, shape: BipartiteShape, index: u64) -> Result<SweepRecord> {
    let rho = sample_state(config.ensemble, config.master_seed, shape, index)?;
    let report = count_negative(&rho, config.tol)?;
    let audenaert_min_eig = if config.check_audenaert && shape == BipartiteShape::qubits() {
        Some(abs_pt_pt(&rho)?.1)
    } else {
        None
    };
    Ok(SweepRecord {
        dim_a: shape.dim_a(),
        dim_b: shape.dim_b(),
        sample_index: index,
        negative_count: report.negative_count,
        most_negative: report.most_negative,
        negativity: report.negativity,
        audenaert_min_eig,
    })
}

/// Built-in monitors. Returns `(kind, detail)` for the first one that fails.
pub fn check_record(r: &SweepRecord) -> Option<(&'static str, String)> {
    let shape = BipartiteShape::new(r.dim_a, r.dim_b).ok()?;
    let bound = ptspec_core::analysis::theorem1_bound(shape);
    if r.negative_count > bound {
        return Some(("theorem1_bound", format!("{} negative eigenvalues exceed the proven bound {bound}", r.negative_count)));
    }
    if shape.is_square() {
        let bound = ptspec_core::analysis::conjecture_bound(r.dim_a);
        if r.negative_count > bound {
            return Some((
                "conjecture_bound",
                format!("{} negative eigenvalues exceed the conjectured bound {bound}", r.negative_count),
            ));
        }
    }
    match r.audenaert_min_eig {
        Some(m) if m < -AUDENAERT_TOL => Some(("audenaert", format!("|ρᵀ|ᵀ has eigenvalue {m:e}"))),
        _ => None,
    }
}

type ExtraMonitor<'a> = &'a (dyn Fn(&SweepRecord) -> Option<String> + Sync);

/// Optional callbacks for [`run_sweep_with`].
#[derive(Default)]
pub struct SweepHooks<'a> {
    /// Called after every flushed chunk with the cell, samples done in this
    /// call, and samples pending in this call.
    pub progress: Option<&'a dyn Fn(BipartiteShape, u64, u64)>,
    /// Extra monitor run after the built-in ones; a `Some` is handled like a
    /// conjecture violation.
    pub extra_monitor: Option<ExtraMonitor<'a>>,
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepTable> {
    run_sweep_with(config, &SweepHooks::default())
}

/// Runs every `(cell, sample_index)` of `config` not already in its
/// checkpoint and returns the table over the whole checkpoint.
///
/// Records are appended in index order whatever the worker count, so equal
/// configurations produce byte-identical checkpoints.
pub fn run_sweep_with(config: &SweepConfig, hooks: &SweepHooks<'_>) -> Result<SweepTable> {
    config.validate()?;
    let identity = config.identity();
    let (mut writer, existing) = CheckpointWriter::open(&config.checkpoint_path, &CheckpointHeader::new(identity.clone()))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.resolve())
        .build()
        .map_err(|e| Error::Input(format!("cannot start worker pool: {e}")))?;

    let mut records: BTreeMap<(usize, usize, u64), SweepRecord> = BTreeMap::new();
    for r in existing.records {
        records.insert(r.key(), r);
    }
    let mut counterexamples = existing.counterexamples;

    let end = config.start_index + config.samples_per_cell;
    for shape in config.shapes() {
        let (a, b) = (shape.dim_a(), shape.dim_b());
        let done: HashSet<u64> = records.range((a, b, config.start_index)..(a, b, end)).map(|(k, _)| k.2).collect();
        let pending: Vec<u64> = (config.start_index..end).filter(|i| !done.contains(i)).collect();
        let total = pending.len() as u64;
        let mut finished = 0u64;

        for chunk in pending.chunks(CHUNK_SIZE as usize) {
            let results: Vec<Result<SweepRecord>> =
                pool.install(|| chunk.par_iter().map(|&i| compute_record(config, shape, i)).collect());

            let mut batch = Vec::with_capacity(chunk.len());
            let mut breach = None;
            for result in results {
                let r = result?;
                let failed = check_record(&r)
                    .map(|(kind, detail)| (kind.to_string(), detail))
                    .or_else(|| hooks.extra_monitor.and_then(|m| m(&r)).map(|d| ("monitor".to_string(), d)));
                batch.push(r);
                if let Some(f) = failed {
                    breach = Some(f);
                    break;
                }
            }
            writer.append_records(&batch)?;

            if let Some((kind, detail)) = breach {
                let r = batch.last().expect("breach has a record");
                let rho = sample_state(config.ensemble, config.master_seed, shape, r.sample_index)?;
                let path = write_counterexample(
                    &config.counterexample_dir(),
                    &rho,
                    Provenance {
                        kind: kind.clone(),
                        ensemble: config.ensemble,
                        master_seed: config.master_seed,
                        cell_seed: cell_seed(config.master_seed, shape),
                        sample_index: r.sample_index,
                        detail: detail.clone(),
                    },
                )?;
                writer.append_counterexample(&CounterexampleRef {
                    dim_a: a,
                    dim_b: b,
                    sample_index: r.sample_index,
                    reason: kind.clone(),
                    path: path.clone(),
                })?;
                writer.flush()?;
                return Err(Error::Breach {
                    message: format!("cell {shape}, sample {}: {detail} ({kind})", r.sample_index),
                    counterexample: Some(path),
                });
            }
            writer.flush()?;
            finished += batch.len() as u64;
            for r in batch {
                records.insert(r.key(), r);
            }
            if let Some(progress) = hooks.progress {
                progress(shape, finished, total);
            }
        }
    }
    counterexamples.dedup();
    Ok(SweepTable::from_records(Some(identity), records.values(), &counterexamples))
}

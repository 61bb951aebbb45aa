//! Seeded, parallel, resumable Monte Carlo sweeps.

mod audenaert;
mod checkpoint;
mod config;
mod reference;
mod run;
mod table;
mod witness;

pub use audenaert::{audenaert_scan, AudenaertSummary};
pub use checkpoint::{read_checkpoint, Checkpoint, CheckpointHeader, CheckpointWriter, CounterexampleRef, Line, SweepRecord};
pub use config::{default_seed, AutoTag, SweepConfig, SweepIdentity, Workers, CHECKPOINT_FORMAT, FALLBACK_SEED, SEED_ENV};
pub use reference::{reference_max_count, REFERENCE_SOURCE};
pub use run::{
    cell_seed, check_record, compute_record, run_sweep, run_sweep_with, sample_state, SweepHooks, AUDENAERT_TOL,
    CHUNK_SIZE,
};
pub use table::{
    compare_with_reference, emit_table, merge_checkpoints, CellAggregate, ReferenceComparison, ReferenceStatus,
    SweepTable, TableFormat,
};
pub use witness::{witness_validate, WitnessEntry, WitnessReport, WITNESS_TOL};

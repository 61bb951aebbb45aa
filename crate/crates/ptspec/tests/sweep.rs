use std::fs;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use ptspec::core::ensembles::EnsembleKind;
use ptspec::interchange::read_matrix_file;
use ptspec::sweep::{
    merge_checkpoints, read_checkpoint, run_sweep, run_sweep_with, sample_state, SweepConfig, SweepHooks, Workers,
};
use ptspec::Error;

fn config(dir: &Path, name: &str, dims: &[(usize, usize)], samples: u64, workers: usize) -> SweepConfig {
    SweepConfig {
        dims: dims.to_vec(),
        ensemble: EnsembleKind::HilbertSchmidt,
        samples_per_cell: samples,
        start_index: 0,
        master_seed: 7,
        tol: 1e-10,
        workers: Workers::Count(NonZeroUsize::new(workers).unwrap()),
        checkpoint_path: dir.join(name),
        check_audenaert: true,
        counterexample_dir: Some(dir.join("cx")),
    }
}

#[test]
fn checkpoints_are_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for workers in [1, 4, 16] {
        let c = config(dir.path(), &format!("w{workers}.jsonl"), &[(2, 2), (2, 3)], 12_000, workers);
        let table = run_sweep(&c).unwrap();
        assert_eq!(table.total_samples(), 24_000);
        outputs.push((fs::read(&c.checkpoint_path).unwrap(), table));
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    let table = &outputs[0].1;
    assert_eq!(table.cell(2, 2).unwrap().max_negative_count, 1);
    assert!(table.cell(2, 2).unwrap().audenaert_min_eig.unwrap() >= -1e-9);
    assert!(table.cell(2, 3).unwrap().audenaert_min_eig.is_none());
}

#[test]
fn resume_and_split_runs_match_the_uninterrupted_run() {
    let dir = tempfile::tempdir().unwrap();
    let full = config(dir.path(), "full.jsonl", &[(2, 2), (3, 3)], 10_000, 4);
    let full_table = run_sweep(&full).unwrap();
    let full_bytes = fs::read(&full.checkpoint_path).unwrap();

    // resume the same file with a larger sample count
    let mut resumed = config(dir.path(), "resumed.jsonl", &[(2, 2), (3, 3)], 5_000, 2);
    run_sweep(&resumed).unwrap();
    resumed.samples_per_cell = 10_000;
    let resumed_table = run_sweep(&resumed).unwrap();
    assert_eq!(resumed_table, full_table);

    // split into two index ranges in separate files, then merge
    let first = config(dir.path(), "first.jsonl", &[(2, 2), (3, 3)], 5_000, 3);
    let mut second = config(dir.path(), "second.jsonl", &[(2, 2), (3, 3)], 5_000, 1);
    second.start_index = 5_000;
    run_sweep(&first).unwrap();
    run_sweep(&second).unwrap();
    let merged = merge_checkpoints(&[first.checkpoint_path.clone(), second.checkpoint_path.clone()]).unwrap();
    assert_eq!(merged, full_table);

    // idempotent merge and rerun
    assert_eq!(merge_checkpoints(&[full.checkpoint_path.clone(), full.checkpoint_path.clone()]).unwrap(), full_table);
    assert_eq!(run_sweep(&full).unwrap(), full_table);
    assert_eq!(fs::read(&full.checkpoint_path).unwrap(), full_bytes);
}

#[test]
fn torn_checkpoint_resumes_to_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(dir.path(), "a.jsonl", &[(2, 3)], 300, 2);
    run_sweep(&c).unwrap();
    let bytes = fs::read(&c.checkpoint_path).unwrap();
    // cut in the middle of a record line
    let cut = bytes.len() * 2 / 3;
    fs::write(&c.checkpoint_path, &bytes[..cut]).unwrap();
    assert!(read_checkpoint(&c.checkpoint_path).unwrap().torn_tail);
    run_sweep(&c).unwrap();
    assert_eq!(fs::read(&c.checkpoint_path).unwrap(), bytes);
}

#[test]
fn merge_of_disjoint_cells_is_their_union() {
    let dir = tempfile::tempdir().unwrap();
    let a = config(dir.path(), "a.jsonl", &[(2, 2)], 200, 2);
    let b = config(dir.path(), "b.jsonl", &[(2, 3)], 200, 2);
    let ta = run_sweep(&a).unwrap();
    let tb = run_sweep(&b).unwrap();
    let merged = merge_checkpoints(&[a.checkpoint_path.clone(), b.checkpoint_path.clone()]).unwrap();
    assert_eq!(merged.cells.len(), 2);
    assert_eq!(merged.cell(2, 2), ta.cell(2, 2));
    assert_eq!(merged.cell(2, 3), tb.cell(2, 3));
}

#[test]
fn merge_rejects_other_configurations_and_conflicts() {
    let dir = tempfile::tempdir().unwrap();
    let a = config(dir.path(), "a.jsonl", &[(2, 2)], 50, 1);
    let mut b = config(dir.path(), "b.jsonl", &[(2, 2)], 50, 1);
    b.master_seed = 8;
    run_sweep(&a).unwrap();
    run_sweep(&b).unwrap();
    let paths = [a.checkpoint_path.clone(), b.checkpoint_path.clone()];
    assert!(matches!(merge_checkpoints(&paths), Err(Error::Merge(_))));

    // same header, tampered record
    let text = fs::read_to_string(&a.checkpoint_path).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    lines[1] = lines[1].replace("\"negative_count\":0", "\"negative_count\":9").replace("\"negative_count\":1", "\"negative_count\":9");
    let tampered = dir.path().join("t.jsonl");
    fs::write(&tampered, lines.join("\n") + "\n").unwrap();
    let err = merge_checkpoints(&[a.checkpoint_path.clone(), tampered]).unwrap_err();
    assert!(matches!(err, Error::Corruption { .. }), "{err}");
}

#[test]
fn resume_with_a_different_configuration_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = config(dir.path(), "a.jsonl", &[(2, 2)], 10, 1);
    run_sweep(&c).unwrap();
    c.tol = 1e-8;
    assert!(matches!(run_sweep(&c), Err(Error::Input(_))));
}

#[test]
fn monitor_breach_persists_the_state_and_aborts() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(dir.path(), "a.jsonl", &[(3, 3)], 100, 4);
    let flag = |r: &ptspec::sweep::SweepRecord| (r.sample_index == 37).then(|| "flagged for testing".to_string());
    let hooks = SweepHooks { extra_monitor: Some(&flag), ..SweepHooks::default() };
    let err = run_sweep_with(&c, &hooks).unwrap_err();
    assert_eq!(err.exit_code(), 1);
    let Error::Breach { counterexample: Some(path), .. } = err else { panic!("expected a breach") };

    // the persisted state is exactly the sample that tripped the monitor
    let file = read_matrix_file(&path).unwrap();
    let prov = file.provenance.clone().unwrap();
    assert_eq!(prov.sample_index, 37);
    let rho = file.to_density(&path).unwrap();
    let again = sample_state(EnsembleKind::HilbertSchmidt, 7, rho.shape(), 37).unwrap();
    assert_eq!(rho, again);

    // the checkpoint holds samples 0..=37 and a reference to the file
    let cp = read_checkpoint(&c.checkpoint_path).unwrap();
    assert_eq!(cp.records.len(), 38);
    assert_eq!(cp.counterexamples.len(), 1);
    assert_eq!(cp.counterexamples[0].path, path);
    let table = merge_checkpoints(std::slice::from_ref(&c.checkpoint_path)).unwrap();
    assert_eq!(table.cell(3, 3).unwrap().counterexample_refs, vec![PathBuf::from(&path)]);
}

#[test]
fn minimal_run_has_one_histogram_entry() {
    let dir = tempfile::tempdir().unwrap();
    let table = run_sweep(&config(dir.path(), "a.jsonl", &[(2, 2)], 1, 1)).unwrap();
    let cell = table.cell(2, 2).unwrap();
    assert_eq!(cell.samples_done, 1);
    assert_eq!(cell.histogram.values().sum::<u64>(), 1);
    assert_eq!(cell.histogram.len(), 1);
}

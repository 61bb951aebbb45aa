//! Exit status: 0 ok, 1 monitored bound breached (counterexample found),
//! 2 invalid input, 3 I/O failure, 4 parse failure, 5 numerical failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ptspec::core::analysis::{canonicalize_two_qubit, count_negative, theorem2_check, theorem3_analyze_with};
use ptspec::core::DEFAULT_NEGATIVE_TOL;
use ptspec::interchange::read_density;
use ptspec::report::Envelope;
use ptspec::sweep::{
    audenaert_scan, default_seed, emit_table, merge_checkpoints, run_sweep_with, witness_validate, SweepConfig,
    SweepHooks, TableFormat, Workers,
};
use ptspec::{Error, Result};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "ptspec", version, about = "Negative eigenvalues of partially transposed bipartite states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Partial-transpose spectrum and negative-eigenvalue census of a state file.
    Analyze {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_NEGATIVE_TOL)]
        tol: f64,
    },
    /// Run (or resume) a Monte Carlo sweep described by a JSON config.
    Sweep {
        config: PathBuf,
        /// Override the config's worker count.
        #[arg(long)]
        workers: Option<usize>,
        /// Override samples_per_cell.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value = "json")]
        format: TableFormat,
        #[arg(long)]
        paper_table: bool,
    },
    /// Merge checkpoints and print the table of maximum counts.
    Table {
        #[arg(required = true)]
        checkpoints: Vec<PathBuf>,
        #[arg(long, default_value = "markdown")]
        format: TableFormat,
        /// Overlay the published reference values.
        #[arg(long)]
        paper_table: bool,
    },
    /// Validate the maximally entangled witnesses for n = 2..=n_max.
    Witness {
        n_max: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check |ρᵀ|ᵀ ≥ 0 on random two-qubit states.
    Audenaert {
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        /// Defaults to $PTSPEC_SEED or a built-in constant.
        #[arg(long)]
        seed: Option<u64>,
        /// Where a counterexample would be written.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Canonical form and determinant conditions of a two-qubit state.
    Theorem2 {
        input: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Single-negative-eigenvalue analysis of a two-qubit state.
    Theorem3 {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_NEGATIVE_TOL)]
        tol: f64,
    },
}

fn print_json<T: Serialize>(tol: f64, report: T) {
    print!("{}", Envelope::new(tol, report).to_json());
}

fn analyze(input: &Path, tol: f64) -> Result<()> {
    let rho = read_density(input)?;
    let report = count_negative(&rho, tol)?;
    eprintln!(
        "{}: {} negative eigenvalue(s) of the partial transpose, negativity {:.6e}",
        report.shape, report.negative_count, report.negativity
    );
    let breach = if !report.within_theorem1_bound() {
        Some(format!("{} negative eigenvalues exceed the proven bound {}", report.negative_count, report.theorem1_bound))
    } else if !report.within_conjecture_bound() {
        Some(format!("{} negative eigenvalues exceed the conjectured bound {:?}", report.negative_count, report.conjecture_bound))
    } else {
        None
    };
    print_json(tol, &report);
    match breach {
        Some(message) => Err(Error::Breach { message, counterexample: None }),
        None => Ok(()),
    }
}

fn sweep(config: &Path, workers: Option<usize>, samples: Option<u64>, format: TableFormat, paper_table: bool) -> Result<()> {
    let mut config = SweepConfig::from_file(config)?;
    if let Some(w) = workers {
        config.workers = Workers::Count(w.try_into().map_err(|_| Error::Input("--workers must be at least 1".into()))?);
    }
    if let Some(s) = samples {
        config.samples_per_cell = s;
    }
    let progress = |shape, done: u64, total: u64| eprintln!("cell {shape}: {done}/{total}");
    let hooks = SweepHooks { progress: Some(&progress), ..SweepHooks::default() };
    let table = run_sweep_with(&config, &hooks)?;
    eprintln!("{} samples in {} cells; checkpoint {}", table.total_samples(), table.cells.len(), config.checkpoint_path.display());
    print!("{}", emit_table(&table, format, paper_table));
    Ok(())
}

fn table(checkpoints: &[PathBuf], format: TableFormat, paper_table: bool) -> Result<()> {
    let table = merge_checkpoints(checkpoints)?;
    print!("{}", emit_table(&table, format, paper_table));
    Ok(())
}

fn witness(n_max: usize, json: bool) -> Result<()> {
    let report = witness_validate(n_max)?;
    if json {
        print_json(report.tolerance, &report);
    } else {
        print!("{}", report.grid());
    }
    eprintln!("all {} witnesses saturate n(n-1)/2", report.entries.len());
    Ok(())
}

fn audenaert(samples: u64, seed: Option<u64>, out_dir: &Path) -> Result<()> {
    let summary = audenaert_scan(samples, seed.unwrap_or_else(default_seed), out_dir)?;
    eprintln!(
        "no violation: {} samples, smallest eigenvalue of |ρᵀ|ᵀ {:.3e} (sample {})",
        summary.samples, summary.min_eig, summary.argmin_index
    );
    print_json(summary.tolerance, &summary);
    Ok(())
}

fn theorem2(input: &Path, tol: f64) -> Result<()> {
    #[derive(Serialize)]
    struct Out<'a> {
        canonical_form: &'a ptspec::core::analysis::CanonicalForm2Q,
        conditions: ptspec::core::analysis::Theorem2Report,
    }
    let rho = read_density(input)?;
    let form = canonicalize_two_qubit(&rho)?;
    let conditions = theorem2_check(&form, tol)?;
    eprintln!(
        "applicable: {} (AB = 0: {}, Re α = Re β: {}); {} negative eigenvalue(s)",
        conditions.applicable, conditions.couplings_vanish, conditions.real_parts_equal, conditions.negative_count
    );
    print_json(tol, Out { canonical_form: &form, conditions });
    Ok(())
}

fn theorem3(input: &Path, tol: f64) -> Result<()> {
    let rho = read_density(input)?;
    let report = theorem3_analyze_with(&rho, tol)?;
    eprintln!(
        "applicable: {}; min eigenvalue of |ρᵀ|ᵀ {:.3e}; S positive: {}",
        report.applicable,
        report.abs_pt_pt_min_eig,
        report.s_psd.map_or("n/a".to_string(), |b| b.to_string())
    );
    print_json(tol, &report);
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze { input, tol } => analyze(&input, tol),
        Command::Sweep { config, workers, samples, format, paper_table } => sweep(&config, workers, samples, format, paper_table),
        Command::Table { checkpoints, format, paper_table } => table(&checkpoints, format, paper_table),
        Command::Witness { n_max, json } => witness(n_max, json),
        Command::Audenaert { samples, seed, out_dir } => audenaert(samples, seed, &out_dir),
        Command::Theorem2 { input, tol } => theorem2(&input, tol),
        Command::Theorem3 { input, tol } => theorem3(&input, tol),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 4 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::Breach { counterexample: Some(path), .. } = &e {
                eprintln!("counterexample: {}", path.display());
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

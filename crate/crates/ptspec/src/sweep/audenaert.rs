//! Monte Carlo check that `|ρᵀ|ᵀ ≥ 0` on random two-qubit states.

use std::path::Path;

use ptspec_core::analysis::abs_pt_pt;
use ptspec_core::ensembles::EnsembleKind;
use ptspec_core::BipartiteShape;
use rayon::prelude::*;
use serde::Serialize;

use super::run::{cell_seed, sample_state, AUDENAERT_TOL};
use crate::interchange::{write_counterexample, Provenance};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AudenaertSummary {
    pub ensemble: EnsembleKind,
    pub samples: u64,
    pub master_seed: u64,
    pub min_eig: f64,
    pub argmin_index: u64,
    pub tolerance: f64,
}

/// Draws `samples` Hilbert–Schmidt 2x2 states (the same streams as the 2x2
/// cell of a sweep with this seed) and returns the smallest eigenvalue of
/// `|ρᵀ|ᵀ`. A value below `−AUDENAERT_TOL` is persisted in
/// `counterexample_dir` and reported as a breach.
pub fn audenaert_scan(samples: u64, master_seed: u64, counterexample_dir: &Path) -> Result<AudenaertSummary> {
    if samples == 0 {
        return Err(Error::Input("samples must be at least 1".into()));
    }
    let ensemble = EnsembleKind::HilbertSchmidt;
    let shape = BipartiteShape::qubits();
    let (min_eig, argmin_index) = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<(f64, u64)> { Ok((abs_pt_pt(&sample_state(ensemble, master_seed, shape, i)?)?.1, i)) })
        .try_reduce(|| (f64::INFINITY, u64::MAX), |a, b| Ok(if (b.0, b.1) < (a.0, a.1) { b } else { a }))?;

    if min_eig < -AUDENAERT_TOL {
        let rho = sample_state(ensemble, master_seed, shape, argmin_index)?;
        let detail = format!("|ρᵀ|ᵀ has eigenvalue {min_eig:e}");
        let path = write_counterexample(
            counterexample_dir,
            &rho,
            Provenance {
                kind: "audenaert".into(),
                ensemble,
                master_seed,
                cell_seed: cell_seed(master_seed, shape),
                sample_index: argmin_index,
                detail: detail.clone(),
            },
        )?;
        return Err(Error::Breach { message: format!("sample {argmin_index}: {detail}"), counterexample: Some(path) });
    }
    Ok(AudenaertSummary { ensemble, samples, master_seed, min_eig, argmin_index, tolerance: AUDENAERT_TOL })
}

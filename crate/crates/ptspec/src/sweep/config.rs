use std::fs;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use ptspec_core::ensembles::EnsembleKind;
use ptspec_core::{BipartiteShape, DEFAULT_NEGATIVE_TOL};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{Error, Result};

/// Environment variable that overrides the default master seed.
pub const SEED_ENV: &str = "PTSPEC_SEED";
pub const FALLBACK_SEED: u64 = 20_030_101;

/// `PTSPEC_SEED` if set and parseable, else a fixed constant.
pub fn default_seed() -> u64 {
    std::env::var(SEED_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(FALLBACK_SEED)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Workers {
    Auto(AutoTag),
    Count(NonZeroUsize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AutoTag {
    Auto,
}

impl Default for Workers {
    fn default() -> Self {
        Workers::Auto(AutoTag::Auto)
    }
}

impl Workers {
    pub fn resolve(self) -> usize {
        match self {
            Workers::Count(n) => n.get(),
            Workers::Auto(_) => std::thread::available_parallelism().map_or(1, NonZeroUsize::get),
        }
    }
}

fn default_tol() -> f64 {
    DEFAULT_NEGATIVE_TOL
}

fn default_ensemble() -> EnsembleKind {
    EnsembleKind::HilbertSchmidt
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// `(dimA, dimB)` cells, processed in this order.
    pub dims: Vec<(usize, usize)>,
    #[serde(default = "default_ensemble")]
    pub ensemble: EnsembleKind,
    pub samples_per_cell: u64,
    /// First sample index of every cell; lets a run be split into ranges.
    #[serde(default)]
    pub start_index: u64,
    #[serde(default = "default_seed")]
    pub master_seed: u64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub workers: Workers,
    pub checkpoint_path: PathBuf,
    /// Also track the smallest eigenvalue of `|ρᵀ|ᵀ` on 2x2 cells.
    #[serde(default)]
    pub check_audenaert: bool,
    /// Where counterexample states go; defaults to the checkpoint's directory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample_dir: Option<PathBuf>,
}

/// The part of a configuration that determines record contents. Two
/// checkpoints can be merged exactly when these agree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepIdentity {
    pub format: u32,
    pub ensemble: EnsembleKind,
    pub master_seed: u64,
    pub tol: f64,
    pub check_audenaert: bool,
}

pub const CHECKPOINT_FORMAT: u32 = 1;

impl SweepIdentity {
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("identity serializes");
        hex::encode(Sha256::digest(&canonical))
    }
}

impl SweepConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let config: Self = serde_json::from_str(&text).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples_per_cell == 0 {
            return Err(Error::Input("samples_per_cell must be at least 1".into()));
        }
        if self.dims.is_empty() {
            return Err(Error::Input("dims is empty".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Input(format!("tol must be positive and finite, got {}", self.tol)));
        }
        if self.start_index.checked_add(self.samples_per_cell).is_none() {
            return Err(Error::Input("start_index + samples_per_cell overflows".into()));
        }
        for &(a, b) in &self.dims {
            let shape = BipartiteShape::new(a, b).map_err(|e| Error::Input(e.to_string()))?;
            self.ensemble.validate(shape).map_err(|e| Error::Input(e.to_string()))?;
        }
        Ok(())
    }

    pub fn shapes(&self) -> Vec<BipartiteShape> {
        self.dims.iter().map(|&(a, b)| BipartiteShape::new(a, b).expect("validated")).collect()
    }

    pub fn identity(&self) -> SweepIdentity {
        SweepIdentity {
            format: CHECKPOINT_FORMAT,
            ensemble: self.ensemble,
            master_seed: self.master_seed,
            tol: self.tol,
            check_audenaert: self.check_audenaert,
        }
    }

    pub fn counterexample_dir(&self) -> PathBuf {
        self.counterexample_dir.clone().unwrap_or_else(|| match self.checkpoint_path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
            _ => PathBuf::from("."),
        })
    }
}

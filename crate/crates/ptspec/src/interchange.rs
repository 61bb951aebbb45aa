//! Matrix interchange files.
//!
//! ```json
//! {"dim": 4, "re": [..16 row-major..], "im": [..16..], "dimA": 2, "dimB": 2}
//! ```
//!
//! `dimA`/`dimB` are optional for plain matrices. Counterexample files carry
//! the producing seed and sample index as extra fields.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use ptspec_core::ensembles::EnsembleKind;
use ptspec_core::{BipartiteShape, DensityMatrix, HermitianMatrix};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    #[serde(rename = "dimA", default, skip_serializing_if = "Option::is_none")]
    pub dim_a: Option<usize>,
    #[serde(rename = "dimB", default, skip_serializing_if = "Option::is_none")]
    pub dim_b: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

/// Where a counterexample state came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    /// What it violates, for example `conjecture_bound`.
    pub kind: String,
    pub ensemble: EnsembleKind,
    pub master_seed: u64,
    /// Seed of the stream family the sample was drawn from.
    pub cell_seed: u64,
    pub sample_index: u64,
    pub detail: String,
}

impl MatrixFile {
    pub fn from_matrix(h: &HermitianMatrix, shape: Option<BipartiteShape>) -> Self {
        Self {
            dim: h.dim(),
            re: h.real_parts(),
            im: h.imag_parts(),
            dim_a: shape.map(|s| s.dim_a()),
            dim_b: shape.map(|s| s.dim_b()),
            provenance: None,
        }
    }

    pub fn from_density(rho: &DensityMatrix) -> Self {
        Self::from_matrix(rho.matrix(), Some(rho.shape()))
    }

    fn field_error(path: &Path, message: String) -> Error {
        Error::Parse { path: path.to_path_buf(), line: 0, column: 0, message }
    }

    /// Hermitian matrix without any state checks; `path` is used in messages.
    pub fn to_hermitian(&self, path: &Path) -> Result<HermitianMatrix> {
        let n2 = self.dim * self.dim;
        for (name, v) in [("re", &self.re), ("im", &self.im)] {
            if v.len() != n2 {
                return Err(Self::field_error(
                    path,
                    format!("field `{name}`: expected {n2} entries for dim {}, found {}", self.dim, v.len()),
                ));
            }
            if let Some(i) = v.iter().position(|x| !x.is_finite()) {
                return Err(Self::field_error(path, format!("field `{name}`: entry {i} is not finite")));
            }
        }
        Ok(HermitianMatrix::from_parts(self.dim, &self.re, &self.im)?)
    }

    /// Shape from `dimA`/`dimB`, or a square split of `dim` when both are absent.
    pub fn shape(&self) -> Result<BipartiteShape> {
        let shape = match (self.dim_a, self.dim_b) {
            (Some(a), Some(b)) => BipartiteShape::new(a, b)?,
            (None, None) => {
                let n = (self.dim as f64).sqrt().round() as usize;
                if n * n != self.dim {
                    return Err(Error::Input(format!("dim {} is not a square; give dimA and dimB", self.dim)));
                }
                BipartiteShape::square(n)?
            }
            _ => return Err(Error::Input("dimA and dimB must be given together".into())),
        };
        if shape.dim() != self.dim {
            return Err(Error::Input(format!("dimA x dimB = {} does not match dim {}", shape.dim(), self.dim)));
        }
        Ok(shape)
    }

    /// Validated density matrix; invariant violations name the invariant and
    /// its margin.
    pub fn to_density(&self, path: &Path) -> Result<DensityMatrix> {
        let h = self.to_hermitian(path)?;
        let asymmetry = hermiticity_defect(self);
        if asymmetry > 1e-10 {
            return Err(Error::Input(format!("matrix is not Hermitian: largest |M - M†| entry {asymmetry:e}")));
        }
        Ok(DensityMatrix::new(h, self.shape()?)?)
    }
}

fn hermiticity_defect(f: &MatrixFile) -> f64 {
    let n = f.dim;
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (i * n + j, j * n + i);
            worst = worst.max((f.re[a] - f.re[b]).abs()).max((f.im[a] + f.im[b]).abs());
        }
    }
    worst
}

pub fn read_matrix_file(path: &Path) -> Result<MatrixFile> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn read_density(path: &Path) -> Result<DensityMatrix> {
    read_matrix_file(path)?.to_density(path)
}

/// Writes via a temporary sibling and a rename so readers never see half a file.
pub fn write_json_atomic<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
    serde_json::to_writer_pretty(&mut f, value).map_err(|e| Error::io(&tmp, e.into()))?;
    f.write_all(b"\n").and_then(|_| f.sync_all()).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

/// Persists a counterexample state in `dir` and returns its path.
pub fn write_counterexample(dir: &Path, rho: &DensityMatrix, provenance: Provenance) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let shape = rho.shape();
    let name = format!(
        "counterexample-{}-{}x{}-{:016x}-{}.json",
        provenance.kind,
        shape.dim_a(),
        shape.dim_b(),
        provenance.cell_seed,
        provenance.sample_index
    );
    let path = dir.join(name);
    let mut file = MatrixFile::from_density(rho);
    file.provenance = Some(provenance);
    write_json_atomic(&path, &file)?;
    Ok(path)
}

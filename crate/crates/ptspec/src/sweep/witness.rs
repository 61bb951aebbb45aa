use ptspec_core::analysis::{conjecture_bound, count_negative};
use ptspec_core::ensembles::maximally_entangled;
use serde::Serialize;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessEntry {
    pub n: usize,
    pub negative_count: usize,
    pub expected: usize,
    /// Largest distance of a partial-transpose eigenvalue from `±1/n`.
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub entries: Vec<WitnessEntry>,
    pub tolerance: f64,
}

pub const WITNESS_TOL: f64 = 1e-10;

/// Checks that the maximally entangled state of each `n = 2..=n_max` has
/// exactly `n(n−1)/2` negative partial-transpose eigenvalues, all `−1/n`.
pub fn witness_validate(n_max: usize) -> Result<WitnessReport> {
    if n_max < 2 {
        return Err(Error::Input(format!("n_max must be at least 2, got {n_max}")));
    }
    let mut entries = Vec::new();
    for n in 2..=n_max {
        let report = count_negative(&maximally_entangled(n)?, WITNESS_TOL)?;
        let expected = conjecture_bound(n);
        let inv = 1.0 / n as f64;
        let max_deviation = report
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(i, l)| (l - if i < expected { -inv } else { inv }).abs())
            .fold(0.0, f64::max);
        if report.negative_count != expected || max_deviation > WITNESS_TOL {
            return Err(Error::Core(ptspec_core::Error::Breach(format!(
                "maximally entangled state n = {n}: {} negative eigenvalues (expected {expected}), deviation {max_deviation:e}",
                report.negative_count
            ))));
        }
        entries.push(WitnessEntry { n, negative_count: report.negative_count, expected, max_deviation });
    }
    Ok(WitnessReport { entries, tolerance: WITNESS_TOL })
}

impl WitnessReport {
    /// Two aligned rows, `n` and the count.
    pub fn grid(&self) -> String {
        let width = self.entries.iter().map(|e| e.negative_count.to_string().len()).max().unwrap_or(1).max(2);
        let mut n_row = String::from("n     ");
        let mut c_row = String::from("count ");
        for e in &self.entries {
            n_row.push_str(&format!(" {:>width$}", e.n));
            c_row.push_str(&format!(" {:>width$}", e.negative_count));
        }
        format!("{n_row}\n{c_row}\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_up_to_six() {
        let r = witness_validate(6).unwrap();
        let counts: Vec<usize> = r.entries.iter().map(|e| e.negative_count).collect();
        assert_eq!(counts, [1, 3, 6, 10, 15]);
        assert!(r.grid().lines().nth(1).unwrap().ends_with("15"));
        assert!(witness_validate(1).is_err());
    }
}

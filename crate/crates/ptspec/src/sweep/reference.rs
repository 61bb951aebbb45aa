//! Reference values for the largest observed number of negative eigenvalues
//! of `ρᵀ` on `M × N` states, `2 ≤ M ≤ N ≤ 10`.

/// Where [`reference_max_count`] comes from.
pub const REFERENCE_SOURCE: &str = "published Monte Carlo census of random states, 10^6 samples per cell";

/// Rows `M = 2..=10`, columns `N = M..=10`.
const ROWS: [&[usize]; 9] = [
    &[1, 2, 3, 3, 3, 4, 4, 4, 5],
    &[3, 4, 4, 5, 5, 6, 6, 7],
    &[6, 6, 7, 8, 8, 8, 9],
    &[10, 10, 10, 11, 11, 11],
    &[15, 15, 15, 15, 16],
    &[21, 21, 21, 21],
    &[28, 28, 28],
    &[36, 36],
    &[45],
];

/// Published maximum for `(dimA, dimB)`; symmetric in its arguments.
pub fn reference_max_count(dim_a: usize, dim_b: usize) -> Option<usize> {
    let (m, n) = (dim_a.min(dim_b), dim_a.max(dim_b));
    if !(2..=10).contains(&m) || n > 10 {
        return None;
    }
    ROWS[m - 2].get(n - m).copied()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        assert_eq!(reference_max_count(2, 2), Some(1));
        assert_eq!(reference_max_count(2, 7), Some(4));
        assert_eq!(reference_max_count(7, 2), Some(4));
        assert_eq!(reference_max_count(3, 6), Some(5));
        assert_eq!(reference_max_count(6, 10), Some(16));
        assert_eq!(reference_max_count(10, 10), Some(45));
        assert_eq!(reference_max_count(1, 4), None);
        assert_eq!(reference_max_count(2, 11), None);
    }

    #[test]
    fn diagonal_saturates_the_square_bound() {
        for n in 2..=10 {
            assert_eq!(reference_max_count(n, n), Some(n * (n - 1) / 2));
        }
    }
}

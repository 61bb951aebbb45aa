//! Negative-eigenvalue census and the two-qubit structure results.

mod canonical;
mod census;
mod theorem2;
mod theorem3;

pub use canonical::{canonicalize_two_qubit, CanonicalForm2Q, DEGENERACY_TOL};
pub use census::{
    abs_pt_pt, conjecture_bound, count_negative, negativity, report_from_eigenvalues, theorem1_bound,
    NegativeSpectrumReport,
};
pub use theorem2::{first_gap_closed, second_gap_closed, theorem2_check, Theorem2Report, FIRST_BLOCK, SECOND_BLOCK};
pub use theorem3::{
    corner_bump_determinant_gap, e1_bound, e2_bound, max_schmidt_ratio, s_matrix, s_matrix_dets, theorem3_analyze,
    theorem3_analyze_with, ParameterConstraints, Theorem3Report, ANNIHILATION_TOL, GUARANTEE_TOL, PRODUCT_TOL,
    RATIO_TOL, SIMPLE_GAP,
};

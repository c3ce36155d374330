//! Floating-point layer for real accretive matrices (`(A + A^T)/2 >= 0`).
//!
//! Provides a Jacobi eigensolver and PSD utilities, the factorization
//! `A = H^{1/2} (I + S) H^{1/2}`, checks of determinant positivity and
//! adjugate accretivity, the minor inequality
//! `sqrt(det A_{n-1}(1,1) det A_{n-1}(2,2)) >= |(det A_{n-1}(1,2) + det A_{n-1}(2,1)) / 2|`,
//! and a complex diagnostic showing the transpose-based inequality fails for
//! `(A + A^*)/2 >= 0`.

mod accretive;
mod complex;
mod eigen;

pub use accretive::{
    accretive_factorize, inverse, skew_part, symmetric_part, verify_accretive_inequality,
    verify_adjugate_accretive, verify_det_positive, AccretiveFactorization, AccretiveWitness,
    ADJUGATE_PSD_TOL, DET_TOL, FACTOR_TOL, INEQUALITY_TOL,
};
pub use complex::{
    complex_witness, hermitian_eigenvalues, remark45_matrix, remark45_repro,
    search_complex_violation, search_complex_violation_from, SEARCH_THRESHOLD,
};
pub use eigen::{
    frobenius, max_abs, max_abs_diff, psd_check, sqrt_psd, sym_eig, EigenResult, MAX_SWEEPS,
    PSD_TOL,
};

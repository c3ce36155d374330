use num_complex::Complex64;
use serde_json::{json, Value};

use super::eigen::{max_abs, max_abs_diff, psd_from_eig, sym_eig, EigenResult, PSD_TOL};
use crate::detkit::{adjugate, corner_minors, det_bareiss};
use crate::error::{Error, Result};
use crate::matrix::json::AnyMatrix;
use crate::matrix::Matrix;
use crate::report::{CertificateReport, Status};

/// Residual bound (relative) for the factorization checks.
pub const FACTOR_TOL: f64 = 1e-8;
/// `det A >= -DET_TOL * max(1, ||A||_max)^n` on the accretive cone.
pub const DET_TOL: f64 = 1e-9;
/// Relative bound of the determinant product formula for strict inputs.
pub const DET_PRODUCT_TOL: f64 = 1e-6;
pub const ADJUGATE_PSD_TOL: f64 = 1e-8;
/// `margin >= -INEQUALITY_TOL * max(1, lhs + rhs)`.
pub const INEQUALITY_TOL: f64 = 1e-8;
const COFACTOR_TOL: f64 = 1e-9;

pub fn symmetric_part(a: &Matrix<f64>) -> Matrix<f64> {
    Matrix::from_fn(a.rows(), a.cols(), |i, j| 0.5 * (a[(i, j)] + a[(j, i)]))
}

pub fn skew_part(a: &Matrix<f64>) -> Matrix<f64> {
    Matrix::from_fn(a.rows(), a.cols(), |i, j| 0.5 * (a[(i, j)] - a[(j, i)]))
}

/// Gauss-Jordan inverse with partial pivoting.
pub fn inverse(a: &Matrix<f64>) -> Result<Matrix<f64>> {
    let n = a.order()?;
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            row
        })
        .collect();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[i][k].abs().total_cmp(&m[j][k].abs()))
            .expect("non-empty range");
        if m[p][k] == 0.0 {
            return Err(Error::Numeric("matrix is singular".into()));
        }
        m.swap(p, k);
        let piv = m[k][k];
        m[k].iter_mut().for_each(|x| *x /= piv);
        let pivot_row = m[k].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != k && row[k] != 0.0 {
                let f = row[k];
                row.iter_mut().zip(&pivot_row).for_each(|(x, p)| *x -= f * p);
            }
        }
    }
    Ok(Matrix::from_fn(n, n, |i, j| m[i][n + j]))
}

fn require_accretive(a: &Matrix<f64>) -> Result<EigenResult> {
    a.order()?;
    let e = sym_eig(&symmetric_part(a))?;
    if !psd_from_eig(&e, PSD_TOL) {
        return Err(Error::usage(format!(
            "matrix is not accretive: symmetric part has λ_min = {:.3e}",
            e.min()
        )));
    }
    Ok(e)
}

fn is_strict(e: &EigenResult) -> bool {
    e.min() > 0.0 && e.min() > PSD_TOL * e.max()
}

#[derive(Clone, Debug)]
pub struct AccretiveFactorization {
    pub h_sqrt: Matrix<f64>,
    pub s: Matrix<f64>,
    pub report: CertificateReport,
}

/// `A = H^{1/2} (I + S) H^{1/2}` with `H = (A + A^T)/2` strictly positive
/// definite and `S = H^{-1/2} N H^{-1/2}` skew. The report also covers the
/// symmetric part of `(I + S)^{-1}`, which must equal `(I - S^2)^{-1}`.
pub fn accretive_factorize(a: &Matrix<f64>) -> Result<AccretiveFactorization> {
    let n = a.order()?;
    let h = symmetric_part(a);
    let e = sym_eig(&h)?;
    if !is_strict(&e) {
        return Err(Error::usage(format!(
            "symmetric part is not positive definite (λ_min = {:.3e}, λ_max = {:.3e})",
            e.min(),
            e.max()
        )));
    }
    let h_sqrt = e.apply(f64::sqrt);
    let h_isqrt = e.apply(|x| 1.0 / x.sqrt());
    let s = h_isqrt.matmul(&skew_part(a))?.matmul(&h_isqrt)?;
    let id = Matrix::identity(n);

    let skew_residual = max_abs_diff(&s.transpose(), &s.neg());
    let rebuilt = h_sqrt.matmul(&id.add(&s)?)?.matmul(&h_sqrt)?;
    let rebuild_residual = max_abs_diff(&rebuilt, a) / max_abs(a).max(1.0);
    let inv = inverse(&id.add(&s)?)?;
    let expected = inverse(&id.sub(&s.matmul(&s)?)?)?;
    let inverse_residual = max_abs_diff(&symmetric_part(&inv), &expected) / max_abs(&expected).max(1.0);

    let mut report = CertificateReport::numeric(
        format!("accretive_factorization_n{n}"),
        rebuild_residual.max(inverse_residual),
        FACTOR_TOL,
        1.0,
        json!({
            "n": n,
            "skew_residual": skew_residual,
            "reconstruction_residual": rebuild_residual,
            "inverse_identity_residual": inverse_residual,
        }),
    );
    if skew_residual > 1e-9 {
        report.status = Status::Refuted;
    }
    Ok(AccretiveFactorization { h_sqrt, s, report })
}

/// `det A >= 0` on the accretive cone, `det A > 0` when strictly accretive.
/// For strict inputs also `det A = det H * det(I + S)` with
/// `det(I + S) = prod_k (1 + μ_k^2)` over the eigenvalue pairs `±iμ_k` of
/// `S`; the product is evaluated as `sqrt(det(I - S^2))`.
pub fn verify_det_positive(a: &Matrix<f64>) -> Result<CertificateReport> {
    let e = require_accretive(a)?;
    let n = a.rows();
    let det = det_bareiss(a)?;
    if is_strict(&e) {
        let f = accretive_factorize(a)?;
        let minus_s2 = f.s.matmul(&f.s)?.neg();
        let mu2 = sym_eig(&symmetric_part(&minus_s2))?;
        let det_h: f64 = e.values.iter().product();
        let det_i_plus_s = mu2.values.iter().map(|&x| 1.0 + x.max(0.0)).product::<f64>().sqrt();
        let predicted = det_h * det_i_plus_s;
        let rel = (det - predicted).abs() / predicted.abs().max(f64::MIN_POSITIVE);
        let mut r = CertificateReport::numeric(
            format!("det_positive_strict_n{n}"),
            rel,
            DET_PRODUCT_TOL,
            1.0,
            json!({ "det": det, "det_h": det_h, "det_i_plus_s": det_i_plus_s, "strict": true }),
        );
        if !(det > 0.0) {
            r.status = Status::Refuted;
        }
        Ok(r)
    } else {
        let scale = max_abs(a).max(1.0).powi(n as i32);
        Ok(CertificateReport::numeric(
            format!("det_nonnegative_n{n}"),
            (-det).max(0.0),
            DET_TOL,
            scale,
            json!({ "det": det, "strict": false }),
        ))
    }
}

/// The symmetric part of `adj(A)` is PSD whenever `A` is accretive.
pub fn verify_adjugate_accretive(a: &Matrix<f64>) -> Result<CertificateReport> {
    require_accretive(a)?;
    let n = a.rows();
    let adj = adjugate(a)?;
    let e = sym_eig(&symmetric_part(&adj))?;
    let scale = e.max().max(1.0);
    Ok(CertificateReport::numeric(
        format!("adjugate_accretive_n{n}"),
        (-e.min()).max(0.0),
        ADJUGATE_PSD_TOL,
        scale,
        json!({ "lambda_min": e.min(), "lambda_max": e.max() }),
    ))
}

/// The four corner minors of a real or complex matrix and the two sides of
/// the minor inequality.
#[derive(Clone, Debug, PartialEq)]
pub struct AccretiveWitness {
    pub matrix: AnyMatrix,
    /// `det A_{n-1}(1,1), (2,2), (1,2), (2,1)`.
    pub minors: [Complex64; 4],
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    /// `max(1, lhs + rhs)`.
    pub scale: f64,
    /// Magnitude of a negative `det11 * det22` clamped to 0 before the root.
    pub clamped: f64,
    /// Extreme eigenvalues of `(A + A^T)/2` (real) or `(A + A^*)/2` (complex).
    pub sym_part_min_eig: f64,
    pub sym_part_max_eig: f64,
    /// Largest relative mismatch between corner entries of `adj A` and the
    /// contiguous minors (real inputs only).
    pub cofactor_residual: Option<f64>,
}

impl AccretiveWitness {
    pub fn holds(&self, tol: f64) -> bool {
        self.margin >= -tol * self.scale
    }

    pub fn to_json(&self) -> Value {
        let complex = matches!(self.matrix, AnyMatrix::Complex(_));
        let minors: Vec<Value> = self
            .minors
            .iter()
            .map(|z| if complex { json!([z.re, z.im]) } else { json!(z.re) })
            .collect();
        json!({
            "matrix": self.matrix.to_json(),
            "minors": minors,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "scale": self.scale,
            "clamped": self.clamped,
            "sym_part_min_eig": self.sym_part_min_eig,
            "sym_part_max_eig": self.sym_part_max_eig,
            "cofactor_residual": self.cofactor_residual,
        })
    }

    pub fn to_report(&self, claim: impl Into<String>, tol: f64) -> CertificateReport {
        let mut instance = self.to_json();
        instance.as_object_mut().expect("object").remove("matrix");
        let mut r = CertificateReport::numeric(claim, (-self.margin).max(0.0), tol, self.scale, instance);
        if let Some(c) = self.cofactor_residual {
            if !(c <= COFACTOR_TOL) {
                r.status = Status::Refuted;
            }
        }
        r
    }
}

/// Both sides of the minor inequality for a real accretive `A`, plus the
/// identifications `(adj A)_{11} = det A_{n-1}(2,2)`,
/// `(adj A)_{nn} = det A_{n-1}(1,1)` and
/// `(adj A)_{1n}, (adj A)_{n1} = (-1)^{1+n} det A_{n-1}(1,2), det A_{n-1}(2,1)`.
pub fn verify_accretive_inequality(a: &Matrix<f64>) -> Result<AccretiveWitness> {
    let e = require_accretive(a)?;
    let n = a.rows();
    if n < 2 {
        return Err(Error::usage("minor inequality needs n >= 2"));
    }
    let [m11, m22, m12, m21] = corner_minors(a)?;
    let product = m11 * m22;
    let lhs = product.max(0.0).sqrt();
    let rhs = ((m12 + m21) / 2.0).abs();

    let adj = adjugate(a)?;
    let sign = if (1 + n).is_multiple_of(2) { 1.0 } else { -1.0 };
    let rel = |x: f64, y: f64| (x - y).abs() / y.abs().max(1.0);
    let cofactor_residual = [
        rel(adj[(0, 0)], m22),
        rel(adj[(n - 1, n - 1)], m11),
        rel(adj[(0, n - 1)], sign * m12),
        rel(adj[(n - 1, 0)], sign * m21),
    ]
    .into_iter()
    .fold(0.0, f64::max);

    Ok(AccretiveWitness {
        matrix: AnyMatrix::Real(a.clone()),
        minors: [m11, m22, m12, m21].map(|x| Complex64::new(x, 0.0)),
        lhs,
        rhs,
        margin: lhs - rhs,
        scale: (lhs + rhs).max(1.0),
        clamped: (-product).max(0.0),
        sym_part_min_eig: e.min(),
        sym_part_max_eig: e.max(),
        cofactor_residual: Some(cofactor_residual),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    fn m(rows: Vec<Vec<f64>>) -> Matrix<f64> {
        Matrix::from_rows(rows).unwrap()
    }

    fn i_plus_s0() -> Matrix<f64> {
        m(vec![vec![1.0, 1.0], vec![-1.0, 1.0]])
    }

    #[test]
    fn factorize_identity_plus_skew() {
        let f = accretive_factorize(&i_plus_s0()).unwrap();
        assert!(max_abs_diff(&f.h_sqrt, &Matrix::identity(2)) < 1e-15);
        assert!(max_abs_diff(&f.s, &m(vec![vec![0.0, 1.0], vec![-1.0, 0.0]])) < 1e-15);
        assert!(f.report.is_verified());
    }

    #[test]
    fn factorize_rejects_singular_symmetric_part() {
        let a = m(vec![vec![1.0, 5.0], vec![-3.0, 1.0]]);
        assert!(matches!(accretive_factorize(&a), Err(Error::Usage(_))));
    }

    #[test]
    fn factorize_random_strict() {
        let mut rng = sample::claim_rng(31, 0);
        for _ in 0..20 {
            let g = sample::normal_matrix(&mut rng, 6, 6);
            let h = g.transpose().matmul(&g).unwrap().add(&Matrix::identity(6)).unwrap();
            let a = h.add(&sample::real_skew(&mut rng, 6)).unwrap();
            let f = accretive_factorize(&a).unwrap();
            assert!(f.report.is_verified(), "{:?}", f.report);
        }
    }

    #[test]
    fn det_positive_examples() {
        let r = verify_det_positive(&i_plus_s0()).unwrap();
        assert!(r.is_verified());
        assert!((r.instance["det"].as_f64().unwrap() - 2.0).abs() < 1e-14);
        assert!((r.instance["det_i_plus_s"].as_f64().unwrap() - 2.0).abs() < 1e-14);
        assert!(verify_det_positive(&Matrix::identity(3)).unwrap().is_verified());
        let not = m(vec![vec![-1.0, 0.0], vec![0.0, 1.0]]);
        assert!(matches!(verify_det_positive(&not), Err(Error::Usage(_))));
    }

    #[test]
    fn det_positive_random() {
        let mut rng = sample::claim_rng(32, 0);
        for k in 0..50 {
            let a = sample::accretive(&mut rng, 6, if k % 5 == 0 { 3 } else { 6 });
            let r = verify_det_positive(&a).unwrap();
            assert!(r.is_verified(), "{r:?}");
        }
    }

    #[test]
    fn adjugate_examples() {
        assert!(verify_adjugate_accretive(&Matrix::identity(3)).unwrap().is_verified());
        let j2 = Matrix::ones(2);
        let adj = adjugate(&j2).unwrap();
        assert_eq!(adj, m(vec![vec![1.0, -1.0], vec![-1.0, 1.0]]));
        assert!(verify_adjugate_accretive(&j2).unwrap().is_verified());
    }

    #[test]
    fn adjugate_random_mixed() {
        let mut rng = sample::claim_rng(33, 0);
        for k in 0..100 {
            let a = sample::accretive(&mut rng, 5, 1 + k % 5);
            assert!(verify_adjugate_accretive(&a).unwrap().is_verified());
        }
    }

    #[test]
    fn inequality_examples() {
        let w = verify_accretive_inequality(&m(vec![vec![1.0, 2.0], vec![0.0, 1.0]])).unwrap();
        assert_eq!(w.minors.map(|z| z.re), [1.0, 1.0, 2.0, 0.0]);
        assert_eq!((w.lhs, w.rhs, w.margin), (1.0, 1.0, 0.0));
        let w = verify_accretive_inequality(&Matrix::identity(3)).unwrap();
        assert_eq!((w.lhs, w.rhs, w.margin), (1.0, 0.0, 1.0));
        assert_eq!(w.cofactor_residual, Some(0.0));
    }

    #[test]
    fn inequality_random() {
        let mut rng = sample::claim_rng(34, 0);
        for k in 0..200 {
            let n = 4 + k % 5;
            let rank = if k % 3 == 0 { n / 2 } else { n };
            let a = sample::accretive(&mut rng, n, rank);
            let w = verify_accretive_inequality(&a).unwrap();
            assert!(w.holds(INEQUALITY_TOL), "k={k} margin={}", w.margin);
            assert!(w.to_report("x", INEQUALITY_TOL).is_verified());
        }
    }

    #[test]
    fn rank_one_symmetric_part_gives_equality() {
        let mut rng = sample::claim_rng(35, 0);
        for n in 2..=8 {
            let w: Vec<f64> = (0..n).map(|_| sample::normal(&mut rng)).collect();
            let alpha = sample::uniform(&mut rng, 0.1, 3.0);
            let a = sample::real_skew(&mut rng, n)
                .add(&Matrix::from_fn(n, n, |i, j| 0.5 * alpha * w[i] * w[j]))
                .unwrap();
            let wit = verify_accretive_inequality(&a).unwrap();
            assert!(wit.margin.abs() <= 1e-8 * wit.scale, "n={n} margin={}", wit.margin);
        }
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = sample::claim_rng(36, 0);
        let a = sample::normal_matrix(&mut rng, 5, 5);
        let inv = inverse(&a).unwrap();
        assert!(max_abs_diff(&a.matmul(&inv).unwrap(), &Matrix::identity(5)) < 1e-10);
        assert!(inverse(&Matrix::<f64>::ones(3)).is_err());
    }
}

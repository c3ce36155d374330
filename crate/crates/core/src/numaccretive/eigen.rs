//! Cyclic Jacobi eigensolver for real symmetric matrices.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub const MAX_SWEEPS: usize = 100;
/// Stop when off-diagonal Frobenius mass falls below this fraction of `||H||_F`.
pub const OFF_DIAGONAL_TOL: f64 = 1e-14;
/// Allowed asymmetry relative to `||H||_max` before the input is rejected.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Default relative tolerance of [`psd_check`].
pub const PSD_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct EigenResult {
    /// Ascending.
    pub values: Vec<f64>,
    /// Orthogonal; column `k` belongs to `values[k]`.
    pub vectors: Matrix<f64>,
}

impl EigenResult {
    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// `Q f(Λ) Q^T`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> Matrix<f64> {
        let n = self.values.len();
        let q = &self.vectors;
        let fv: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        Matrix::from_fn(n, n, |i, j| (0..n).map(|k| q[(i, k)] * fv[k] * q[(j, k)]).sum())
    }

    pub fn reconstruct(&self) -> Matrix<f64> {
        self.apply(|x| x)
    }
}

pub fn frobenius(m: &Matrix<f64>) -> f64 {
    m.data().iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn max_abs(m: &Matrix<f64>) -> f64 {
    m.data().iter().fold(0.0, |a, x| a.max(x.abs()))
}

pub fn max_abs_diff(a: &Matrix<f64>, b: &Matrix<f64>) -> f64 {
    a.data().iter().zip(b.data()).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

pub fn sym_eig(h: &Matrix<f64>) -> Result<EigenResult> {
    let n = h.order()?;
    let norm = max_abs(h);
    let asym = max_abs_diff(h, &h.transpose());
    if asym > SYMMETRY_TOL * norm {
        return Err(Error::usage(format!(
            "matrix is not symmetric (asymmetry {asym:.3e})"
        )));
    }
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| 0.5 * (h[(i, j)] + h[(j, i)])).collect())
        .collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let target = OFF_DIAGONAL_TOL * frobenius(h);
    let off = |a: &Vec<Vec<f64>>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i][j] * a[i][j];
                }
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    while off(&a) > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::Numeric(format!(
                "Jacobi did not converge in {MAX_SWEEPS} sweeps"
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                for row in a.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = c * x - s * y;
                    row[q] = s * x + c * y;
                }
                for k in 0..n {
                    let (x, y) = (a[p][k], a[q][k]);
                    a[p][k] = c * x - s * y;
                    a[q][k] = s * x + c * y;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for row in v.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = c * x - s * y;
                    row[q] = s * x + c * y;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    Ok(EigenResult {
        values: order.iter().map(|&k| a[k][k]).collect(),
        vectors: Matrix::from_fn(n, n, |i, j| v[i][order[j]]),
    })
}

/// `λ_min >= -tol * max(1, λ_max)`.
pub fn psd_check(h: &Matrix<f64>, tol: f64) -> Result<bool> {
    let e = sym_eig(h)?;
    Ok(psd_from_eig(&e, tol))
}

pub(crate) fn psd_from_eig(e: &EigenResult, tol: f64) -> bool {
    e.min() >= -tol * e.max().max(1.0)
}

/// Principal square root; eigenvalues below zero are clamped.
pub fn sqrt_psd(h: &Matrix<f64>) -> Result<Matrix<f64>> {
    let e = sym_eig(h)?;
    if !psd_from_eig(&e, PSD_TOL) {
        return Err(Error::usage(format!(
            "matrix is not positive semidefinite (λ_min = {:.3e})",
            e.min()
        )));
    }
    Ok(e.apply(|x| x.max(0.0).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    fn m(rows: Vec<Vec<f64>>) -> Matrix<f64> {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn diagonal_and_swap() {
        let e = sym_eig(&m(vec![vec![2.0, 0.0], vec![0.0, 3.0]])).unwrap();
        assert_eq!(e.values, vec![2.0, 3.0]);
        let e = sym_eig(&m(vec![vec![0.0, 1.0], vec![1.0, 0.0]])).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(matches!(
            sym_eig(&m(vec![vec![0.0, 1.0], vec![0.0, 0.0]])),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn reconstruction_and_orthogonality() {
        for seed in 0..100u64 {
            let mut rng = sample::claim_rng(seed, 0);
            let n = 1 + (seed as usize % 10);
            let g = sample::normal_matrix(&mut rng, n, n);
            let h = g.add(&g.transpose()).unwrap();
            let e = sym_eig(&h).unwrap();
            let scale = max_abs(&h).max(1.0);
            assert!(max_abs_diff(&e.reconstruct(), &h) <= 1e-10 * scale, "seed {seed}");
            let qtq = e.vectors.transpose().matmul(&e.vectors).unwrap();
            assert!(max_abs_diff(&qtq, &Matrix::identity(n)) <= 1e-10);
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn psd_examples() {
        assert!(psd_check(&Matrix::identity(3), PSD_TOL).unwrap());
        assert!(!psd_check(&m(vec![vec![1.0, 0.0], vec![0.0, -1.0]]), PSD_TOL).unwrap());
        let e = sym_eig(&Matrix::ones(4)).unwrap();
        assert!((e.max() - 4.0).abs() < 1e-12);
        assert!(psd_check(&Matrix::ones(4), PSD_TOL).unwrap());
    }

    #[test]
    fn square_roots() {
        assert_eq!(sqrt_psd(&Matrix::identity(3)).unwrap(), Matrix::identity(3));
        let r = sqrt_psd(&m(vec![vec![4.0, 0.0], vec![0.0, 9.0]])).unwrap();
        assert!(max_abs_diff(&r, &m(vec![vec![2.0, 0.0], vec![0.0, 3.0]])) < 1e-15);
        assert!(sqrt_psd(&m(vec![vec![1.0, 0.0], vec![0.0, -1.0]])).is_err());
        let mut rng = sample::claim_rng(21, 0);
        for _ in 0..20 {
            let g = sample::normal_matrix(&mut rng, 5, 5);
            let h = g.transpose().matmul(&g).unwrap();
            let r = sqrt_psd(&h).unwrap();
            assert!(max_abs_diff(&r, &r.transpose()) < 1e-12);
            let err = max_abs_diff(&r.matmul(&r).unwrap(), &h);
            assert!(err <= 1e-8 * max_abs(&h).max(1.0));
        }
    }
}

//! Complex diagnostic: the minor inequality fails off the real line.

use num_complex::Complex64;
use rand::Rng;

use super::accretive::AccretiveWitness;
use super::eigen::sym_eig;
use crate::detkit::corner_minors;
use crate::error::{Error, Result};
use crate::matrix::json::AnyMatrix;
use crate::matrix::Matrix;
use crate::sample::{self, claim_rng};

/// Witnesses are kept when `margin < -SEARCH_THRESHOLD * scale`.
pub const SEARCH_THRESHOLD: f64 = 1e-6;
/// Iterations without improvement before a fresh restart.
const STALE_LIMIT: usize = 500;
const STEP: f64 = 0.05;

#[rustfmt::skip]
const REMARK45: [[(f64, f64); 4]; 4] = [
    [(9.94929343, 1.33276616), (0.97565055, 0.87236575), (-2.50825051, 5.42561737), (1.56748356, -7.27519505)],
    [(2.97979149, -0.40625902), (3.79277890, -0.31914688), (0.54972864, 0.60571431), (0.32023125, 2.04703155)],
    [(-1.05662545, -10.34778593), (1.98753540, -2.33447293), (9.41578815, -0.76975962), (-7.77317132, -1.83670880)],
    [(-0.08351591, 4.49741713), (1.36270989, -0.46531832), (-8.74961119, 1.90215917), (16.31271805, -0.21461055)],
];

pub fn remark45_matrix() -> Matrix<Complex64> {
    Matrix::from_fn(4, 4, |i, j| {
        let (re, im) = REMARK45[i][j];
        Complex64::new(re, im)
    })
}

fn hermitian_part(a: &Matrix<Complex64>) -> Matrix<Complex64> {
    Matrix::from_fn(a.rows(), a.cols(), |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5)
}

/// Eigenvalues (ascending) of a Hermitian `X + iY`, read off the real
/// symmetric embedding `[[X, -Y], [Y, X]]` whose spectrum repeats each one.
pub fn hermitian_eigenvalues(h: &Matrix<Complex64>) -> Result<Vec<f64>> {
    let n = h.order()?;
    let emb = Matrix::from_fn(2 * n, 2 * n, |i, j| {
        let z = h[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let e = sym_eig(&emb)?;
    Ok(e.values.iter().step_by(2).copied().collect())
}

/// Transpose-based corner minors of a complex matrix and
/// `lhs = sqrt|det11 det22|`, `rhs = |(det12 + det21)/2|`.
pub fn complex_witness(a: &Matrix<Complex64>) -> Result<AccretiveWitness> {
    let n = a.order()?;
    if n < 2 {
        return Err(Error::usage("minor inequality needs n >= 2"));
    }
    let minors = corner_minors(a)?;
    let [m11, m22, m12, m21] = minors;
    let lhs = (m11 * m22).norm().sqrt();
    let rhs = ((m12 + m21) * 0.5).norm();
    let eig = hermitian_eigenvalues(&hermitian_part(a))?;
    Ok(AccretiveWitness {
        matrix: AnyMatrix::Complex(a.clone()),
        minors,
        lhs,
        rhs,
        margin: lhs - rhs,
        scale: (lhs + rhs).max(1.0),
        clamped: 0.0,
        sym_part_min_eig: eig.first().copied().unwrap_or(0.0),
        sym_part_max_eig: eig.last().copied().unwrap_or(0.0),
        cofactor_residual: None,
    })
}

pub fn remark45_repro() -> AccretiveWitness {
    complex_witness(&remark45_matrix()).expect("fixed 4x4 input")
}

fn is_violation(w: &AccretiveWitness) -> bool {
    w.margin < -SEARCH_THRESHOLD * w.scale
        && w.sym_part_min_eig >= -SEARCH_THRESHOLD * w.sym_part_max_eig.max(1.0)
}

fn cnormal(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(sample::normal(rng), sample::normal(rng))
}

/// `G^* G` plus a skew-Hermitian part (real skew plus `i` times real
/// symmetric), scaled to unit max entry.
fn random_start(rng: &mut impl Rng, n: usize) -> Matrix<Complex64> {
    let g = Matrix::from_fn(n, n, |_, _| cnormal(rng));
    let h = Matrix::from_fn(n, n, |i, j| (0..n).map(|k| g[(k, i)].conj() * g[(k, j)]).sum());
    let mut k = Matrix::zeros(n, n);
    for i in 0..n {
        k[(i, i)] = Complex64::new(0.0, sample::uniform(rng, -1.0, 1.0));
        for j in i + 1..n {
            let z = Complex64::new(sample::uniform(rng, -1.0, 1.0), sample::uniform(rng, -1.0, 1.0));
            k[(i, j)] = z;
            k[(j, i)] = -z.conj();
        }
    }
    let a = h.add(&k).expect("same shape");
    let s = a.data().iter().fold(0.0, |m: f64, z| m.max(z.norm()));
    a.map(|z| z / s)
}

/// Shift the diagonal so that `(A + A^*)/2` is PSD again.
fn project(a: &mut Matrix<Complex64>) -> Result<()> {
    let eig = hermitian_eigenvalues(&hermitian_part(a))?;
    let lo = eig.first().copied().unwrap_or(0.0);
    if lo < 0.0 {
        for i in 0..a.rows() {
            a[(i, i)] += -lo;
        }
    }
    Ok(())
}

fn relative_margin(w: &AccretiveWitness) -> f64 {
    let d = w.lhs + w.rhs;
    if d > 0.0 {
        w.margin / d
    } else {
        0.0
    }
}

/// Random restarts plus hill-climbing on `margin / (lhs + rhs)` over complex
/// matrices with PSD Hermitian part. Keeps the best witness of every restart
/// episode that violates the inequality, sorted by margin.
pub fn search_complex_violation(dim: usize, iters: usize, seed: u64) -> Result<Vec<AccretiveWitness>> {
    search_complex_violation_from(None, dim, iters, seed)
}

/// As [`search_complex_violation`]; the first episode starts at `start`,
/// which is reported first if it already violates the inequality.
pub fn search_complex_violation_from(
    start: Option<&Matrix<Complex64>>,
    dim: usize,
    iters: usize,
    seed: u64,
) -> Result<Vec<AccretiveWitness>> {
    if dim < 2 {
        return Err(Error::usage("search needs dim >= 2"));
    }
    let mut found = Vec::new();
    let mut rng = claim_rng(seed, 0);
    let mut current = match start {
        Some(s) => {
            if s.order()? != dim {
                return Err(Error::usage(format!(
                    "start matrix has order {}, expected {dim}",
                    s.rows()
                )));
            }
            let w = complex_witness(s)?;
            if is_violation(&w) {
                found.push(w.clone());
            }
            w
        }
        None => complex_witness(&random_start(&mut rng, dim))?,
    };
    let mut best = current.clone();
    let mut stale = 0;
    for _ in 0..iters {
        if stale >= STALE_LIMIT {
            if is_violation(&best) && !found.contains(&best) {
                found.push(best);
            }
            current = complex_witness(&random_start(&mut rng, dim))?;
            best = current.clone();
            stale = 0;
            continue;
        }
        let AnyMatrix::Complex(a) = &current.matrix else {
            unreachable!("search state is complex")
        };
        let sigma = STEP * a.data().iter().fold(0.0, |m: f64, z| m.max(z.norm()));
        let mut trial = a.map(|z| *z + cnormal(&mut rng) * sigma);
        project(&mut trial)?;
        let w = complex_witness(&trial)?;
        if relative_margin(&w) < relative_margin(&current) {
            current = w;
            if relative_margin(&current) < relative_margin(&best) {
                best = current.clone();
            }
            stale = 0;
        } else {
            stale += 1;
        }
    }
    if is_violation(&best) && !found.contains(&best) {
        found.push(best);
    }
    found.sort_by(|x, y| x.margin.total_cmp(&y.margin));
    Ok(found)
}

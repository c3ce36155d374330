//! Seeded instance generators.
//!
//! Every claim draws from its own ChaCha8 stream: the 64-bit master seed is
//! the key and the claim's stable index selects the stream, so results do
//! not depend on the order in which claims are executed.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matrix::{skew_toeplitz, Matrix};
use crate::ring::{MultiPoly, Ring};

pub const DEFAULT_SEED: u64 = 0x9E37_79B9_7F4A_7C15;

pub type ClaimRng = ChaCha8Rng;

/// Stream `index` of the master `seed`.
pub fn claim_rng(seed: u64, index: u64) -> ClaimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn int_matrix(rng: &mut impl Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> Matrix<BigInt> {
    Matrix::from_fn(rows, cols, |_, _| BigInt::from(rng.random_range(lo..=hi)))
}

pub fn rational(rng: &mut impl Rng, num: i64, max_den: i64) -> BigRational {
    BigRational::new(
        rng.random_range(-num..=num).into(),
        rng.random_range(1..=max_den).into(),
    )
}

pub fn rat_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix<BigRational> {
    Matrix::from_fn(rows, cols, |_, _| rational(rng, 9, 5))
}

pub fn rat_point(rng: &mut impl Rng, len: usize) -> Vec<BigRational> {
    (0..len).map(|_| rational(rng, 7, 4)).collect()
}

pub fn rat_skew(rng: &mut impl Rng, n: usize) -> Matrix<BigRational> {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let x = rational(rng, 9, 5);
            m[(j, i)] = -x.clone();
            m[(i, j)] = x;
        }
    }
    m
}

/// Nonzero rational weights; each entry has `zero_prob` chance of being
/// replaced by zero (at least one entry stays nonzero).
pub fn rat_weights(rng: &mut impl Rng, n: usize, zero_prob: f64) -> Vec<BigRational> {
    let mut w: Vec<BigRational> = (0..n)
        .map(|_| loop {
            let x = rational(rng, 6, 4);
            if !num_traits::Zero::is_zero(&x) {
                break x;
            }
        })
        .collect();
    let keep = rng.random_range(0..n);
    for (i, x) in w.iter_mut().enumerate() {
        if i != keep && rng.random_bool(zero_prob) {
            *x = BigRational::from_i64(0);
        }
    }
    w
}

pub fn uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..=hi)
}

pub fn normal(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn normal_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix<f64> {
    Matrix::from_fn(rows, cols, |_, _| normal(rng))
}

/// Real skew matrix with entries uniform in `[-1, 1]`.
pub fn real_skew(rng: &mut impl Rng, n: usize) -> Matrix<f64> {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let x = uniform(rng, -1.0, 1.0);
            m[(i, j)] = x;
            m[(j, i)] = -x;
        }
    }
    m
}

/// `J_n + B` with `B` skew Toeplitz, parameters uniform in `[-2, 2]`.
pub fn johnson_numeric(rng: &mut impl Rng, n: usize) -> (Vec<f64>, Matrix<f64>) {
    let b: Vec<f64> = (0..n - 1).map(|_| uniform(rng, -2.0, 2.0)).collect();
    let a = skew_toeplitz(&b).map(|x| x + 1.0);
    (b, a)
}

/// Accretive `A = (H + N) / max|H + N|` with `H = G^T G`.
///
/// `rank` is the row count of `G`; `rank < n` makes the symmetric part
/// singular (boundary of the accretive cone).
pub fn accretive(rng: &mut impl Rng, n: usize, rank: usize) -> Matrix<f64> {
    let g = normal_matrix(rng, rank, n);
    let h = g.transpose().matmul(&g).expect("conformable");
    let a = h.add(&real_skew(rng, n)).expect("same shape");
    let s = a.max_abs().unwrap_or(1.0);
    if s > 0.0 {
        a.map(|x| x / s)
    } else {
        a
    }
}

/// Random polynomial in `nvars` variables with up to `terms` terms of
/// degree at most 2 and coefficients in `[-3, 3]`.
pub fn poly(rng: &mut impl Rng, nvars: usize, terms: usize) -> MultiPoly {
    let ts: Vec<_> = (0..rng.random_range(1..=terms))
        .map(|_| {
            let mut exps = vec![0u16; nvars];
            for _ in 0..rng.random_range(0..=2) {
                exps[rng.random_range(0..nvars)] += 1;
            }
            (
                crate::ring::Monomial::from_exponents(&exps),
                BigInt::from(rng.random_range(-3..=3)),
            )
        })
        .collect();
    MultiPoly::from_terms(nvars, ts).expect("exponents within nvars")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u64> = (0..4).map(|_| claim_rng(1, 0).random()).collect();
        let b: Vec<u64> = (0..4).map(|_| claim_rng(1, 0).random()).collect();
        assert_eq!(a, b);
        let mut r0 = claim_rng(1, 0);
        let mut r1 = claim_rng(1, 1);
        assert_ne!(r0.random::<u64>(), r1.random::<u64>());
    }

    #[test]
    fn weights_keep_a_nonzero_entry() {
        let mut rng = claim_rng(3, 0);
        for _ in 0..50 {
            let w = rat_weights(&mut rng, 4, 0.9);
            assert!(w.iter().any(|x| !num_traits::Zero::is_zero(x)));
        }
    }

    #[test]
    fn accretive_samples_have_psd_symmetric_part() {
        let mut rng = claim_rng(5, 0);
        for rank in [2, 5] {
            let a = accretive(&mut rng, 5, rank);
            let h = a.add(&a.transpose()).unwrap();
            let eig = crate::numaccretive::sym_eig(&h).unwrap();
            assert!(eig.values[0] >= -1e-12);
            assert!((a.max_abs().unwrap() - 1.0).abs() < 1e-15);
        }
    }
}

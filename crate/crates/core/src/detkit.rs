//! Determinant engines over integral domains.
//!
//! * [`det_cofactor`]: Laplace expansion, exponential, used as an oracle.
//! * [`det_bareiss`]: fraction-free elimination; every division is exact.
//! * [`det_condensation`]: Dodgson condensation. Level `k` holds all
//!   contiguous `k x k` minors; a vanishing interior divisor is rescued by
//!   computing the affected minor directly with Bareiss.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, MinorIndex};
use crate::ring::{is_negligible, Domain};

/// Largest order accepted by the cofactor oracle.
pub const COFACTOR_MAX_ORDER: usize = 7;

/// Relative threshold below which a floating condensation divisor is
/// treated as zero.
pub const CONDENSATION_PIVOT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetAlgo {
    Cofactor,
    Bareiss,
    Condensation,
}

impl DetAlgo {
    pub const ALL: [DetAlgo; 3] = [DetAlgo::Cofactor, DetAlgo::Bareiss, DetAlgo::Condensation];

    pub fn det<R: Domain>(self, a: &Matrix<R>) -> Result<R> {
        match self {
            DetAlgo::Cofactor => det_cofactor(a),
            DetAlgo::Bareiss => det_bareiss(a),
            DetAlgo::Condensation => det_condensation(a),
        }
    }
}

impl fmt::Display for DetAlgo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DetAlgo::Cofactor => "cofactor",
            DetAlgo::Bareiss => "bareiss",
            DetAlgo::Condensation => "condensation",
        })
    }
}

impl FromStr for DetAlgo {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cofactor" => Ok(DetAlgo::Cofactor),
            "bareiss" => Ok(DetAlgo::Bareiss),
            "condensation" => Ok(DetAlgo::Condensation),
            _ => Err(Error::usage(format!(
                "unknown algorithm {s:?} (cofactor|bareiss|condensation)"
            ))),
        }
    }
}

/// Laplace expansion along the first row. Orders above
/// [`COFACTOR_MAX_ORDER`] are refused.
pub fn det_cofactor<R: Domain>(a: &Matrix<R>) -> Result<R> {
    let n = a.order()?;
    if n > COFACTOR_MAX_ORDER {
        return Err(Error::usage(format!(
            "cofactor oracle is limited to order {COFACTOR_MAX_ORDER}, got {n}"
        )));
    }
    Ok(laplace(a))
}

fn laplace<R: Domain>(a: &Matrix<R>) -> R {
    let n = a.rows();
    match n {
        0 => R::one(),
        1 => a[(0, 0)].clone(),
        _ => {
            let mut acc = R::zero();
            for j in 0..n {
                if a[(0, j)].is_zero() {
                    continue;
                }
                let term = a[(0, j)].mul_ref(&laplace(&a.without(0, j)));
                acc = if j % 2 == 0 { acc.add_ref(&term) } else { acc.sub_ref(&term) };
            }
            acc
        }
    }
}

/// Fraction-free Gaussian elimination.
///
/// Exact scalars pivot on the first nonzero entry of the column; floating
/// scalars pivot on the largest magnitude. A division that leaves a
/// remainder is reported as [`Error::Internal`].
pub fn det_bareiss<R: Domain>(a: &Matrix<R>) -> Result<R> {
    let n = a.order()?;
    if n == 0 {
        return Ok(R::one());
    }
    let mut m: Vec<Vec<R>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n {
        let pivot_row = match R::is_exact() {
            true => (k..n).find(|&i| !m[i][k].is_zero()),
            false => (k..n)
                .filter(|&i| !m[i][k].is_zero())
                .max_by(|&i, &j| {
                    let (x, y) = (m[i][k].magnitude(), m[j][k].magnitude());
                    x.partial_cmp(&y).unwrap_or(std::cmp::Ordering::Equal)
                }),
        };
        let Some(p) = pivot_row else {
            return Ok(R::zero());
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        if k + 1 == n {
            break;
        }
        let (head, tail) = m.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            for j in k + 1..n {
                let num = row[j]
                    .mul_ref(&pivot_row[k])
                    .sub_ref(&row[k].mul_ref(&pivot_row[j]));
                row[j] = num.div_exact(&prev).ok_or_else(|| {
                    Error::Internal(format!(
                        "Bareiss step {k}: {num} is not divisible by {prev}"
                    ))
                })?;
            }
            row[k] = R::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Dodgson condensation.
///
/// Level `k` stores `det A_k(i, j)` for all valid `i, j`. Level `k + 1` is
/// obtained from 2x2 determinants of level `k` divided by the interior entry
/// of level `k - 1`. When that divisor vanishes (exactly, or below
/// [`CONDENSATION_PIVOT_TOL`] relative to the largest entry of its level for
/// floats) the entry is computed directly by Bareiss on the corresponding
/// block of `A`.
pub fn det_condensation<R: Domain>(a: &Matrix<R>) -> Result<R> {
    let n = a.order()?;
    if n == 0 {
        return Ok(R::one());
    }
    let mut inner: Option<Matrix<R>> = None;
    let mut cur = a.clone();
    for k in 1..n {
        let size = n - k;
        let scale = inner.as_ref().and_then(Matrix::max_abs).unwrap_or(0.0);
        let mut next = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                let num = cur[(i, j)]
                    .mul_ref(&cur[(i + 1, j + 1)])
                    .sub_ref(&cur[(i, j + 1)].mul_ref(&cur[(i + 1, j)]));
                let value = match &inner {
                    None => num,
                    Some(prev) => {
                        let divisor = &prev[(i + 1, j + 1)];
                        if is_negligible(divisor, CONDENSATION_PIVOT_TOL, scale) {
                            det_bareiss(&a.block(MinorIndex::new(k + 1, i + 1, j + 1))?)?
                        } else {
                            num.div_exact(divisor).ok_or_else(|| {
                                Error::Internal(format!(
                                    "condensation level {}: {num} is not divisible by {divisor}",
                                    k + 1
                                ))
                            })?
                        }
                    }
                };
                next.push(value);
            }
        }
        inner = Some(std::mem::replace(&mut cur, Matrix::new(size, size, next)?));
    }
    Ok(cur[(0, 0)].clone())
}

/// `adj(A)_{ij} = (-1)^{i+j} det(A with row j and column i removed)`,
/// each cofactor by Bareiss. `adj` of a 1x1 matrix is `[[1]]`, of a 0x0
/// matrix the 0x0 matrix.
pub fn adjugate<R: Domain>(a: &Matrix<R>) -> Result<Matrix<R>> {
    let n = a.order()?;
    if n == 1 {
        return Ok(Matrix::identity(1));
    }
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let minor = det_bareiss(&a.without(j, i))?;
            data.push(if (i + j) % 2 == 0 { minor } else { -minor });
        }
    }
    Matrix::new(n, n, data)
}

/// `s(X) = 1^T adj(X) 1`, the sum of all adjugate entries.
pub fn s_functional<R: Domain>(x: &Matrix<R>) -> Result<R> {
    Ok(adjugate(x)?.sum_entries())
}

/// The four `(n-1)`-minors `(1,1), (2,2), (1,2), (2,1)`, by Bareiss.
pub fn corner_minors<R: Domain>(a: &Matrix<R>) -> Result<[R; 4]> {
    let n = a.order()?;
    if n < 1 {
        return Err(Error::usage("corner minors need order >= 1"));
    }
    let [m11, m22, m12, m21] = MinorIndex::corners(n);
    Ok([
        det_bareiss(&a.block(m11)?)?,
        det_bareiss(&a.block(m22)?)?,
        det_bareiss(&a.block(m12)?)?,
        det_bareiss(&a.block(m21)?)?,
    ])
}

/// `det(A) det A_{n-2}(2,2) - (det A_{n-1}(1,1) det A_{n-1}(2,2) -
/// det A_{n-1}(1,2) det A_{n-1}(2,1))`; zero for every `A` of order >= 2.
pub fn desnanot_jacobi_residual<R: Domain>(a: &Matrix<R>) -> Result<R> {
    let n = a.order()?;
    if n < 2 {
        return Err(Error::usage("Desnanot-Jacobi needs order >= 2"));
    }
    let det = det_bareiss(a)?;
    let center = det_bareiss(&a.block(MinorIndex::new(n - 2, 2, 2))?)?;
    let [m11, m22, m12, m21] = corner_minors(a)?;
    let rhs = m11.mul_ref(&m22).sub_ref(&m12.mul_ref(&m21));
    Ok(det.mul_ref(&center).sub_ref(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{generic_skew_toeplitz, structured, Structured};
    use crate::ring::MultiPoly;
    use num_traits::Zero;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn int(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn all_dets(a: &Matrix<BigInt>) -> [BigInt; 3] {
        DetAlgo::ALL.map(|algo| algo.det(a).unwrap())
    }

    #[test]
    fn small_determinants() {
        assert_eq!(all_dets(&Matrix::identity(3)), [1, 1, 1].map(BigInt::from));
        assert_eq!(all_dets(&int(&[&[0, 1], &[-1, 0]])), [1, 1, 1].map(BigInt::from));
        assert_eq!(
            all_dets(&int(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])),
            [-3, -3, -3].map(BigInt::from)
        );
        assert_eq!(all_dets(&int(&[&[2, 0], &[0, 3]])), [6, 6, 6].map(BigInt::from));
        assert_eq!(all_dets(&Matrix::ones(3)), [0, 0, 0].map(BigInt::from));
    }

    #[test]
    fn empty_matrix_conventions() {
        let e: Matrix<BigInt> = Matrix::zeros(0, 0);
        assert_eq!(all_dets(&e), [1, 1, 1].map(BigInt::from));
        assert_eq!(adjugate(&e).unwrap().rows(), 0);
        assert_eq!(adjugate(&int(&[&[5]])).unwrap(), int(&[&[1]]));
    }

    #[test]
    fn cofactor_refuses_large_orders() {
        let a: Matrix<BigInt> = Matrix::identity(8);
        assert!(matches!(det_cofactor(&a), Err(Error::Usage(_))));
        assert_eq!(det_bareiss(&a).unwrap(), BigInt::from(1));
    }

    #[test]
    fn non_square_is_usage_error() {
        let a: Matrix<BigInt> = Matrix::zeros(2, 3);
        for algo in DetAlgo::ALL {
            assert!(matches!(algo.det(&a), Err(Error::Usage(_))));
        }
    }

    #[test]
    fn odd_generic_skew_is_singular() {
        let b = generic_skew_toeplitz(3).unwrap();
        assert!(det_bareiss(&b).unwrap().is_zero());
        assert!(det_condensation(&b).unwrap().is_zero());
    }

    #[test]
    fn condensation_rescues_zero_interior() {
        // interior entry is zero, so level-3 division would be by zero
        let a = int(&[&[1, 2, 3], &[4, 0, 6], &[7, 8, 10]]);
        assert_eq!(det_condensation(&a).unwrap(), det_cofactor(&a).unwrap());
        let f = a.map(|x| x.to_string().parse::<f64>().unwrap());
        let d = det_condensation(&f).unwrap();
        let expect: f64 = det_cofactor(&a).unwrap().to_string().parse().unwrap();
        assert!((d - expect).abs() < 1e-9);
    }

    #[test]
    fn float_determinants() {
        let a: Matrix<f64> = Matrix::from_rows(vec![vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0], vec![7.0, 8.0, 10.0]]).unwrap();
        for algo in DetAlgo::ALL {
            assert!((algo.det(&a).unwrap() + 3.0).abs() < 1e-12, "{algo}");
        }
    }

    #[test]
    fn adjugate_examples() {
        assert_eq!(adjugate::<BigInt>(&Matrix::identity(3)).unwrap(), Matrix::identity(3));
        let y = int(&[&[0, 1], &[-1, 0]]);
        let adj = adjugate(&y).unwrap();
        assert_eq!(adj, int(&[&[0, -1], &[1, 0]]));
        assert!(adj.is_skew_symmetric());
    }

    #[test]
    fn s_functional_examples() {
        assert_eq!(s_functional::<BigInt>(&Matrix::identity(2)).unwrap(), BigInt::from(2));
        assert_eq!(s_functional(&int(&[&[0, 1], &[-1, 0]])).unwrap(), BigInt::from(0));
        // C = I - L^2 at m = 3
        let l: Matrix<BigInt> = structured(Structured::LowerShift, 3);
        let c = Matrix::identity(3).sub(&l.matmul(&l).unwrap()).unwrap();
        assert_eq!(s_functional(&c).unwrap(), BigInt::from(4));
    }

    #[test]
    fn adjugate_of_singular_poly_matrix() {
        // odd skew: det = 0 but adj != 0
        let b = generic_skew_toeplitz(3).unwrap();
        let adj = adjugate(&b).unwrap();
        assert!(!adj.is_zero());
        assert!(b.matmul(&adj).unwrap().is_zero());
    }

    #[test]
    fn desnanot_jacobi_on_polynomials() {
        for n in 3..=5 {
            let a = crate::matrix::johnson_family(n).unwrap();
            assert!(desnanot_jacobi_residual(&a).unwrap().is_zero());
        }
        // fully generic 3x3 in 9 variables
        let g = Matrix::from_fn(3, 3, |i, j| MultiPoly::var(9, 3 * i + j + 1).unwrap());
        assert!(desnanot_jacobi_residual(&g).unwrap().is_zero());
        assert_eq!(det_bareiss(&g).unwrap(), det_cofactor(&g).unwrap());
        assert_eq!(det_condensation(&g).unwrap(), det_cofactor(&g).unwrap());
    }

    #[test]
    fn algo_names_parse() {
        for algo in DetAlgo::ALL {
            assert_eq!(algo.to_string().parse::<DetAlgo>().unwrap(), algo);
        }
        assert!("lu".parse::<DetAlgo>().is_err());
    }

    fn arb_int_matrix(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Matrix<BigInt>> {
        prop::collection::vec(lo..=hi, n * n)
            .prop_map(move |v| Matrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor_5x5(a in arb_int_matrix(5, -9, 9)) {
            prop_assert_eq!(det_bareiss(&a).unwrap(), det_cofactor(&a).unwrap());
        }

        #[test]
        fn condensation_matches_bareiss_with_zeros(a in arb_int_matrix(6, -2, 2)) {
            // narrow entry range makes vanishing interior minors common
            prop_assert_eq!(det_condensation(&a).unwrap(), det_bareiss(&a).unwrap());
        }

        #[test]
        fn adjugate_identity(a in arb_int_matrix(4, -6, 6)) {
            let adj = adjugate(&a).unwrap();
            let d = det_bareiss(&a).unwrap();
            let dl = Matrix::identity(4).scale(&d);
            prop_assert_eq!(a.matmul(&adj).unwrap(), dl.clone());
            prop_assert_eq!(adj.matmul(&a).unwrap(), dl);
        }

        #[test]
        fn adjugate_transpose_and_scaling(a in arb_int_matrix(4, -6, 6), lambda in -4i64..=4) {
            let adj = adjugate(&a).unwrap();
            prop_assert_eq!(adjugate(&a.transpose()).unwrap(), adj.transpose());
            let l = BigInt::from(lambda);
            prop_assert_eq!(adjugate(&a.scale(&l)).unwrap(), adj.scale(&l.pow(3)));
        }

        #[test]
        fn determinant_is_multiplicative(a in arb_int_matrix(4, -6, 6), b in arb_int_matrix(4, -6, 6)) {
            let ab = a.matmul(&b).unwrap();
            prop_assert_eq!(det_bareiss(&ab).unwrap(), det_bareiss(&a).unwrap() * det_bareiss(&b).unwrap());
        }

        #[test]
        fn desnanot_jacobi_integers(n in 3usize..=5, seed in prop::collection::vec(-9i64..=9, 25)) {
            let a = Matrix::from_fn(n, n, |i, j| BigInt::from(seed[i * 5 + j]));
            prop_assert!(desnanot_jacobi_residual(&a).unwrap().is_zero());
        }

        #[test]
        fn rational_bareiss_matches_cofactor(v in prop::collection::vec((-9i64..=9, 1i64..=5), 16)) {
            let a = Matrix::new(4, 4, v.into_iter().map(|(p, q)| BigRational::new(p.into(), q.into())).collect()).unwrap();
            prop_assert_eq!(det_bareiss(&a).unwrap(), det_cofactor(&a).unwrap());
            prop_assert_eq!(det_condensation(&a).unwrap(), det_cofactor(&a).unwrap());
        }
    }
}

//! Executable certificates for the contiguous-minor identities.
//!
//! The central claim: for every Toeplitz `A` with `A + A^T = 2 J_n`,
//!
//! ```text
//! det A_{n-1}(1,2) + det A_{n-1}(2,1) = 2 det A_{n-1}(1,1).
//! ```
//!
//! [`verify_johnson_symbolic`] checks it as a polynomial identity in
//! `Z[b1..b_{n-1}]`, which settles the given order over every field of
//! characteristic other than 2. The remaining functions certify the
//! intermediate facts the argument goes through (the rank-one expansion,
//! skew-symmetric adjugate parity, the parity-reduced identities, the
//! specialization values fixing the sign) and the arithmetic-geometric mean
//! identity for matrices whose symmetric part has rank one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::detkit::{adjugate, corner_minors, det_bareiss, s_functional};
use crate::error::{Error, Result};
use crate::matrix::json::JsonScalar;
use crate::matrix::{
    generic_skew_toeplitz, johnson_family, johnson_instance, skew_toeplitz, structured, Matrix,
    MinorIndex, Structured,
};
use crate::report::{matrix_residual, CertificateReport, Check};
use crate::ring::{is_negligible, Domain, Field, MultiPoly, Ring};

pub const DEFAULT_MAX_SYMBOLIC_N: usize = 8;
/// Relative tolerance for floating Johnson and lemma checks.
pub const NUMERIC_TOL: f64 = 1e-9;
/// Relative tolerance for floating rank-one (Bayat-Teimoori) checks.
pub const BT_NUMERIC_TOL: f64 = 1e-8;

/// `det A_{n-1}(1,2) + det A_{n-1}(2,1) - 2 det A_{n-1}(1,1)`.
pub fn johnson_residual<R: Domain>(a: &Matrix<R>) -> Result<R> {
    let [m11, _, m12, m21] = corner_minors(a)?;
    Ok(m12.add_ref(&m21).sub_ref(&m11.add_ref(&m11)))
}

fn floating_scale<R: Ring>(values: &[&R]) -> f64 {
    values
        .iter()
        .filter_map(|x| x.magnitude())
        .fold(1.0, f64::max)
}

/// Symbolic certificate at order `n`, `2 <= n <= max_n`.
pub fn verify_johnson_symbolic(n: usize, max_n: usize) -> Result<CertificateReport> {
    if n < 2 || n > max_n {
        return Err(Error::usage(format!(
            "symbolic order must lie in 2..={max_n}, got {n}"
        )));
    }
    let a = johnson_family(n)?;
    let [m11, _, m12, m21] = corner_minors(&a)?;
    let residual = m12.add_ref(&m21).sub_ref(&m11.add_ref(&m11));
    Ok(CertificateReport::exact(
        format!("johnson_symbolic_n{n}"),
        &residual,
        residual.is_zero(),
        json!({
            "n": n,
            "variables": n - 1,
            "minor_terms": { "11": m11.len(), "12": m12.len(), "21": m21.len() },
        }),
    ))
}

/// Floating check on `J_n + B`, `B` skew Toeplitz with the given
/// superdiagonal parameters. Tolerance is relative to the largest of the
/// three minors (floor 1).
pub fn verify_johnson_numeric(params: &[f64], tol: f64) -> Result<CertificateReport> {
    let n = params.len() + 1;
    if n < 2 {
        return Err(Error::usage("Johnson identity needs n >= 2"));
    }
    let a = johnson_instance(params);
    let [m11, _, m12, m21] = corner_minors(&a)?;
    let residual = (m12 + m21 - 2.0 * m11).abs();
    let scale = [m11, m12, m21].iter().fold(1.0f64, |s, x| s.max(x.abs()));
    Ok(CertificateReport::numeric(
        format!("johnson_numeric_n{n}"),
        residual,
        tol,
        scale,
        json!({ "n": n, "b": params }),
    ))
}

/// `K = B_m(1,1)` and `C = B_m(1,2)` of a skew Toeplitz `B`, `m = n - 1`.
pub fn reduced_blocks<R: Ring>(b: &Matrix<R>) -> Result<(Matrix<R>, Matrix<R>)> {
    let m = b.order()? - 1;
    Ok((b.block(MinorIndex::new(m, 1, 1))?, b.block(MinorIndex::new(m, 1, 2))?))
}

fn add_t_ones(x: &Matrix<MultiPoly>, t: &MultiPoly) -> Matrix<MultiPoly> {
    x.map(|e| e.add_ref(t))
}

/// Symbolic check of the parity-reduced form of the identity.
///
/// Even `m`: `det C = det K`. Odd `m`: `s(C) = s(K)`, the squared form
/// `s(K)^2 = s(C)^2`, and the one-parameter family `M(t) = B + t J_n`
/// (with `t` adjoined as an extra variable): the Desnanot-Jacobi right-hand
/// side equals `det(C)^2 + t^2 (s(K)^2 - s(C)^2)` and the left-hand side does
/// not depend on `t`.
pub fn verify_reduced_case(n: usize) -> Result<CertificateReport> {
    if n < 3 {
        return Err(Error::usage(format!("reduced case needs n >= 3, got {n}")));
    }
    let m = n - 1;
    let b = generic_skew_toeplitz(n)?;
    let (k, c) = reduced_blocks(&b)?;
    let lower = b.block(MinorIndex::new(m, 2, 1))?;
    let mut checks = vec![Check::new(
        "lower_block_is_minus_c_transpose",
        matrix_residual(&lower.add(&c.transpose())?),
    )];
    let parity = if m.is_multiple_of(2) { "even" } else { "odd" };
    if m.is_multiple_of(2) {
        checks.push(Check::new("det_c_minus_det_k", det_bareiss(&c)?.sub_ref(&det_bareiss(&k)?)));
    } else {
        let (s_k, s_c) = (s_functional(&k)?, s_functional(&c)?);
        checks.push(Check::new("s_c_minus_s_k", s_c.sub_ref(&s_k)));
        let squares = s_k.mul_ref(&s_k).sub_ref(&s_c.mul_ref(&s_c));
        checks.push(Check::new("s_k_sq_minus_s_c_sq", squares.clone()));

        // adjoin t as variable b_n
        let lift = |x: &Matrix<MultiPoly>| x.try_map(|p| p.clone().with_nvars(n));
        let t = MultiPoly::var(n, n)?;
        let mt = add_t_ones(&lift(&b)?, &t);
        let [m11, m22, m12, m21] = corner_minors(&mt)?;
        let rhs = m11.mul_ref(&m22).sub_ref(&m12.mul_ref(&m21));
        let det_c = det_bareiss(&c)?.with_nvars(n)?;
        let expected = det_c
            .mul_ref(&det_c)
            .add_ref(&t.mul_ref(&t).mul_ref(&squares.with_nvars(n)?));
        checks.push(Check::new("dj_rhs_in_t", rhs.sub_ref(&expected)));
        let lhs_t = det_bareiss(&mt)?.mul_ref(&det_bareiss(&mt.block(MinorIndex::new(n - 2, 2, 2))?)?);
        let lhs_0 = det_bareiss(&b)?.mul_ref(&det_bareiss(&b.block(MinorIndex::new(n - 2, 2, 2))?)?);
        checks.push(Check::new("dj_lhs_constant_in_t", lhs_t.sub_ref(&lhs_0.with_nvars(n)?)));
    }
    Ok(CertificateReport::from_checks(
        format!("reduced_case_n{n}"),
        &checks,
        0.0,
        1.0,
        json!({ "n": n, "m": m, "parity": parity }),
    ))
}

/// The chain of equivalences at one rational point `b`: the original
/// identity, its rewriting `det(J+C) + det(J-C) = 2 det(J+K)`, the parity
/// formulas for both sides, and the reduced identity.
pub fn verify_equivalence_chain(point: &[BigRational]) -> Result<CertificateReport> {
    let n = point.len() + 1;
    if n < 2 {
        return Err(Error::usage("equivalence chain needs n >= 2"));
    }
    let m = n - 1;
    let a = johnson_instance(point);
    let b = skew_toeplitz(point);
    let (k, c) = reduced_blocks(&b)?;
    let j: Matrix<BigRational> = Matrix::ones(m);
    let [a11, _, a12, a21] = corner_minors(&a)?;
    let j_plus_c = det_bareiss(&j.add(&c)?)?;
    let j_minus_c = det_bareiss(&j.sub(&c)?)?;
    let j_plus_k = det_bareiss(&j.add(&k)?)?;
    let two = BigRational::from_i64(2);
    let (det_c, det_k) = (det_bareiss(&c)?, det_bareiss(&k)?);
    let (s_c, s_k) = (s_functional(&c)?, s_functional(&k)?);
    let sum_jc = &j_plus_c + &j_minus_c;
    let (sum_expected, jk_expected, reduced) = if m.is_multiple_of(2) {
        (&two * &det_c, det_k.clone(), &det_c - &det_k)
    } else {
        (&two * &s_c, s_k.clone(), &s_c - &s_k)
    };
    let checks = vec![
        Check::new("johnson", &a12 + &a21 - &two * &a11),
        Check::new("target_b_lhs", &a12 + &a21 - &sum_jc),
        Check::new("target_b_rhs", &a11 - &j_plus_k),
        Check::new("sum_jc_parity", &sum_jc - &sum_expected),
        Check::new("det_jk_parity", &j_plus_k - &jk_expected),
        Check::new("reduced", reduced),
    ];
    let b_text: Vec<Value> = point.iter().map(JsonScalar::to_json).collect();
    Ok(CertificateReport::from_checks(
        format!("equivalence_chain_n{n}"),
        &checks,
        0.0,
        1.0,
        json!({ "n": n, "b": b_text }),
    ))
}

/// `det(X + t J) - det(X) - t s(X)`.
pub fn verify_rank_one_expansion<R: Domain + JsonScalar>(x: &Matrix<R>, t: &R) -> Result<CertificateReport> {
    let m = x.order()?;
    let shifted = x.map(|e| e.add_ref(t));
    let lhs = det_bareiss(&shifted)?;
    let det = det_bareiss(x)?;
    let ts = t.mul_ref(&s_functional(x)?);
    let residual = lhs.sub_ref(&det).sub_ref(&ts);
    let scale = floating_scale(&[&lhs, &det, &ts]);
    Ok(CertificateReport::from_checks(
        format!("rank_one_expansion_m{m}"),
        &[Check::new("expansion", residual)],
        NUMERIC_TOL,
        scale,
        json!({ "matrix": x.to_json(), "t": t.to_json() }),
    ))
}

fn is_skew_within<R: Ring>(y: &Matrix<R>, tol: f64) -> bool {
    if !y.is_square() {
        return false;
    }
    let scale = y.max_abs().unwrap_or(0.0).max(1.0);
    let n = y.rows();
    (0..n).all(|i| (0..=i).all(|j| is_negligible(&y[(i, j)].add_ref(&y[(j, i)]), tol, scale)))
}

/// Adjugate parity facts for a skew-symmetric `Y` of order `m`:
/// `adj(Y^T) = adj(Y)^T = (-1)^{m-1} adj(Y)`; for even `m` additionally
/// `s(Y) = 0`, for odd `m` `det Y = 0`.
pub fn verify_skew_facts<R: Domain + JsonScalar>(y: &Matrix<R>) -> Result<CertificateReport> {
    if !is_skew_within(y, 1e-12) {
        return Err(Error::usage("verify_skew_facts needs a skew-symmetric matrix"));
    }
    let m = y.order()?;
    let adj = adjugate(y)?;
    let adj_t = adj.transpose();
    let signed = if m % 2 == 1 { adj.clone() } else { adj.neg() };
    let mut checks = vec![
        Check::new("adj_of_transpose", matrix_residual(&adjugate(&y.transpose())?.sub(&adj_t)?)),
        Check::new("adj_parity", matrix_residual(&adj_t.sub(&signed)?)),
    ];
    if m % 2 == 0 {
        checks.push(Check::new("s_vanishes", adj.sum_entries()));
    } else {
        checks.push(Check::new("det_vanishes", det_bareiss(y)?));
    }
    let scale = adj.max_abs().unwrap_or(0.0).max(1.0);
    Ok(CertificateReport::from_checks(
        format!("skew_facts_m{m}"),
        &checks,
        NUMERIC_TOL,
        scale,
        json!({ "m": m, "parity": if m % 2 == 0 { "even" } else { "odd" }, "matrix": y.to_json() }),
    ))
}

/// Exact values of `K` and `C` at `b1 = 1`, `b_k = 0` (`k >= 2`).
#[derive(Clone, Debug, PartialEq)]
pub struct SpecializationValues {
    pub m: usize,
    pub k: Matrix<BigRational>,
    pub c: Matrix<BigRational>,
    pub det_k: BigRational,
    pub det_c: BigRational,
    pub s_k: BigRational,
    pub s_c: BigRational,
    pub adj_k: Matrix<BigRational>,
    /// `adj(C) / det(C)`.
    pub c_inverse: Matrix<BigRational>,
    pub c_inverse_ones: Vec<BigRational>,
    /// `det K_{m-1}(2,2)`.
    pub det_k_inner: BigRational,
}

pub fn specialization_values(m: usize) -> Result<SpecializationValues> {
    if m < 2 {
        return Err(Error::usage(format!("specialization needs m >= 2, got {m}")));
    }
    let mut point = vec![BigRational::from_i64(0); m];
    point[0] = BigRational::from_i64(1);
    let (k, c) = reduced_blocks(&skew_toeplitz(&point))?;
    let det_c = det_bareiss(&c)?;
    let adj_c = adjugate(&c)?;
    if num_traits::Zero::is_zero(&det_c) {
        return Err(Error::Internal("specialized C is singular".into()));
    }
    let c_inverse = adj_c.map(|x| x / &det_c);
    let ones = vec![BigRational::from_i64(1); m];
    let adj_k = adjugate(&k)?;
    Ok(SpecializationValues {
        m,
        det_k: det_bareiss(&k)?,
        s_k: adj_k.sum_entries(),
        s_c: adj_c.sum_entries(),
        c_inverse_ones: c_inverse.mat_vec(&ones)?,
        det_k_inner: det_bareiss(&k.block(MinorIndex::new(m - 1, 2, 2))?)?,
        adj_k,
        c_inverse,
        det_c,
        k,
        c,
    })
}

fn vector_residual(got: &[BigRational], want: &[BigRational]) -> BigRational {
    got.iter()
        .zip(want)
        .map(|(g, w)| g - w)
        .find(|d| !num_traits::Zero::is_zero(d))
        .unwrap_or_else(|| BigRational::from_i64(0))
}

/// Certificate for the sign-fixing specialization values.
///
/// Even `m`: `det K = det C = 1`. Odd `m = 2l + 1`: `det C = 1`,
/// `C^{-1} = I + L^2 + ... + L^{2l}`, `C^{-1} 1 = (1,1,2,2,...,l,l,l+1)`,
/// `s(C) = s(K) = (l+1)^2`, `adj K = u u^T` with `u = (1,0,1,0,...,1)` and
/// `det K_{m-1}(2,2) = 1`.
pub fn specialization_certificate(m: usize) -> Result<CertificateReport> {
    let v = specialization_values(m)?;
    let one = BigRational::from_i64(1);
    let id: Matrix<BigRational> = Matrix::identity(m);
    let l: Matrix<BigRational> = structured(Structured::LowerShift, m);
    let l2 = l.matmul(&l)?;
    let k_expected = l.transpose().sub(&l)?;
    let mut checks = vec![
        Check::new("c_is_i_minus_l2", matrix_residual(&v.c.sub(&id.sub(&l2)?)?)),
        Check::new("k_is_tridiagonal", matrix_residual(&v.k.sub(&k_expected)?)),
        Check::new("det_c", &v.det_c - &one),
    ];
    let mut instance = json!({
        "m": m,
        "det_k": v.det_k.to_json(),
        "det_c": v.det_c.to_json(),
        "s_k": v.s_k.to_json(),
        "s_c": v.s_c.to_json(),
    });
    if m.is_multiple_of(2) {
        checks.push(Check::new("det_k", &v.det_k - &one));
    } else {
        let ell = (m - 1) / 2;
        let target = BigRational::from_integer(BigInt::from((ell + 1) * (ell + 1)));
        let mut neumann = Matrix::identity(m);
        let mut power = Matrix::identity(m);
        for _ in 0..ell {
            power = power.matmul(&l2)?;
            neumann = neumann.add(&power)?;
        }
        let staircase: Vec<BigRational> =
            (1..=m).map(|i| BigRational::from_i64(i.div_ceil(2) as i64)).collect();
        let u: Vec<BigRational> =
            (0..m).map(|i| BigRational::from_i64((i % 2 == 0) as i64)).collect();
        let uu = Matrix::from_fn(m, m, |i, j| &u[i] * &u[j]);
        checks.extend([
            Check::new("c_inverse_neumann", matrix_residual(&v.c_inverse.sub(&neumann)?)),
            Check::new("c_inverse_ones", vector_residual(&v.c_inverse_ones, &staircase)),
            Check::new("s_c", &v.s_c - &target),
            Check::new("det_k_zero", v.det_k.clone()),
            Check::new("k_kernel", vector_residual(&v.k.mat_vec(&u)?, &vec![BigRational::from_i64(0); m])),
            Check::new("adj_k_is_uu", matrix_residual(&v.adj_k.sub(&uu)?)),
            Check::new("det_k_inner", &v.det_k_inner - &one),
            Check::new("s_k", &v.s_k - &target),
        ]);
        instance["l"] = json!(ell);
        instance["c_inverse_ones"] = json!(v.c_inverse_ones.iter().map(JsonScalar::to_json).collect::<Vec<_>>());
    }
    Ok(CertificateReport::from_checks(
        format!("specialization_m{m}"),
        &checks,
        0.0,
        1.0,
        instance,
    ))
}

/// Diagonal congruence `B = D^{-1} A D^{-1}`, `D = diag(w)`: for each block
/// `det B_{R,C} * prod_R w * prod_C w = det A_{R,C}`.
pub fn minor_scaling_check<R: Field + JsonScalar>(
    a: &Matrix<R>,
    w: &[R],
    blocks: &[MinorIndex],
) -> Result<CertificateReport> {
    let n = a.order()?;
    if w.len() != n {
        return Err(Error::usage(format!("weight vector has {} entries for order {n}", w.len())));
    }
    if w.iter().any(|x| x.is_zero()) {
        return Err(Error::usage("diagonal scaling needs every w_i nonzero"));
    }
    let b = Matrix::from_fn(n, n, |i, j| a[(i, j)].clone() / w[i].mul_ref(&w[j]));
    let mut checks = Vec::with_capacity(blocks.len());
    let mut scale = 1.0f64;
    for &idx in blocks {
        let det_a = det_bareiss(&a.block(idx)?)?;
        let det_b = det_bareiss(&b.block(idx)?)?;
        let factor = (0..idx.r).fold(R::one(), |acc, p| {
            acc.mul_ref(&w[idx.i - 1 + p]).mul_ref(&w[idx.j - 1 + p])
        });
        scale = scale.max(det_a.magnitude().unwrap_or(0.0));
        checks.push(Check::new(
            format!("block_{}_{}_{}", idx.r, idx.i, idx.j),
            det_b.mul_ref(&factor).sub_ref(&det_a),
        ));
    }
    Ok(CertificateReport::from_checks(
        format!("minor_scaling_n{n}"),
        &checks,
        NUMERIC_TOL,
        scale,
        json!({
            "matrix": a.to_json(),
            "w": w.iter().map(JsonScalar::to_json).collect::<Vec<_>>(),
            "blocks": blocks,
        }),
    ))
}

fn rank_one_matrix<R: Field>(skew: &Matrix<R>, alpha: &R, w: &[R]) -> Result<Matrix<R>> {
    let n = skew.order()?;
    if n < 2 {
        return Err(Error::usage("rank-one identity needs n >= 2"));
    }
    if w.len() != n {
        return Err(Error::usage(format!("w has {} entries for order {n}", w.len())));
    }
    if !is_skew_within(skew, 1e-12) {
        return Err(Error::usage("first argument must be skew-symmetric"));
    }
    if w.iter().all(|x| x.is_zero()) {
        return Err(Error::usage("w must be nonzero"));
    }
    let half = alpha.clone() / R::from_i64(2);
    Ok(Matrix::from_fn(n, n, |i, j| {
        skew[(i, j)].add_ref(&half.mul_ref(&w[i]).mul_ref(&w[j]))
    }))
}

/// `A = skew + (alpha/2) w w^T` satisfies
/// `det A_{n-1}(1,1) det A_{n-1}(2,2) = ((det A_{n-1}(1,2) + det A_{n-1}(2,1)) / 2)^2`.
///
/// Checked in the squared form, exactly over rationals. Zero components of
/// `w` need no perturbation: the identity is polynomial in the entries.
pub fn verify_bt<R: Field + JsonScalar>(skew: &Matrix<R>, alpha: &R, w: &[R]) -> Result<CertificateReport> {
    let a = rank_one_matrix(skew, alpha, w)?;
    let n = a.rows();
    let [m11, m22, m12, m21] = corner_minors(&a)?;
    let avg = m12.add_ref(&m21) / R::from_i64(2);
    let prod = m11.mul_ref(&m22);
    let sq = avg.mul_ref(&avg);
    let sym = a.add(&a.transpose())?;
    let target = Matrix::from_fn(n, n, |i, j| alpha.mul_ref(&w[i]).mul_ref(&w[j]));
    let checks = [
        Check::new("symmetric_part_rank_one", matrix_residual(&sym.sub(&target)?)),
        Check::new("geometric_equals_arithmetic", prod.sub_ref(&sq)),
    ];
    let scale = floating_scale(&[&prod, &sq]);
    Ok(CertificateReport::from_checks(
        format!("bt_n{n}"),
        &checks,
        BT_NUMERIC_TOL,
        scale,
        json!({
            "alpha": alpha.to_json(),
            "w": w.iter().map(JsonScalar::to_json).collect::<Vec<_>>(),
            "zero_components": w.iter().filter(|x| x.is_zero()).count(),
            "matrix": a.to_json(),
        }),
    ))
}

/// Floating form: `|sqrt(det11 det22) - |(det12 + det21)/2|| <= tol * max(1, lhs + rhs)`.
/// A slightly negative product (roundoff on zero) is clamped before the root.
pub fn verify_bt_numeric(skew: &Matrix<f64>, alpha: f64, w: &[f64], tol: f64) -> Result<CertificateReport> {
    let a = rank_one_matrix(skew, &alpha, w)?;
    let n = a.rows();
    let [m11, m22, m12, m21] = corner_minors(&a)?;
    let lhs = (m11 * m22).max(0.0).sqrt();
    let rhs = ((m12 + m21) / 2.0).abs();
    Ok(CertificateReport::numeric(
        format!("bt_numeric_n{n}"),
        (lhs - rhs).abs(),
        tol,
        (lhs + rhs).max(1.0),
        json!({ "alpha": alpha, "w": w, "lhs": lhs, "rhs": rhs, "matrix": a.to_json() }),
    ))
}

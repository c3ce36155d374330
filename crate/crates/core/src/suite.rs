//! Seeded batch runners behind the `verify` subcommands.
//!
//! Every batch derives one PRNG stream per claim family from the master
//! seed, so a report depends only on `(seed, arguments)`.

use num_traits::Signed;
use rand::Rng;
use serde_json::json;

use crate::detkit::{desnanot_jacobi_residual, DetAlgo};
use crate::error::{Error, Result};
use crate::identity::{
    specialization_certificate, verify_bt, verify_bt_numeric, verify_equivalence_chain, verify_johnson_numeric,
    verify_johnson_symbolic, verify_rank_one_expansion, verify_reduced_case, verify_skew_facts,
};
use crate::matrix::{generic_skew_toeplitz, Matrix};
use crate::numaccretive::{
    accretive_factorize, symmetric_part, sym_eig, verify_accretive_inequality, verify_adjugate_accretive,
    verify_det_positive, PSD_TOL,
};
use crate::report::{CertificateReport, Check};
use crate::sample::{self, claim_rng};

/// Stream indices of the claim families.
mod stream {
    pub const JOHNSON: u64 = 1;
    pub const RANK_ONE: u64 = 2;
    pub const CHAIN: u64 = 3;
    pub const BT_EXACT: u64 = 4;
    pub const BT_NUMERIC: u64 = 5;
    pub const ACCRETIVE: u64 = 6;
    pub const ORACLE: u64 = 7;
}

pub const RANK_ONE_INSTANCES: usize = 50;
pub const BT_EXACT_INSTANCES: usize = 50;
pub const ORACLE_INSTANCES: usize = 200;
/// Generic skew Toeplitz orders for the adjugate parity facts.
pub const SKEW_FACT_MAX_ORDER: usize = 7;

pub fn johnson_symbolic(ns: impl IntoIterator<Item = usize>, max_n: usize) -> Result<Vec<CertificateReport>> {
    ns.into_iter().map(|n| verify_johnson_symbolic(n, max_n)).collect()
}

pub fn johnson_numeric(n: usize, trials: usize, seed: u64, tol: f64) -> Result<Vec<CertificateReport>> {
    if n < 2 {
        return Err(Error::Usage(format!("Johnson family needs n >= 2, got {n}")));
    }
    let mut rng = claim_rng(seed, stream::JOHNSON);
    (0..trials)
        .map(|_| {
            let (b, _) = sample::johnson_numeric(&mut rng, n);
            Ok(verify_johnson_numeric(&b, tol)?.with_seed(Some(seed)))
        })
        .collect()
}

/// Reduced-case identities for `3..=n`, skew adjugate parity on generic
/// skew Toeplitz matrices of orders `2..=min(7, n - 1)`, the rank-one
/// expansion on random rational matrices and the equivalence chain at one
/// random rational point per order.
pub fn lemmas(n: usize, seed: u64) -> Result<Vec<CertificateReport>> {
    if n < 3 {
        return Err(Error::Usage(format!("lemma suite needs n >= 3, got {n}")));
    }
    let mut out = Vec::new();
    for k in 3..=n {
        out.push(verify_reduced_case(k)?);
    }
    for m in 2..=SKEW_FACT_MAX_ORDER.min(n - 1) {
        out.push(verify_skew_facts(&generic_skew_toeplitz(m)?)?);
    }
    let mut rng = claim_rng(seed, stream::RANK_ONE);
    for i in 0..RANK_ONE_INSTANCES {
        let m = 1 + i % 6;
        let x = sample::rat_matrix(&mut rng, m, m);
        let t = sample::rational(&mut rng, 9, 5);
        out.push(verify_rank_one_expansion(&x, &t)?.with_seed(Some(seed)));
    }
    let mut rng = claim_rng(seed, stream::CHAIN);
    for k in 2..=n {
        let point = sample::rat_point(&mut rng, k - 1);
        out.push(verify_equivalence_chain(&point)?.with_seed(Some(seed)));
    }
    Ok(out)
}

/// Exact rank-one equality on [`BT_EXACT_INSTANCES`] rational instances
/// (about a third of the weights zeroed) and `trials` floating instances,
/// orders cycling through `2..=dim`.
pub fn bt(dim: usize, trials: usize, seed: u64, tol: f64) -> Result<Vec<CertificateReport>> {
    if dim < 2 {
        return Err(Error::Usage(format!("rank-one suite needs dim >= 2, got {dim}")));
    }
    let order = |i: usize| 2 + i % (dim - 1);
    let mut out = Vec::new();
    let mut rng = claim_rng(seed, stream::BT_EXACT);
    for i in 0..BT_EXACT_INSTANCES {
        let n = order(i);
        let skew = sample::rat_skew(&mut rng, n);
        let alpha = sample::rational(&mut rng, 9, 5).abs();
        let w = sample::rat_weights(&mut rng, n, 0.3);
        out.push(verify_bt(&skew, &alpha, &w)?.with_seed(Some(seed)));
    }
    let mut rng = claim_rng(seed, stream::BT_NUMERIC);
    for i in 0..trials {
        let n = order(i);
        let skew = sample::real_skew(&mut rng, n);
        let alpha = sample::uniform(&mut rng, 0.0, 2.0);
        let w: Vec<f64> = (0..n).map(|_| sample::normal(&mut rng)).collect();
        out.push(verify_bt_numeric(&skew, alpha, &w, tol)?.with_seed(Some(seed)));
    }
    Ok(out)
}

pub fn specialization(m: usize) -> Result<Vec<CertificateReport>> {
    if m < 2 {
        return Err(Error::Usage(format!("specialization needs m >= 2, got {m}")));
    }
    (2..=m).map(specialization_certificate).collect()
}

/// The real accretive claims on one matrix: factorization (strict inputs
/// only), determinant sign, adjugate accretivity and the minor inequality.
pub fn accretive_checks(a: &Matrix<f64>, tol: f64) -> Result<Vec<CertificateReport>> {
    let n = a.order()?;
    let mut out = Vec::new();
    let e = sym_eig(&symmetric_part(a))?;
    if e.min() > PSD_TOL * e.max() {
        out.push(accretive_factorize(a)?.report);
    }
    out.push(verify_det_positive(a)?);
    out.push(verify_adjugate_accretive(a)?);
    out.push(verify_accretive_inequality(a)?.to_report(format!("minor_inequality_n{n}"), tol));
    Ok(out)
}

/// `trials` random accretive matrices of orders cycling through
/// `max(2, dim - 4)..=dim`; every third one has a rank-deficient symmetric
/// part.
pub fn accretive(dim: usize, trials: usize, seed: u64, tol: f64) -> Result<Vec<CertificateReport>> {
    if dim < 2 {
        return Err(Error::Usage(format!("accretive suite needs dim >= 2, got {dim}")));
    }
    let lo = dim.saturating_sub(4).max(2);
    let mut rng = claim_rng(seed, stream::ACCRETIVE);
    let mut out = Vec::new();
    for i in 0..trials {
        let n = lo + i % (dim - lo + 1);
        let rank = if i % 3 == 2 { rng.random_range(1..n) } else { n };
        let a = sample::accretive(&mut rng, n, rank);
        for r in accretive_checks(&a, tol)? {
            let mut r = r.with_seed(Some(seed));
            r.instance["trial"] = json!(i);
            r.instance["rank"] = json!(rank);
            out.push(r);
        }
    }
    Ok(out)
}

/// Cofactor, Bareiss and condensation agree and the Desnanot-Jacobi
/// residual vanishes on random integer matrices of orders 1 to 6.
pub fn oracles(count: usize, seed: u64) -> Result<Vec<CertificateReport>> {
    let mut rng = claim_rng(seed, stream::ORACLE);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let n = 1 + i % 6;
        let a = sample::int_matrix(&mut rng, n, n, -9, 9);
        let claim = format!("det_oracles_n{n}");
        let dets = DetAlgo::ALL.map(|algo| algo.det(&a));
        let report = match dets {
            [Ok(c), Ok(b), Ok(d)] => {
                let mut checks = vec![Check::new("bareiss", &b - &c), Check::new("condensation", &d - &c)];
                if n >= 2 {
                    checks.push(Check::new("desnanot_jacobi", desnanot_jacobi_residual(&a)?));
                }
                CertificateReport::from_checks(
                    claim,
                    &checks,
                    0.0,
                    1.0,
                    json!({ "matrix": a.to_json(), "det": c.to_string() }),
                )
            }
            [c, b, d] => {
                let e = [c, b, d].into_iter().find_map(|r| r.err()).expect("one failed");
                CertificateReport::error(claim, &e, json!({ "matrix": a.to_json() }))
            }
        };
        out.push(report.with_seed(Some(seed)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracles_small_batch() {
        let r = oracles(30, 9).unwrap();
        assert_eq!(r.len(), 30);
        assert!(r.iter().all(CertificateReport::is_verified));
    }

    #[test]
    fn lemmas_small() {
        let r = lemmas(5, 3).unwrap();
        assert!(r.iter().all(CertificateReport::is_verified), "{r:#?}");
        assert!(lemmas(2, 3).is_err());
    }

    #[test]
    fn bt_and_accretive_small() {
        assert!(bt(5, 10, 1, 1e-8).unwrap().iter().all(CertificateReport::is_verified));
        assert!(accretive(5, 12, 1, 1e-8).unwrap().iter().all(CertificateReport::is_verified));
    }

    #[test]
    fn same_seed_same_reports() {
        assert_eq!(accretive(4, 6, 77, 1e-8).unwrap(), accretive(4, 6, 77, 1e-8).unwrap());
        assert_ne!(accretive(4, 6, 77, 1e-8).unwrap(), accretive(4, 6, 78, 1e-8).unwrap());
    }
}

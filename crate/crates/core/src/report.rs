//! Outcome records for verification claims.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;
use crate::matrix::Matrix;
use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    Error,
}

/// Residual of a claim: an exact value (zero polynomial, rational) printed
/// in its text form, or a floating magnitude.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum Residual {
    Exact(String),
    Numeric(f64),
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub claim: String,
    pub status: Status,
    pub residual: Residual,
    /// Relative tolerance; the absolute bound is `tolerance * scale`.
    pub tolerance: Option<f64>,
    pub scale: Option<f64>,
    pub instance: Value,
    pub seed: Option<u64>,
}

/// One named sub-check of a claim.
pub struct Check<R> {
    pub name: String,
    pub residual: R,
}

impl<R> Check<R> {
    pub fn new(name: impl Into<String>, residual: R) -> Self {
        Check {
            name: name.into(),
            residual,
        }
    }
}

impl CertificateReport {
    pub fn exact(claim: impl Into<String>, residual: impl ToString, zero: bool, instance: Value) -> Self {
        CertificateReport {
            claim: claim.into(),
            status: if zero { Status::Verified } else { Status::Refuted },
            residual: Residual::Exact(residual.to_string()),
            tolerance: None,
            scale: None,
            instance,
            seed: None,
        }
    }

    /// Verified iff `residual <= tolerance * scale` (and the residual is finite).
    pub fn numeric(claim: impl Into<String>, residual: f64, tolerance: f64, scale: f64, instance: Value) -> Self {
        let ok = residual.is_finite() && residual <= tolerance * scale;
        CertificateReport {
            claim: claim.into(),
            status: if ok { Status::Verified } else { Status::Refuted },
            residual: Residual::Numeric(residual),
            tolerance: Some(tolerance),
            scale: Some(scale),
            instance,
            seed: None,
        }
    }

    pub fn error(claim: impl Into<String>, err: &Error, instance: Value) -> Self {
        CertificateReport {
            claim: claim.into(),
            status: Status::Error,
            residual: Residual::None,
            tolerance: None,
            scale: None,
            instance: merge(instance, serde_json::json!({ "error": err.to_string() })),
            seed: None,
        }
    }

    /// Judge a set of scalar sub-checks. Exact rings need every residual to
    /// be zero; floating rings need `max |residual| <= tolerance * scale`.
    /// The instance records each sub-check's residual.
    pub fn from_checks<R: Ring>(
        claim: impl Into<String>,
        checks: &[Check<R>],
        tolerance: f64,
        scale: f64,
        instance: Value,
    ) -> Self {
        let detail: serde_json::Map<String, Value> = checks
            .iter()
            .map(|c| (c.name.clone(), Value::String(c.residual.to_string())))
            .collect();
        let instance = merge(instance, serde_json::json!({ "checks": detail }));
        if R::is_exact() {
            let bad = checks.iter().find(|c| !c.residual.is_zero());
            match bad {
                None => Self::exact(claim, "0", true, instance),
                Some(c) => Self::exact(claim, format!("{}: {}", c.name, c.residual), false, instance),
            }
        } else {
            let worst = checks
                .iter()
                .map(|c| c.residual.magnitude().unwrap_or(f64::NAN))
                .fold(0.0f64, |m, x| if x.is_nan() || m.is_nan() { f64::NAN } else { m.max(x) });
            Self::numeric(claim, worst, tolerance, scale, instance)
        }
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }
}

/// Largest-magnitude entry for floats, first nonzero entry for exact rings,
/// zero when the matrix vanishes.
pub fn matrix_residual<R: Ring>(m: &Matrix<R>) -> R {
    if R::is_exact() {
        m.data().iter().find(|x| !x.is_zero()).cloned().unwrap_or_else(R::zero)
    } else {
        m.data()
            .iter()
            .max_by(|a, b| {
                a.magnitude()
                    .partial_cmp(&b.magnitude())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .cloned()
            .unwrap_or_else(R::zero)
    }
}

fn merge(a: Value, b: Value) -> Value {
    match (a, b) {
        (Value::Object(mut a), Value::Object(b)) => {
            a.extend(b);
            Value::Object(a)
        }
        (Value::Null, b) => b,
        (a, _) => a,
    }
}

/// Fixed-width text table: claim, status, residual, seed.
pub fn text_summary(reports: &[CertificateReport]) -> String {
    let mut out = format!("{:<40} {:<9} {:<28} {}\n", "claim", "status", "residual", "seed");
    for r in reports {
        let status = match r.status {
            Status::Verified => "verified",
            Status::Refuted => "refuted",
            Status::Error => "error",
        };
        let residual = match &r.residual {
            Residual::Exact(s) => {
                let mut s = s.clone();
                if s.len() > 28 {
                    s.truncate(25);
                    s.push_str("...");
                }
                s
            }
            Residual::Numeric(x) => format!("{x:.3e}"),
            Residual::None => "-".into(),
        };
        let seed = r.seed.map_or("-".to_string(), |s| s.to_string());
        out.push_str(&format!("{:<40} {:<9} {:<28} {}\n", r.claim, status, residual, seed));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn exact_checks_require_zero() {
        let ok = [Check::new("a", BigInt::from(0)), Check::new("b", BigInt::from(0))];
        assert!(CertificateReport::from_checks("x", &ok, 0.0, 1.0, Value::Null).is_verified());
        let bad = [Check::new("a", BigInt::from(0)), Check::new("b", BigInt::from(3))];
        let r = CertificateReport::from_checks("x", &bad, 0.0, 1.0, Value::Null);
        assert_eq!(r.status, Status::Refuted);
        assert_eq!(r.residual, Residual::Exact("b: 3".into()));
    }

    #[test]
    fn numeric_checks_use_relative_bound() {
        let checks = [Check::new("a", 1e-10f64), Check::new("b", -5e-10)];
        let r = CertificateReport::from_checks("x", &checks, 1e-9, 1.0, Value::Null);
        assert!(r.is_verified());
        assert_eq!(r.residual, Residual::Numeric(5e-10));
        let r = CertificateReport::from_checks("x", &checks, 1e-10, 1.0, Value::Null);
        assert!(!r.is_verified());
        let nan = [Check::new("a", f64::NAN)];
        assert!(!CertificateReport::from_checks("x", &nan, 1.0, 1.0, Value::Null).is_verified());
    }

    #[test]
    fn residual_serialization() {
        let r = CertificateReport::numeric("c", 0.5, 1e-9, 2.0, Value::Null).with_seed(Some(7));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["residual"]["kind"], "numeric");
        assert_eq!(v["status"], "refuted");
        assert_eq!(v["seed"], 7);
    }

    #[test]
    fn summary_has_one_line_per_report() {
        let r = CertificateReport::exact("claim_a", "0", true, Value::Null);
        let text = text_summary(&[r.clone(), r]);
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().nth(1).unwrap().starts_with("claim_a"));
    }
}

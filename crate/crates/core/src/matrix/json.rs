//! JSON matrix format:
//! `{"rows":n,"cols":n,"scalar":"int|rat|poly|real|complex","data":[...]}`
//! with `data` row-major. Integers are JSON numbers (decimal strings when
//! they exceed 64 bits), rationals are `"p/q"` strings, polynomials use the
//! text form of [`MultiPoly`], reals are numbers and complex entries are
//! `[re, im]` pairs.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::Matrix;
use crate::error::{Error, Result};
use crate::ring::{MultiPoly, Ring};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonMatrix {
    pub rows: usize,
    pub cols: usize,
    pub scalar: String,
    pub data: Vec<Value>,
}

/// Scalars with a JSON encoding.
pub trait JsonScalar: Ring {
    const TAG: &'static str;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

fn bad(field: &str, v: &Value, what: &str) -> Error {
    Error::input(field, format!("expected {what}, got {v}"))
}

impl JsonScalar for BigInt {
    const TAG: &'static str = "int";

    fn to_json(&self) -> Value {
        match self.to_i64() {
            Some(v) => Value::from(v),
            None => Value::String(self.to_string()),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| bad("data", v, "an integer")),
            Value::String(s) => s.trim().parse().map_err(|_| bad("data", v, "an integer")),
            _ => Err(bad("data", v, "an integer")),
        }
    }
}

impl JsonScalar for BigRational {
    const TAG: &'static str = "rat";

    fn to_json(&self) -> Value {
        Value::String(format!("{}/{}", self.numer(), self.denom()))
    }

    fn from_json(v: &Value) -> Result<Self> {
        let parse = |s: &str| -> Option<BigRational> {
            match s.split_once('/') {
                Some((p, q)) => {
                    let q: BigInt = q.trim().parse().ok()?;
                    (!q.is_zero()).then_some(())?;
                    Some(BigRational::new(p.trim().parse().ok()?, q))
                }
                None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
            }
        };
        match v {
            Value::String(s) => parse(s).ok_or_else(|| bad("data", v, "a rational \"p/q\"")),
            Value::Number(n) => n
                .as_i64()
                .map(BigRational::from_i64)
                .ok_or_else(|| bad("data", v, "a rational \"p/q\"")),
            _ => Err(bad("data", v, "a rational \"p/q\"")),
        }
    }
}

impl JsonScalar for MultiPoly {
    const TAG: &'static str = "poly";

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => s.parse(),
            _ => Err(bad("data", v, "a polynomial string")),
        }
    }
}

impl JsonScalar for f64 {
    const TAG: &'static str = "real";

    fn to_json(&self) -> Value {
        Value::from(*self)
    }

    fn from_json(v: &Value) -> Result<Self> {
        v.as_f64().ok_or_else(|| bad("data", v, "a real number"))
    }
}

impl JsonScalar for Complex64 {
    const TAG: &'static str = "complex";

    fn to_json(&self) -> Value {
        Value::Array(vec![Value::from(self.re), Value::from(self.im)])
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v.as_array().map(Vec::as_slice) {
            Some([re, im]) => match (re.as_f64(), im.as_f64()) {
                (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                _ => Err(bad("data", v, "a [re, im] pair")),
            },
            _ => Err(bad("data", v, "a [re, im] pair")),
        }
    }
}

impl<R: JsonScalar> Matrix<R> {
    pub fn to_json(&self) -> JsonMatrix {
        JsonMatrix {
            rows: self.rows(),
            cols: self.cols(),
            scalar: R::TAG.to_string(),
            data: self.data().iter().map(JsonScalar::to_json).collect(),
        }
    }

    pub fn from_json(j: &JsonMatrix) -> Result<Self> {
        if j.scalar != R::TAG {
            return Err(Error::input(
                "scalar",
                format!("expected \"{}\", got \"{}\"", R::TAG, j.scalar),
            ));
        }
        if j.data.len() != j.rows * j.cols {
            return Err(Error::input(
                "data",
                format!(
                    "{}x{} matrix needs {} entries, got {}",
                    j.rows,
                    j.cols,
                    j.rows * j.cols,
                    j.data.len()
                ),
            ));
        }
        let data = j.data.iter().map(R::from_json).collect::<Result<Vec<_>>>()?;
        Matrix::new(j.rows, j.cols, data)
    }
}

/// A matrix of any supported scalar kind, as read from disk.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMatrix {
    Int(Matrix<BigInt>),
    Rat(Matrix<BigRational>),
    Poly(Matrix<MultiPoly>),
    Real(Matrix<f64>),
    Complex(Matrix<Complex64>),
}

impl AnyMatrix {
    pub fn from_json(j: &JsonMatrix) -> Result<Self> {
        Ok(match j.scalar.as_str() {
            "int" => AnyMatrix::Int(Matrix::from_json(j)?),
            "rat" => AnyMatrix::Rat(Matrix::from_json(j)?),
            "poly" => {
                let m: Matrix<MultiPoly> = Matrix::from_json(j)?;
                let nvars = m.data().iter().map(MultiPoly::nvars).max().unwrap_or(0);
                AnyMatrix::Poly(m.try_map(|p| p.clone().with_nvars(nvars))?)
            }
            "real" => AnyMatrix::Real(Matrix::from_json(j)?),
            "complex" => AnyMatrix::Complex(Matrix::from_json(j)?),
            other => {
                return Err(Error::input(
                    "scalar",
                    format!("unknown scalar tag \"{other}\" (int|rat|poly|real|complex)"),
                ))
            }
        })
    }

    pub fn to_json(&self) -> JsonMatrix {
        match self {
            AnyMatrix::Int(m) => m.to_json(),
            AnyMatrix::Rat(m) => m.to_json(),
            AnyMatrix::Poly(m) => m.to_json(),
            AnyMatrix::Real(m) => m.to_json(),
            AnyMatrix::Complex(m) => m.to_json(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let j: JsonMatrix = serde_json::from_str(text).map_err(|e| {
            let field = ["rows", "cols", "scalar", "data"]
                .into_iter()
                .find(|f| e.to_string().contains(f))
                .unwrap_or("matrix");
            Error::input(field, e.to_string())
        })?;
        Self::from_json(&j)
    }
}

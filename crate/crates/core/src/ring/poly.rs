//! Sparse multivariate polynomials over the integers.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is graded
//! lexicographic with `b1 > b2 > ...`. Exponent vectors are stored with
//! trailing zeros trimmed so that equal monomials always have equal keys, and
//! zero coefficients are never stored. Equality of polynomials is therefore a
//! structural comparison of the term maps.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Domain, Ring};
use crate::error::{Error, Result};

/// Exponent vector `(e1, e2, ...)` of `b1^e1 b2^e2 ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u16>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        let mut exps = exps.to_vec();
        while exps.last() == Some(&0) {
            exps.pop();
        }
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { degree, exps }
    }

    /// `b_index` with 1-based `index`.
    pub fn var(index: usize) -> Self {
        assert!(index >= 1, "variables are numbered from 1");
        let mut exps = vec![0; index];
        exps[index - 1] = 1;
        Monomial { degree: 1, exps }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Exponent of the 1-based variable `index`.
    pub fn exponent(&self, index: usize) -> u16 {
        self.exps.get(index - 1).copied().unwrap_or(0)
    }

    /// Highest variable index with a nonzero exponent (0 for the unit).
    pub fn support_len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.exps.len() >= other.exps.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut exps = long.exps.clone();
        for (e, s) in exps.iter_mut().zip(&short.exps) {
            *e = e.checked_add(*s).expect("monomial exponent overflow");
        }
        Monomial {
            degree: self.degree + other.degree,
            exps,
        }
    }

    /// `self / other` when `other` divides `self`.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.exps.len() > self.exps.len() {
            return None;
        }
        let mut exps = self.exps.clone();
        for (e, o) in exps.iter_mut().zip(&other.exps) {
            *e = e.checked_sub(*o)?;
        }
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Some(Monomial {
            degree: self.degree - other.degree,
            exps,
        })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // trimmed vectors compare lexicographically exactly as their
        // zero-padded forms would
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `b1..b_nvars` with integer coefficients.
///
/// `nvars` is the ambient variable count. Constants built through
/// [`Zero`]/[`One`] have `nvars == 0` and combine with any polynomial;
/// combining two polynomials with different nonzero `nvars` is a usage
/// error. Equality only looks at the terms.
#[derive(Clone, Debug, Default)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

fn join_nvars(a: usize, b: usize) -> Result<usize> {
    if a == b || a == 0 || b == 0 {
        Ok(a.max(b))
    } else {
        Err(Error::usage(format!(
            "polynomials over {a} and {b} variables cannot be combined"
        )))
    }
}

impl MultiPoly {
    pub fn zero_in(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero_in(nvars);
        p.add_term(Monomial::one(), c.into());
        p
    }

    /// The variable `b_index` (1-based) in a ring of `nvars` variables.
    pub fn var(nvars: usize, index: usize) -> Result<Self> {
        if index == 0 || index > nvars {
            return Err(Error::usage(format!(
                "variable b{index} out of range for {nvars} variables"
            )));
        }
        let mut p = Self::zero_in(nvars);
        p.add_term(Monomial::var(index), BigInt::one());
        Ok(p)
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, BigInt)>,
    ) -> Result<Self> {
        let mut p = Self::zero_in(nvars);
        for (m, c) in terms {
            if m.support_len() > nvars {
                return Err(Error::usage(format!(
                    "monomial uses b{} but ring has {nvars} variables",
                    m.support_len()
                )));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Re-tag with a larger ambient variable count.
    pub fn with_nvars(mut self, nvars: usize) -> Result<Self> {
        let used = self.terms.keys().map(Monomial::support_len).max().unwrap_or(0);
        if used > nvars {
            return Err(Error::usage(format!(
                "polynomial uses b{used}, cannot live in {nvars} variables"
            )));
        }
        self.nvars = nvars;
        Ok(self)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        let nvars = join_nvars(self.nvars, rhs.nvars)?;
        let mut out = self.clone();
        out.nvars = nvars;
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        let nvars = join_nvars(self.nvars, rhs.nvars)?;
        let mut out = self.clone();
        out.nvars = nvars;
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        let nvars = join_nvars(self.nvars, rhs.nvars)?;
        let mut out = Self::zero_in(nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero_in(self.nvars);
        if !k.is_zero() {
            out.terms = self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect();
        }
        out
    }

    /// Exact quotient by `d`: `Ok(Some(q))` with `q * d == self`, `Ok(None)`
    /// when `d` does not divide `self` in `Z[b]`.
    pub fn try_div_exact(&self, d: &Self) -> Result<Option<Self>> {
        let nvars = join_nvars(self.nvars, d.nvars)?;
        let Some((lead_m, lead_c)) = d.leading_term() else {
            return Ok(None);
        };
        let mut rem = self.clone();
        let mut quot = Self::zero_in(nvars);
        // leading terms multiply in a monomial order, so a leading term of
        // the remainder that LT(d) cannot divide proves d ∤ self
        while let Some((m, c)) = rem.leading_term() {
            let Some(qm) = m.div(lead_m) else {
                return Ok(None);
            };
            let (qc, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return Ok(None);
            }
            for (dm, dc) in &d.terms {
                rem.add_term(dm.mul(&qm), -(&qc * dc));
            }
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }

    /// Evaluate at `assignment[k] = b_{k+1}`.
    pub fn eval(&self, assignment: &[BigRational]) -> Result<BigRational> {
        if assignment.len() != self.nvars {
            return Err(Error::usage(format!(
                "assignment has {} values for {} variables",
                assignment.len(),
                self.nvars
            )));
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (k, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(assignment[k].clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluate at integer values.
    pub fn eval_int(&self, assignment: &[i64]) -> Result<BigRational> {
        let a: Vec<BigRational> = assignment
            .iter()
            .map(|&v| BigRational::from_integer(v.into()))
            .collect();
        self.eval(&a)
    }

    /// Substitute floating values; used for numeric cross-checks only.
    pub fn eval_f64(&self, assignment: &[f64]) -> Result<f64> {
        if assignment.len() != self.nvars {
            return Err(Error::usage(format!(
                "assignment has {} values for {} variables",
                assignment.len(),
                self.nvars
            )));
        }
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t: f64 = c.to_string().parse().unwrap_or(f64::NAN);
            for (k, &e) in m.exps.iter().enumerate() {
                t *= assignment[k].powi(e as i32);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Parse the text form, tagging the result with `nvars` variables.
    pub fn parse_in(s: &str, nvars: usize) -> Result<Self> {
        let p: MultiPoly = s.parse()?;
        p.with_nvars(nvars)
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        Self::zero_in(0)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        Self::constant(0, 1)
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("polynomial add")
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(&rhs).expect("polynomial sub")
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("polynomial mul")
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Ring for MultiPoly {
    fn from_i64(v: i64) -> Self {
        Self::constant(0, v)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("polynomial add")
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.try_sub(rhs).expect("polynomial sub")
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("polynomial mul")
    }
}

impl Domain for MultiPoly {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.try_div_exact(rhs).ok().flatten()
    }
}

/// Text form: terms in ascending canonical order, each written
/// `c * b1^e1 b2^e2` (exponent 1 omitted, bare `c` for constants), joined by
/// ` + ` / ` - `. The zero polynomial is `0`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, false) => write!(f, "{mag}")?,
                (0, true) => write!(f, "-{mag}")?,
                (_, false) => write!(f, " + {mag}")?,
                (_, true) => write!(f, " - {mag}")?,
            }
            if !m.is_one() {
                f.write_str(" *")?;
                for (i, &e) in m.exps.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => write!(f, " b{}", i + 1)?,
                        _ => write!(f, " b{}^{e}", i + 1)?,
                    }
                }
            }
        }
        Ok(())
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek_raw() {
            self.pos += c.len_utf8();
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn err(&self, msg: &str) -> Error {
        Error::input("polynomial", format!("{msg} at byte {} of {:?}", self.pos, self.src))
    }

    fn factor(&mut self) -> Result<(usize, u16)> {
        self.bump(); // 'b'
        let idx: usize = self
            .digits()
            .ok_or_else(|| self.err("expected variable index"))?
            .parse()
            .map_err(|_| self.err("bad variable index"))?;
        if idx == 0 {
            return Err(self.err("variables are numbered from 1"));
        }
        let mut exp = 1u16;
        if self.peek() == Some('^') {
            self.bump();
            exp = self
                .digits()
                .ok_or_else(|| self.err("expected exponent"))?
                .parse()
                .map_err(|_| self.err("exponent out of range"))?;
        }
        Ok((idx, exp))
    }

    fn term(&mut self) -> Result<(Monomial, BigInt)> {
        let mut coeff = BigInt::one();
        let mut exps: Vec<u16> = Vec::new();
        let mut saw_any = false;
        if let Some(d) = self.digits() {
            coeff = d.parse().map_err(|_| self.err("bad coefficient"))?;
            saw_any = true;
        }
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    if self.peek() != Some('b') {
                        return Err(self.err("expected variable after '*'"));
                    }
                }
                Some('b') => {
                    let (idx, e) = self.factor()?;
                    if exps.len() < idx {
                        exps.resize(idx, 0);
                    }
                    exps[idx - 1] = exps[idx - 1]
                        .checked_add(e)
                        .ok_or_else(|| self.err("exponent overflow"))?;
                    saw_any = true;
                }
                _ => break,
            }
        }
        if !saw_any {
            return Err(self.err("expected a term"));
        }
        Ok((Monomial::from_exponents(&exps), coeff))
    }
}

impl FromStr for MultiPoly {
    type Err = Error;

    /// Inverse of the `Display` form; also accepts implicit coefficients
    /// (`b1^2 - b2`) and a leading sign.
    fn from_str(s: &str) -> Result<Self> {
        let mut lx = Lexer { src: s, pos: 0 };
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let mut negative = false;
            match lx.peek() {
                None if !first => break,
                None => return Err(lx.err("empty polynomial")),
                Some('+') if !first => lx.bump(),
                Some('-') => {
                    lx.bump();
                    negative = true;
                }
                Some(_) if first => {}
                Some(_) => return Err(lx.err("expected '+' or '-'")),
            }
            let (m, c) = lx.term()?;
            terms.push((m, if negative { -c } else { c }));
            first = false;
        }
        let nvars = terms.iter().map(|(m, _)| m.support_len()).max().unwrap_or(0);
        MultiPoly::from_terms(nvars, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(nvars: usize, i: usize) -> MultiPoly {
        MultiPoly::var(nvars, i).unwrap()
    }

    fn c(v: i64) -> MultiPoly {
        MultiPoly::from_i64(v)
    }

    #[test]
    fn square_of_a_variable() {
        let b1 = b(1, 1);
        let sq = b1.mul_ref(&b1);
        assert_eq!(sq.to_string(), "1 * b1^2");
        assert_eq!(sq.degree(), Some(2));
    }

    #[test]
    fn difference_of_squares() {
        let b1 = b(1, 1);
        let p = (c(1) + b1.clone()) * (c(1) - b1);
        assert_eq!(p, "1 - b1^2".parse().unwrap());
        assert_eq!(p.eval_int(&[1]).unwrap(), BigRational::zero());
    }

    #[test]
    fn eval_sum_of_vars() {
        let p = b(2, 1) + b(2, 2);
        assert_eq!(p.eval_int(&[1, 2]).unwrap(), BigRational::from_i64(3));
    }

    #[test]
    fn eval_length_mismatch_is_usage_error() {
        let p = b(2, 1);
        assert!(matches!(p.eval_int(&[1]), Err(Error::Usage(_))));
    }

    #[test]
    fn zero_tests() {
        assert!(MultiPoly::zero().is_zero());
        assert!(!b(3, 3).is_zero());
        let p = (b(2, 1) + b(2, 2)) * (b(2, 1) - b(2, 2));
        let q = b(2, 1) * b(2, 1) - b(2, 2) * b(2, 2);
        assert!((p - q).is_zero());
    }

    #[test]
    fn mismatched_nvars_is_usage_error() {
        assert!(matches!(b(2, 1).try_mul(&b(3, 1)), Err(Error::Usage(_))));
        // constants are ring-agnostic
        assert!(c(3).try_mul(&b(3, 1)).is_ok());
    }

    #[test]
    fn zero_annihilates() {
        let p = b(2, 1) * b(2, 2) + c(5);
        assert!(p.try_mul(&MultiPoly::zero_in(2)).unwrap().is_zero());
    }

    #[test]
    fn grlex_order() {
        let b1 = Monomial::var(1);
        let b2 = Monomial::var(2);
        assert!(b1 > b2);
        assert!(Monomial::from_exponents(&[0, 2]) > b1);
        assert!(Monomial::from_exponents(&[2]) > Monomial::from_exponents(&[1, 1]));
        assert!(Monomial::one() < b2);
    }

    #[test]
    fn text_form_orders_terms_ascending() {
        let p: MultiPoly = "b2 - 3 * b1^2 b3 + 7".parse().unwrap();
        assert_eq!(p.to_string(), "7 + 1 * b2 - 3 * b1^2 b3");
        assert_eq!(p.nvars(), 3);
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!("-b1".parse::<MultiPoly>().unwrap().to_string(), "-1 * b1");
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "b0", "3 +", "x1", "2 * * b1", "b1^"] {
            assert!(bad.parse::<MultiPoly>().is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn exact_division() {
        let b1 = b(2, 1);
        let b2 = b(2, 2);
        let f = b1.clone() * b1.clone() - b2.clone() * b2.clone();
        let q = f.div_exact(&(b1.clone() - b2.clone())).unwrap();
        assert_eq!(q, b1.clone() + b2.clone());
        assert_eq!(f.div_exact(&(b1.clone() + c(1))), None);
        assert_eq!(c(6).div_exact(&c(4)), None);
        assert_eq!(f.div_exact(&MultiPoly::zero()), None);
    }

    #[test]
    #[should_panic(expected = "exponent overflow")]
    fn exponent_overflow_is_detected() {
        let big: MultiPoly = "b1^65535".parse().unwrap();
        let _ = big.mul_ref(&b(1, 1));
    }

    fn arb_poly(nvars: usize, max_deg: u16) -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(
            (prop::collection::vec(0..=max_deg, nvars), -5i64..=5),
            0..6,
        )
        .prop_map(move |ts| {
            MultiPoly::from_terms(
                nvars,
                ts.into_iter()
                    .map(|(e, c)| (Monomial::from_exponents(&e), BigInt::from(c))),
            )
            .unwrap()
        })
    }

    fn arb_point(nvars: usize) -> impl Strategy<Value = Vec<BigRational>> {
        prop::collection::vec((-7i64..=7, 1i64..=4), nvars).prop_map(|v| {
            v.into_iter()
                .map(|(p, q)| BigRational::new(p.into(), q.into()))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(4, 3), q in arb_poly(4, 3), r in arb_poly(4, 3)) {
            prop_assert_eq!(p.mul_ref(&q), q.mul_ref(&p));
            prop_assert_eq!(p.add_ref(&q), q.add_ref(&p));
            prop_assert_eq!(p.mul_ref(&q).mul_ref(&r), p.mul_ref(&q.mul_ref(&r)));
            prop_assert_eq!(p.add_ref(&q).add_ref(&r), p.add_ref(&q.add_ref(&r)));
            prop_assert_eq!(p.mul_ref(&q.add_ref(&r)), p.mul_ref(&q).add_ref(&p.mul_ref(&r)));
            prop_assert!(p.sub_ref(&p).is_zero());
        }

        #[test]
        fn no_zero_divisors(p in arb_poly(3, 2), q in arb_poly(3, 2)) {
            prop_assume!(!p.is_zero() && !q.is_zero());
            let pq = p.mul_ref(&q);
            prop_assert!(!pq.is_zero());
            prop_assert_eq!(pq.degree().unwrap(), p.degree().unwrap() + q.degree().unwrap());
            prop_assert_eq!(pq.div_exact(&q), Some(p.clone()));
        }

        #[test]
        fn eval_is_a_homomorphism(
            p in arb_poly(3, 2), q in arb_poly(3, 2), r in arb_poly(3, 2),
            a in arb_point(3),
        ) {
            let lhs = p.mul_ref(&q).add_ref(&r).eval(&a).unwrap();
            let rhs = p.eval(&a).unwrap() * q.eval(&a).unwrap() + r.eval(&a).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn text_form_round_trips(p in arb_poly(4, 3)) {
            let back = MultiPoly::parse_in(&p.to_string(), 4).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}

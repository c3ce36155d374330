//! Dense matrices over any [`Ring`] and the structured families used
//! throughout: Toeplitz matrices, all-ones and shift matrices, the generic
//! skew-symmetric Toeplitz matrix over `Z[b1..b_{n-1}]` and `J_n + B`.
//!
//! Storage is row-major and 0-based; the contiguous-block API
//! ([`MinorIndex`], [`Matrix::block`]) is 1-based.

pub mod json;

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::ring::{MultiPoly, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

/// `A_r(i, j)`: the `r x r` block with top-left corner at row `i`, column
/// `j` (both 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct MinorIndex {
    pub r: usize,
    pub i: usize,
    pub j: usize,
}

impl MinorIndex {
    pub fn new(r: usize, i: usize, j: usize) -> Self {
        MinorIndex { r, i, j }
    }

    /// The four `(n-1)`-blocks `(1,1), (2,2), (1,2), (2,1)` of an order-`n`
    /// matrix.
    pub fn corners(n: usize) -> [MinorIndex; 4] {
        let r = n - 1;
        [
            MinorIndex::new(r, 1, 1),
            MinorIndex::new(r, 2, 2),
            MinorIndex::new(r, 1, 2),
            MinorIndex::new(r, 2, 1),
        ]
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.r > n || self.i == 0 || self.j == 0 || self.i + self.r > n + 1 || self.j + self.r > n + 1
        {
            return Err(Error::usage(format!(
                "block A_{}({},{}) out of range for order {n}",
                self.r, self.i, self.j
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structured {
    Ones,
    Identity,
    LowerShift,
}

/// Diagonal constants `c_{-(n-1)}, ..., c_0, ..., c_{n-1}`; entry `a_ij = c_{j-i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ToeplitzSpec<R> {
    pub n: usize,
    pub diags: Vec<R>,
}

impl<R: Ring> ToeplitzSpec<R> {
    /// Constant on diagonal `k = j - i`.
    pub fn diag(&self, k: isize) -> &R {
        &self.diags[(k + self.n as isize - 1) as usize]
    }

    pub fn build(&self) -> Result<Matrix<R>> {
        toeplitz_build(self)
    }
}

pub fn toeplitz_build<R: Ring>(spec: &ToeplitzSpec<R>) -> Result<Matrix<R>> {
    let n = spec.n;
    if n == 0 || spec.diags.len() != 2 * n - 1 {
        return Err(Error::usage(format!(
            "Toeplitz order {n} needs {} diagonal constants, got {}",
            (2 * n).saturating_sub(1),
            spec.diags.len()
        )));
    }
    Ok(Matrix::from_fn(n, n, |i, j| {
        spec.diag(j as isize - i as isize).clone()
    }))
}

/// Skew-symmetric Toeplitz matrix with `values[k-1]` on the `k`-th
/// superdiagonal and its negative on the `k`-th subdiagonal.
pub fn skew_toeplitz<R: Ring>(values: &[R]) -> Matrix<R> {
    let n = values.len() + 1;
    Matrix::from_fn(n, n, |i, j| match j.cmp(&i) {
        std::cmp::Ordering::Equal => R::zero(),
        std::cmp::Ordering::Greater => values[j - i - 1].clone(),
        std::cmp::Ordering::Less => -values[i - j - 1].clone(),
    })
}

/// `B` over `Z[b1..b_{n-1}]` with `b_k` on the `k`-th superdiagonal.
pub fn generic_skew_toeplitz(n: usize) -> Result<Matrix<MultiPoly>> {
    if n < 2 {
        return Err(Error::usage(format!("skew Toeplitz family needs n >= 2, got {n}")));
    }
    let vars: Vec<MultiPoly> = (1..n)
        .map(|k| MultiPoly::var(n - 1, k))
        .collect::<Result<_>>()?;
    Ok(skew_toeplitz(&vars))
}

/// `A = J_n + B`, the generic Toeplitz matrix with `A + A^T = 2 J_n`.
pub fn johnson_family(n: usize) -> Result<Matrix<MultiPoly>> {
    let b = generic_skew_toeplitz(n)?;
    Ok(b.map(|x| x.add_ref(&MultiPoly::constant(n - 1, 1))))
}

/// Numeric member of the same family: `J_n + skew_toeplitz(values)`.
pub fn johnson_instance<R: Ring>(values: &[R]) -> Matrix<R> {
    skew_toeplitz(values).map(|x| x.add_ref(&R::one()))
}

impl<R: Ring> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::usage(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::usage("ragged rows"));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| R::zero())
    }

    pub fn identity(n: usize) -> Self {
        structured(Structured::Identity, n)
    }

    pub fn ones(n: usize) -> Self {
        structured(Structured::Ones, n)
    }

    pub fn diagonal(values: &[R]) -> Self {
        let n = values.len();
        Matrix::from_fn(n, n, |i, j| if i == j { values[i].clone() } else { R::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Order of a square matrix.
    pub fn order(&self) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::usage(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(self.rows)
    }

    pub fn data(&self) -> &[R] {
        &self.data
    }

    pub fn into_data(self) -> Vec<R> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<S>(&self, f: impl FnMut(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<S>(&self, f: impl FnMut(&R) -> Result<S>) -> Result<Matrix<S>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::usage(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(R::zero(), |acc, k| {
                acc.add_ref(&self.get(i, k).mul_ref(rhs.get(k, j)))
            })
        }))
    }

    fn zip_with(&self, rhs: &Self, what: &str, f: impl Fn(&R, &R) -> R) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::usage(format!(
                "cannot {what} {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "add", R::add_ref)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "subtract", R::sub_ref)
    }

    pub fn scale(&self, k: &R) -> Self {
        self.map(|x| x.mul_ref(k))
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(R::is_zero)
    }

    /// Exact structural checks; use the tolerance variants in
    /// `numaccretive` for floats.
    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..=i).all(|j| self.get(i, j).add_ref(self.get(j, i)).is_zero())
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_toeplitz(&self) -> bool {
        (1..self.rows).all(|i| (1..self.cols).all(|j| self.get(i, j) == self.get(i - 1, j - 1)))
    }

    /// `A_r(i, j)` as a fresh matrix.
    pub fn block(&self, idx: MinorIndex) -> Result<Self> {
        let n = self.order()?;
        idx.validate(n)?;
        Ok(Matrix::from_fn(idx.r, idx.r, |p, q| {
            self.get(idx.i - 1 + p, idx.j - 1 + q).clone()
        }))
    }

    /// Delete row `i` and column `j` (0-based).
    pub fn without(&self, i: usize, j: usize) -> Self {
        Matrix::from_fn(self.rows - 1, self.cols - 1, |p, q| {
            self.get(p + (p >= i) as usize, q + (q >= j) as usize).clone()
        })
    }

    /// `[[A, col], [row, corner]]`.
    pub fn bordered(&self, col: &[R], row: &[R], corner: R) -> Result<Self> {
        let n = self.order()?;
        if col.len() != n || row.len() != n {
            return Err(Error::usage("border vectors must match the matrix order"));
        }
        Ok(Matrix::from_fn(n + 1, n + 1, |i, j| match (i < n, j < n) {
            (true, true) => self.get(i, j).clone(),
            (true, false) => col[i].clone(),
            (false, true) => row[j].clone(),
            (false, false) => corner.clone(),
        }))
    }

    pub fn sum_entries(&self) -> R {
        self.data.iter().fold(R::zero(), |acc, x| acc.add_ref(x))
    }

    pub fn mat_vec(&self, v: &[R]) -> Result<Vec<R>> {
        if v.len() != self.cols {
            return Err(Error::usage("vector length does not match column count"));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(R::zero(), |acc, (a, x)| acc.add_ref(&a.mul_ref(x)))
            })
            .collect())
    }

    /// Largest entry magnitude for floating scalars; `None` for exact ones.
    pub fn max_abs(&self) -> Option<f64> {
        self.data
            .iter()
            .map(Ring::magnitude)
            .try_fold(0.0f64, |m, x| x.map(|x| m.max(x)))
    }
}

impl Matrix<MultiPoly> {
    /// Entrywise specialization `b_k -> assignment[k-1]`.
    pub fn eval(&self, assignment: &[num_rational::BigRational]) -> Result<Matrix<num_rational::BigRational>> {
        self.try_map(|p| p.eval(assignment))
    }
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.data[i * self.cols + j]
    }
}

pub fn structured<R: Ring>(kind: Structured, n: usize) -> Matrix<R> {
    Matrix::from_fn(n, n, |i, j| {
        let hit = match kind {
            Structured::Ones => true,
            Structured::Identity => i == j,
            Structured::LowerShift => i == j + 1,
        };
        if hit {
            R::one()
        } else {
            R::zero()
        }
    })
}

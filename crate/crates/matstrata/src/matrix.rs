//! Square matrices in two precisions: exact rational entries for canonical
//! forms and certified ranks, `f64` entries for sampled data.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rat::{format_rational, parse_rational, rational_to_f64};

/// Dense square matrix with exact rational entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    n: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![BigRational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::ParseMatrix("matrix must be square".into()));
            }
            data.extend(row);
        }
        Ok(Self { n, data })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = RatMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, other.n);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        RatMatrix { n: self.n, data }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, other.n);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        RatMatrix { n: self.n, data }
    }

    pub fn scale(&self, c: &BigRational) -> RatMatrix {
        let data = self.data.iter().map(|a| a * c).collect();
        RatMatrix { n: self.n, data }
    }

    pub fn add_scalar_diag(&self, c: &BigRational) -> RatMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            out[(i, i)] += c;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Exact determinant by fraction-free-ish Gaussian elimination on
    /// rationals.
    pub fn det(&self) -> BigRational {
        let n = self.n;
        let mut m = self.data.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !m[r * n + col].is_zero());
            let Some(pivot_row) = pivot_row else {
                return BigRational::zero();
            };
            if pivot_row != col {
                for j in 0..n {
                    m.swap(pivot_row * n + j, col * n + j);
                }
                det = -det;
            }
            let pivot = m[col * n + col].clone();
            det *= &pivot;
            for r in col + 1..n {
                let factor = &m[r * n + col] / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let t = &factor * &m[col * n + j];
                    m[r * n + j] -= t;
                }
            }
        }
        det
    }

    /// Exact inverse via Gauss-Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !a[r * n + col].is_zero())?;
            if pivot_row != col {
                for j in 0..n {
                    a.swap(pivot_row * n + j, col * n + j);
                    inv.data.swap(pivot_row * n + j, col * n + j);
                }
            }
            let pivot = a[col * n + col].clone();
            let pinv = pivot.recip();
            for j in 0..n {
                a[col * n + j] *= &pinv;
                inv.data[col * n + j] *= &pinv;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = &factor * &a[col * n + j];
                    a[r * n + j] -= t;
                    let t = &factor * &inv.data[col * n + j];
                    inv.data[r * n + j] -= t;
                }
            }
        }
        Some(inv)
    }

    /// Exact rank by Bareiss fraction-free elimination over the integers
    /// after clearing denominators.
    pub fn rank(&self) -> usize {
        int_rank(self.n, self.n, self.to_int_scaled())
    }

    /// Clears denominators row by row; row scaling preserves rank.
    fn to_int_scaled(&self) -> Vec<BigInt> {
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            let mut lcm = BigInt::one();
            for j in 0..n {
                lcm = lcm.lcm(self[(i, j)].denom());
            }
            for j in 0..n {
                let e = &self[(i, j)];
                out.push(e.numer() * (&lcm / e.denom()));
            }
        }
        out
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| rational_to_f64(&self[(i, j)]))
    }

    /// Largest absolute value of any entry.
    pub fn max_abs(&self) -> BigRational {
        let mut best = BigRational::zero();
        for e in &self.data {
            let a = e.abs();
            if a > best {
                best = a;
            }
        }
        best
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;

    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.n + j]
    }
}

/// Exact rank of an `rows x cols` integer matrix (row-major) by Bareiss
/// fraction-free elimination.
pub(crate) fn int_rank(rows: usize, cols: usize, mut m: Vec<BigInt>) -> usize {
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..cols {
        let Some(pivot_row) = (row..rows).find(|&r| !m[r * cols + col].is_zero()) else {
            continue;
        };
        if pivot_row != row {
            for j in 0..cols {
                m.swap(pivot_row * cols + j, row * cols + j);
            }
        }
        let pivot = m[row * cols + col].clone();
        for r in row + 1..rows {
            let lead = m[r * cols + col].clone();
            for j in 0..cols {
                let v = &pivot * &m[r * cols + j] - &lead * &m[row * cols + j];
                m[r * cols + j] = &v / &prev;
            }
        }
        prev = pivot;
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// Numerical rank: singular values above `tol * sigma_max`.
pub fn float_rank(m: &DMatrix<f64>, tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let svd = m.clone().svd(false, false);
    let sigma_max = svd.singular_values.max();
    if sigma_max <= 0.0 || !sigma_max.is_finite() {
        return 0;
    }
    svd.singular_values.iter().filter(|&&s| s > tol * sigma_max).count()
}

/// A square matrix in either exact or floating-point representation.
/// Exact matrices support certified rank and determinant computations;
/// float matrices are what sampling in float mode produces.
#[derive(Debug, Clone)]
pub enum Matrix {
    Exact(RatMatrix),
    Float(DMatrix<f64>),
}

impl Matrix {
    pub fn size(&self) -> usize {
        match self {
            Matrix::Exact(m) => m.size(),
            Matrix::Float(m) => m.nrows(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Matrix::Exact(_))
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        match self {
            Matrix::Exact(m) => m.to_f64(),
            Matrix::Float(m) => m.clone(),
        }
    }

    /// Exact view when available.
    pub fn as_exact(&self) -> Option<&RatMatrix> {
        match self {
            Matrix::Exact(m) => Some(m),
            Matrix::Float(_) => None,
        }
    }

    /// Largest absolute entry.
    pub fn max_abs_f64(&self) -> f64 {
        match self {
            Matrix::Exact(m) => rational_to_f64(&m.max_abs()),
            Matrix::Float(m) => m.iter().fold(0.0f64, |acc, &v| acc.max(v.abs())),
        }
    }
}

/// Evaluates the monic polynomial at a square matrix by Horner's scheme,
/// with the constant term contributing `a_0 * I`.
pub fn matrix_evaluate(p: &Polynomial, x: &Matrix) -> Matrix {
    match x {
        Matrix::Exact(m) => Matrix::Exact(matrix_evaluate_exact(p, m)),
        Matrix::Float(m) => Matrix::Float(matrix_evaluate_f64(p, m)),
    }
}

pub fn matrix_evaluate_exact(p: &Polynomial, x: &RatMatrix) -> RatMatrix {
    let n = x.size();
    let coeffs = p.coefficients();
    let mut acc = RatMatrix::zeros(n).add_scalar_diag(coeffs.last().unwrap());
    for c in coeffs.iter().rev().skip(1) {
        acc = acc.mul(x).add_scalar_diag(c);
    }
    acc
}

pub fn matrix_evaluate_f64(p: &Polynomial, x: &DMatrix<f64>) -> DMatrix<f64> {
    let n = x.nrows();
    let coeffs: Vec<f64> = p.coefficients().iter().map(rational_to_f64).collect();
    let mut acc = DMatrix::identity(n, n) * *coeffs.last().unwrap();
    for &c in coeffs.iter().rev().skip(1) {
        acc = &acc * x + DMatrix::identity(n, n) * c;
    }
    acc
}

// ---------------------------------------------------------------------------
// JSON interchange. A matrix is an array of rows; entries are integers,
// "p/q" strings, or floats. Exact parsing rejects entries that are not
// exactly representable as rationals; float parsing accepts everything.
// ---------------------------------------------------------------------------

fn entry_to_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from_integer(BigInt::from(i)))
            } else {
                // Serde preserves the literal text for non-integers; parse
                // the decimal form exactly.
                parse_rational(&n.to_string())
                    .map_err(|_| Error::ParseMatrix(format!("entry {n} is not an exact rational")))
            }
        }
        Value::String(s) => {
            parse_rational(s).map_err(|_| Error::ParseMatrix(format!("bad entry {s:?}")))
        }
        other => Err(Error::ParseMatrix(format!("bad entry {other}"))),
    }
}

fn entry_to_f64(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| Error::ParseMatrix(format!("bad entry {n}"))),
        Value::String(s) => {
            let r =
                parse_rational(s).map_err(|_| Error::ParseMatrix(format!("bad entry {s:?}")))?;
            Ok(rational_to_f64(&r))
        }
        other => Err(Error::ParseMatrix(format!("bad entry {other}"))),
    }
}

fn rows_of(v: &Value, m: Option<usize>) -> Result<&Vec<Value>> {
    let rows =
        v.as_array().ok_or_else(|| Error::ParseMatrix("expected an array of rows".into()))?;
    if let Some(m) = m {
        if rows.len() != m {
            return Err(Error::SizeMismatch { expected: m, got: rows.len() });
        }
    }
    Ok(rows)
}

/// Parses a JSON array-of-rows as an exact rational matrix.
pub fn matrix_from_json_exact(v: &Value, m: Option<usize>) -> Result<RatMatrix> {
    let rows = rows_of(v, m)?;
    let n = rows.len();
    let mut out = Vec::with_capacity(n);
    for row in rows {
        let entries = row
            .as_array()
            .ok_or_else(|| Error::ParseMatrix("expected each row to be an array".into()))?;
        if entries.len() != n {
            return Err(Error::ParseMatrix("matrix must be square".into()));
        }
        out.push(entries.iter().map(entry_to_rational).collect::<Result<Vec<_>>>()?);
    }
    RatMatrix::from_rows(out)
}

/// Parses a JSON array-of-rows as a float matrix.
pub fn matrix_from_json_f64(v: &Value, m: Option<usize>) -> Result<DMatrix<f64>> {
    let rows = rows_of(v, m)?;
    let n = rows.len();
    let mut data = Vec::with_capacity(n * n);
    for row in rows {
        let entries = row
            .as_array()
            .ok_or_else(|| Error::ParseMatrix("expected each row to be an array".into()))?;
        if entries.len() != n {
            return Err(Error::ParseMatrix("matrix must be square".into()));
        }
        for e in entries {
            data.push(entry_to_f64(e)?);
        }
    }
    Ok(DMatrix::from_row_slice(n, n, &data))
}

/// Parses a matrix, preferring the exact representation and falling back to
/// floats when any entry is not exactly rational.
pub fn matrix_from_json(v: &Value, m: Option<usize>) -> Result<Matrix> {
    match matrix_from_json_exact(v, m) {
        Ok(mat) => Ok(Matrix::Exact(mat)),
        Err(Error::ParseMatrix(_)) => Ok(Matrix::Float(matrix_from_json_f64(v, m)?)),
        Err(e) => Err(e),
    }
}

fn rational_entry_json(r: &BigRational) -> Value {
    if r.is_integer() {
        let i = r.to_integer();
        if let Ok(small) = i64::try_from(&i) {
            return json!(small);
        }
    }
    json!(format_rational(r))
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    match m {
        Matrix::Exact(m) => {
            let rows: Vec<Value> = (0..m.size())
                .map(|i| {
                    Value::Array((0..m.size()).map(|j| rational_entry_json(&m[(i, j)])).collect())
                })
                .collect();
            Value::Array(rows)
        }
        Matrix::Float(m) => {
            let rows: Vec<Value> = (0..m.nrows())
                .map(|i| Value::Array((0..m.ncols()).map(|j| json!(m[(i, j)])).collect()))
                .collect();
            Value::Array(rows)
        }
    }
}

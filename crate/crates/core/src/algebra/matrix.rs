//! Square integer matrices with exact determinant, characteristic polynomial,
//! rational solves and integer kernels.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{bigint_json, IntegerPolynomial};
use super::AlgebraError;

/// An `n × n` matrix of arbitrary-precision integers, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, AlgebraError> {
        let n = rows.len();
        if n == 0 {
            return Err(AlgebraError::EmptyMatrix);
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(AlgebraError::NotSquare {
                rows: n,
                cols: bad.len(),
            });
        }
        Ok(Self {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Panics on ragged or empty input; meant for literals.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("square integer matrix literal")
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        Self {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, 1)
    }

    pub fn scalar(n: usize, m: i64) -> Self {
        let mut a = Self::zeros(n);
        for i in 0..n {
            a[(i, i)] = BigInt::from(m);
        }
        a
    }

    /// Companion matrix of a monic polynomial of degree ≥ 1.
    pub fn companion(p: &IntegerPolynomial) -> Result<Self, AlgebraError> {
        let d = p.degree().filter(|&d| d >= 1).ok_or(AlgebraError::ZeroPolynomial)?;
        if !p.is_monic() {
            return Err(AlgebraError::NotMonic);
        }
        let mut a = Self::zeros(d);
        for i in 1..d {
            a[(i, i - 1)] = BigInt::one();
        }
        for i in 0..d {
            a[(i, d - 1)] = -p.coeff(i);
        }
        Ok(a)
    }

    /// Block-diagonal `a ⊕ b`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        let mut out = Self::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                out[(self.n + i, self.n + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| {
            self[(i, j)].to_f64().unwrap_or(f64::NAN)
        })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_dim(rhs.n)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * &rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_dim(rhs.n)?;
        Ok(Self {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.add(&rhs.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|a| a * k).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..e {
            acc = acc.mul(self).expect("same dimension");
        }
        acc
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, AlgebraError> {
        self.check_dim(v.len())?;
        Ok(self
            .rows()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn mul_rational_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>, AlgebraError> {
        self.check_dim(v.len())?;
        Ok(self
            .rows()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + b * a)
            })
            .collect())
    }

    fn check_dim(&self, m: usize) -> Result<(), AlgebraError> {
        if self.n == m {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch {
                expected: self.n,
                found: m,
            })
        }
    }

    /// Determinant by Bareiss fraction-free elimination; every division is exact.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        let mut m: Vec<Vec<BigInt>> = self.rows().map(<[BigInt]>::to_vec).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    /// `det(xI − A)` by the Samuelson–Berkowitz recurrence, which uses
    /// ring operations only (no division at all).
    pub fn char_poly(&self) -> IntegerPolynomial {
        let n = self.n;
        // column vector of coefficients, highest degree first
        let mut c: Vec<BigInt> = vec![BigInt::one(), -self[(0, 0)].clone()];
        for r in 1..n {
            // A_{r} = [[a_rr, R], [C, A_prev]] with A_prev the leading r×r block
            let a = self[(r, r)].clone();
            let row: Vec<BigInt> = (0..r).map(|j| self[(r, j)].clone()).collect();
            let col: Vec<BigInt> = (0..r).map(|i| self[(i, r)].clone()).collect();
            // Toeplitz first column: 1, -a, -R C, -R A C, -R A^2 C, ...
            let mut t = vec![BigInt::one(), -a];
            let mut v = col;
            for _ in 0..r {
                let rv: BigInt = row.iter().zip(&v).map(|(x, y)| x * y).sum();
                t.push(-rv);
                v = (0..r)
                    .map(|i| (0..r).map(|j| &self[(i, j)] * &v[j]).sum())
                    .collect();
            }
            let mut next = vec![BigInt::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, cj) in c.iter().enumerate() {
                    if i >= j {
                        if let Some(tv) = t.get(i - j) {
                            *slot += tv * cj;
                        }
                    }
                }
            }
            c = next;
        }
        c.reverse();
        IntegerPolynomial::new(c)
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self[(i, i)].clone()).sum()
    }

    fn to_rational_rows(&self) -> Vec<Vec<BigRational>> {
        self.rows()
            .map(|r| {
                r.iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect()
            })
            .collect()
    }

    /// Exact solution of `self · x = b` over ℚ; `None` when singular.
    pub fn solve_rational(&self, b: &[BigRational]) -> Result<Option<Vec<BigRational>>, AlgebraError> {
        self.check_dim(b.len())?;
        let n = self.n;
        let mut m = self.to_rational_rows();
        for (row, rhs) in m.iter_mut().zip(b) {
            row.push(rhs.clone());
        }
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(None);
            };
            m.swap(k, p);
            let inv = m[k][k].recip();
            for x in m[k].iter_mut() {
                *x *= &inv;
            }
            for i in 0..n {
                if i != k && !m[i][k].is_zero() {
                    let f = m[i][k].clone();
                    for j in k..=n {
                        let t = &m[k][j] * &f;
                        m[i][j] -= t;
                    }
                }
            }
        }
        Ok(Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect()))
    }

    /// Inverse over ℤ; `None` unless `|det| = 1`.
    pub fn inverse_integer(&self) -> Option<Self> {
        if !self.det().abs().is_one() {
            return None;
        }
        let n = self.n;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let e: Vec<BigRational> = (0..n)
                .map(|i| BigRational::from_integer(BigInt::from((i == j) as i64)))
                .collect();
            cols.push(self.solve_rational(&e).ok()??);
        }
        let mut out = Self::zeros(n);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, x) in col.into_iter().enumerate() {
                debug_assert!(x.is_integer());
                out[(i, j)] = x.to_integer();
            }
        }
        Some(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(i, j)] = self[(j, i)].clone();
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.n + j]
    }
}

/// A ℤ-basis of `{v ∈ ℤ^cols : M v = 0}` for a (possibly non-square) integer matrix
/// given by rows. Unimodular row reduction of `[Mᵀ | I]`; the basis is returned in
/// Hermite normal form so the output is canonical.
pub fn integer_kernel(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    // one working row per unknown: (Mᵀ row, identity row)
    let mut work: Vec<(Vec<BigInt>, Vec<BigInt>)> = (0..cols)
        .map(|j| {
            let t: Vec<BigInt> = rows.iter().map(|r| r[j].clone()).collect();
            let mut e = vec![BigInt::zero(); cols];
            e[j] = BigInt::one();
            (t, e)
        })
        .collect();
    let m = rows.len();
    let mut pivot_row = 0;
    for c in 0..m {
        if pivot_row == work.len() {
            break;
        }
        // gcd-reduce column c among rows pivot_row..
        loop {
            let nz: Vec<usize> = (pivot_row..work.len())
                .filter(|&i| !work[i].0[c].is_zero())
                .collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    work.swap(pivot_row, i);
                    pivot_row += 1;
                }
                break;
            }
            let best = *nz
                .iter()
                .min_by(|&&a, &&b| work[a].0[c].abs().cmp(&work[b].0[c].abs()))
                .unwrap();
            work.swap(pivot_row, best);
            let p = work[pivot_row].0[c].clone();
            for i in pivot_row + 1..work.len() {
                if work[i].0[c].is_zero() {
                    continue;
                }
                let q = work[i].0[c].div_floor(&p);
                let (head, tail) = work.split_at_mut(i);
                let src = &head[pivot_row];
                let dst = &mut tail[0];
                for (d, s) in dst.0.iter_mut().zip(&src.0) {
                    *d -= &q * s;
                }
                for (d, s) in dst.1.iter_mut().zip(&src.1) {
                    *d -= &q * s;
                }
            }
        }
    }
    let kernel: Vec<Vec<BigInt>> = work
        .into_iter()
        .filter(|(t, _)| t.iter().all(Zero::is_zero))
        .map(|(_, e)| e)
        .collect();
    hermite_normal_form(kernel)
}

/// Row-style Hermite normal form of a full-row-rank integer basis.
pub fn hermite_normal_form(mut basis: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let Some(cols) = basis.first().map(Vec::len) else {
        return basis;
    };
    let mut r = 0;
    for c in 0..cols {
        if r == basis.len() {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..basis.len()).filter(|&i| !basis[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz
                .iter()
                .min_by(|&&a, &&b| basis[a][c].abs().cmp(&basis[b][c].abs()))
                .unwrap();
            basis.swap(r, best);
            if nz.len() == 1 {
                if basis[r][c].is_negative() {
                    for x in basis[r].iter_mut() {
                        *x = -&*x;
                    }
                }
                // reduce rows above into [0, pivot)
                let p = basis[r][c].clone();
                for i in 0..r {
                    let q = basis[i][c].div_floor(&p);
                    if !q.is_zero() {
                        let src = basis[r].clone();
                        for (d, s) in basis[i].iter_mut().zip(&src) {
                            *d -= &q * s;
                        }
                    }
                }
                r += 1;
                break;
            }
            let p = basis[r][c].clone();
            for i in r + 1..basis.len() {
                let q = basis[i][c].div_floor(&p);
                if !q.is_zero() {
                    let src = basis[r].clone();
                    for (d, s) in basis[i].iter_mut().zip(&src) {
                        *d -= &q * s;
                    }
                }
            }
        }
    }
    basis
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Parses the text format: first line `n`, then `n` lines of `n` integers.
impl FromStr for IntegerMatrix {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        parse_matrix_lines(&mut lines)
    }
}

pub(crate) fn parse_matrix_lines<'a>(
    lines: &mut impl Iterator<Item = &'a str>,
) -> Result<IntegerMatrix, AlgebraError> {
    let header = lines
        .next()
        .ok_or_else(|| AlgebraError::Parse("missing dimension line".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| AlgebraError::Parse(format!("bad dimension {header:?}")))?;
    if n == 0 {
        return Err(AlgebraError::EmptyMatrix);
    }
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| AlgebraError::Parse(format!("expected {n} rows, found {i}")))?;
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| AlgebraError::Parse(format!("bad integer {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(AlgebraError::Parse(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
        rows.push(row);
    }
    IntegerMatrix::from_rows(rows)
}

impl Serialize for IntegerMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<serde_json::Value> = self
            .rows()
            .map(|r| serde_json::Value::Array(r.iter().map(bigint_json::to_value).collect()))
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntegerMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Row(#[serde(deserialize_with = "bigint_json::deserialize_vec")] Vec<BigInt>);
        let rows = Vec::<Row>::deserialize(d)?;
        Self::from_rows(rows.into_iter().map(|r| r.0).collect()).map_err(serde::de::Error::custom)
    }
}

//! Exact rational linear algebra.
//!
//! Everything in this crate is computed over `Q` with arbitrary-precision
//! integers. Scalars are [`Rat`] (always in lowest terms), vectors are
//! [`RVec`] and dense matrices are [`RMat`]. Rank computations go through a
//! fraction-free (Bareiss) elimination on integer rows; reduced row-echelon
//! forms are computed with ordinary Gauss-Jordan steps on rationals.
//!
//! Rationals serialize as strings `"p/q"`, or `"p"` when `q = 1`.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_dim, Error, Result};

/// Arbitrary-precision rational, always kept in canonical form.
pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    Rat::from_str(t).map_err(|_| Error::Parse(format!("invalid rational {s:?}")))
}

pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

/// Least common multiple of the denominators of `xs` (1 for an empty slice).
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scale a rational row to a primitive integer row (same direction).
pub fn primitive_integer_row(xs: &[Rat]) -> Vec<BigInt> {
    let den = common_denominator(xs);
    let ints: Vec<BigInt> = xs.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    make_primitive(ints)
}

pub(crate) fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

/// Rank of an integer matrix by fraction-free elimination.
///
/// After `k` pivots every remaining entry equals a `(k+1)`-minor of the
/// input, so the division by the previous pivot is exact.
pub(crate) fn integer_rank(mut m: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let rows = m.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..cols {
                let v = &pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

fn serialize_rats<S: Serializer>(xs: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(format_rat))
}

fn deserialize_rats<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
    let raw = Vec::<RatLiteral>::deserialize(d)?;
    raw.into_iter()
        .map(|r| r.into_rat().map_err(D::Error::custom))
        .collect()
}

/// Accept both `"p/q"` strings and bare JSON integers on input.
#[derive(Deserialize)]
#[serde(untagged)]
enum RatLiteral {
    Str(String),
    Int(i64),
}

impl RatLiteral {
    fn into_rat(self) -> Result<Rat> {
        match self {
            RatLiteral::Str(s) => parse_rat(&s),
            RatLiteral::Int(n) => Ok(int(n)),
        }
    }
}

/// Serde adapter for a single rational stored as a string.
pub mod rat_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        RatLiteral::deserialize(d)?
            .into_rat()
            .map_err(D::Error::custom)
    }
}

/// A vector of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RVec(Vec<Rat>);

impl RVec {
    pub fn new(entries: Vec<Rat>) -> Self {
        RVec(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        RVec(vec![Rat::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rat::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        RVec(xs.iter().map(|&x| int(x)).collect())
    }

    pub fn from_integers(xs: &[BigInt]) -> Self {
        RVec(xs.iter().cloned().map(Rat::from_integer).collect())
    }

    pub fn parse(xs: &[&str]) -> Result<Self> {
        xs.iter()
            .map(|s| parse_rat(s))
            .collect::<Result<_>>()
            .map(RVec)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rat> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.0.iter()
    }

    pub fn set(&mut self, i: usize, value: Rat) {
        self.0[i] = value;
    }

    pub fn dot(&self, other: &RVec) -> Rat {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn add(&self, other: &RVec) -> RVec {
        RVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RVec) -> RVec {
        RVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rat) -> RVec {
        RVec(self.0.iter().map(|a| a * s).collect())
    }

    /// `self + s * other`
    pub fn axpy(&self, s: &Rat, other: &RVec) -> RVec {
        RVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + s * b)
                .collect(),
        )
    }

    pub fn neg(&self) -> RVec {
        RVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn sum(&self) -> Rat {
        self.0.iter().fold(Rat::zero(), |acc, x| acc + x)
    }

    pub fn first_nonzero(&self) -> Option<&Rat> {
        self.0.iter().find(|x| !x.is_zero())
    }

    /// Positive rescaling so that the first nonzero coordinate is `+1` or `-1`.
    /// Two nonzero vectors span the same ray iff their canonical forms agree.
    pub fn canonical_ray(&self) -> RVec {
        match self.first_nonzero() {
            Some(x) => self.scale(&(Rat::one() / x.abs())),
            None => self.clone(),
        }
    }

    pub fn primitive_integer(&self) -> Vec<BigInt> {
        primitive_integer_row(&self.0)
    }

    pub fn concat(&self, other: &RVec) -> RVec {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        RVec(v)
    }
}

impl Index<usize> for RVec {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl From<Vec<Rat>> for RVec {
    fn from(v: Vec<Rat>) -> Self {
        RVec(v)
    }
}

impl FromIterator<Rat> for RVec {
    fn from_iter<I: IntoIterator<Item = Rat>>(iter: I) -> Self {
        RVec(iter.into_iter().collect())
    }
}

impl fmt::Display for RVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for RVec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_rats(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for RVec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        deserialize_rats(d).map(RVec)
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Output of [`RMat::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RMat,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl RMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn diag(entries: &[Rat]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// Build from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: &[RVec]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            check_dim("matrix row", cols, r.dim())?;
            data.extend(r.iter().cloned());
        }
        Ok(RMat {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Build from columns; every column must have `rows` entries.
    pub fn from_cols(rows: usize, cols: &[RVec]) -> Result<Self> {
        Ok(Self::from_rows(rows, cols)?.transpose())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rv: Vec<RVec> = rows.iter().map(|r| RVec::from_ints(r)).collect();
        Self::from_rows(cols, &rv).expect("ragged integer matrix")
    }

    /// Outer product `col * row^T`.
    pub fn outer(col: &RVec, row: &RVec) -> Self {
        let mut data = Vec::with_capacity(col.dim() * row.dim());
        for a in col.iter() {
            for b in row.iter() {
                data.push(a * b);
            }
        }
        RMat {
            rows: col.dim(),
            cols: row.dim(),
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rat) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> RVec {
        RVec(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn col(&self, j: usize) -> RVec {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<RVec> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn col_vecs(&self) -> Vec<RVec> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    /// Row-major flattening.
    pub fn to_vec(&self) -> RVec {
        RVec(self.data.clone())
    }

    /// Inverse of [`RMat::to_vec`].
    pub fn from_vec(rows: usize, cols: usize, v: &RVec) -> Result<Self> {
        check_dim("matrix from flat vector", rows * cols, v.dim())?;
        Ok(RMat {
            rows,
            cols,
            data: v.entries().to_vec(),
        })
    }

    pub fn transpose(&self) -> RMat {
        let mut t = RMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RMat) -> Result<RMat> {
        check_dim("matrix product", self.cols, other.rows)?;
        let mut out = RMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &RVec) -> Result<RVec> {
        check_dim("matrix-vector product", self.cols, v.dim())?;
        Ok((0..self.rows)
            .map(|i| (0..self.cols).fold(Rat::zero(), |acc, j| acc + self.get(i, j) * &v[j]))
            .collect())
    }

    /// `v^T * self`
    pub fn left_mul_vec(&self, v: &RVec) -> Result<RVec> {
        check_dim("vector-matrix product", self.rows, v.dim())?;
        Ok((0..self.cols)
            .map(|j| (0..self.rows).fold(Rat::zero(), |acc, i| acc + &v[i] * self.get(i, j)))
            .collect())
    }

    /// Bilinear form `x^T * self * y`.
    pub fn bilinear(&self, x: &RVec, y: &RVec) -> Result<Rat> {
        Ok(x.dot(&self.mul_vec(y)?))
    }

    pub fn add(&self, other: &RMat) -> Result<RMat> {
        check_dim("matrix sum rows", self.rows, other.rows)?;
        check_dim("matrix sum cols", self.cols, other.cols)?;
        Ok(RMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &RMat) -> Result<RMat> {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, s: &Rat) -> RMat {
        RMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).fold(Rat::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Frobenius pairing `sum_ij a_ij b_ij`.
    pub fn pairing(&self, other: &RMat) -> Result<Rat> {
        check_dim("pairing rows", self.rows, other.rows)?;
        check_dim("pairing cols", self.cols, other.cols)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn select_cols(&self, idx: &[usize]) -> RMat {
        let mut m = RMat::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                m.set(i, k, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> RMat {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        RMat {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Kronecker product.
    pub fn kron(&self, other: &RMat) -> RMat {
        let mut m = RMat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        m
    }

    /// Reduced row-echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = Rat::one() / m.get(r, c);
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        Rref {
            matrix: m,
            pivots,
            rank,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rank via fraction-free elimination on row-scaled integer rows.
    pub fn rank(&self) -> usize {
        let rows = (0..self.rows)
            .map(|i| primitive_integer_row(&self.data[i * self.cols..(i + 1) * self.cols]))
            .collect();
        integer_rank(rows, self.cols)
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column of the rref.
    pub fn kernel_basis(&self) -> Vec<RVec> {
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = RVec::zeros(self.cols);
                v.set(free, Rat::one());
                for (r, &p) in pivots.iter().enumerate() {
                    v.set(p, -matrix.get(r, free));
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &RVec) -> Result<Option<RVec>> {
        check_dim("solve right-hand side", self.rows, b.dim())?;
        let mut aug = RMat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = RVec::zeros(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            x.set(p, matrix.get(r, self.cols).clone());
        }
        Ok(Some(x))
    }

    /// Inverse of a square nonsingular matrix.
    pub fn inverse(&self) -> Option<RMat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = RMat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Some(matrix.select_cols(&idx))
    }
}

impl fmt::Display for RMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// Matrices serialize as a list of rows. A matrix with no rows loses its
/// column count, so formats that allow empty matrices carry dims separately.
impl Serialize for RMat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.row_vecs())
    }
}

impl<'de> Deserialize<'de> for RMat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<RVec>::deserialize(d)?;
        let cols = rows.first().map_or(0, RVec::dim);
        RMat::from_rows(cols, &rows).map_err(D::Error::custom)
    }
}

/// Matrix of the orthogonal projection onto `span(basis)^perp` in `R^dim`.
/// `basis` must be linearly independent.
pub fn complement_projector(dim: usize, basis: &[RVec]) -> RMat {
    if basis.is_empty() {
        return RMat::identity(dim);
    }
    let b = RMat::from_cols(dim, basis).expect("basis dims");
    let gram_inv = b
        .transpose()
        .mul(&b)
        .expect("gram")
        .inverse()
        .expect("basis must be linearly independent");
    let along = b
        .mul(&gram_inv)
        .and_then(|m| m.mul(&b.transpose()))
        .expect("dims");
    RMat::identity(dim).sub(&along).expect("dims")
}

/// Orthogonal projection of `v` onto `span(basis)^perp`.
pub fn project_out(v: &RVec, basis: &[RVec]) -> RVec {
    complement_projector(v.dim(), basis)
        .mul_vec(v)
        .expect("dims")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings_round_trip() {
        let r = rat(-6, 4);
        assert_eq!(format_rat(&r), "-3/2");
        assert_eq!(parse_rat("-3/2").unwrap(), r);
        assert_eq!(format_rat(&int(5)), "5");
        assert_eq!(parse_rat(" 10/2 ").unwrap(), int(5));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn canonical_form_after_arithmetic() {
        let a = rat(1, 6) + rat(1, 3);
        assert_eq!(a, rat(1, 2));
        assert_eq!(a.denom(), &BigInt::from(2));
    }

    #[test]
    fn rref_identity_is_fixed() {
        let id = RMat::identity(2);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rref_dependent_rows() {
        let m = RMat::from_ints(&[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.matrix, RMat::from_ints(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        assert!(RMat::identity(3).kernel_basis().is_empty());
        let k = RMat::zeros(3, 3).kernel_basis();
        assert_eq!(k.len(), 3);
        assert_eq!(RMat::from_rows(3, &k).unwrap().rank(), 3);
    }

    #[test]
    fn kernel_of_single_row() {
        let m = RMat::from_ints(&[&[1, 1, 0]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().is_zero());
        }
        assert_eq!(RMat::from_rows(3, &k).unwrap().rank(), 2);
    }

    #[test]
    fn solve_cases() {
        let b = RVec::from_ints(&[3, -4]);
        assert_eq!(RMat::identity(2).solve(&b).unwrap(), Some(b.clone()));
        let m = RMat::from_ints(&[&[1, 0], &[1, 0]]);
        assert_eq!(m.solve(&RVec::from_ints(&[1, 2])).unwrap(), None);
        assert!(m.solve(&RVec::from_ints(&[1])).is_err());
    }

    #[test]
    fn inverse_and_products() {
        let m = RMat::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(RMat::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn projection_removes_component() {
        let v = RVec::from_ints(&[1, 2, 3]);
        let p = project_out(&v, &[RVec::from_ints(&[1, 1, 0])]);
        assert_eq!(p, RVec::new(vec![rat(-1, 2), rat(1, 2), int(3)]));
    }

    #[test]
    fn canonical_ray_keeps_direction() {
        let v = RVec::from_ints(&[0, -3, 6]);
        assert_eq!(v.canonical_ray(), RVec::from_ints(&[0, -1, 2]));
    }

    #[test]
    fn json_format() {
        let v = RVec::new(vec![rat(1, 2), int(3)]);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"["1/2","3"]"#);
        let back: RVec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        let m: RMat = serde_json::from_str(r#"[["1","0"],[0,"2/4"]]"#).unwrap();
        assert_eq!(m.get(1, 1), &rat(1, 2));
    }
}

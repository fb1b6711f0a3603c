//! Exact integer/rational arithmetic and dense linear algebra.
//!
//! Everything here is deliberately small and dense: matrices at the scale of
//! the graded-piece computations in this crate have at most a few hundred
//! rows, so there is no sparse path and no modular lifting.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field tag: the rationals or a prime field `F_p`.
///
/// Prime-field elements are carried as `BigRational` values with denominator
/// one and numerator in `[0, p)`, so that both fields share one storage type.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default,
)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::Input(format!("{p} is not a prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Maps an arbitrary rational into the field. Panics if the denominator
    /// vanishes modulo `p`.
    pub fn normalize(&self, x: BigRational) -> BigRational {
        match self {
            Field::Rational => x,
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let num = x.numer().mod_floor(&p);
                if x.denom().is_one() {
                    return BigRational::from_integer(num);
                }
                let den = x.denom().mod_floor(&p);
                let inv =
                    mod_inverse(&den, &p).expect("denominator divisible by the characteristic");
                BigRational::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    pub fn from_i64(&self, v: i64) -> BigRational {
        self.normalize(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        match self {
            Field::Rational => a + b,
            Field::Prime(_) => self.normalize(a + b),
        }
    }

    pub fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        match self {
            Field::Rational => a - b,
            Field::Prime(_) => self.normalize(a - b),
        }
    }

    pub fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        match self {
            Field::Rational => a * b,
            Field::Prime(_) => self.normalize(a * b),
        }
    }

    pub fn neg(&self, a: &BigRational) -> BigRational {
        match self {
            Field::Rational => -a,
            Field::Prime(_) => self.normalize(-a),
        }
    }

    pub fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            return None;
        }
        match self {
            Field::Rational => Some(a.recip()),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                mod_inverse(a.numer(), &p).map(BigRational::from_integer)
            }
        }
    }

    pub fn div(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `q`, `fp:<p>`, or bare `fp` for `F_2`.
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        if s == "fp" {
            return Ok(Field::Prime(2));
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::Input(format!("bad characteristic in field `{s}`")))?;
            return Field::prime(p);
        }
        Err(Error::Input(format!(
            "unknown field `{s}` (expected q or fp:<p>)"
        )))
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(p).extended_gcd(p);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(p))
    } else {
        None
    }
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Parses an exact rational such as `3`, `-7/2`. Decimal points are rejected.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Input(format!("not an exact rational: `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must share `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigRational>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        RatMatrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: Vec<BigRational>) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Reduced row echelon form over the rationals with its pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        self.rref_over(Field::Rational)
    }

    /// Reduced row echelon form with arithmetic in `field`. Entries are
    /// first mapped into the field.
    pub fn rref_over(&self, field: Field) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        if let Field::Prime(_) = field {
            for x in m.data.iter_mut() {
                *x = field.normalize(x.clone());
            }
        }
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
            let inv = field.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = field.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = field.sub(m.get(i, j), &field.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn rank_over(&self, field: Field) -> usize {
        self.rref_over(field).1.len()
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of the right kernel: one vector per free column, with that
    /// column set to one.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        self.kernel_basis_over(Field::Rational)
    }

    pub fn kernel_basis_over(&self, field: Field) -> Vec<Vec<BigRational>> {
        let (r, pivots) = self.rref_over(field);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[free] = BigRational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = field.neg(r.get(row, free));
                }
                v
            })
            .collect()
    }

    /// Exact inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, BigRational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// `cols` is needed to describe matrices with no rows.
    pub fn from_i64(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix::from_rows(
            self.cols,
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .map(|x| BigRational::from_integer(x.clone()))
                        .collect()
                })
                .collect(),
        )
    }

    /// Determinant by fraction-free elimination over the rationals.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.to_rat();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return BigInt::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) / &pivot;
                for j in c..n {
                    let v = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        det.to_integer()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * f;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * f;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }
}

/// `u * a * v == d` with `u`, `v` unimodular and `d` diagonal with
/// nonnegative entries `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
    pub shape: (usize, usize),
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.shape.0.min(self.shape.1);
        (0..k).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Re-checks every structural claim by exact arithmetic.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let (p, q) = self.shape;
        if self.u.mul(a).mul(&self.v) != self.d {
            return false;
        }
        if self.u.det().abs() != BigInt::one() || self.v.det().abs() != BigInt::one() {
            return false;
        }
        for i in 0..p {
            for j in 0..q {
                if i != j && !self.d.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        let diag = self.diagonal();
        if diag.iter().any(|x| x.is_negative()) {
            return false;
        }
        diag.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            }
        })
    }
}

/// Smith normal form by elementary row and column operations. The pivot is
/// always the entry of least nonzero absolute value in the remaining block,
/// ties broken by lowest (row, column) index, so transforms are reproducible.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (p, q) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(p);
    let mut v = IntMatrix::identity(q);

    for t in 0..p.min(q) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..p {
                for j in t..q {
                    let x = d.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if d.get(bi, bj).abs() <= x.abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return SmithDecomposition {
                    u,
                    v,
                    d,
                    shape: (p, q),
                };
            };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let pivot = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..p {
                let (quot, rem) = d.get(i, t).div_mod_floor(&pivot);
                if !quot.is_zero() {
                    d.add_row(i, t, &-&quot);
                    u.add_row(i, t, &-&quot);
                }
                if !rem.is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..q {
                let (quot, rem) = d.get(t, j).div_mod_floor(&pivot);
                if !quot.is_zero() {
                    d.add_col(j, t, &-&quot);
                    v.add_col(j, t, &-&quot);
                }
                if !rem.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Pivot must divide the rest of the block; otherwise fold the
            // offending row in and repeat.
            let offending =
                (t + 1..p).find(|&i| (t + 1..q).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition {
        u,
        v,
        d,
        shape: (p, q),
    }
}

/// Row-style Hermite normal form of an integer matrix of full row rank,
/// returning `(h, w)` with `w` unimodular and `h = w * a`.
pub fn hermite_rows(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (p, q) = (a.rows, a.cols);
    let mut h = a.clone();
    let mut w = IntMatrix::identity(p);
    let mut r = 0;
    for c in 0..q {
        if r == p {
            break;
        }
        // Euclid down the column until a single nonzero remains at row r.
        loop {
            let nz: Vec<usize> = (r..p).filter(|&i| !h.get(i, c).is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let k = *nz.iter().min_by_key(|&&i| (h.get(i, c).abs(), i)).unwrap();
            h.swap_rows(r, k);
            w.swap_rows(r, k);
            let mut done = true;
            for i in r + 1..p {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let quot = h.get(i, c).div_floor(h.get(r, c));
                h.add_row(i, r, &-&quot);
                w.add_row(i, r, &-&quot);
                if !h.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            w.negate_row(r);
        }
        let pivot = h.get(r, c).clone();
        for i in 0..r {
            let quot = h.get(i, c).div_floor(&pivot);
            if !quot.is_zero() {
                h.add_row(i, r, &-&quot);
                w.add_row(i, r, &-&quot);
            }
        }
        r += 1;
    }
    (h, w)
}

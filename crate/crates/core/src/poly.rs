//! Sparse multivariate polynomials with exact coefficients over Q or F_p,
//! plus the Laurent extension in the auxiliary variables `T1..Tm` used to
//! write elements of a total coordinate ring.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors, so iteration is in
//! lexicographic order (`Z0 > Z1 > ...`) and every enumeration is
//! deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat, Field};

pub type Exponent = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Exponent, BigRational>,
}

impl MultiPoly {
    pub fn zero(field: Field, nvars: usize) -> Self {
        MultiPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, nvars: usize, c: BigRational) -> Self {
        Self::monomial(field, vec![0; nvars], c)
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Self::constant(field, nvars, BigRational::one())
    }

    pub fn var(field: Field, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(field, e, BigRational::one())
    }

    pub fn monomial(field: Field, exponent: Exponent, coeff: BigRational) -> Self {
        let nvars = exponent.len();
        let mut p = Self::zero(field, nvars);
        let c = field.normalize(coeff);
        if !c.is_zero() {
            p.terms.insert(exponent, c);
        }
        p
    }

    /// Sums duplicate exponents and drops zeros.
    pub fn from_terms<I>(field: Field, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, BigRational)>,
    {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            p.add_term(e, field.normalize(c));
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = self.field.add(o.get(), &c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigRational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Largest term in lexicographic order.
    pub fn leading_lex(&self) -> Option<(&Exponent, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Total degree of the highest-degree term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u32> {
        self.terms.keys().map(|e| weighted(e, weights)).max()
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.is_weighted_homogeneous(&vec![1; self.nvars])
    }

    pub fn is_weighted_homogeneous(&self, weights: &[u32]) -> bool {
        let mut degs = self.terms.keys().map(|e| weighted(e, weights));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.nvars != other.nvars {
            return Err(Error::Input(format!(
                "variable count mismatch: {} vs {}",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = MultiPoly::zero(self.field, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, self.field.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        let c = self.field.normalize(c.clone());
        if c.is_zero() {
            return MultiPoly::zero(self.field, self.nvars);
        }
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), self.field.mul(x, &c)))
                .collect(),
        }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[u32]) -> MultiPoly {
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.field, self.nvars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Iterated partial derivative `d^alpha p`. Only defined over Q, where
    /// vanishing of derivatives up to order `s` is equivalent to vanishing to
    /// order `s`.
    pub fn partial_derivative(&self, alpha: &[u32]) -> Result<MultiPoly> {
        if self.field != Field::Rational {
            return Err(Error::Unsupported(
                "derivative conditions need characteristic 0; use the Gröbner path".into(),
            ));
        }
        if alpha.len() != self.nvars {
            return Err(Error::Input(
                "derivative multi-index has wrong length".into(),
            ));
        }
        let mut out = MultiPoly::zero(self.field, self.nvars);
        for (e, c) in &self.terms {
            if e.iter().zip(alpha).any(|(x, a)| a > x) {
                continue;
            }
            let mut factor = BigInt::one();
            for (&x, &a) in e.iter().zip(alpha) {
                factor *= falling_factorial(x, a);
            }
            let ne: Exponent = e.iter().zip(alpha).map(|(x, a)| x - a).collect();
            out.add_term(ne, c * BigRational::from_integer(factor));
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.nvars {
            return Err(Error::Input(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(self.field.normalize(acc))
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder. Uses lexicographic division; a single polynomial is a
    /// Gröbner basis of its principal ideal, so the remainder is zero
    /// exactly when the divisor divides.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert!(self.check_compatible(divisor).is_ok());
        let (lt, lc) = divisor.leading_lex()?;
        let lc_inv = self.field.inv(lc)?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.field, self.nvars);
        while let Some((e, c)) = rem.leading_lex() {
            if e.iter().zip(lt).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exponent = e.iter().zip(lt).map(|(a, b)| a - b).collect();
            let qc = self.field.mul(c, &lc_inv);
            let step = divisor.shift(&qe).scale(&qc);
            rem = &rem - &step;
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Re-embeds into `nvars + k` variables with `k` new leading variables.
    pub fn prepend_vars(&self, k: usize) -> MultiPoly {
        MultiPoly {
            field: self.field,
            nvars: self.nvars + k,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut ne = vec![0; k];
                    ne.extend_from_slice(e);
                    (ne, c.clone())
                })
                .collect(),
        }
    }

    /// Drops the first `k` variables, which must not occur.
    pub fn strip_leading_vars(&self, k: usize) -> Option<MultiPoly> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[..k].iter().any(|&x| x != 0) {
                return None;
            }
            terms.insert(e[k..].to_vec(), c.clone());
        }
        Some(MultiPoly {
            field: self.field,
            nvars: self.nvars - k,
            terms,
        })
    }

    /// Coefficients against an ordered list of monomials; fails if a term
    /// falls outside the list.
    pub fn coefficient_vector(&self, monomials: &[Exponent]) -> Option<Vec<BigRational>> {
        let index: BTreeMap<&Exponent, usize> =
            monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut v = vec![BigRational::zero(); monomials.len()];
        for (e, c) in &self.terms {
            v[*index.get(e)?] = c.clone();
        }
        Some(v)
    }

    pub fn from_coefficient_vector(
        field: Field,
        monomials: &[Exponent],
        coeffs: &[BigRational],
    ) -> Self {
        let nvars = monomials.first().map_or(0, |m| m.len());
        Self::from_terms(
            field,
            nvars,
            monomials.iter().cloned().zip(coeffs.iter().cloned()),
        )
    }

    /// Reinterprets the coefficients in another field.
    pub fn to_field(&self, field: Field) -> MultiPoly {
        Self::from_terms(
            field,
            self.nvars,
            self.terms.iter().map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    /// Scales so the lexicographically leading coefficient is one.
    pub fn monic_lex(&self) -> MultiPoly {
        match self.leading_lex() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field.inv(c).unwrap()),
        }
    }

    pub fn parse(text: &str, names: &[String], field: Field) -> Result<MultiPoly> {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            names,
            field,
        }
        .parse_all()
    }

    /// Parses with the default variable names `Z0..Z{nvars-1}`.
    pub fn parse_z(text: &str, nvars: usize, field: Field) -> Result<MultiPoly> {
        Self::parse(text, &z_names(nvars), field)
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

fn weighted(e: &[u32], weights: &[u32]) -> u32 {
    e.iter().zip(weights).map(|(a, w)| a * w).sum()
}

pub(crate) fn falling_factorial(x: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(x - i))
}

pub fn z_names(nvars: usize) -> Vec<String> {
    (0..nvars).map(|i| format!("Z{i}")).collect()
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("incompatible polynomials")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("incompatible polynomials")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("incompatible polynomials")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), self.field.neg(c)))
                .collect(),
        }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a MultiPoly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        // highest lex term first
        for (k, (e, c)) in self.poly.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        self.names[i].clone()
                    } else {
                        format!("{}^{}", self.names[i], x)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = z_names(self.nvars);
        write!(f, "{}", self.display_with(&names))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
    field: Field,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse_all(mut self) -> Result<MultiPoly> {
        if self.peek().is_none() {
            return self.err("empty polynomial");
        }
        let p = self.expr()?;
        if self.peek().is_some() {
            return self.err(format!("unexpected `{}`", self.src[self.pos] as char));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.unary()?;
            if c == b'*' {
                acc = &acc * &rhs;
            } else {
                let constant = rhs.terms.len() == 1
                    && rhs.terms.keys().next().unwrap().iter().all(|&x| x == 0);
                if !constant {
                    self.pos = at;
                    return self.err("division only by nonzero constants");
                }
                let c = rhs.terms.values().next().unwrap();
                acc = acc.scale(&self.field.inv(c).unwrap());
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected a nonnegative integer exponent");
            }
            let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let Ok(n) = s.parse::<u32>() else {
                self.pos = start;
                return self.err("exponent too large");
            };
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let nvars = self.names.len();
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let p = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .unwrap();
                let c = self.field.normalize(BigRational::from_integer(n));
                Ok(MultiPoly::constant(self.field, nvars, c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.names.iter().position(|n| n == name) {
                    Some(i) => Ok(MultiPoly::var(self.field, nvars, i)),
                    None => {
                        self.pos = start;
                        self.err(format!("unknown variable `{name}`"))
                    }
                }
            }
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
        }
    }
}

/// All exponent vectors of total degree `d` in `nvars` variables, in
/// descending lexicographic order (so `Z0^d` first). Empty when `d < 0`.
pub fn monomials_of_degree(nvars: usize, d: i64) -> Vec<Exponent> {
    monomials_of_weighted_degree(&vec![1; nvars], d)
}

/// Exponent vectors with `sum(w_i * e_i) == d`, descending lexicographic.
pub fn monomials_of_weighted_degree(weights: &[u32], d: i64) -> Vec<Exponent> {
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        if i + 1 == weights.len() {
            if left.is_multiple_of(weights[i]) {
                cur[i] = left / weights[i];
                out.push(cur.clone());
            }
            return;
        }
        let top = left / weights[i];
        for k in (0..=top).rev() {
            cur[i] = k;
            rec(weights, i + 1, left - k * weights[i], cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    if weights.is_empty() {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
    rec(weights, 0, d as u32, &mut vec![0; weights.len()], &mut out);
    out
}

/// Grading `(a; b_1..b_m)` of the piece `H^0(aA - b_1 E_1 - ... - b_m E_m)`.
///
/// Positive `b_i` demands vanishing to order `b_i` at the i-th point. The
/// other common convention writes `+n_i E_i`; it corresponds to `b_i = -n_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct MultiDegree {
    pub a: i64,
    pub b: Vec<i64>,
}

impl MultiDegree {
    pub fn new(a: i64, b: Vec<i64>) -> Self {
        MultiDegree { a, b }
    }

    pub fn m(&self) -> usize {
        self.b.len()
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        assert_eq!(self.b.len(), other.b.len());
        MultiDegree {
            a: self.a + other.a,
            b: self.b.iter().zip(&other.b).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn scale(&self, n: i64) -> MultiDegree {
        MultiDegree {
            a: self.a * n,
            b: self.b.iter().map(|x| x * n).collect(),
        }
    }

    /// Vanishing order imposed at point `i`, clamped at zero.
    pub fn multiplicity(&self, i: usize) -> u32 {
        self.b[i].max(0) as u32
    }
}

impl TryFrom<Vec<i64>> for MultiDegree {
    type Error = String;
    fn try_from(v: Vec<i64>) -> std::result::Result<Self, String> {
        match v.split_first() {
            Some((a, b)) => Ok(MultiDegree {
                a: *a,
                b: b.to_vec(),
            }),
            None => Err("multidegree needs at least the entry a".into()),
        }
    }
}

impl From<MultiDegree> for Vec<i64> {
    fn from(d: MultiDegree) -> Vec<i64> {
        let mut v = vec![d.a];
        v.extend(d.b);
        v
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.b.iter().map(|x| x.to_string()).collect();
        write!(f, "({}; {})", self.a, b.join(", "))
    }
}

/// `g * T_1^{b_1} ... T_m^{b_m}` with `g` homogeneous in the Z variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentTerm {
    pub base: MultiPoly,
    pub tdegree: Vec<i64>,
}

impl LaurentTerm {
    pub fn new(base: MultiPoly, tdegree: Vec<i64>) -> Result<Self> {
        if !base.is_homogeneous() {
            return Err(Error::Input("Laurent term base must be homogeneous".into()));
        }
        Ok(LaurentTerm { base, tdegree })
    }

    /// Degree `(deg g; b)`; the zero term is reported with `a = 0`.
    pub fn multidegree(&self) -> MultiDegree {
        MultiDegree::new(self.base.degree().unwrap_or(0) as i64, self.tdegree.clone())
    }

    pub fn mul(&self, other: &LaurentTerm) -> LaurentTerm {
        LaurentTerm {
            base: &self.base * &other.base,
            tdegree: self
                .tdegree
                .iter()
                .zip(&other.tdegree)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Display for LaurentTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ts: Vec<String> = self
            .tdegree
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| {
                if x == 1 {
                    format!("T{}", i + 1)
                } else {
                    format!("T{}^{}", i + 1, x)
                }
            })
            .collect();
        let base = self.base.to_string();
        let is_one = self.base == MultiPoly::one(self.base.field(), self.base.nvars());
        match (is_one, ts.is_empty()) {
            (true, true) => write!(f, "1"),
            (true, false) => write!(f, "{}", ts.join("*")),
            (false, true) => write!(f, "{base}"),
            (false, false) if self.base.len() == 1 => write!(f, "{base}*{}", ts.join("*")),
            (false, false) => write!(f, "({base})*{}", ts.join("*")),
        }
    }
}

/// Integer point helper for tests and fixtures.
pub fn rat_point(coords: &[i64]) -> Vec<BigRational> {
    coords.iter().map(|&c| rat(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse_z(s, 3, Field::Rational).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("Z0 + Z1") * &p("Z0 - Z1"), p("Z0^2 - Z1^2"));
        assert!((&p("Z0 + Z1") * &MultiPoly::zero(Field::Rational, 3)).is_zero());
        let f2 = Field::Prime(2);
        let s = MultiPoly::parse_z("Z0 + Z1", 3, f2).unwrap().pow(2);
        assert_eq!(s, MultiPoly::parse_z("Z0^2 + Z1^2", 3, f2).unwrap());
        assert_eq!(p("Z0").scale(&rat(0)), MultiPoly::zero(Field::Rational, 3));
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let a = p("Z0");
        let b = MultiPoly::parse_z("Z0", 3, Field::Prime(3)).unwrap();
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(
            monomials_of_degree(3, 1),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
        assert_eq!(monomials_of_degree(3, 0), vec![vec![0, 0, 0]]);
        assert_eq!(monomials_of_degree(4, 2).len(), 10);
        assert!(monomials_of_degree(3, -1).is_empty());
        assert_eq!(monomials_of_weighted_degree(&[3, 4, 5], 8).len(), 2);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("Z0^2").partial_derivative(&[1, 0, 0]).unwrap(), p("2*Z0"));
        assert!(p("Z0").partial_derivative(&[0, 1, 0]).unwrap().is_zero());
        assert_eq!(
            p("Z0^2*Z1").partial_derivative(&[1, 1, 0]).unwrap(),
            p("2*Z0")
        );
        let fp = MultiPoly::parse_z("Z0^2", 3, Field::Prime(5)).unwrap();
        assert!(matches!(
            fp.partial_derivative(&[1, 0, 0]),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(
            p("Z0 + Z1").evaluate(&rat_point(&[1, 1, 0])).unwrap(),
            rat(2)
        );
        assert_eq!(
            p("3 + Z2^2").evaluate(&rat_point(&[0, 0, 0])).unwrap(),
            rat(3)
        );
        assert_eq!(
            p("Z0^2 - Z1*Z2").evaluate(&rat_point(&[2, 1, 4])).unwrap(),
            rat(0)
        );
    }

    #[test]
    fn parse_and_display() {
        let f = p("3/2*Z0^2*Z1 - Z2^3");
        assert_eq!(f.to_string(), "3/2*Z0^2*Z1 - Z2^3");
        assert_eq!(p(" ( Z0 + Z1 ) ^ 2 ").to_string(), "Z0^2 + 2*Z0*Z1 + Z1^2");
        assert_eq!(p("-Z1 + 1").to_string(), "-Z1 + 1");
        match MultiPoly::parse_z("Z0 + W3", 3, Field::Rational) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            MultiPoly::parse_z("Z0 +", 3, Field::Rational),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            MultiPoly::parse_z("Z0 / Z1", 3, Field::Rational),
            Err(Error::Parse { .. })
        ));
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let g = MultiPoly::parse("y^2 - x*z", &names, Field::Rational).unwrap();
        assert_eq!(g.display_with(&names).to_string(), "-x*z + y^2");
    }

    #[test]
    fn exact_division() {
        let f = p("Z0^2 - Z1^2");
        assert_eq!(f.div_exact(&p("Z0 - Z1")).unwrap(), p("Z0 + Z1"));
        assert!(p("Z0^2 + Z1^2").div_exact(&p("Z0 - Z1")).is_none());
        assert_eq!(p("Z1^3").div_exact(&p("Z1")).unwrap(), p("Z1^2"));
    }

    #[test]
    fn laurent_terms() {
        let t = LaurentTerm::new(p("Z2"), vec![1, 1]).unwrap();
        let u = LaurentTerm::new(p("1"), vec![-1, 0]).unwrap();
        assert_eq!(t.to_string(), "Z2*T1*T2");
        assert_eq!(u.to_string(), "T1^-1");
        assert_eq!(t.mul(&u).multidegree(), MultiDegree::new(1, vec![0, 1]));
        assert!(LaurentTerm::new(p("Z0 + 1"), vec![0]).is_err());
    }

    #[test]
    fn multidegree_serde() {
        let d: MultiDegree = serde_json_like(&[2, 1, -1]);
        assert_eq!(d, MultiDegree::new(2, vec![1, -1]));
        assert_eq!(d.multiplicity(1), 0);
    }

    fn serde_json_like(v: &[i64]) -> MultiDegree {
        MultiDegree::try_from(v.to_vec()).unwrap()
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -4i64..=4), 0..5).prop_map(|ts| {
            MultiPoly::from_terms(Field::Rational, 3, ts.into_iter().map(|(e, c)| (e, rat(c))))
        })
    }

    fn arb_form(d: i64) -> impl Strategy<Value = MultiPoly> {
        let monos = monomials_of_degree(3, d);
        prop::collection::vec(-3i64..=3, monos.len()).prop_map(move |cs| {
            MultiPoly::from_terms(
                Field::Rational,
                3,
                monos.iter().cloned().zip(cs.into_iter().map(rat)),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn degree_is_additive(f in arb_form(2), g in arb_form(3)) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let h = &f * &g;
            prop_assert!(h.is_homogeneous());
            prop_assert_eq!(h.degree(), Some(5));
        }

        #[test]
        fn monomial_count(n in 1usize..5, d in 0i64..6) {
            prop_assert_eq!(monomials_of_degree(n, d).len() as u64, crate::exact::binomial(d + n as i64 - 1, n as i64 - 1));
        }

        #[test]
        fn display_parse_roundtrip(a in arb_poly()) {
            prop_assert_eq!(MultiPoly::parse_z(&a.to_string(), 3, Field::Rational).unwrap(), a);
        }
    }
}

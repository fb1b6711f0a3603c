//! Finitely generated abelian groups given by generators and relations.
//!
//! Used for divisor class groups: generators are prime divisors, relations
//! are principal divisors, and quotients by a list of classes give groups of
//! the form `Cl(X) / <D_1, ..., D_r>`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{hermite_rows, smith_normal_form, IntMatrix};

#[derive(Clone, Debug)]
pub struct PresentedAbelianGroup {
    generators: Vec<String>,
    relations: Vec<Vec<i64>>,
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
    // y = transform * e puts a generator vector into SNF coordinates;
    // torsion_rows[i] pairs with invariant_factors[i].
    transform: IntMatrix,
    torsion_rows: Vec<usize>,
    free_rows: Vec<usize>,
}

/// An element written in the normal-form coordinates `Z^s + (+) Z/d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl GroupElement {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(|x| x.is_zero())
    }

    pub fn free_i64(&self) -> Vec<i64> {
        self.free
            .iter()
            .map(|x| x.to_i64().expect("class coordinate overflows i64"))
            .collect()
    }
}

impl PresentedAbelianGroup {
    pub fn new(generators: Vec<String>, relations: Vec<Vec<i64>>) -> Result<Self> {
        let g = generators.len();
        if let Some(bad) = relations.iter().find(|r| r.len() != g) {
            return Err(Error::Input(format!(
                "relation {:?} has {} entries, expected {}",
                bad,
                bad.len(),
                g
            )));
        }
        let rel = IntMatrix::from_i64(g, &relations);
        let snf = smith_normal_form(&rel);
        let rank = snf.rank();
        let mut transform = snf.v.transpose();

        let free_rows: Vec<usize> = (rank..g).collect();
        if !free_rows.is_empty() {
            // Canonicalize the free coordinates so equal groups report equal
            // degree maps regardless of the pivot path.
            let mut free = IntMatrix::zeros(free_rows.len(), g);
            for (k, &i) in free_rows.iter().enumerate() {
                for j in 0..g {
                    free.set(k, j, transform.get(i, j).clone());
                }
            }
            let (h, _) = hermite_rows(&free);
            for (k, &i) in free_rows.iter().enumerate() {
                for j in 0..g {
                    transform.set(i, j, h.get(k, j).clone());
                }
            }
        }

        let diag = snf.diagonal();
        let mut torsion_rows = Vec::new();
        let mut invariant_factors = Vec::new();
        for (i, d) in diag.iter().enumerate().take(rank) {
            if !d.is_one() {
                torsion_rows.push(i);
                invariant_factors.push(d.clone());
            }
        }
        Ok(PresentedAbelianGroup {
            generators,
            relations,
            free_rank: g - rank,
            invariant_factors,
            transform,
            torsion_rows,
            free_rows,
        })
    }

    /// Free group on the named generators.
    pub fn free(generators: Vec<String>) -> Self {
        Self::new(generators, Vec::new()).expect("no relations to mismatch")
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[Vec<i64>] {
        &self.relations
    }

    /// `(free rank, invariant factors)` with every factor `> 1` and each
    /// dividing the next.
    pub fn normal_form(&self) -> (usize, &[BigInt]) {
        (self.free_rank, &self.invariant_factors)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_isomorphic(&self, other: &PresentedAbelianGroup) -> bool {
        self.normal_form() == other.normal_form()
    }

    /// Adds the given classes as relations.
    pub fn quotient(&self, classes: &[Vec<i64>]) -> Result<Self> {
        let mut relations = self.relations.clone();
        relations.extend(classes.iter().cloned());
        Self::new(self.generators.clone(), relations)
    }

    /// Image of a generator-coefficient vector in normal-form coordinates.
    pub fn class_of_vector(&self, e: &[i64]) -> GroupElement {
        assert_eq!(e.len(), self.generators.len(), "class vector length");
        let v: Vec<BigInt> = e.iter().map(|&x| BigInt::from(x)).collect();
        let y = self.transform.mul_vec(&v);
        GroupElement {
            free: self.free_rows.iter().map(|&i| y[i].clone()).collect(),
            torsion: self
                .torsion_rows
                .iter()
                .zip(&self.invariant_factors)
                .map(|(&i, d)| y[i].mod_floor(d))
                .collect(),
        }
    }

    /// Some generator-coefficient vector mapping to `class`.
    pub fn representative(&self, class: &GroupElement) -> Result<Vec<i64>> {
        if class.free.len() != self.free_rank || class.torsion.len() != self.invariant_factors.len()
        {
            return Err(Error::Input(
                "class has the wrong shape for this group".into(),
            ));
        }
        let g = self.generators.len();
        let mut y = vec![BigInt::zero(); g];
        for (&i, x) in self.free_rows.iter().zip(&class.free) {
            y[i] = x.clone();
        }
        for (&i, x) in self.torsion_rows.iter().zip(&class.torsion) {
            y[i] = x.clone();
        }
        let inv = self
            .transform
            .to_rat()
            .inverse()
            .expect("transform is unimodular");
        (0..g)
            .map(|r| {
                let s: num_rational::BigRational = (0..g)
                    .map(|c| inv.get(r, c) * num_rational::BigRational::from_integer(y[c].clone()))
                    .sum();
                s.to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::Input("representative overflows i64".into()))
            })
            .collect()
    }
}

impl fmt::Display for PresentedAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            s => parts.push(format!("Z^{s}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Formal integer combination of named prime divisors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeilDivisor {
    coeffs: BTreeMap<String, i64>,
}

impl WeilDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn prime(name: &str) -> Self {
        let mut d = Self::zero();
        d.add(name, 1);
        d
    }

    pub fn add(&mut self, name: &str, c: i64) {
        let v = self.coeffs.entry(name.to_string()).or_insert(0);
        *v += c;
        if *v == 0 {
            self.coeffs.remove(name);
        }
    }

    pub fn coefficient(&self, name: &str) -> i64 {
        self.coeffs.get(name).copied().unwrap_or(0)
    }

    /// Parses forms such as `3A - E1 - 2*E2` or `0`.
    pub fn parse(s: &str) -> Result<Self> {
        let src: Vec<char> = s.chars().collect();
        let err = |position: usize, message: &str| Error::Parse {
            position,
            message: message.into(),
        };
        let skip = |mut i: usize| {
            while i < src.len() && src[i].is_whitespace() {
                i += 1;
            }
            i
        };
        let mut d = Self::zero();
        let mut i = skip(0);
        if i == src.len() {
            return Err(err(i, "empty divisor"));
        }
        if src[i] == '0' && skip(i + 1) == src.len() {
            return Ok(d);
        }
        let mut first = true;
        while i < src.len() {
            let mut sign = 1;
            if src[i] == '+' || src[i] == '-' {
                if src[i] == '-' {
                    sign = -1;
                }
                i = skip(i + 1);
            } else if !first {
                return Err(err(i, "expected `+` or `-`"));
            }
            first = false;
            let start = i;
            while i < src.len() && src[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: i64 = if start == i {
                1
            } else {
                src[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| err(start, "coefficient too large"))?
            };
            i = skip(i);
            if i < src.len() && src[i] == '*' {
                i = skip(i + 1);
            }
            let name_start = i;
            if i >= src.len() || !src[i].is_ascii_alphabetic() {
                return Err(err(i, "expected a divisor name"));
            }
            while i < src.len() && (src[i].is_ascii_alphanumeric() || src[i] == '_') {
                i += 1;
            }
            let name: String = src[name_start..i].iter().collect();
            d.add(&name, sign * coeff);
            i = skip(i);
        }
        Ok(d)
    }

    /// Coefficient vector in the given ordered basis of prime divisors.
    pub fn class_of(&self, basis: &[String]) -> Result<Vec<i64>> {
        if let Some(unknown) = self.coeffs.keys().find(|k| !basis.contains(k)) {
            return Err(Error::Input(format!("unknown prime divisor `{unknown}`")));
        }
        Ok(basis.iter().map(|b| self.coefficient(b)).collect())
    }
}

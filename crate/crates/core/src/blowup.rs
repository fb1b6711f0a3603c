//! Graded pieces `H^0(X, O(aA - b_1 E_1 - ... - b_m E_m))` of the blow-up
//! `X` of `P^r` at rational points, as kernels of fat-point interpolation
//! matrices.
//!
//! A degree-`a` form lies in the piece iff it vanishes to order `b_i` at
//! the i-th point; negative `b_i` impose nothing. Vanishing to order `s` is
//! linearized as `d^alpha f(p) = 0` for `|alpha| < s` in the affine chart
//! where the point's first nonzero coordinate is one. That is only valid in
//! characteristic zero, so everything here is over Q.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{binomial, parse_rational, Field, RatMatrix};
use crate::poly::{falling_factorial, monomials_of_degree, Exponent, MultiDegree, MultiPoly};

/// Rejects prime fields for derivative-based computations.
pub fn require_char_zero(field: Field) -> Result<()> {
    match field {
        Field::Rational => Ok(()),
        Field::Prime(p) => Err(Error::Unsupported(format!(
            "interpolation conditions need characteristic 0 (got fp:{p}); use the Gröbner oracle instead"
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupModel {
    r: usize,
    points: Vec<Vec<BigRational>>,
}

#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub multidegree: MultiDegree,
    pub basis: Vec<MultiPoly>,
    pub dim: usize,
}

impl BlowupModel {
    /// Points are given in homogeneous coordinates and rescaled so their
    /// first nonzero coordinate is one.
    pub fn new(r: usize, points: Vec<Vec<BigRational>>) -> Result<Self> {
        let mut normalized: Vec<Vec<BigRational>> = Vec::with_capacity(points.len());
        for (i, p) in points.into_iter().enumerate() {
            if p.len() != r + 1 {
                return Err(Error::Input(format!(
                    "point {i} needs {} coordinates",
                    r + 1
                )));
            }
            let Some(lead) = p.iter().find(|c| !c.is_zero()).cloned() else {
                return Err(Error::Input(format!("point {i} has all coordinates zero")));
            };
            let q: Vec<BigRational> = p.iter().map(|c| c / &lead).collect();
            if let Some(j) = normalized.iter().position(|o| *o == q) {
                return Err(Error::Input(format!("points {j} and {i} coincide")));
            }
            normalized.push(q);
        }
        Ok(BlowupModel {
            r,
            points: normalized,
        })
    }

    /// Parses coordinates written as exact rational strings.
    pub fn from_strings(r: usize, points: &[Vec<String>]) -> Result<Self> {
        let pts = points
            .iter()
            .map(|p| {
                p.iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(r, pts)
    }

    /// `m` pseudo-random rational points, reproducible from `seed`.
    pub fn general(r: usize, m: usize, seed: u64) -> Self {
        Self::new(r, general_points(r, m, seed)).expect("random points are distinct")
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn m(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Vec<BigRational>] {
        &self.points
    }

    fn chart(&self, i: usize) -> usize {
        self.points[i].iter().position(|c| !c.is_zero()).unwrap()
    }

    fn check_degree(&self, d: &MultiDegree) -> Result<()> {
        if d.m() != self.m() {
            return Err(Error::Input(format!(
                "multidegree {d} has {} multiplicities for {} points",
                d.m(),
                self.m()
            )));
        }
        Ok(())
    }

    /// Affine multi-indices of order `< s` in the chart of point `i`, as
    /// full-length exponent vectors with a zero in the chart coordinate.
    fn derivative_indices(&self, i: usize, s: u32) -> Vec<Exponent> {
        let k = self.chart(i);
        let mut out = Vec::new();
        for order in 0..s as i64 {
            for alpha in monomials_of_degree(self.r, order) {
                let mut full = alpha;
                full.insert(k, 0);
                out.push(full);
            }
        }
        out
    }

    /// `d^alpha (Z^e)` evaluated at point `i` in its affine chart.
    fn derivative_entry(&self, i: usize, alpha: &[u32], e: &[u32]) -> BigRational {
        let k = self.chart(i);
        let p = &self.points[i];
        let mut v = BigRational::one();
        for j in 0..=self.r {
            if j == k {
                continue;
            }
            if alpha[j] > e[j] {
                return BigRational::zero();
            }
            let rest = e[j] - alpha[j];
            if rest > 0 {
                if p[j].is_zero() {
                    return BigRational::zero();
                }
                v *= num_traits::pow(p[j].clone(), rest as usize);
            }
            if alpha[j] > 0 {
                v *= BigRational::from_integer(falling_factorial(e[j], alpha[j]));
            }
        }
        v
    }

    fn condition_rows(&self, i: usize, s: u32, monos: &[Exponent]) -> Vec<Vec<BigRational>> {
        self.derivative_indices(i, s)
            .iter()
            .map(|alpha| {
                monos
                    .iter()
                    .map(|e| self.derivative_entry(i, alpha, e))
                    .collect()
            })
            .collect()
    }

    /// Interpolation matrix for the piece of multidegree `d`: columns are
    /// the degree-`a` monomials (see [`monomials_of_degree`]), rows the
    /// derivative conditions point by point. `None` marks an empty piece
    /// (`a < 0`).
    pub fn interpolation_matrix(&self, d: &MultiDegree) -> Result<Option<RatMatrix>> {
        self.check_degree(d)?;
        if d.a < 0 {
            return Ok(None);
        }
        let monos = monomials_of_degree(self.r + 1, d.a);
        let mut m = RatMatrix::zeros(0, monos.len());
        for i in 0..self.m() {
            for row in self.condition_rows(i, d.multiplicity(i), &monos) {
                m.push_row(row);
            }
        }
        Ok(Some(m))
    }

    pub fn piece_dim(&self, d: &MultiDegree) -> Result<usize> {
        Ok(match self.interpolation_matrix(d)? {
            None => 0,
            Some(m) => m.kernel_dim(),
        })
    }

    pub fn piece_basis(&self, d: &MultiDegree) -> Result<GradedPiece> {
        let basis = match self.interpolation_matrix(d)? {
            None => Vec::new(),
            Some(m) => {
                let monos = monomials_of_degree(self.r + 1, d.a);
                m.kernel_basis()
                    .iter()
                    .map(|v| MultiPoly::from_coefficient_vector(Field::Rational, &monos, v))
                    .collect()
            }
        };
        Ok(GradedPiece {
            multidegree: d.clone(),
            dim: basis.len(),
            basis,
        })
    }

    /// Dimensions of the pieces `n * D` for `n = 0..=n_max`.
    pub fn section_ring_dims(&self, divisor: &MultiDegree, n_max: u32) -> Result<Vec<usize>> {
        self.check_degree(divisor)?;
        (0..=n_max as i64)
            .map(|n| self.piece_dim(&divisor.scale(n)))
            .collect()
    }

    /// Order of vanishing of `f` at point `i`, capped at `cap`.
    pub fn vanishing_order(&self, f: &MultiPoly, i: usize, cap: u32) -> u32 {
        let a = f.degree().unwrap_or(0) as i64;
        let monos = monomials_of_degree(self.r + 1, a);
        let Some(coeffs) = f.coefficient_vector(&monos) else {
            return 0;
        };
        for s in 0..cap {
            for alpha in monomials_of_degree(self.r, s as i64) {
                let mut full = alpha;
                full.insert(self.chart(i), 0);
                let v: BigRational = monos
                    .iter()
                    .zip(&coeffs)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(e, c)| c * self.derivative_entry(i, &full, e))
                    .sum();
                if !v.is_zero() {
                    return s;
                }
            }
        }
        cap
    }
}

/// Pseudo-random rational points: first coordinate one, the others
/// `n/d` with `|n| <= 20`, `1 <= d <= 7`.
pub fn general_points(r: usize, m: usize, seed: u64) -> Vec<Vec<BigRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    while out.len() < m {
        let mut p = vec![BigRational::one()];
        for _ in 0..r {
            let n: i64 = rng.gen_range(-20..=20);
            let d: i64 = rng.gen_range(1..=7);
            p.push(BigRational::new(n.into(), d.into()));
        }
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Checks that products of basis elements of two pieces satisfy the
/// interpolation conditions of the sum degree, i.e. lie in the span of its
/// basis. Pieces and their derivative tables are computed once up front;
/// each product condition is then evaluated through the Leibniz rule
/// `d^alpha(fg) = sum_beta C(alpha, beta) d^beta f * d^(alpha - beta) g`.
pub struct ProductChecker<'a> {
    model: &'a BlowupModel,
    jet_order: u32,
    // per point: the derivative multi-indices of order < jet_order
    indices: Vec<Vec<Exponent>>,
    index_of: Vec<HashMap<Exponent, usize>>,
    // per multidegree: per basis element, per point, derivative values
    tables: HashMap<MultiDegree, Vec<Vec<Vec<BigRational>>>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairCheck {
    pub products: usize,
    pub violations: usize,
}

impl<'a> ProductChecker<'a> {
    pub fn new(model: &'a BlowupModel, degrees: &[MultiDegree], jet_order: u32) -> Result<Self> {
        let indices: Vec<Vec<Exponent>> = (0..model.m())
            .map(|i| model.derivative_indices(i, jet_order))
            .collect();
        let index_of = indices
            .iter()
            .map(|v| v.iter().enumerate().map(|(k, e)| (e.clone(), k)).collect())
            .collect();
        let built: Vec<(MultiDegree, Vec<Vec<Vec<BigRational>>>)> = degrees
            .par_iter()
            .map(|d| {
                let piece = model.piece_basis(d)?;
                let monos = monomials_of_degree(model.r + 1, d.a.max(0));
                let rows: Vec<Vec<Vec<BigRational>>> = (0..model.m())
                    .map(|i| model.condition_rows(i, jet_order, &monos))
                    .collect();
                let table = piece
                    .basis
                    .iter()
                    .map(|f| {
                        let coeffs = f
                            .coefficient_vector(&monos)
                            .expect("basis element of degree a");
                        rows.iter()
                            .map(|point_rows| {
                                point_rows
                                    .iter()
                                    .map(|row| {
                                        row.iter()
                                            .zip(&coeffs)
                                            .filter(|(x, c)| !x.is_zero() && !c.is_zero())
                                            .map(|(x, c)| x * c)
                                            .sum()
                                    })
                                    .collect()
                            })
                            .collect()
                    })
                    .collect();
                Ok((d.clone(), table))
            })
            .collect::<Result<_>>()?;
        Ok(ProductChecker {
            model,
            jet_order,
            indices,
            index_of,
            tables: built.into_iter().collect(),
        })
    }

    pub fn check_pair(&self, d: &MultiDegree, e: &MultiDegree) -> Result<PairCheck> {
        let missing = || Error::Input("multidegree not prepared in this checker".into());
        let td = self.tables.get(d).ok_or_else(missing)?;
        let te = self.tables.get(e).ok_or_else(missing)?;
        let sum = d.add(e);
        let needs: Vec<u32> = (0..self.model.m()).map(|i| sum.multiplicity(i)).collect();
        if needs.iter().any(|&n| n > self.jet_order) {
            return Err(Error::Input(format!(
                "sum degree {sum} needs derivatives beyond the prepared order"
            )));
        }
        let mut check = PairCheck::default();
        for f in td {
            for g in te {
                check.products += 1;
                if !self.product_satisfies(f, g, &needs) {
                    check.violations += 1;
                }
            }
        }
        Ok(check)
    }

    fn product_satisfies(
        &self,
        f: &[Vec<BigRational>],
        g: &[Vec<BigRational>],
        needs: &[u32],
    ) -> bool {
        for (i, &need) in needs.iter().enumerate() {
            for alpha in self.indices[i]
                .iter()
                .take_while(|a| a.iter().sum::<u32>() < need)
            {
                let mut acc = BigRational::zero();
                for (k, beta) in self.indices[i].iter().enumerate() {
                    if !beta.iter().zip(alpha).all(|(b, a)| b <= a) {
                        continue;
                    }
                    let fb = &f[i][k];
                    if fb.is_zero() {
                        continue;
                    }
                    let rest: Exponent = alpha.iter().zip(beta).map(|(a, b)| a - b).collect();
                    let gr = &g[i][self.index_of[i][&rest]];
                    if gr.is_zero() {
                        continue;
                    }
                    let c: u64 = alpha
                        .iter()
                        .zip(beta)
                        .map(|(&a, &b)| binomial(a as i64, b as i64))
                        .product();
                    acc += BigRational::from_integer(c.into()) * fb * gr;
                }
                if !acc.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

//! Points on the line `Z_2 = ... = Z_r = 0` of `P^r`, cut out there by
//! linear forms `f_1..f_m` in `k[Z_0, Z_1]`.
//!
//! A form `g = sum_c g_c Z_2^{c_2} ... Z_r^{c_r}` vanishes to order `b_i` at
//! the i-th point iff every `g_c` is divisible by `f_i^{b_i - |c|}` (no
//! condition once `|c| >= b_i`). Since the `f_i` are pairwise coprime the
//! conditions combine into divisibility by a product, which gives a closed
//! form for the graded dimensions and an exact membership test.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::blowup::BlowupModel;
use crate::error::{Error, Result};
use crate::exact::{binomial, Field, RatMatrix};
use crate::poly::{monomials_of_degree, z_names, Exponent, LaurentTerm, MultiDegree, MultiPoly};

#[derive(Clone, Debug)]
pub struct CollinearConfig {
    r: usize,
    field: Field,
    forms: Vec<MultiPoly>,
}

impl CollinearConfig {
    /// `forms` must be linear in `Z_0, Z_1` only (as polynomials in
    /// `Z_0..Z_r`) and pairwise linearly independent.
    pub fn new(r: usize, forms: Vec<MultiPoly>) -> Result<Self> {
        if r == 0 {
            return Err(Error::Input(
                "ambient dimension r must be at least 1".into(),
            ));
        }
        let field = forms.first().map_or(Field::Rational, |f| f.field());
        for (i, f) in forms.iter().enumerate() {
            if f.nvars() != r + 1 || f.field() != field {
                return Err(Error::Input(format!("form {i} lives in the wrong ring")));
            }
            let linear = !f.is_zero()
                && f.terms()
                    .all(|(e, _)| e.iter().sum::<u32>() == 1 && e[2..].iter().all(|&x| x == 0));
            if !linear {
                return Err(Error::Input(format!(
                    "form {i} is not a nonzero linear form in Z0, Z1"
                )));
            }
        }
        let coeffs: Vec<[BigRational; 2]> = forms
            .iter()
            .map(|f| [f.coefficient(&unit(r, 0)), f.coefficient(&unit(r, 1))])
            .collect();
        for i in 0..forms.len() {
            for j in i + 1..forms.len() {
                let det = field.sub(
                    &field.mul(&coeffs[i][0], &coeffs[j][1]),
                    &field.mul(&coeffs[i][1], &coeffs[j][0]),
                );
                if det.is_zero() {
                    return Err(Error::Input(format!("forms {i} and {j} are proportional")));
                }
            }
        }
        Ok(CollinearConfig { r, field, forms })
    }

    /// Forms written in the polynomial syntax over `Z0..Zr`.
    pub fn parse(r: usize, forms: &[String], field: Field) -> Result<Self> {
        let parsed = forms
            .iter()
            .map(|s| MultiPoly::parse(s, &z_names(r + 1), field))
            .collect::<Result<Vec<_>>>()?;
        Self::new(r, parsed)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn m(&self) -> usize {
        self.forms.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn forms(&self) -> &[MultiPoly] {
        &self.forms
    }

    /// The zero of `f_i` on the line: `c_0 Z_0 + c_1 Z_1` vanishes at
    /// `(c_1 : -c_0 : 0 : ... : 0)`.
    pub fn points(&self) -> Vec<Vec<BigRational>> {
        self.forms
            .iter()
            .map(|f| {
                let mut p = vec![BigRational::zero(); self.r + 1];
                p[0] = f.coefficient(&unit(self.r, 1));
                p[1] = self.field.neg(&f.coefficient(&unit(self.r, 0)));
                let lead = p.iter().find(|c| !c.is_zero()).cloned().unwrap();
                let inv = self.field.inv(&lead).unwrap();
                p.iter().map(|c| self.field.mul(c, &inv)).collect()
            })
            .collect()
    }

    /// The same points as an interpolation model; characteristic 0 only.
    pub fn to_blowup_model(&self) -> Result<BlowupModel> {
        crate::blowup::require_char_zero(self.field)?;
        BlowupModel::new(self.r, self.points())
    }

    fn check_degree(&self, d: &MultiDegree) -> Result<()> {
        if d.m() != self.m() {
            return Err(Error::Input(format!(
                "multidegree {d} does not match {} points",
                self.m()
            )));
        }
        Ok(())
    }
}

fn unit(r: usize, i: usize) -> Exponent {
    let mut e = vec![0; r + 1];
    e[i] = 1;
    e
}

/// Number of exponent patterns of total degree `j` in `Z_2..Z_r`.
fn patterns(r: usize, j: i64) -> u64 {
    if r == 1 {
        u64::from(j == 0)
    } else {
        binomial(j + r as i64 - 2, r as i64 - 2)
    }
}

pub fn collinear_dim(cfg: &CollinearConfig, d: &MultiDegree) -> Result<u64> {
    cfg.check_degree(d)?;
    let mut total = 0u64;
    for j in 0..=d.a {
        let forced: i64 = d.b.iter().map(|&b| (b - j).max(0)).sum();
        let free = d.a - j - forced + 1;
        if free > 0 {
            total += patterns(cfg.r, j) * free as u64;
        }
    }
    Ok(total)
}

/// Whether the homogeneous `g` of degree `d.a` lies in the piece `d`.
pub fn membership(cfg: &CollinearConfig, g: &MultiPoly, d: &MultiDegree) -> Result<bool> {
    cfg.check_degree(d)?;
    if g.nvars() != cfg.r + 1 || g.field() != cfg.field {
        return Err(Error::Input("polynomial lives in the wrong ring".into()));
    }
    if g.is_zero() {
        return Ok(true);
    }
    if !g.is_homogeneous() {
        return Err(Error::Input(
            "membership needs a homogeneous polynomial".into(),
        ));
    }
    if g.degree() != Some(d.a.max(0) as u32) || d.a < 0 {
        return Err(Error::Input(format!(
            "polynomial degree does not match multidegree {d}"
        )));
    }
    let mut by_pattern: BTreeMap<Exponent, Vec<(Exponent, BigRational)>> = BTreeMap::new();
    for (e, c) in g.terms() {
        let mut head = e.clone();
        let tail = head.split_off(2);
        head.extend(std::iter::repeat_n(0, cfg.r - 1));
        by_pattern.entry(tail).or_default().push((head, c.clone()));
    }
    for (c, terms) in by_pattern {
        let gc = MultiPoly::from_terms(cfg.field, cfg.r + 1, terms);
        let size: u32 = c.iter().sum();
        let mut divisor = MultiPoly::one(cfg.field, cfg.r + 1);
        for (f, &b) in cfg.forms.iter().zip(&d.b) {
            let k = (b - size as i64).max(0) as u32;
            if k > 0 {
                divisor = &divisor * &f.pow(k);
            }
        }
        if gc.div_exact(&divisor).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Coordinate,
    InverseT,
    LineProduct,
    FormT,
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub index: usize,
    pub term: LaurentTerm,
}

/// `Z_0..Z_r`, `T_i^{-1}`, `Z_j T_1...T_m` for `j >= 2`, and `f_i T_i`.
/// Reduced mode drops `Z_0, Z_1`, which for `m >= 2` are recovered as
/// combinations of `(f_i T_i) T_i^{-1}`.
pub fn generator_set(cfg: &CollinearConfig, reduced: bool) -> Result<Vec<Generator>> {
    if reduced && cfg.m() < 2 {
        return Err(Error::Input(
            "reduced generator set needs at least two points".into(),
        ));
    }
    let (r, m, field) = (cfg.r, cfg.m(), cfg.field);
    let mut out = Vec::new();
    let first = if reduced { 2 } else { 0 };
    for j in first..=r {
        out.push(Generator {
            kind: GeneratorKind::Coordinate,
            index: j,
            term: LaurentTerm::new(MultiPoly::var(field, r + 1, j), vec![0; m])?,
        });
    }
    for i in 0..m {
        let mut t = vec![0; m];
        t[i] = -1;
        out.push(Generator {
            kind: GeneratorKind::InverseT,
            index: i,
            term: LaurentTerm::new(MultiPoly::one(field, r + 1), t)?,
        });
    }
    for j in 2..=r {
        out.push(Generator {
            kind: GeneratorKind::LineProduct,
            index: j,
            term: LaurentTerm::new(MultiPoly::var(field, r + 1, j), vec![1; m])?,
        });
    }
    for (i, f) in cfg.forms.iter().enumerate() {
        let mut t = vec![0; m];
        t[i] = 1;
        out.push(Generator {
            kind: GeneratorKind::FormT,
            index: i,
            term: LaurentTerm::new(f.clone(), t)?,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub multidegree: MultiDegree,
    pub spanned: bool,
    pub piece_dim: u64,
    pub span_dim: u64,
    pub exponent_bound: i64,
}

/// All multidegrees `(a; b)` with `0 <= a <= a_max`, `|b_i| <= b_max`, in
/// lexicographic order.
pub fn degree_box(m: usize, a_max: i64, b_max: i64) -> Vec<MultiDegree> {
    let mut out = Vec::new();
    for a in 0..=a_max {
        let mut b = vec![-b_max; m];
        loop {
            out.push(MultiDegree::new(a, b.clone()));
            let Some(k) = (0..m).rev().find(|&k| b[k] < b_max) else {
                break;
            };
            b[k] += 1;
            for x in &mut b[k + 1..] {
                *x = -b_max;
            }
        }
    }
    out
}

/// Products of generators with multidegree exactly `d`, as their distinct
/// base polynomials.
///
/// A product `Z^z * prod_j (Z_j T_1..T_m)^{w_j} * prod_i (f_i T_i)^{v_i}
/// * prod_i T_i^{-u_i}` has degree `(|z| + |w| + |v|; |w| + v_i - u_i)`, so
/// `(z, w, v)` of total degree `a` determine the product and
/// `u_i = |w| + v_i - b_i` must be nonnegative.
fn products_of_degree(
    cfg: &CollinearConfig,
    gens: &[Generator],
    d: &MultiDegree,
    bound: i64,
) -> Vec<MultiPoly> {
    let mut positive: Vec<&Generator> = gens
        .iter()
        .filter(|g| g.kind != GeneratorKind::InverseT)
        .collect();
    positive.sort_by_key(|g| (g.kind, g.index));
    let mut out = Vec::new();
    for e in monomials_of_degree(positive.len(), d.a) {
        if e.iter().any(|&x| x as i64 > bound) {
            continue;
        }
        let mut tdeg = vec![0i64; cfg.m()];
        let mut base = MultiPoly::one(cfg.field, cfg.r + 1);
        for (g, &k) in positive.iter().zip(&e) {
            if k == 0 {
                continue;
            }
            for (t, x) in tdeg.iter_mut().zip(&g.term.tdegree) {
                *t += x * k as i64;
            }
            base = &base * &g.term.base.pow(k);
        }
        // the remaining T-degree is paid for with inverse generators
        if tdeg
            .iter()
            .zip(&d.b)
            .all(|(t, b)| t - b >= 0 && t - b <= bound)
            && !out.contains(&base)
        {
            out.push(base);
        }
    }
    out
}

/// Checks, for each multidegree of the box, that products of generators
/// span the full graded piece.
pub fn verify_generators(
    cfg: &CollinearConfig,
    degrees: &[MultiDegree],
    reduced: bool,
) -> Result<Vec<SpanReport>> {
    let gens = generator_set(cfg, reduced)?;
    for d in degrees {
        cfg.check_degree(d)?;
    }
    degrees
        .par_iter()
        .map(|d| {
            let piece_dim = collinear_dim(cfg, d)?;
            let bound = d.a + d.b.iter().map(|b| b.abs()).sum::<i64>() + cfg.m() as i64;
            let products = products_of_degree(cfg, &gens, d, bound);
            let mut all_members = true;
            for p in &products {
                all_members &= membership(cfg, p, d)?;
            }
            let monos = monomials_of_degree(cfg.r + 1, d.a);
            let rows: Vec<Vec<BigRational>> = products
                .iter()
                .map(|p| p.coefficient_vector(&monos).expect("product of degree a"))
                .collect();
            let span_dim = RatMatrix::from_rows(monos.len(), rows).rank_over(cfg.field) as u64;
            Ok(SpanReport {
                multidegree: d.clone(),
                spanned: all_members && span_dim == piece_dim,
                piece_dim,
                span_dim,
                exponent_bound: bound,
            })
        })
        .collect()
}

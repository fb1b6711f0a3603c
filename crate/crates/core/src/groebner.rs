//! Buchberger's algorithm over Q and F_p, and the ideal operations built on
//! it: intersection, quotient, saturation, graded dimensions, fat-point
//! ideals, monomial-curve primes and their symbolic powers.
//!
//! Pairs are selected by the normal strategy (least lcm first, ties by
//! index) and reducers are tried in basis order, so reduced bases are
//! reproducible bit for bit.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Field, RatMatrix};
use crate::poly::{monomials_of_weighted_degree, Exponent, MultiPoly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Lex,
    GrevLex,
    WeightedGrevLex(Vec<u32>),
    /// Graded reverse lex on the first `block` variables, ties broken by
    /// weighted graded reverse lex on the rest. Eliminates the first block.
    Elimination {
        block: usize,
        weights: Vec<u32>,
    },
}

fn grevlex(a: &[u32], b: &[u32], weights: Option<&[u32]>) -> Ordering {
    let deg = |e: &[u32]| -> u64 {
        match weights {
            Some(w) => e
                .iter()
                .zip(w)
                .map(|(x, w)| (*x as u64) * (*w as u64))
                .sum(),
            None => e.iter().map(|&x| x as u64).sum(),
        }
    };
    deg(a).cmp(&deg(b)).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

impl TermOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::GrevLex => grevlex(a, b, None),
            TermOrder::WeightedGrevLex(w) => grevlex(a, b, Some(w)),
            TermOrder::Elimination { block, weights } => grevlex(&a[..*block], &b[..*block], None)
                .then_with(|| grevlex(&a[*block..], &b[*block..], Some(weights))),
        }
    }
}

// Terms in ascending order, so the leading term is last.
type Terms = Vec<(Exponent, BigRational)>;

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

#[derive(Clone, Copy)]
struct Engine<'a> {
    field: Field,
    order: &'a TermOrder,
}

impl<'a> Engine<'a> {
    fn terms_of(&self, p: &MultiPoly) -> Terms {
        let mut t: Terms = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        t.sort_by(|x, y| self.order.cmp(&x.0, &y.0));
        t
    }

    fn poly_of(&self, nvars: usize, t: &Terms) -> MultiPoly {
        MultiPoly::from_terms(self.field, nvars, t.iter().cloned())
    }

    fn make_monic(&self, mut t: Terms) -> Terms {
        if let Some((_, lc)) = t.last() {
            if !lc.is_one() {
                let inv = self.field.inv(lc).unwrap();
                for (_, c) in t.iter_mut() {
                    *c = self.field.mul(c, &inv);
                }
            }
        }
        t
    }

    /// `f - c * x^shift * g`
    fn sub_scaled(&self, f: &Terms, c: &BigRational, shift: &[u32], g: &Terms) -> Terms {
        let mut out = Vec::with_capacity(f.len() + g.len());
        let mut gi = g.iter().map(|(e, x)| {
            let e: Exponent = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            (e, self.field.mul(x, c))
        });
        let mut fi = f.iter().cloned();
        let mut fn_ = fi.next();
        let mut gn = gi.next();
        loop {
            match (fn_.take(), gn.take()) {
                (None, None) => break,
                (Some(a), None) => {
                    out.push(a);
                    fn_ = fi.next();
                }
                (None, Some((e, x))) => {
                    out.push((e, self.field.neg(&x)));
                    gn = gi.next();
                }
                (Some(a), Some(b)) => match self.order.cmp(&a.0, &b.0) {
                    Ordering::Less => {
                        out.push(a);
                        fn_ = fi.next();
                        gn = Some(b);
                    }
                    Ordering::Greater => {
                        out.push((b.0, self.field.neg(&b.1)));
                        gn = gi.next();
                        fn_ = Some(a);
                    }
                    Ordering::Equal => {
                        let s = self.field.sub(&a.1, &b.1);
                        if !s.is_zero() {
                            out.push((a.0, s));
                        }
                        fn_ = fi.next();
                        gn = gi.next();
                    }
                },
            }
        }
        out
    }

    /// Full reduction of `f` modulo monic `basis`.
    fn reduce(&self, f: Terms, basis: &[Terms]) -> Terms {
        let mut p = f;
        let mut rem_desc: Terms = Vec::new();
        while let Some((lm, lc)) = p.last().cloned() {
            match basis.iter().find(|g| divides(&g.last().unwrap().0, &lm)) {
                Some(g) => {
                    let shift: Exponent = lm
                        .iter()
                        .zip(&g.last().unwrap().0)
                        .map(|(a, b)| a - b)
                        .collect();
                    p = self.sub_scaled(&p, &lc, &shift, g);
                }
                None => {
                    rem_desc.push(p.pop().unwrap());
                }
            }
        }
        rem_desc.reverse();
        rem_desc
    }

    fn spoly(&self, f: &Terms, g: &Terms) -> Terms {
        let (fm, fc) = f.last().unwrap();
        let (gm, gc) = g.last().unwrap();
        let l = lcm(fm, gm);
        let sf: Exponent = l.iter().zip(fm).map(|(a, b)| a - b).collect();
        let sg: Exponent = l.iter().zip(gm).map(|(a, b)| a - b).collect();
        let ff = self.sub_scaled(
            &Vec::new(),
            &self.field.neg(&self.field.inv(fc).unwrap()),
            &sf,
            f,
        );
        self.sub_scaled(&ff, &self.field.inv(gc).unwrap(), &sg, g)
    }
}

/// Reduced Gröbner basis together with the order and field it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    field: Field,
    order: TermOrder,
    polys: Vec<Terms>,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exponent,
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[MultiPoly], order: &TermOrder) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::Input(
            "buchberger needs at least one generator to fix the ring".into(),
        ));
    };
    let (field, nvars) = (first.field(), first.nvars());
    if let Some(bad) = gens.iter().find(|g| g.field() != field) {
        return Err(Error::FieldMismatch(field, bad.field()));
    }
    if gens.iter().any(|g| g.nvars() != nvars) {
        return Err(Error::Input("generators live in different rings".into()));
    }
    Ok(buchberger_in(field, nvars, gens, order))
}

fn buchberger_in(
    field: Field,
    nvars: usize,
    gens: &[MultiPoly],
    order: &TermOrder,
) -> GroebnerBasis {
    let eng = Engine { field, order };
    let mut basis: Vec<Terms> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let add = |t: Terms,
               basis: &mut Vec<Terms>,
               pairs: &mut Vec<Pair>,
               pending: &mut HashSet<(usize, usize)>| {
        let t = eng.make_monic(t);
        let j = basis.len();
        for (i, b) in basis.iter().enumerate() {
            let l = lcm(&b.last().unwrap().0, &t.last().unwrap().0);
            pairs.push(Pair { i, j, lcm: l });
            pending.insert((i, j));
        }
        basis.push(t);
    };

    for g in gens {
        let r = eng.reduce(eng.terms_of(g), &basis);
        if !r.is_empty() {
            add(r, &mut basis, &mut pairs, &mut pending);
        }
    }

    while !pairs.is_empty() {
        let k = (0..pairs.len())
            .min_by(|&a, &b| {
                order
                    .cmp(&pairs[a].lcm, &pairs[b].lcm)
                    .then((pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
            })
            .unwrap();
        let Pair { i, j, lcm: l } = pairs.swap_remove(k);
        pending.remove(&(i, j));
        let (li, lj) = (&basis[i].last().unwrap().0, &basis[j].last().unwrap().0);
        if coprime(li, lj) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(&basis[k].last().unwrap().0, &l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = eng.spoly(&basis[i], &basis[j]);
        let r = eng.reduce(s, &basis);
        if !r.is_empty() {
            add(r, &mut basis, &mut pairs, &mut pending);
        }
    }

    // minimalize: keep the first of any leading monomials that divide each other
    let mut keep: Vec<Terms> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let lm = &g.last().unwrap().0;
        let redundant = basis.iter().enumerate().any(|(o, h)| {
            let hm = &h.last().unwrap().0;
            o != idx && divides(hm, lm) && (hm != lm || o < idx)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    // inter-reduce tails
    let mut reduced = Vec::with_capacity(keep.len());
    for idx in 0..keep.len() {
        let others: Vec<Terms> = keep
            .iter()
            .enumerate()
            .filter(|(o, _)| *o != idx)
            .map(|(_, h)| h.clone())
            .collect();
        let mut g = keep[idx].clone();
        let lead = g.pop().unwrap();
        let mut tail = eng.reduce(g, &others);
        tail.push(lead);
        reduced.push(eng.make_monic(tail));
    }
    reduced.sort_by(|a, b| order.cmp(&a.last().unwrap().0, &b.last().unwrap().0));
    GroebnerBasis {
        nvars,
        field,
        order: order.clone(),
        polys: reduced,
    }
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    fn engine(&self) -> Engine<'_> {
        Engine {
            field: self.field,
            order: &self.order,
        }
    }

    /// Basis elements, ascending by leading monomial.
    pub fn generators(&self) -> Vec<MultiPoly> {
        let eng = self.engine();
        self.polys
            .iter()
            .map(|t| eng.poly_of(self.nvars, t))
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Exponent> {
        self.polys
            .iter()
            .map(|t| t.last().unwrap().0.clone())
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1
            && self.polys[0].len() == 1
            && self.polys[0][0].0.iter().all(|&x| x == 0)
    }

    /// Remainder of `f` on division by the basis; zero iff `f` is in the ideal.
    pub fn normal_form(&self, f: &MultiPoly) -> MultiPoly {
        let eng = self.engine();
        let r = eng.reduce(eng.terms_of(&f.to_field(self.field)), &self.polys);
        eng.poly_of(self.nvars, &r)
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Checks the Buchberger certificate: every S-polynomial reduces to
    /// zero, and the basis is reduced (monic, no term of one element
    /// divisible by another's leading monomial).
    pub fn certify(&self) -> bool {
        let eng = self.engine();
        for (i, g) in self.polys.iter().enumerate() {
            if !g.last().unwrap().1.is_one() {
                return false;
            }
            for (k, h) in self.polys.iter().enumerate() {
                let hm = &h.last().unwrap().0;
                if k != i && g.iter().any(|(e, _)| divides(hm, e)) {
                    return false;
                }
            }
        }
        for i in 0..self.polys.len() {
            for j in i + 1..self.polys.len() {
                let s = eng.spoly(&self.polys[i], &self.polys[j]);
                if !eng.reduce(s, &self.polys).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Homogeneous (for `weights`) ideal of a polynomial ring. The reduced
/// Gröbner basis for weighted grevlex is computed once and cached.
#[derive(Clone, Debug)]
pub struct Ideal {
    field: Field,
    nvars: usize,
    weights: Vec<u32>,
    gens: Vec<MultiPoly>,
    gb: OnceLock<GroebnerBasis>,
}

impl Ideal {
    pub fn new(field: Field, nvars: usize, gens: Vec<MultiPoly>) -> Result<Self> {
        Self::with_weights(field, vec![1; nvars], gens)
    }

    pub fn with_weights(field: Field, weights: Vec<u32>, gens: Vec<MultiPoly>) -> Result<Self> {
        let nvars = weights.len();
        if weights.contains(&0) {
            return Err(Error::Input("grading weights must be positive".into()));
        }
        for g in &gens {
            if g.field() != field {
                return Err(Error::FieldMismatch(field, g.field()));
            }
            if g.nvars() != nvars {
                return Err(Error::Input(
                    "generator in the wrong number of variables".into(),
                ));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal {
            field,
            nvars,
            weights,
            gens,
            gb: OnceLock::new(),
        })
    }

    pub fn unit(field: Field, weights: Vec<u32>) -> Self {
        let n = weights.len();
        Self::with_weights(field, weights, vec![MultiPoly::one(field, n)]).unwrap()
    }

    pub fn zero(field: Field, weights: Vec<u32>) -> Self {
        Self::with_weights(field, weights, Vec::new()).unwrap()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn default_order(&self) -> TermOrder {
        if self.weights.iter().all(|&w| w == 1) {
            TermOrder::GrevLex
        } else {
            TermOrder::WeightedGrevLex(self.weights.clone())
        }
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            buchberger_in(self.field, self.nvars, &self.gens, &self.default_order())
        })
    }

    fn derived(&self, gens: Vec<MultiPoly>) -> Ideal {
        Ideal::with_weights(self.field, self.weights.clone(), gens).expect("same ring")
    }

    fn same_ring(&self, other: &Ideal) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.weights != other.weights {
            return Err(Error::Input(
                "ideals live in differently graded rings".into(),
            ));
        }
        Ok(())
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.groebner().contains(f)
    }

    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// Equality of ideals, by comparing reduced Gröbner bases.
    pub fn same_as(&self, other: &Ideal) -> bool {
        self.field == other.field
            && self.weights == other.weights
            && self.groebner() == other.groebner()
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        Ok(self.derived(self.gens.iter().chain(&other.gens).cloned().collect()))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut gens = Vec::new();
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f * g);
            }
        }
        Ok(self.derived(gens))
    }

    /// `I^n`, generated by all degree-`n` products of the generators.
    pub fn power(&self, n: u32) -> Ideal {
        if n == 0 {
            return Ideal::unit(self.field, self.weights.clone());
        }
        let k = self.gens.len();
        let mut gens = Vec::new();
        for e in crate::poly::monomials_of_degree(k, n as i64) {
            let mut p = MultiPoly::one(self.field, self.nvars);
            for (g, &x) in self.gens.iter().zip(&e) {
                if x > 0 {
                    p = &p * &g.pow(x);
                }
            }
            gens.push(p);
        }
        self.derived(gens)
    }

    /// `I ∩ J` by eliminating `t` from `t*I + (1 - t)*J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(self.field, self.weights.clone()));
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let n1 = self.nvars + 1;
        let t = MultiPoly::var(self.field, n1, 0);
        let one_minus_t = &MultiPoly::one(self.field, n1) - &t;
        let mut gens: Vec<MultiPoly> = self.gens.iter().map(|f| &t * &f.prepend_vars(1)).collect();
        gens.extend(other.gens.iter().map(|g| &one_minus_t * &g.prepend_vars(1)));
        let order = TermOrder::Elimination {
            block: 1,
            weights: self.weights.clone(),
        };
        let gb = buchberger_in(self.field, n1, &gens, &order);
        let kept = gb
            .generators()
            .into_iter()
            .filter_map(|g| g.strip_leading_vars(1))
            .collect();
        Ok(self.derived(kept))
    }

    /// `I : (g)`.
    pub fn quotient_by(&self, g: &MultiPoly) -> Result<Ideal> {
        if g.is_zero() || self.contains(g) {
            return Ok(Ideal::unit(self.field, self.weights.clone()));
        }
        let principal = self.derived(vec![g.clone()]);
        let meet = self.intersect(&principal)?;
        let gens = meet
            .gens
            .iter()
            .map(|h| h.div_exact(g).expect("element of (g) is divisible by g"))
            .collect();
        Ok(self.derived(gens))
    }

    /// `I : J`, the intersection of `I : (g)` over generators `g` of `J`.
    pub fn quotient(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut acc = Ideal::unit(self.field, self.weights.clone());
        for g in &other.gens {
            let q = self.quotient_by(g)?;
            acc = acc.intersect(&q)?;
        }
        Ok(acc)
    }

    /// `I : J^∞`, iterating quotients until the chain stabilizes.
    pub fn saturation(&self, other: &Ideal) -> Result<Ideal> {
        let mut cur = self.clone();
        loop {
            let next = cur.quotient(other)?;
            if next.same_as(&cur) {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Dimension of the degree-`d` part of the ideal (weighted degree): the
    /// number of degree-`d` monomials minus the rank of their normal forms.
    pub fn degree_part_dim(&self, d: i64) -> usize {
        let monos = monomials_of_weighted_degree(&self.weights, d);
        if monos.is_empty() {
            return 0;
        }
        let gb = self.groebner();
        let nfs: Vec<MultiPoly> = monos
            .iter()
            .map(|e| {
                gb.normal_form(&MultiPoly::monomial(
                    self.field,
                    e.clone(),
                    BigRational::one(),
                ))
            })
            .collect();
        let mut columns: BTreeMap<Exponent, usize> = BTreeMap::new();
        for nf in &nfs {
            for (e, _) in nf.terms() {
                let k = columns.len();
                columns.entry(e.clone()).or_insert(k);
            }
        }
        let rows: Vec<Vec<BigRational>> = nfs
            .iter()
            .map(|nf| {
                let mut row = vec![BigRational::zero(); columns.len()];
                for (e, c) in nf.terms() {
                    row[columns[e]] = c.clone();
                }
                row
            })
            .collect();
        let rank = RatMatrix::from_rows(columns.len(), rows).rank_over(self.field);
        monos.len() - rank
    }
}

/// Homogeneous ideal of a point of `P^r` given with its first nonzero
/// coordinate equal to one.
pub fn point_ideal(field: Field, point: &[BigRational]) -> Result<Ideal> {
    let n = point.len();
    let k = point
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| Error::Input("the zero vector is not a projective point".into()))?;
    let zk = MultiPoly::var(field, n, k);
    let gens = (0..n)
        .filter(|&j| j != k)
        .map(|j| {
            let pj = field.div(&point[j], &point[k]).unwrap();
            &MultiPoly::var(field, n, j) - &zk.scale(&pj)
        })
        .collect();
    Ideal::new(field, n, gens)
}

/// `I_1^{b_1} ∩ ... ∩ I_m^{b_m}` with the clamp `I^b = (1)` for `b <= 0`.
pub fn fat_point_ideal(field: Field, points: &[Vec<BigRational>], mults: &[i64]) -> Result<Ideal> {
    let n = points.first().map_or(0, |p| p.len());
    if points.len() != mults.len() {
        return Err(Error::Input("one multiplicity per point".into()));
    }
    let mut acc = Ideal::unit(field, vec![1; n]);
    for (p, &b) in points.iter().zip(mults) {
        if b <= 0 {
            continue;
        }
        acc = acc.intersect(&point_ideal(field, p)?.power(b as u32))?;
    }
    Ok(acc)
}

/// Dimension of `[I_1^{b_1} ∩ ... ∩ I_m^{b_m}]_a` in `k[Z_0..Z_r]`.
pub fn hilbert_of_intersection(
    field: Field,
    r: usize,
    points: &[Vec<BigRational>],
    mults: &[i64],
    a: i64,
) -> Result<usize> {
    if points.iter().any(|p| p.len() != r + 1) {
        return Err(Error::Input(format!(
            "points must have {} coordinates",
            r + 1
        )));
    }
    if points.is_empty() {
        return Ok(Ideal::unit(field, vec![1; r + 1]).degree_part_dim(a));
    }
    Ok(fat_point_ideal(field, points, mults)?.degree_part_dim(a))
}

/// Prime of the monomial curve `t -> (t^a, t^b, t^c)` in `k[x, y, z]`,
/// graded by `deg x = a, deg y = b, deg z = c`.
#[derive(Clone, Debug)]
pub struct MonomialCurveIdeal {
    pub weights: [u32; 3],
    pub ideal: Ideal,
}

pub fn curve_var_names() -> Vec<String> {
    vec!["x".into(), "y".into(), "z".into()]
}

/// Kernel of `x -> t^a, y -> t^b, z -> t^c`, by eliminating `t`.
pub fn monomial_curve_ideal(a: u32, b: u32, c: u32, field: Field) -> Result<MonomialCurveIdeal> {
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::Input("curve weights must be positive".into()));
    }
    let n = 4;
    let t = MultiPoly::var(field, n, 0);
    let gens: Vec<MultiPoly> = [a, b, c]
        .iter()
        .enumerate()
        .map(|(i, &w)| &MultiPoly::var(field, n, i + 1) - &t.pow(w))
        .collect();
    let order = TermOrder::Elimination {
        block: 1,
        weights: vec![a, b, c],
    };
    let gb = buchberger_in(field, n, &gens, &order);
    let kept = gb
        .generators()
        .into_iter()
        .filter_map(|g| g.strip_leading_vars(1))
        .collect();
    let ideal = Ideal::with_weights(field, vec![a, b, c], kept)?;
    let gens = ideal.groebner().generators();
    Ok(MonomialCurveIdeal {
        weights: [a, b, c],
        ideal: Ideal::with_weights(field, vec![a, b, c], gens)?,
    })
}

impl MonomialCurveIdeal {
    /// Whether `f(t^a, t^b, t^c)` is identically zero.
    pub fn vanishes_on_curve(&self, f: &MultiPoly) -> bool {
        let field = f.field();
        let mut by_degree: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (e, c) in f.terms() {
            let d: u64 = e
                .iter()
                .zip(&self.weights)
                .map(|(x, w)| (*x as u64) * (*w as u64))
                .sum();
            let acc = by_degree.entry(d).or_insert_with(BigRational::zero);
            *acc = field.add(acc, c);
        }
        by_degree.values().all(|c| c.is_zero())
    }

    pub fn irrelevant_ideal(&self) -> Ideal {
        let f = self.ideal.field();
        let gens = (0..3).map(|i| MultiPoly::var(f, 3, i)).collect();
        Ideal::with_weights(f, self.weights.to_vec(), gens).unwrap()
    }

    /// `p^(n)`, the saturation of `p^n` at `(x, y, z)`. For a height-two
    /// graded prime of `k[x, y, z]` the associated primes of `p^n` are among
    /// `p` and the irrelevant ideal, so saturating removes exactly the
    /// embedded component.
    pub fn symbolic_power(&self, n: u32) -> Result<Ideal> {
        if n == 0 {
            return Ok(Ideal::unit(self.ideal.field(), self.weights.to_vec()));
        }
        let sat = self.ideal.power(n).saturation(&self.irrelevant_ideal())?;
        Ok(self.ideal.derived(sat.groebner().generators()))
    }

    /// For `n = 1..=n_max`, whether the symbolic Rees algebra needs a new
    /// generator in `T`-degree `n`, i.e. whether `p^(n)` is strictly larger
    /// than the sum of the products `p^(i) p^(n-i)`.
    pub fn rees_generation_degrees(&self, n_max: u32) -> Result<Vec<ReesLevel>> {
        let mut powers: Vec<Ideal> = Vec::new();
        let mut out = Vec::new();
        for n in 1..=n_max {
            let sym = self.symbolic_power(n)?;
            let ordinary = self.ideal.power(n);
            let new_generator = if n == 1 {
                true
            } else {
                let mut decomposable = Ideal::zero(self.ideal.field(), self.weights.to_vec());
                for i in 1..n {
                    let j = n - i;
                    if i > j {
                        break;
                    }
                    let prod = powers[i as usize - 1].product(&powers[j as usize - 1])?;
                    decomposable = decomposable.sum(&prod)?;
                }
                !sym.is_subset_of(&decomposable)
            };
            let equals_ordinary_power = sym.is_subset_of(&ordinary);
            out.push(ReesLevel {
                n,
                new_generator,
                equals_ordinary_power,
                symbolic_basis_size: sym.groebner().len(),
            });
            powers.push(sym);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReesLevel {
    pub n: u32,
    pub new_generator: bool,
    pub equals_ordinary_power: bool,
    pub symbolic_basis_size: usize,
}

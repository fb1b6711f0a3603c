//! Simplicial fans, their class groups, and graded pieces of the Cox ring
//! `k[x_rho]` counted two ways: as monomials of a given class and as
//! lattice points of the divisor polytope.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::abgroup::{GroupElement, PresentedAbelianGroup};
use crate::error::{Error, Result};
use crate::exact::{smith_normal_form, IntMatrix, RatMatrix};
use crate::poly::MultiDegree;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFan", into = "RawFan")]
pub struct Fan {
    d: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFan {
    d: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

impl TryFrom<RawFan> for Fan {
    type Error = Error;
    fn try_from(raw: RawFan) -> Result<Fan> {
        Fan::new(raw.d, raw.rays, raw.max_cones)
    }
}

impl From<Fan> for RawFan {
    fn from(f: Fan) -> RawFan {
        RawFan {
            d: f.d,
            rays: f.rays,
            max_cones: f.max_cones,
        }
    }
}

fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

fn rank_of(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    RatMatrix::from_i64(rows).rank()
}

impl Fan {
    pub fn new(d: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Input("lattice dimension must be positive".into()));
        }
        for (i, v) in rays.iter().enumerate() {
            if v.len() != d {
                return Err(Error::Input(format!(
                    "ray {i} has {} coordinates, expected {d}",
                    v.len()
                )));
            }
            if gcd_all(v) != 1 {
                return Err(Error::Input(format!(
                    "ray {i} is not a primitive nonzero vector"
                )));
            }
            if rays[..i].contains(v) {
                return Err(Error::Input(format!("ray {i} is repeated")));
            }
        }
        for (k, cone) in max_cones.iter().enumerate() {
            if cone.is_empty() || cone.iter().any(|&i| i >= rays.len()) {
                return Err(Error::Input(format!(
                    "cone {k} is empty or refers to a missing ray"
                )));
            }
            let gens: Vec<Vec<i64>> = cone.iter().map(|&i| rays[i].clone()).collect();
            if rank_of(&gens) != cone.len() {
                return Err(Error::Input(format!("cone {k} is not simplicial")));
            }
        }
        Ok(Fan { d, rays, max_cones })
    }

    pub fn projective_plane() -> Self {
        Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap()
    }

    pub fn p1_x_p1() -> Self {
        Fan::new(
            2,
            vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
            vec![vec![0, 2], vec![2, 1], vec![1, 3], vec![3, 0]],
        )
        .unwrap()
    }

    /// `F_n`, rays `(1,0), (0,1), (-1,n), (0,-1)`. For `n = 1` the ray
    /// `(0,1)` is the exceptional curve of the blow-up of `P^2`.
    pub fn hirzebruch(n: i64) -> Self {
        Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, n], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap()
    }

    /// Bundled fans by name: `P2`, `P1xP1`, `F<n>`.
    pub fn bundled(name: &str) -> Result<Self> {
        match name {
            "P2" => Ok(Self::projective_plane()),
            "P1xP1" => Ok(Self::p1_x_p1()),
            _ => match name.strip_prefix('F').and_then(|n| n.parse::<i64>().ok()) {
                Some(n) if n >= 0 => Ok(Self::hirzebruch(n)),
                _ => Err(Error::Input(format!("unknown bundled fan `{name}`"))),
            },
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// Every maximal cone is generated by part of a lattice basis.
    pub fn is_smooth(&self) -> bool {
        self.max_cones.iter().all(|cone| {
            let rows: Vec<Vec<i64>> = cone.iter().map(|&i| self.rays[i].clone()).collect();
            let snf = smith_normal_form(&IntMatrix::from_i64(self.d, &rows));
            snf.diagonal()
                .iter()
                .take(cone.len())
                .all(|x| x.abs() == BigInt::from(1))
        })
    }

    /// Whether the support is all of `R^d`. Decided for `d <= 2`; `None` in
    /// higher dimension, where completeness is taken on trust.
    pub fn is_complete(&self) -> Option<bool> {
        match self.d {
            1 => {
                let has = |x: i64| {
                    self.max_cones
                        .iter()
                        .any(|c| c.len() == 1 && self.rays[c[0]] == [x])
                };
                Some(has(1) && has(-1))
            }
            2 => Some(self.covers_plane()),
            _ => None,
        }
    }

    fn covers_plane(&self) -> bool {
        if self.rays.len() < 3 {
            return false;
        }
        let mut order: Vec<usize> = (0..self.rays.len()).collect();
        order.sort_by(|&i, &j| angle_cmp(&self.rays[i], &self.rays[j]));
        (0..order.len()).all(|k| {
            let (i, j) = (order[k], order[(k + 1) % order.len()]);
            let (u, v) = (&self.rays[i], &self.rays[j]);
            let cross = u[0] * v[1] - u[1] * v[0];
            cross > 0
                && self
                    .max_cones
                    .iter()
                    .any(|c| c.len() == 2 && c.contains(&i) && c.contains(&j))
        })
    }

    /// `Cl = Z^rays / M`, where `M` is the image of `u -> (<u, v_rho>)`.
    pub fn class_group(&self) -> Result<ClassGroup> {
        if rank_of(&self.rays) < self.d {
            return Err(Error::Input(
                "rays do not span the lattice; the fan is degenerate".into(),
            ));
        }
        let names = (0..self.rays.len()).map(|i| format!("D{i}")).collect();
        let relations = (0..self.d)
            .map(|k| self.rays.iter().map(|v| v[k]).collect())
            .collect();
        let group = PresentedAbelianGroup::new(names, relations)?;
        let columns: Vec<GroupElement> = (0..self.rays.len())
            .map(|i| {
                let mut e = vec![0; self.rays.len()];
                e[i] = 1;
                group.class_of_vector(&e)
            })
            .collect();
        let to_i64 = |x: &BigInt| x.to_i64().expect("degree map entries fit i64");
        let free = (0..group.free_rank())
            .map(|k| columns.iter().map(|c| to_i64(&c.free[k])).collect())
            .collect();
        let torsion = group
            .torsion()
            .iter()
            .enumerate()
            .map(|(k, d)| {
                (
                    columns.iter().map(|c| to_i64(&c.torsion[k])).collect(),
                    to_i64(d),
                )
            })
            .collect();
        Ok(ClassGroup {
            group,
            free,
            torsion,
        })
    }

    fn check_divisor(&self, a: &[i64]) -> Result<()> {
        if a.len() != self.rays.len() {
            return Err(Error::Input(format!(
                "divisor needs {} coefficients",
                self.rays.len()
            )));
        }
        Ok(())
    }

    /// `<u, v_rho> + a_rho >= 0` for all rays.
    fn contains(&self, a: &[i64], u: &[i64]) -> bool {
        self.rays
            .iter()
            .zip(a)
            .all(|(v, &c)| v.iter().zip(u).map(|(x, y)| x * y).sum::<i64>() + c >= 0)
    }

    /// Whether `{u : <u, v_rho> >= 0}` is more than the origin.
    fn recession_cone_nontrivial(&self) -> bool {
        if rank_of(&self.rays) < self.d {
            return true;
        }
        // the cone is pointed, so if nonzero it has an extreme ray cut out
        // by d - 1 independent active constraints
        subsets(self.rays.len(), self.d - 1).into_iter().any(|s| {
            let rows: Vec<Vec<i64>> = s.iter().map(|&i| self.rays[i].clone()).collect();
            let m = RatMatrix::from_i64(&rows);
            let m = if rows.is_empty() {
                RatMatrix::zeros(0, self.d)
            } else {
                m
            };
            let kernel = m.kernel_basis();
            if kernel.len() != 1 {
                return false;
            }
            [1, -1].iter().any(|&sign| {
                self.rays.iter().all(|v| {
                    let dot: BigRational = v
                        .iter()
                        .zip(&kernel[0])
                        .map(|(&x, y)| y * BigRational::from_integer(x.into()))
                        .sum();
                    !(dot * BigRational::from_integer(sign.into())).is_negative()
                })
            })
        })
    }

    /// Vertices of `P_D`, each from `d` independent tight inequalities.
    fn vertices(&self, a: &[i64]) -> Vec<Vec<BigRational>> {
        let mut out: Vec<Vec<BigRational>> = Vec::new();
        for s in subsets(self.rays.len(), self.d) {
            let rows: Vec<Vec<i64>> = s.iter().map(|&i| self.rays[i].clone()).collect();
            let Some(inv) = RatMatrix::from_i64(&rows).inverse() else {
                continue;
            };
            let rhs: Vec<BigRational> = s
                .iter()
                .map(|&i| BigRational::from_integer((-a[i]).into()))
                .collect();
            let u = inv.mul_vec(&rhs);
            let feasible = self.rays.iter().zip(a).all(|(v, &c)| {
                let dot: BigRational = v
                    .iter()
                    .zip(&u)
                    .map(|(&x, y)| y * BigRational::from_integer(x.into()))
                    .sum();
                !(dot + BigRational::from_integer(c.into())).is_negative()
            });
            if feasible && !out.contains(&u) {
                out.push(u);
            }
        }
        out
    }

    /// Lattice points of `P_D = {u : <u, v_rho> >= -a_rho}`.
    pub fn piece_dim_polytope(&self, a: &[i64]) -> Result<u64> {
        self.check_divisor(a)?;
        if self.recession_cone_nontrivial() {
            return Err(Error::Unsupported(
                "divisor polytope is unbounded; the fan is not complete".into(),
            ));
        }
        let verts = self.vertices(a);
        if verts.is_empty() {
            return Ok(0);
        }
        let lo: Vec<i64> = (0..self.d)
            .map(|k| {
                verts
                    .iter()
                    .map(|v| v[k].ceil().to_integer())
                    .min()
                    .unwrap()
                    .to_i64()
                    .unwrap()
            })
            .collect();
        let hi: Vec<i64> = (0..self.d)
            .map(|k| {
                verts
                    .iter()
                    .map(|v| v[k].floor().to_integer())
                    .max()
                    .unwrap()
                    .to_i64()
                    .unwrap()
            })
            .collect();
        let mut count = 0;
        scan_box(&lo, &hi, |u| {
            if self.contains(a, u) {
                count += 1;
            }
        });
        Ok(count)
    }

    /// Monomials `x^e` of the given class, searched in a box whose bounds
    /// come from the vertices of the polytope of a representative divisor.
    pub fn piece_dim_monomial(&self, cl: &ClassGroup, class: &GroupElement) -> Result<u64> {
        if self.recession_cone_nontrivial() {
            return Err(Error::Unsupported(
                "graded pieces are infinite-dimensional; the fan is not complete".into(),
            ));
        }
        let a = cl.group.representative(class)?;
        let verts = self.vertices(&a);
        if verts.is_empty() {
            return Ok(0);
        }
        let hi: Vec<i64> = self
            .rays
            .iter()
            .zip(&a)
            .map(|(v, &c)| {
                verts
                    .iter()
                    .map(|u| {
                        let dot: BigRational = v
                            .iter()
                            .zip(u)
                            .map(|(&x, y)| y * BigRational::from_integer(x.into()))
                            .sum();
                        (dot + BigRational::from_integer(c.into()))
                            .floor()
                            .to_integer()
                            .to_i64()
                            .unwrap()
                    })
                    .max()
                    .unwrap()
            })
            .collect();
        let target = cl.coordinates(class);
        let mut count = 0;
        scan_box(&vec![0; hi.len()], &hi, |e| {
            if cl.degree(e) == target {
                count += 1;
            }
        });
        Ok(count)
    }

    /// Variables and their degrees in the Cox ring.
    pub fn cox_ring_description(&self) -> Result<CoxRingReport> {
        let cl = self.class_group()?;
        let variables = (0..self.rays.len())
            .map(|i| {
                let mut e = vec![0; self.rays.len()];
                e[i] = 1;
                let (free, torsion) = cl.degree(&e);
                CoxVariable {
                    name: format!("x{i}"),
                    ray: self.rays[i].clone(),
                    degree: free,
                    torsion_degree: torsion,
                }
            })
            .collect();
        let smooth = self.is_smooth();
        let complete = self.is_complete();
        Ok(CoxRingReport {
            class_group: ClassGroupReport::of(&cl.group),
            variables,
            smooth,
            complete,
            // outside smooth complete fans the grading is reported as an
            // extension, without the polynomial-ring identification
            polynomial_ring_theorem_applies: smooth && complete != Some(false),
        })
    }
}

fn angle_cmp(u: &[i64], v: &[i64]) -> Ordering {
    let half = |w: &[i64]| {
        if w[1] > 0 || (w[1] == 0 && w[0] > 0) {
            0
        } else {
            1
        }
    };
    half(u)
        .cmp(&half(v))
        .then_with(|| 0.cmp(&(u[0] * v[1] - u[1] * v[0])))
}

/// Increasing index sets of size `k` from `0..n`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn scan_box(lo: &[i64], hi: &[i64], mut visit: impl FnMut(&[i64])) {
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return;
    }
    let mut cur = lo.to_vec();
    loop {
        visit(&cur);
        let Some(k) = (0..cur.len()).rev().find(|&k| cur[k] < hi[k]) else {
            return;
        };
        cur[k] += 1;
        cur[k + 1..].copy_from_slice(&lo[k + 1..]);
    }
}

/// Class group with its degree map `Z^rays -> Z^rank + torsion` as integer
/// matrices.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    pub group: PresentedAbelianGroup,
    free: Vec<Vec<i64>>,
    torsion: Vec<(Vec<i64>, i64)>,
}

impl ClassGroup {
    pub fn degree(&self, e: &[i64]) -> (Vec<i64>, Vec<i64>) {
        let dot = |row: &[i64]| row.iter().zip(e).map(|(x, y)| x * y).sum::<i64>();
        (
            self.free.iter().map(|r| dot(r)).collect(),
            self.torsion
                .iter()
                .map(|(r, d)| dot(r).rem_euclid(*d))
                .collect(),
        )
    }

    pub fn class_of(&self, e: &[i64]) -> GroupElement {
        self.group.class_of_vector(e)
    }

    fn coordinates(&self, c: &GroupElement) -> (Vec<i64>, Vec<i64>) {
        let f = |x: &BigInt| x.to_i64().expect("class coordinates fit i64");
        (
            c.free.iter().map(f).collect(),
            c.torsion.iter().map(f).collect(),
        )
    }

    /// The class with free coordinates `free` and torsion part `torsion`.
    pub fn element(&self, free: &[i64], torsion: &[i64]) -> Result<GroupElement> {
        if free.len() != self.free.len() || torsion.len() != self.torsion.len() {
            return Err(Error::Input(
                "class has the wrong shape for this group".into(),
            ));
        }
        Ok(GroupElement {
            free: free.iter().map(|&x| x.into()).collect(),
            torsion: torsion
                .iter()
                .zip(&self.torsion)
                .map(|(&x, (_, d))| x.rem_euclid(*d).into())
                .collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassGroupReport {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl ClassGroupReport {
    pub fn of(g: &PresentedAbelianGroup) -> Self {
        ClassGroupReport {
            rank: g.free_rank(),
            torsion: g
                .torsion()
                .iter()
                .map(|d| d.to_u64().expect("invariant factor fits u64"))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoxVariable {
    pub name: String,
    pub ray: Vec<i64>,
    pub degree: Vec<i64>,
    pub torsion_degree: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoxRingReport {
    pub class_group: ClassGroupReport,
    pub variables: Vec<CoxVariable>,
    pub smooth: bool,
    pub complete: Option<bool>,
    pub polynomial_ring_theorem_applies: bool,
}

/// On `F_1` (the blow-up of `P^2` at a point) the line class is `D_3` and
/// the exceptional class `D_1`, so `aA - bE` is the divisor `(0, -b, 0, a)`.
pub fn f1_divisor(d: &MultiDegree) -> Result<Vec<i64>> {
    if d.m() != 1 {
        return Err(Error::Input(
            "F1 corresponds to the blow-up at exactly one point".into(),
        ));
    }
    Ok(vec![0, -d.b[0], 0, d.a])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fan_validation() {
        assert!(Fan::new(2, vec![vec![2, 0]], vec![]).is_err());
        assert!(Fan::new(2, vec![vec![0, 0]], vec![]).is_err());
        assert!(Fan::new(2, vec![vec![1, 0], vec![1, 0]], vec![]).is_err());
        assert!(Fan::new(2, vec![vec![1, 0, 0]], vec![]).is_err());
        assert!(Fan::new(2, vec![vec![1, 0], vec![-1, 0]], vec![vec![0, 1]]).is_err());
        assert!(Fan::new(2, vec![vec![1, 0]], vec![vec![3]]).is_err());
        let raw = RawFan {
            d: 2,
            rays: vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            max_cones: vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        };
        assert_eq!(Fan::try_from(raw).unwrap(), Fan::projective_plane());
        assert!(Fan::bundled("F3").is_ok());
        assert!(Fan::bundled("P7").is_err());
    }

    #[test]
    fn smooth_and_complete() {
        for fan in [
            Fan::projective_plane(),
            Fan::p1_x_p1(),
            Fan::hirzebruch(1),
            Fan::hirzebruch(3),
        ] {
            assert!(fan.is_smooth());
            assert_eq!(fan.is_complete(), Some(true));
        }
        // weighted plane P(1,1,2): complete, not smooth
        let wp = Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -2]],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap();
        assert!(!wp.is_smooth());
        assert_eq!(wp.is_complete(), Some(true));
        // the affine plane
        let a2 = Fan::new(2, vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1]]).unwrap();
        assert_eq!(a2.is_complete(), Some(false));
        // P^2 with one cone missing
        let holed = Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        assert_eq!(holed.is_complete(), Some(false));
        let p1 = Fan::new(1, vec![vec![1], vec![-1]], vec![vec![0], vec![1]]).unwrap();
        assert_eq!(p1.is_complete(), Some(true));
        let p3 = Fan::new(
            3,
            vec![
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![-1, -1, -1],
            ],
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap();
        assert_eq!(p3.is_complete(), None);
        assert!(p3.is_smooth());
    }

    #[test]
    fn class_group_examples() {
        let cl = Fan::projective_plane().class_group().unwrap();
        assert_eq!(
            ClassGroupReport::of(&cl.group),
            ClassGroupReport {
                rank: 1,
                torsion: vec![]
            }
        );
        for e in [[1, 0, 0], [0, 1, 0], [0, 0, 1], [2, 3, 1]] {
            let s: i64 = e.iter().sum();
            assert_eq!(cl.degree(&e).0, vec![s]);
        }
        assert_eq!(
            Fan::p1_x_p1().class_group().unwrap().group.to_string(),
            "Z^2"
        );
        assert_eq!(
            Fan::hirzebruch(1).class_group().unwrap().group.to_string(),
            "Z^2"
        );
        let wp = Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -2]],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap();
        let cl = wp.class_group().unwrap();
        assert_eq!((cl.group.free_rank(), cl.group.torsion().len()), (1, 0));
        // P^2 / Z_3: rays (1,0), (0,1), (-1,-1) in the superlattice gives torsion
        let quot = Fan::new(
            2,
            vec![vec![2, -1], vec![-1, 2], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap();
        let cl = quot.class_group().unwrap();
        assert_eq!(cl.group.to_string(), "Z + Z/3");
        let line = Fan::new(2, vec![vec![1, 0], vec![-1, 0]], vec![vec![0], vec![1]]).unwrap();
        assert!(line.class_group().is_err());
    }

    #[test]
    fn cox_ring_examples() {
        let r = Fan::projective_plane().cox_ring_description().unwrap();
        assert_eq!(
            r.variables
                .iter()
                .map(|v| v.degree.clone())
                .collect::<Vec<_>>(),
            vec![vec![1]; 3]
        );
        assert!(r.polynomial_ring_theorem_applies);
        let r = Fan::p1_x_p1().cox_ring_description().unwrap();
        let degs: Vec<Vec<i64>> = r.variables.iter().map(|v| v.degree.clone()).collect();
        assert_eq!(degs[0], degs[1]);
        assert_eq!(degs[2], degs[3]);
        assert!(RatMatrix::from_i64(&[degs[0].clone(), degs[2].clone()])
            .inverse()
            .is_some());
        let r = Fan::hirzebruch(1).cox_ring_description().unwrap();
        let degs: Vec<Vec<i64>> = r.variables.iter().map(|v| v.degree.clone()).collect();
        let det = IntMatrix::from_i64(2, &[degs[1].clone(), degs[3].clone()]).det();
        assert_eq!(det.abs(), BigInt::from(1));
        let wp = Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -2]],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap();
        assert!(
            !wp.cox_ring_description()
                .unwrap()
                .polynomial_ring_theorem_applies
        );
    }

    #[test]
    fn piece_dim_examples() {
        let p2 = Fan::projective_plane();
        let cl = p2.class_group().unwrap();
        let three = cl.element(&[3], &[]).unwrap();
        assert_eq!(p2.piece_dim_monomial(&cl, &three).unwrap(), 10);
        assert_eq!(p2.piece_dim_polytope(&[3, 0, 0]).unwrap(), 10);
        assert_eq!(p2.piece_dim_polytope(&[0, 0, 0]).unwrap(), 1);
        assert_eq!(
            p2.piece_dim_monomial(&cl, &cl.element(&[0], &[]).unwrap())
                .unwrap(),
            1
        );
        assert_eq!(
            p2.piece_dim_monomial(&cl, &cl.element(&[-1], &[]).unwrap())
                .unwrap(),
            0
        );
        assert_eq!(p2.piece_dim_polytope(&[-1, 0, 0]).unwrap(), 0);
        let q = Fan::p1_x_p1();
        let cl = q.class_group().unwrap();
        let c = cl.class_of(&[1, 0, 1, 0]);
        assert_eq!(q.piece_dim_monomial(&cl, &c).unwrap(), 4);
        assert_eq!(q.piece_dim_polytope(&[1, 0, 1, 0]).unwrap(), 4);
        let a2 = Fan::new(2, vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1]]).unwrap();
        assert!(matches!(
            a2.piece_dim_polytope(&[0, 0]),
            Err(Error::Unsupported(_))
        ));
        let holed = Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        // same rays as P^2, so the polytope is still bounded
        assert_eq!(holed.piece_dim_polytope(&[3, 0, 0]).unwrap(), 10);
    }

    #[test]
    fn f1_matches_blown_up_plane() {
        use crate::blowup::BlowupModel;
        use crate::poly::rat_point;
        let f1 = Fan::hirzebruch(1);
        let model = BlowupModel::new(2, vec![rat_point(&[1, 0, 0])]).unwrap();
        for a in -2..=4 {
            for b in -2..=4 {
                let d = MultiDegree::new(a, vec![b]);
                let div = f1_divisor(&d).unwrap();
                assert_eq!(
                    f1.piece_dim_polytope(&div).unwrap(),
                    model.piece_dim(&d).unwrap() as u64,
                    "{d}"
                );
            }
        }
    }

    #[test]
    fn torsion_classes_are_separated() {
        let quot = Fan::new(
            2,
            vec![vec![2, -1], vec![-1, 2], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap();
        let cl = quot.class_group().unwrap();
        let mut total = 0;
        for t in 0..3 {
            let c = cl.element(&[3], &[t]).unwrap();
            let n = quot.piece_dim_monomial(&cl, &c).unwrap();
            let rep = cl.group.representative(&c).unwrap();
            assert_eq!(n, quot.piece_dim_polytope(&rep).unwrap());
            total += n;
        }
        // monomials of total degree 3 split among the three torsion classes
        assert_eq!(total, 10);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn monomial_count_equals_lattice_points(
            which in 0usize..4,
            coeffs in prop::collection::vec(-3i64..=4, 4),
        ) {
            let fan = [Fan::projective_plane(), Fan::p1_x_p1(), Fan::hirzebruch(1), Fan::hirzebruch(2)][which].clone();
            let a = &coeffs[..fan.rays().len()];
            let cl = fan.class_group().unwrap();
            let class = cl.class_of(a);
            prop_assert_eq!(fan.piece_dim_monomial(&cl, &class).unwrap(), fan.piece_dim_polytope(a).unwrap());
        }

        #[test]
        fn linearly_equivalent_divisors_agree(u in prop::collection::vec(-3i64..=3, 2), a in prop::collection::vec(-2i64..=4, 4)) {
            let fan = Fan::hirzebruch(1);
            let shifted: Vec<i64> = fan.rays().iter().zip(&a).map(|(v, c)| c + v[0] * u[0] + v[1] * u[1]).collect();
            prop_assert_eq!(fan.piece_dim_polytope(&a).unwrap(), fan.piece_dim_polytope(&shifted).unwrap());
        }
    }
}

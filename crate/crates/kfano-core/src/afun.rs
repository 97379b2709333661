// SPDX-License-Identifier: MIT OR Apache-2.0

//! The piecewise-linear functions `A_x`, the moment polytope `Delta_Z`, its
//! linearity subdivision and the polytopes `Delta_x^O` and `Delta_x(d)`.
//!
//! Everything is expressed in the shifted frame `mu = lambda - lambda0`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::arith::{AffForm, Affine, Rat, Weight};
use crate::error::{Error, Result};
use crate::polyhedra::{hrep_to_vrep, HalfSpace, Polyhedron, Polytope};
use crate::variety::{AnticanonicalData, CurvePointId, VarietyData};

/// Pointwise minimum of affine forms, each labelled by its divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLFunc {
    pub pieces: Vec<AffForm>,
    pub labels: Vec<String>,
}

impl PLFunc {
    pub fn new(pieces: Vec<AffForm>, labels: Vec<String>) -> Self {
        assert_eq!(pieces.len(), labels.len());
        PLFunc { pieces, labels }
    }

    pub fn eval(&self, mu: &[Rat]) -> Rat {
        self.pieces.iter().map(|p| p.eval(mu)).min().expect("PLFunc has pieces")
    }

    /// Index of the first piece attaining the minimum.
    pub fn active(&self, mu: &[Rat]) -> usize {
        let v = self.eval(mu);
        self.pieces.iter().position(|p| p.eval(mu) == v).unwrap_or(0)
    }

    pub fn affine(&self, i: usize) -> Affine {
        Affine::from(&self.pieces[i])
    }

    /// Indices of pieces that are distinct as functions (first occurrence kept).
    pub fn distinct_pieces(&self) -> Vec<usize> {
        let mut seen: BTreeSet<Affine> = BTreeSet::new();
        (0..self.pieces.len()).filter(|&i| seen.insert(self.affine(i))).collect()
    }

    pub fn is_identically_zero(&self) -> bool {
        self.distinct_pieces().iter().all(|&i| {
            let a = self.affine(i);
            a.is_constant() && a.constant.is_zero()
        })
    }
}

/// `A_x = min (m_D + ell_D) / h_D` over jump divisors at each point class.
/// Marked points without their own jump divisor use the generic template
/// `q_x` with coefficient `a_x`.
pub fn build_a(data: &VarietyData, m: &AnticanonicalData) -> Result<BTreeMap<CurvePointId, PLFunc>> {
    let mut out = BTreeMap::new();
    let generic = data.jump_divisors(&CurvePointId::Generic);
    for x in data.point_classes() {
        let divs = data.jump_divisors(&x);
        let (pieces, labels): (Vec<AffForm>, Vec<String>) = if !divs.is_empty() {
            divs.iter()
                .map(|d| (AffForm::new(d.v.ell.clone(), m.m(&d.name), d.v.h.clone()), d.name.clone()))
                .unzip()
        } else if let Some(g) = generic.first() {
            let h = &g.v.h;
            let mx = Rat::one() - h + h * data.a_x(&x);
            (vec![AffForm::new(g.v.ell.clone(), mx, h.clone())], vec![format!("{}@{}", g.name, x)])
        } else {
            return Err(Error::AUndefined { point: format!("{x}") });
        };
        out.insert(x, PLFunc::new(pieces, labels));
    }
    Ok(out)
}

/// All distinct sums obtained by choosing one piece from each function.
pub(crate) fn selection_sums(funcs: &[&PLFunc], dim: usize) -> Vec<Affine> {
    let mut acc: BTreeSet<Affine> = BTreeSet::new();
    acc.insert(Affine::constant(dim, Rat::zero()));
    for f in funcs {
        let pieces: Vec<Affine> = f.distinct_pieces().iter().map(|&i| f.affine(i)).collect();
        let mut next = BTreeSet::new();
        for s in &acc {
            for p in &pieces {
                next.insert(s.add(p));
            }
        }
        acc = next;
    }
    acc.into_iter().collect()
}

fn hs_from_affine(a: &Affine) -> HalfSpace {
    HalfSpace::new(a.linear.clone(), a.constant.clone())
}

/// One cell of the common linearity subdivision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub polytope: Polytope,
    /// Active piece index per point class.
    pub active: BTreeMap<CurvePointId, usize>,
    /// The active affine function of every `A_x` on this cell.
    pub a_x: BTreeMap<CurvePointId, Affine>,
    /// `A = sum over marked points of A_x` on this cell.
    pub a_total: Affine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub cells: Vec<Cell>,
}

/// Everything piecewise-linear about `(X, K_X^{-1})`, computed once.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub rank: usize,
    pub lambda0: Weight,
    pub classes: Vec<CurvePointId>,
    pub a_coeff: BTreeMap<CurvePointId, Rat>,
    pub funcs: BTreeMap<CurvePointId, PLFunc>,
    pub delta_z: Polytope,
    pub subdivision: Subdivision,
}

impl Geometry {
    pub fn new(data: &VarietyData, m: &AnticanonicalData) -> Result<Geometry> {
        let funcs = build_a(data, m)?;
        let delta_z = build_delta_z_from(data, m, &funcs)?;
        let subdivision = subdivide_from(data.rank, &funcs, &delta_z);
        let classes = data.point_classes();
        let a_coeff = classes.iter().map(|x| (x.clone(), data.a_x(x))).collect();
        Ok(Geometry { rank: data.rank, lambda0: m.lambda0.clone(), classes, a_coeff, funcs, delta_z, subdivision })
    }

    pub fn a_of(&self, x: &CurvePointId) -> Rat {
        self.a_coeff.get(x).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn a_x(&self, x: &CurvePointId, mu: &[Rat]) -> Rat {
        self.funcs[x].eval(mu)
    }

    /// `A(mu) = sum_x A_x(mu)`; the generic class contributes 0.
    pub fn a_total(&self, mu: &[Rat]) -> Rat {
        self.funcs
            .iter()
            .filter(|(x, _)| **x != CurvePointId::Generic)
            .fold(Rat::zero(), |acc, (_, f)| acc + f.eval(mu))
    }

    pub fn marked_funcs(&self) -> Vec<&PLFunc> {
        self.funcs.iter().filter(|(x, _)| **x != CurvePointId::Generic).map(|(_, f)| f).collect()
    }

    /// Vertices of the subdivision (cell vertices, deduplicated, sorted).
    pub fn subdivision_vertices(&self) -> Vec<Vec<Rat>> {
        let mut s: BTreeSet<Vec<Rat>> = BTreeSet::new();
        for c in &self.subdivision.cells {
            s.extend(c.polytope.vertices.iter().cloned());
        }
        if self.subdivision.cells.is_empty() {
            s.extend(self.delta_z.vertices.iter().cloned());
        }
        s.into_iter().collect()
    }

    /// `Delta_x^O = {(mu, t) : mu in Delta_Z, -A_x <= t <= A - A_x} + (0, a_x - 1)`.
    pub fn delta_x_o(&self, x: &CurvePointId) -> Polytope {
        let r = self.rank;
        if self.delta_z.is_empty() {
            return Polytope::empty(r + 1);
        }
        let shift = self.a_of(x) - Rat::one();
        let mut hs: Vec<HalfSpace> = self
            .delta_z
            .all_inequalities()
            .iter()
            .map(|h| {
                let mut n = h.normal.clone();
                n.push(Rat::zero());
                HalfSpace::new(n, h.offset.clone())
            })
            .collect();
        let fx = &self.funcs[x];
        for i in fx.distinct_pieces() {
            // t + A_x^{(i)}(mu) - shift >= 0
            let a = fx.affine(i);
            let mut n = a.linear.clone();
            n.push(Rat::one());
            hs.push(HalfSpace::new(n, &a.constant - &shift));
        }
        let others: Vec<&PLFunc> = self
            .funcs
            .iter()
            .filter(|(y, _)| **y != CurvePointId::Generic && *y != x)
            .map(|(_, f)| f)
            .collect();
        for s in selection_sums(&others, r) {
            // shift + S(mu) - t >= 0
            let mut n = s.linear.clone();
            n.push(-Rat::one());
            hs.push(HalfSpace::new(n, &s.constant + &shift));
        }
        hrep_to_vrep(r + 1, &hs).expect("fibres over a polytope are bounded")
    }

    /// `Delta_x(d) = {(t, mu) : mu in Delta_Z, t >= -A_x(mu)}` (unbounded in `t`).
    pub fn delta_x_d(&self, x: &CurvePointId) -> Polyhedron {
        let r = self.rank;
        if self.delta_z.is_empty() {
            return Polyhedron::empty(r + 1);
        }
        let mut hs: Vec<HalfSpace> = self
            .delta_z
            .all_inequalities()
            .iter()
            .map(|h| {
                let mut n = vec![Rat::zero()];
                n.extend(h.normal.iter().cloned());
                HalfSpace::new(n, h.offset.clone())
            })
            .collect();
        let fx = &self.funcs[x];
        for i in fx.distinct_pieces() {
            let a = fx.affine(i);
            let mut n = vec![Rat::one()];
            n.extend(a.linear.iter().cloned());
            hs.push(HalfSpace::new(n, a.constant.clone()));
        }
        Polyhedron::from_hrep(r + 1, &hs)
    }
}

fn build_delta_z_from(
    data: &VarietyData,
    m: &AnticanonicalData,
    funcs: &BTreeMap<CurvePointId, PLFunc>,
) -> Result<Polytope> {
    let r = data.rank;
    let mut hs = Vec::new();
    for d in data.central_divisors() {
        if d.v.ell.is_zero() {
            continue;
        }
        hs.push(HalfSpace::new(d.v.ell.0.clone(), m.m(&d.name)));
    }
    let marked: Vec<&PLFunc> =
        funcs.iter().filter(|(x, _)| **x != CurvePointId::Generic).map(|(_, f)| f).collect();
    for s in selection_sums(&marked, r) {
        if s.is_constant() {
            if s.constant < Rat::zero() {
                return Err(Error::Invalid("moment polytope is empty".into()));
            }
            continue;
        }
        hs.push(hs_from_affine(&s));
    }
    let p = hrep_to_vrep(r, &hs)?;
    if p.is_empty() {
        return Err(Error::Invalid("moment polytope is empty".into()));
    }
    Ok(p)
}

/// `Delta_Z`: central facets and one inequality per selection of pieces of `A >= 0`.
pub fn build_delta_z(data: &VarietyData, m: &AnticanonicalData) -> Result<Polytope> {
    let funcs = build_a(data, m)?;
    build_delta_z_from(data, m, &funcs)
}

fn subdivide_from(rank: usize, funcs: &BTreeMap<CurvePointId, PLFunc>, delta_z: &Polytope) -> Subdivision {
    if delta_z.is_empty() {
        return Subdivision { cells: Vec::new() };
    }
    let mut cells: Vec<(Polytope, BTreeMap<CurvePointId, usize>)> = vec![(delta_z.clone(), BTreeMap::new())];
    for (x, f) in funcs {
        let distinct = f.distinct_pieces();
        let mut next = Vec::new();
        for (poly, act) in &cells {
            if distinct.len() == 1 {
                let mut a = act.clone();
                a.insert(x.clone(), distinct[0]);
                next.push((poly.clone(), a));
                continue;
            }
            for &j in &distinct {
                let pj = f.affine(j);
                let extra: Vec<HalfSpace> = distinct
                    .iter()
                    .filter(|&&k| k != j)
                    .map(|&k| hs_from_affine(&f.affine(k).sub(&pj)))
                    .collect();
                let c = poly.intersect(&extra);
                if c.is_full_dimensional() {
                    let mut a = act.clone();
                    a.insert(x.clone(), j);
                    next.push((c, a));
                }
            }
        }
        cells = next;
    }
    let cells = cells
        .into_iter()
        .map(|(polytope, active)| {
            let a_x: BTreeMap<CurvePointId, Affine> =
                active.iter().map(|(x, &i)| (x.clone(), funcs[x].affine(i))).collect();
            let a_total = a_x
                .iter()
                .filter(|(x, _)| **x != CurvePointId::Generic)
                .fold(Affine::constant(rank, Rat::zero()), |acc, (_, a)| acc.add(a));
            Cell { polytope, active, a_x, a_total }
        })
        .collect();
    Subdivision { cells }
}

/// Common refinement of the linearity domains of all `A_x` inside `Delta_Z`.
pub fn subdivide(data: &VarietyData, m: &AnticanonicalData) -> Result<Subdivision> {
    let funcs = build_a(data, m)?;
    let dz = build_delta_z_from(data, m, &funcs)?;
    Ok(subdivide_from(data.rank, &funcs, &dz))
}

/// `Delta_x^O(K_X^{-1})` for every point class, in `(mu, t)` coordinates.
pub fn build_delta_x_o(data: &VarietyData) -> Result<BTreeMap<CurvePointId, Polytope>> {
    let m = crate::variety::build_anticanonical(data)?;
    let g = Geometry::new(data, &m)?;
    Ok(g.classes.iter().map(|x| (x.clone(), g.delta_x_o(x))).collect())
}

/// `Delta_x(d)` for every point class, in `(t, mu)` coordinates.
pub fn build_delta_x_d(data: &VarietyData, m: &AnticanonicalData) -> Result<BTreeMap<CurvePointId, Polyhedron>> {
    let g = Geometry::new(data, m)?;
    Ok(g.classes.iter().map(|x| (x.clone(), g.delta_x_d(x))).collect())
}

pub use crate::polyhedra::normal_fan_at_vertices;

/// Marked point names paired with the labels of their `A_x` pieces, for reports.
pub fn describe(funcs: &BTreeMap<CurvePointId, PLFunc>) -> Vec<(String, Vec<String>)> {
    funcs
        .iter()
        .map(|(x, f)| {
            let terms = f
                .pieces
                .iter()
                .map(|p| {
                    let a = Affine::from(p);
                    affine_to_string(&a, "mu")
                })
                .collect();
            (format!("{x}"), terms)
        })
        .collect()
}

/// `c + a_1 mu1 + ...` rendering with exact coefficients.
pub fn affine_to_string(a: &Affine, var: &str) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    let _ = write!(s, "{}", a.constant);
    for (i, c) in a.linear.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if *c < Rat::zero() {
            let _ = write!(s, " - {}*{}{}", -c.clone(), var, i + 1);
        } else {
            let _ = write!(s, " + {}*{}{}", c, var, i + 1);
        }
    }
    s
}

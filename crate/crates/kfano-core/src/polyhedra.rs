// SPDX-License-Identifier: MIT OR Apache-2.0

//! Exact polyhedra: double description, redundancy removal, cones,
//! duality and pulling triangulations.
//!
//! Every constructor funnels through [`double_description`] so that
//! vertex, ray and facet lists come out in one canonical order.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{dot, gcd_vec, is_zero_vec, primitive, Rat};
use crate::error::{Error, Result};
use crate::linalg::{det, rank, row_basis};

/// `{p : offset + <p, normal> >= 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

impl HalfSpace {
    pub fn new(normal: Vec<Rat>, offset: Rat) -> Self {
        HalfSpace { normal, offset }
    }

    pub fn eval(&self, p: &[Rat]) -> Rat {
        &self.offset + dot(&self.normal, p)
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        !self.eval(p).is_negative()
    }

    /// Positive rescaling to a primitive integer row `(offset, normal)`.
    pub fn canonical(&self) -> HalfSpace {
        let mut row = Vec::with_capacity(self.normal.len() + 1);
        row.push(self.offset.clone());
        row.extend(self.normal.iter().cloned());
        let p = primitive(&row);
        HalfSpace {
            offset: Rat::from_integer(p[0].clone()),
            normal: p[1..].iter().cloned().map(Rat::from_integer).collect(),
        }
    }

    /// Same set up to positive scaling.
    pub fn same_as(&self, o: &HalfSpace) -> bool {
        self.canonical() == o.canonical()
    }

    fn homogenized_int(&self) -> Vec<BigInt> {
        let mut row = Vec::with_capacity(self.normal.len() + 1);
        row.push(self.offset.clone());
        row.extend(self.normal.iter().cloned());
        primitive(&row)
    }
}

// ---------------------------------------------------------------------------
// Double description on integer data.

#[derive(Clone, Debug)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        let w = i / 64;
        if w >= self.0.len() {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        let n = self.0.len().max(o.0.len());
        Bits((0..n).map(|i| self.0.get(i).unwrap_or(&0) & o.0.get(i).unwrap_or(&0)).collect())
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().enumerate().all(|(i, w)| w & !o.0.get(i).unwrap_or(&0) == 0)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

fn idot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

fn normalize_int(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = gcd_vec(&v);
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

fn comb(a: &BigInt, x: &[BigInt], b: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    normalize_int(x.iter().zip(y).map(|(p, q)| a * p - b * q).collect())
}

struct DdOut {
    rays: Vec<Vec<BigInt>>,
    lineality: Vec<Vec<BigInt>>,
}

/// Generators of `{y in Q^n : <a, y> >= 0 for every row a}`.
fn double_description(rows: &[Vec<BigInt>], n: usize) -> DdOut {
    let mut lin: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::one();
            e
        })
        .collect();
    let mut rays: Vec<(Vec<BigInt>, Bits)> = Vec::new();
    let m = rows.len();

    for (i, a) in rows.iter().enumerate() {
        if a.iter().all(|x| x.is_zero()) {
            for r in rays.iter_mut() {
                r.1.set(i);
            }
            continue;
        }
        if let Some(pos) = lin.iter().position(|l| !idot(a, l).is_zero()) {
            let mut l = lin.remove(pos);
            let mut al = idot(a, &l);
            if al.is_negative() {
                l.iter_mut().for_each(|x| *x = -x.clone());
                al = -al;
            }
            for o in lin.iter_mut() {
                let ao = idot(a, o);
                if !ao.is_zero() {
                    *o = comb(&al, o, &ao, &l);
                }
            }
            for r in rays.iter_mut() {
                let ar = idot(a, &r.0);
                if !ar.is_zero() {
                    r.0 = comb(&al, &r.0, &ar, &l);
                }
                r.1.set(i);
            }
            let mut z = Bits::new(m);
            for j in 0..i {
                z.set(j);
            }
            rays.push((l, z));
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| idot(a, &r.0)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        if neg.is_empty() {
            for (k, r) in rays.iter_mut().enumerate() {
                if vals[k].is_zero() {
                    r.1.set(i);
                }
            }
            continue;
        }
        let pointed_dim = n - lin.len();
        let mut fresh: Vec<(Vec<BigInt>, Bits)> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].1.and(&rays[q].1);
                if common.count() + 2 < pointed_dim {
                    continue;
                }
                let blocked = (0..rays.len())
                    .any(|k| k != p && k != q && common.subset_of(&rays[k].1));
                if blocked {
                    continue;
                }
                let v = comb(&vals[p], &rays[q].0, &vals[q], &rays[p].0);
                let mut z = common;
                z.set(i);
                fresh.push((v, z));
            }
        }
        let mut next = Vec::with_capacity(rays.len() + fresh.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if vals[k].is_negative() {
                continue;
            }
            if vals[k].is_zero() {
                r.1.set(i);
            }
            next.push(r);
        }
        next.extend(fresh);
        rays = next;
    }
    DdOut { rays: rays.into_iter().map(|r| r.0).collect(), lineality: lin }
}

fn to_rat(v: &[BigInt]) -> Vec<Rat> {
    v.iter().cloned().map(Rat::from_integer).collect()
}

fn negate(v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|x| -x.clone()).collect()
}

/// Primitive integer vector with first nonzero entry positive.
fn oriented_primitive(v: &[Rat]) -> Vec<Rat> {
    let p = primitive(v);
    let flip = p.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    p.into_iter().map(|x| Rat::from_integer(if flip { -x } else { x })).collect()
}

/// Canonical basis of a linear span: reduced echelon rows scaled to
/// primitive integer vectors with positive leading entry.
fn canonical_span(vs: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    row_basis(vs).iter().map(|r| oriented_primitive(r)).collect()
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`.
fn project_out(v: &[Rat], basis: &[Vec<Rat>]) -> Vec<Rat> {
    if basis.is_empty() {
        return v.to_vec();
    }
    // Solve (B B^T) c = B v, return v - B^T c.
    let k = basis.len();
    let gram: Vec<Vec<Rat>> =
        (0..k).map(|i| (0..k).map(|j| dot(&basis[i], &basis[j])).collect()).collect();
    let rhs: Vec<Rat> = basis.iter().map(|b| dot(b, v)).collect();
    let c = crate::linalg::solve(&gram, &rhs).expect("independent basis");
    let mut out = v.to_vec();
    for (ci, b) in c.iter().zip(basis) {
        for (o, bj) in out.iter_mut().zip(b) {
            *o -= ci * bj;
        }
    }
    out
}

fn lex_sort_dedup(mut v: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    v.sort();
    v.dedup();
    v
}

// ---------------------------------------------------------------------------
// Polyhedra and polytopes.

/// A general polyhedron `conv(vertices) + cone(rays) + span(lineality)`
/// with its irredundant H-representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    pub ambient_dim: usize,
    /// Facet inequalities, canonical and lexicographically sorted.
    pub halfspaces: Vec<HalfSpace>,
    /// Affine hull equations `offset + <normal, p> = 0`.
    pub equalities: Vec<HalfSpace>,
    pub vertices: Vec<Vec<Rat>>,
    pub rays: Vec<Vec<Rat>>,
    pub lineality: Vec<Vec<Rat>>,
}

impl Polyhedron {
    pub fn empty(ambient_dim: usize) -> Self {
        Polyhedron {
            ambient_dim,
            halfspaces: Vec::new(),
            equalities: Vec::new(),
            vertices: Vec::new(),
            rays: Vec::new(),
            lineality: Vec::new(),
        }
    }

    pub fn from_hrep(ambient_dim: usize, halfspaces: &[HalfSpace]) -> Self {
        let n = ambient_dim + 1;
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(halfspaces.len() + 1);
        let mut x0 = vec![BigInt::zero(); n];
        x0[0] = BigInt::one();
        rows.push(x0);
        for h in halfspaces {
            assert_eq!(h.normal.len(), ambient_dim, "halfspace dimension");
            rows.push(h.homogenized_int());
        }
        let dd = double_description(&rows, n);
        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for r in &dd.rays {
            if r[0].is_positive() {
                let d = Rat::from_integer(r[0].clone());
                vertices.push(r[1..].iter().map(|x| Rat::from_integer(x.clone()) / &d).collect());
            } else {
                rays.push(to_rat(&r[1..]));
            }
        }
        if vertices.is_empty() {
            return Polyhedron::empty(ambient_dim);
        }
        let lineality = canonical_span(&dd.lineality.iter().map(|l| to_rat(&l[1..])).collect::<Vec<_>>());
        let rays = lex_sort_dedup(
            rays.iter()
                .map(|r| to_rat(&primitive(&project_out(r, &lineality))))
                .filter(|r| !is_zero_vec(r))
                .collect(),
        );
        let vertices = if lineality.is_empty() {
            lex_sort_dedup(vertices)
        } else {
            // Vertices are only defined modulo lineality; project for a canonical choice.
            lex_sort_dedup(vertices.iter().map(|v| project_out(v, &lineality)).collect())
        };
        let mut p = Polyhedron {
            ambient_dim,
            halfspaces: Vec::new(),
            equalities: Vec::new(),
            vertices,
            rays,
            lineality,
        };
        p.set_hrep(halfspaces);
        p
    }

    /// Picks facets and implicit equalities out of a valid inequality list.
    fn set_hrep(&mut self, halfspaces: &[HalfSpace]) {
        let homog: Vec<Vec<Rat>> = self
            .vertices
            .iter()
            .map(|v| {
                let mut h = vec![Rat::one()];
                h.extend(v.iter().cloned());
                h
            })
            .chain(self.rays.iter().map(|r| {
                let mut h = vec![Rat::zero()];
                h.extend(r.iter().cloned());
                h
            }))
            .collect();
        let lin_h: Vec<Vec<Rat>> = self
            .lineality
            .iter()
            .map(|l| {
                let mut h = vec![Rat::zero()];
                h.extend(l.iter().cloned());
                h
            })
            .collect();
        let mut all = homog.clone();
        all.extend(lin_h.iter().cloned());
        let full = rank(&all);
        let nv = self.vertices.len();
        let mut eq_rows: Vec<Vec<Rat>> = Vec::new();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut facets: Vec<HalfSpace> = Vec::new();
        let mut cands: Vec<HalfSpace> = halfspaces.iter().map(|h| h.canonical()).collect();
        cands.sort();
        cands.dedup();
        for h in &cands {
            let tight: Vec<usize> = (0..homog.len())
                .filter(|&g| {
                    if g < nv {
                        h.eval(&self.vertices[g]).is_zero()
                    } else {
                        dot(&h.normal, &self.rays[g - nv]).is_zero()
                    }
                })
                .collect();
            if tight.len() == homog.len() {
                let mut row = vec![h.offset.clone()];
                row.extend(h.normal.iter().cloned());
                eq_rows.push(row);
                continue;
            }
            let mut t: Vec<Vec<Rat>> = tight.iter().map(|&g| homog[g].clone()).collect();
            t.extend(lin_h.iter().cloned());
            if rank(&t) + 1 == full && seen.insert(tight) {
                facets.push(h.clone());
            }
        }
        self.halfspaces = facets;
        self.equalities = canonical_span(&eq_rows)
            .into_iter()
            .map(|r| HalfSpace { offset: r[0].clone(), normal: r[1..].to_vec() })
            .collect();
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        !self.is_empty()
            && self.halfspaces.iter().all(|h| h.contains(p))
            && self.equalities.iter().all(|h| h.eval(p).is_zero())
    }

    /// Dimension of the polyhedron (`None` when empty).
    pub fn dim(&self) -> Option<usize> {
        if self.is_empty() {
            return None;
        }
        let mut rows: Vec<Vec<Rat>> =
            self.vertices[1..].iter().map(|v| crate::arith::sub_vec(v, &self.vertices[0])).collect();
        rows.extend(self.rays.iter().cloned());
        rows.extend(self.lineality.iter().cloned());
        Some(rank(&rows))
    }

    /// Indices of facets tight at vertex `i`.
    pub fn tight_facets(&self, i: usize) -> Vec<usize> {
        let v = &self.vertices[i];
        (0..self.halfspaces.len()).filter(|&j| self.halfspaces[j].eval(v).is_zero()).collect()
    }

    /// Inner normal cone at vertex `i`: generated by the inner normals of the
    /// facets through it, plus the affine-hull equations as lineality.
    pub fn inner_normal_cone(&self, i: usize) -> Cone {
        let rays: Vec<Vec<Rat>> =
            self.tight_facets(i).iter().map(|&j| self.halfspaces[j].normal.clone()).collect();
        let lin: Vec<Vec<Rat>> = self.equalities.iter().map(|e| e.normal.clone()).collect();
        Cone::from_generators(self.ambient_dim, &rays, &lin)
    }
}

/// A bounded polyhedron (possibly empty or lower dimensional).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    pub ambient_dim: usize,
    pub halfspaces: Vec<HalfSpace>,
    pub equalities: Vec<HalfSpace>,
    /// Extreme points in lexicographic order.
    pub vertices: Vec<Vec<Rat>>,
}

impl Polytope {
    pub fn empty(ambient_dim: usize) -> Self {
        Polytope { ambient_dim, halfspaces: Vec::new(), equalities: Vec::new(), vertices: Vec::new() }
    }

    /// Convex hull of finitely many points.
    pub fn from_points(ambient_dim: usize, points: &[Vec<Rat>]) -> Self {
        if points.is_empty() {
            return Polytope::empty(ambient_dim);
        }
        let rows: Vec<Vec<BigInt>> = points
            .iter()
            .map(|p| {
                let mut h = vec![Rat::one()];
                h.extend(p.iter().cloned());
                primitive(&h)
            })
            .collect();
        let dd = double_description(&rows, ambient_dim + 1);
        let mut hs: Vec<HalfSpace> = Vec::new();
        for r in dd.rays.iter() {
            hs.push(HalfSpace { offset: Rat::from_integer(r[0].clone()), normal: to_rat(&r[1..]) });
        }
        for l in dd.lineality.iter() {
            let h = HalfSpace { offset: Rat::from_integer(l[0].clone()), normal: to_rat(&l[1..]) };
            hs.push(HalfSpace { offset: -h.offset.clone(), normal: negate(&h.normal) });
            hs.push(h);
        }
        hrep_to_vrep(ambient_dim, &hs).expect("hull of points is bounded")
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        !self.is_empty()
            && self.halfspaces.iter().all(|h| h.contains(p))
            && self.equalities.iter().all(|h| h.eval(p).is_zero())
    }

    pub fn dim(&self) -> Option<usize> {
        let pts: Vec<&[Rat]> = self.vertices.iter().map(|v| v.as_slice()).collect();
        crate::linalg::affine_dim(&pts)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == Some(self.ambient_dim)
    }

    /// All defining inequalities, with equalities split into two.
    pub fn all_inequalities(&self) -> Vec<HalfSpace> {
        let mut v = self.halfspaces.clone();
        for e in &self.equalities {
            v.push(e.clone());
            v.push(HalfSpace { offset: -e.offset.clone(), normal: negate(&e.normal) });
        }
        v
    }

    /// Intersection with extra inequalities.
    pub fn intersect(&self, extra: &[HalfSpace]) -> Polytope {
        if self.is_empty() {
            return Polytope::empty(self.ambient_dim);
        }
        let mut hs = self.all_inequalities();
        hs.extend(extra.iter().cloned());
        hrep_to_vrep(self.ambient_dim, &hs).expect("subset of a polytope is bounded")
    }

    /// Ambient `d`-volume (0 unless full dimensional).
    pub fn volume(&self) -> Rat {
        triangulate(self).iter().map(|s| s.volume()).fold(Rat::zero(), |a, b| a + b)
    }

    pub fn tight_facets(&self, i: usize) -> Vec<usize> {
        let v = &self.vertices[i];
        (0..self.halfspaces.len()).filter(|&j| self.halfspaces[j].eval(v).is_zero()).collect()
    }

    /// Per-coordinate `(min, max)` over the vertices.
    pub fn bounding_box(&self) -> Vec<(Rat, Rat)> {
        (0..self.ambient_dim)
            .map(|i| {
                let lo = self.vertices.iter().map(|v| v[i].clone()).min().unwrap_or_default();
                let hi = self.vertices.iter().map(|v| v[i].clone()).max().unwrap_or_default();
                (lo, hi)
            })
            .collect()
    }

    /// A point of the affine hull and a basis of its direction space.
    pub fn affine_hull(&self) -> Option<(Vec<Rat>, Vec<Vec<Rat>>)> {
        let base = self.vertices.first()?.clone();
        let diffs: Vec<Vec<Rat>> = self.vertices[1..].iter().map(|v| crate::arith::sub_vec(v, &base)).collect();
        Some((base, row_basis(&diffs)))
    }

    pub fn as_polyhedron(&self) -> Polyhedron {
        Polyhedron {
            ambient_dim: self.ambient_dim,
            halfspaces: self.halfspaces.clone(),
            equalities: self.equalities.clone(),
            vertices: self.vertices.clone(),
            rays: Vec::new(),
            lineality: Vec::new(),
        }
    }

    /// Lattice points (integer vectors) contained in the polytope.
    pub fn lattice_points(&self) -> Vec<Vec<BigInt>> {
        let mut out = Vec::new();
        if self.is_empty() {
            return out;
        }
        let bb: Vec<(BigInt, BigInt)> =
            self.bounding_box().iter().map(|(lo, hi)| (lo.ceil().to_integer(), hi.floor().to_integer())).collect();
        let mut cur: Vec<BigInt> = bb.iter().map(|b| b.0.clone()).collect();
        if bb.iter().any(|(lo, hi)| lo > hi) {
            return out;
        }
        loop {
            let p: Vec<Rat> = cur.iter().cloned().map(Rat::from_integer).collect();
            if self.contains(&p) {
                out.push(cur.clone());
            }
            let mut i = 0;
            loop {
                if i == cur.len() {
                    return out;
                }
                cur[i] += 1;
                if cur[i] <= bb[i].1 {
                    break;
                }
                cur[i] = bb[i].0.clone();
                i += 1;
            }
        }
    }
}

/// Vertex enumeration for a bounded H-representation.
pub fn hrep_to_vrep(ambient_dim: usize, halfspaces: &[HalfSpace]) -> Result<Polytope> {
    let p = Polyhedron::from_hrep(ambient_dim, halfspaces);
    if p.is_empty() {
        return Ok(Polytope::empty(ambient_dim));
    }
    if let Some(r) = p.rays.first().or(p.lineality.first()) {
        return Err(Error::Unbounded { ray: r.clone() });
    }
    Ok(Polytope {
        ambient_dim,
        halfspaces: p.halfspaces,
        equalities: p.equalities,
        vertices: p.vertices,
    })
}

// ---------------------------------------------------------------------------
// Cones.

/// A polyhedral cone with both representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub ambient_dim: usize,
    /// Primitive integer generators, orthogonal to the lineality space.
    pub rays: Vec<Vec<Rat>>,
    /// Canonical basis of the lineality space.
    pub lineality: Vec<Vec<Rat>>,
    /// Facet normals `n` with `<p, n> >= 0`.
    pub halfspaces: Vec<Vec<Rat>>,
    /// Normals of the linear hull equations `<p, n> = 0`.
    pub equalities: Vec<Vec<Rat>>,
}

impl Cone {
    /// `{p : <p, n> >= 0 for n in normals, <p, e> = 0 for e in equalities}`.
    pub fn from_hrep(ambient_dim: usize, normals: &[Vec<Rat>], equalities: &[Vec<Rat>]) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for n in normals {
            assert_eq!(n.len(), ambient_dim, "cone normal dimension");
            rows.push(primitive(n));
        }
        for e in equalities {
            let p = primitive(e);
            rows.push(p.iter().map(|x| -x.clone()).collect());
            rows.push(p);
        }
        let dd = double_description(&rows, ambient_dim);
        let lineality = canonical_span(&dd.lineality.iter().map(|l| to_rat(l)).collect::<Vec<_>>());
        let rays = lex_sort_dedup(
            dd.rays
                .iter()
                .map(|r| to_rat(&primitive(&project_out(&to_rat(r), &lineality))))
                .filter(|r| !is_zero_vec(r))
                .collect(),
        );
        let mut all = rays.clone();
        all.extend(lineality.iter().cloned());
        let full = rank(&all);
        let mut cands: Vec<Vec<Rat>> = normals.iter().map(|n| to_rat(&primitive(n))).collect();
        cands.sort();
        cands.dedup();
        let mut eq_rows: Vec<Vec<Rat>> = equalities.to_vec();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut facets = Vec::new();
        for n in cands {
            if is_zero_vec(&n) {
                continue;
            }
            let tight: Vec<usize> = (0..rays.len()).filter(|&i| dot(&n, &rays[i]).is_zero()).collect();
            if tight.len() == rays.len() {
                eq_rows.push(n);
                continue;
            }
            let mut t: Vec<Vec<Rat>> = tight.iter().map(|&i| rays[i].clone()).collect();
            t.extend(lineality.iter().cloned());
            if rank(&t) + 1 == full && seen.insert(tight) {
                facets.push(n);
            }
        }
        Cone { ambient_dim, rays, lineality, halfspaces: facets, equalities: canonical_span(&eq_rows) }
    }

    /// `cone(rays) + span(lineality)`.
    pub fn from_generators(ambient_dim: usize, rays: &[Vec<Rat>], lineality: &[Vec<Rat>]) -> Self {
        let mut rows: Vec<Vec<BigInt>> = rays.iter().map(|r| primitive(r)).collect();
        for l in lineality {
            let p = primitive(l);
            rows.push(p.iter().map(|x| -x.clone()).collect());
            rows.push(p);
        }
        let dd = double_description(&rows, ambient_dim);
        let normals: Vec<Vec<Rat>> = dd.rays.iter().map(|r| to_rat(r)).collect();
        let eqs: Vec<Vec<Rat>> = dd.lineality.iter().map(|r| to_rat(r)).collect();
        Cone::from_hrep(ambient_dim, &normals, &eqs)
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Cone::from_generators(ambient_dim, &[], &[])
    }

    pub fn full(ambient_dim: usize) -> Self {
        Cone::from_hrep(ambient_dim, &[], &[])
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        self.halfspaces.iter().all(|n| !dot(n, p).is_negative())
            && self.equalities.iter().all(|e| dot(e, p).is_zero())
    }

    pub fn is_trivial(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn dim(&self) -> usize {
        let mut all = self.rays.clone();
        all.extend(self.lineality.iter().cloned());
        rank(&all)
    }

    /// Every generator of `self` lies in `other`.
    pub fn subset_of(&self, other: &Cone) -> bool {
        self.rays.iter().all(|r| other.contains(r))
            && self.lineality.iter().all(|l| other.contains(l) && other.contains(&negate(l)))
    }
}

/// `{y : <x, y> >= 0 for all x in c}`.
pub fn dual_cone(c: &Cone) -> Cone {
    Cone::from_generators(c.ambient_dim, &c.halfspaces, &c.equalities)
}

pub fn cone_equal(a: &Cone, b: &Cone) -> bool {
    a.ambient_dim == b.ambient_dim && a.subset_of(b) && b.subset_of(a)
}

/// `{x in c : <x, n> = 0}`; a zero normal leaves `c` unchanged.
pub fn intersect_with_hyperplane(c: &Cone, n: &[Rat]) -> Cone {
    if is_zero_vec(n) {
        return c.clone();
    }
    let mut eqs = c.equalities.clone();
    eqs.push(n.to_vec());
    Cone::from_hrep(c.ambient_dim, &c.halfspaces, &eqs)
}

pub fn lineality_space(c: &Cone) -> Vec<Vec<Rat>> {
    c.lineality.clone()
}

// ---------------------------------------------------------------------------
// Triangulation.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    pub points: Vec<Vec<Rat>>,
}

impl Simplex {
    pub fn new(points: Vec<Vec<Rat>>) -> Self {
        Simplex { points }
    }

    pub fn ambient_dim(&self) -> usize {
        self.points.first().map_or(0, |p| p.len())
    }

    /// Ambient volume `|det(p_i - p_0)| / d!`; zero for lower-dimensional simplices.
    pub fn volume(&self) -> Rat {
        let d = self.ambient_dim();
        if self.points.len() != d + 1 {
            return Rat::zero();
        }
        let m: Vec<Vec<Rat>> =
            self.points[1..].iter().map(|p| crate::arith::sub_vec(p, &self.points[0])).collect();
        det(&m).abs() / factorial(d)
    }
}

pub fn factorial(n: usize) -> Rat {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= i;
    }
    Rat::from_integer(f)
}

/// Pulling triangulation: each face is coned from its lexicographically
/// smallest vertex over the triangulations of the facets avoiding it.
/// Lower-dimensional polytopes are triangulated inside their affine hull.
pub fn triangulate(p: &Polytope) -> Vec<Simplex> {
    let Some(d) = p.dim() else {
        return Vec::new();
    };
    let tight: Vec<BTreeSet<usize>> =
        (0..p.vertices.len()).map(|i| p.tight_facets(i).into_iter().collect()).collect();
    let all: Vec<usize> = (0..p.vertices.len()).collect();
    let mut out = Vec::new();
    pull(p, &tight, &all, d, &mut Vec::new(), &mut out);
    out
}

fn pull(
    p: &Polytope,
    tight: &[BTreeSet<usize>],
    face: &[usize],
    d: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Simplex>,
) {
    if face.len() == d + 1 {
        let mut pts: Vec<Vec<Rat>> = prefix.iter().map(|&i| p.vertices[i].clone()).collect();
        pts.extend(face.iter().map(|&i| p.vertices[i].clone()));
        out.push(Simplex::new(pts));
        return;
    }
    // Vertex indices are already in lexicographic order.
    let apex = face[0];
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for h in 0..p.halfspaces.len() {
        let sub: Vec<usize> = face.iter().copied().filter(|&i| tight[i].contains(&h)).collect();
        if sub.len() < d || sub.contains(&apex) || facets.contains(&sub) {
            continue;
        }
        let pts: Vec<&[Rat]> = sub.iter().map(|&i| p.vertices[i].as_slice()).collect();
        if crate::linalg::affine_dim(&pts) == Some(d - 1) {
            facets.push(sub);
        }
    }
    prefix.push(apex);
    for f in facets {
        pull(p, tight, &f, d - 1, prefix, out);
    }
    prefix.pop();
}

/// Lexicographic comparison helper exposed for deterministic orderings elsewhere.
pub fn lex_min(points: &[Vec<Rat>]) -> Option<&Vec<Rat>> {
    points.iter().min()
}

/// Inner normal cones of `p` at each vertex, in vertex order.
pub fn normal_fan_at_vertices(p: &Polyhedron) -> Vec<Cone> {
    (0..p.vertices.len()).map(|i| p.inner_normal_cone(i)).collect()
}

/// Least common multiple of denominators, handy for lattice scaling.
pub fn denominator_lcm(v: &[Rat]) -> BigInt {
    v.iter().fold(BigInt::one(), |a, x| a.lcm(x.denom()))
}

/// Integer points of `k P`, refusing to enumerate boxes larger than `bound`.
pub fn scaled_lattice_points(p: &Polytope, k: &BigInt, bound: u128) -> Result<Vec<Vec<BigInt>>> {
    if p.is_empty() {
        return Ok(Vec::new());
    }
    let kr = Rat::from_integer(k.clone());
    let bb: Vec<(BigInt, BigInt)> = p
        .bounding_box()
        .iter()
        .map(|(lo, hi)| ((lo * &kr).ceil().to_integer(), (hi * &kr).floor().to_integer()))
        .collect();
    if bb.iter().any(|(lo, hi)| lo > hi) {
        return Ok(Vec::new());
    }
    let mut estimate: u128 = 1;
    for (lo, hi) in &bb {
        let w = u128::try_from(hi - lo + 1).unwrap_or(u128::MAX);
        estimate = estimate.saturating_mul(w);
    }
    if estimate > bound {
        return Err(Error::EnumerationBound { estimate, bound });
    }
    let rows: Vec<(BigInt, Vec<BigInt>, bool)> = p
        .halfspaces
        .iter()
        .map(|h| (h, false))
        .chain(p.equalities.iter().map(|h| (h, true)))
        .map(|(h, eq)| {
            let c = h.canonical();
            (c.offset.to_integer() * k, c.normal.iter().map(|x| x.to_integer()).collect(), eq)
        })
        .collect();
    let mut out = Vec::new();
    let mut cur: Vec<BigInt> = bb.iter().map(|b| b.0.clone()).collect();
    loop {
        let inside = rows.iter().all(|(off, n, eq)| {
            let v = n.iter().zip(&cur).fold(off.clone(), |a, (x, y)| a + x * y);
            if *eq {
                v.is_zero()
            } else {
                !v.is_negative()
            }
        });
        if inside {
            out.push(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == cur.len() {
                return Ok(out);
            }
            cur[i] += 1;
            if cur[i] <= bb[i].1 {
                break;
            }
            cur[i] = bb[i].0.clone();
            i += 1;
        }
    }
}

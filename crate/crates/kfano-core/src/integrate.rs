// SPDX-License-Identifier: MIT OR Apache-2.0

//! Exact integration of sums of products of affine forms over simplices
//! and polytopes.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{dot, primitive, sub_vec, Affine, Rat};
use crate::error::{Error, Result};
use crate::linalg::det;
use crate::polyhedra::{factorial, triangulate, Polytope, Simplex};

/// `sum_j c_j * prod_i f_{j,i}(p)` with affine factors `f_{j,i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyDensity {
    pub dim: usize,
    pub terms: Vec<(Rat, Vec<Affine>)>,
}

impl PolyDensity {
    pub fn zero(dim: usize) -> Self {
        PolyDensity { dim, terms: Vec::new() }
    }

    pub fn one(dim: usize) -> Self {
        PolyDensity { dim, terms: vec![(Rat::one(), Vec::new())] }
    }

    pub fn constant(dim: usize, c: Rat) -> Self {
        PolyDensity { dim, terms: vec![(c, Vec::new())] }
    }

    pub fn product(factors: Vec<Affine>) -> Self {
        let dim = factors.first().map_or(0, |f| f.dim());
        PolyDensity { dim, terms: vec![(Rat::one(), factors)] }
    }

    pub fn affine(f: Affine) -> Self {
        Self::product(vec![f])
    }

    pub fn coord(dim: usize, i: usize) -> Self {
        Self::affine(Affine::coord(dim, i))
    }

    pub fn eval(&self, p: &[Rat]) -> Rat {
        self.terms.iter().fold(Rat::zero(), |acc, (c, fs)| {
            acc + fs.iter().fold(c.clone(), |x, f| x * f.eval(p))
        })
    }

    pub fn mul(&self, o: &PolyDensity) -> PolyDensity {
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (a, fa) in &self.terms {
            for (b, fb) in &o.terms {
                let mut f = fa.clone();
                f.extend(fb.iter().cloned());
                terms.push((a * b, f));
            }
        }
        PolyDensity { dim: self.dim.max(o.dim), terms }
    }

    pub fn mul_affine(&self, f: &Affine) -> PolyDensity {
        let terms = self
            .terms
            .iter()
            .map(|(c, fs)| {
                let mut fs = fs.clone();
                fs.push(f.clone());
                (c.clone(), fs)
            })
            .collect();
        PolyDensity { dim: self.dim, terms }
    }

    pub fn add(&self, o: &PolyDensity) -> PolyDensity {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        PolyDensity { dim: self.dim.max(o.dim), terms }
    }

    pub fn scale(&self, s: &Rat) -> PolyDensity {
        PolyDensity { dim: self.dim, terms: self.terms.iter().map(|(c, f)| (c * s, f.clone())).collect() }
    }

    /// Same density on `Q^dim x Q^extra`, ignoring the new coordinates.
    pub fn extend(&self, extra: usize) -> PolyDensity {
        PolyDensity {
            dim: self.dim + extra,
            terms: self
                .terms
                .iter()
                .map(|(c, fs)| (c.clone(), fs.iter().map(|f| f.extend(extra)).collect()))
                .collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(|(_, f)| f.len()).max().unwrap_or(0)
    }
}

/// `int_{standard k-simplex} prod b_i^{a_i} db = prod a_i! / (k + sum a)!` summed
/// against the expansion of `f` in barycentric coordinates, times `k!`.
fn barycentric_average(f: &PolyDensity, points: &[Vec<Rat>]) -> Rat {
    let k = points.len() - 1;
    let mut total = Rat::zero();
    for (c, factors) in &f.terms {
        let mut mono: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        mono.insert(vec![0; k + 1], c.clone());
        for fac in factors {
            let vals: Vec<Rat> = points.iter().map(|p| fac.eval(p)).collect();
            let mut next: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
            for (e, coef) in &mono {
                for (i, v) in vals.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let mut e2 = e.clone();
                    e2[i] += 1;
                    *next.entry(e2).or_insert_with(Rat::zero) += coef * v;
                }
            }
            mono = next;
        }
        for (e, coef) in mono {
            let s: u32 = e.iter().sum();
            let num = e.iter().fold(Rat::one(), |a, &x| a * factorial(x as usize));
            total += coef * num * factorial(k) / factorial(k + s as usize);
        }
    }
    total
}

/// `int_s f` against a given `k`-dimensional measure of `s`.
pub fn integrate_simplex_with_measure(f: &PolyDensity, s: &Simplex, measure: &Rat) -> Rat {
    if s.points.is_empty() || measure.is_zero() {
        return Rat::zero();
    }
    barycentric_average(f, &s.points) * measure
}

/// Exact integral of `f` over `s` against the ambient Lebesgue measure.
pub fn integrate_simplex(f: &PolyDensity, s: &Simplex) -> Rat {
    let vol = s.volume();
    integrate_simplex_with_measure(f, s, &vol)
}

/// Exact integral over a polytope; lower-dimensional polytopes give 0.
pub fn integrate_polytope(f: &PolyDensity, p: &Polytope) -> Rat {
    if !p.is_full_dimensional() {
        return Rat::zero();
    }
    triangulate(p).iter().map(|s| integrate_simplex(f, s)).fold(Rat::zero(), |a, b| a + b)
}

/// Integrates several densities over the same triangulation at once.
pub fn integrate_polytope_many(fs: &[PolyDensity], p: &Polytope) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); fs.len()];
    if !p.is_full_dimensional() {
        return out;
    }
    for s in triangulate(p) {
        let vol = s.volume();
        for (o, f) in out.iter_mut().zip(fs) {
            *o += integrate_simplex_with_measure(f, &s, &vol);
        }
    }
    out
}

/// `(int x_i f) / (int f)` componentwise.
pub fn weighted_barycenter(f: &PolyDensity, p: &Polytope) -> Result<Vec<Rat>> {
    let mut fs = vec![f.clone()];
    for i in 0..p.ambient_dim {
        fs.push(f.mul_affine(&Affine::coord(p.ambient_dim, i)));
    }
    let v = integrate_polytope_many(&fs, p);
    if v[0].is_zero() {
        return Err(Error::DegenerateDensity);
    }
    Ok(v[1..].iter().map(|x| x / &v[0]).collect())
}

/// Lattice-normalized measure of a `(d-1)`-simplex lying in a hyperplane
/// with primitive integer normal `n`: Euclidean measure divided by `|n|`.
pub fn lattice_facet_measure(s: &Simplex, n: &[Rat]) -> Rat {
    let d = n.len();
    if s.points.len() != d {
        return Rat::zero();
    }
    let mut m: Vec<Vec<Rat>> = s.points[1..].iter().map(|p| sub_vec(p, &s.points[0])).collect();
    m.push(n.to_vec());
    det(&m).abs() / (dot(n, n) * factorial(d - 1))
}

/// `int_{boundary of p} f dsigma` with the lattice measure on each facet.
pub fn integrate_boundary_lattice(f: &PolyDensity, p: &Polytope) -> Rat {
    let mut total = Rat::zero();
    if !p.is_full_dimensional() {
        return total;
    }
    for h in &p.halfspaces {
        let n: Vec<Rat> = primitive(&h.normal).into_iter().map(Rat::from_integer).collect();
        let pts: Vec<Vec<Rat>> = p.vertices.iter().filter(|v| h.eval(v).is_zero()).cloned().collect();
        let facet = Polytope::from_points(p.ambient_dim, &pts);
        for s in triangulate(&facet) {
            let mu = lattice_facet_measure(&s, &n);
            total += integrate_simplex_with_measure(f, &s, &mu);
        }
    }
    total
}

/// Factorial as an integer, exposed for callers assembling closed forms.
pub fn factorial_int(n: usize) -> BigInt {
    factorial(n).to_integer()
}

/// Positivity helper: `true` when `f` is positive at every listed point.
pub fn positive_at(f: &PolyDensity, pts: &[Vec<Rat>]) -> bool {
    pts.iter().all(|p| f.eval(p).is_positive())
}

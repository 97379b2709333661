// SPDX-License-Identifier: MIT OR Apache-2.0

//! Weighted lattice sums `S_k(f; pi) = sum_{lambda in k Delta} floor(k f(lambda/k)) pi(lambda)`
//! and their three-term asymptotic expansion.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{floor, gcd_vec, is_integral, primitive, Affine, Rat};
use crate::error::{Error, Result};
use crate::integrate::{integrate_polytope, integrate_simplex_with_measure, lattice_facet_measure, PolyDensity};
use crate::polyhedra::{scaled_lattice_points, triangulate, HalfSpace, Polytope};

/// `(q . lambda + r) / p` with `p > 0` and `(p, -q)` primitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatPiece {
    pub q: Vec<BigInt>,
    pub r: BigInt,
    pub p: BigInt,
}

impl LatPiece {
    pub fn new(q: Vec<BigInt>, r: BigInt, p: BigInt) -> Self {
        LatPiece { q, r, p }
    }

    pub fn affine(&self) -> Affine {
        let p = Rat::from_integer(self.p.clone());
        Affine::new(
            self.q.iter().map(|x| Rat::from_integer(x.clone()) / &p).collect(),
            Rat::from_integer(self.r.clone()) / &p,
        )
    }

    /// `k f(lambda / k)` for this piece.
    fn k_eval(&self, k: &BigInt, lambda: &[BigInt]) -> Rat {
        let num = self.q.iter().zip(lambda).fold(&self.r * k, |a, (q, l)| a + q * l);
        Rat::new(num, self.p.clone())
    }
}

#[derive(Clone, Debug)]
pub struct LatSumProblem {
    pub rank: usize,
    pub polytope: Polytope,
    pub pieces: Vec<LatPiece>,
    /// `pi(lambda) = prod lambda_i^{e_i}`.
    pub pi_exponents: Vec<u32>,
    /// Linearity cells `Omega_a` (full dimensional only) with their piece index.
    pub cells: Vec<(usize, Polytope)>,
}

impl LatSumProblem {
    /// Checks integrality of `Delta`, of every linearity cell and of the
    /// values of `f` at all cell vertices.
    pub fn new(polytope: Polytope, pieces: Vec<LatPiece>, pi_exponents: Vec<u32>) -> Result<Self> {
        let r = polytope.ambient_dim;
        if pieces.is_empty() {
            return Err(Error::Precondition("f needs at least one piece".into()));
        }
        if pi_exponents.len() != r {
            return Err(Error::Dimension { expected: r, found: pi_exponents.len() });
        }
        for pc in &pieces {
            if pc.q.len() != r {
                return Err(Error::Dimension { expected: r, found: pc.q.len() });
            }
            if !pc.p.is_positive() {
                return Err(Error::Precondition("piece denominators must be positive".into()));
            }
            let mut v: Vec<BigInt> = pc.q.iter().map(|x| -x.clone()).collect();
            v.push(pc.p.clone());
            if !gcd_vec(&v).is_one() {
                return Err(Error::Precondition("(p, -q) must be primitive".into()));
            }
        }
        if polytope.is_empty() {
            return Err(Error::Precondition("empty polytope".into()));
        }
        let integral_pt = |v: &Vec<Rat>| v.iter().all(is_integral);
        if !polytope.vertices.iter().all(integral_pt) {
            return Err(Error::Precondition("polytope has a non-integral vertex".into()));
        }
        let mut prob = LatSumProblem { rank: r, polytope, pieces, pi_exponents, cells: Vec::new() };
        prob.cells = prob.linearity_cells();
        for (a, c) in &prob.cells {
            for v in &c.vertices {
                if !integral_pt(v) {
                    return Err(Error::Precondition(format!(
                        "linearity cell of piece {a} has a non-integral vertex"
                    )));
                }
                if !is_integral(&prob.f(v)) {
                    return Err(Error::Precondition(format!(
                        "f is not integral at vertex {}",
                        crate::arith::fmt_vec(v)
                    )));
                }
            }
        }
        for v in &prob.polytope.vertices {
            if !is_integral(&prob.f(v)) {
                return Err(Error::Precondition(format!("f is not integral at vertex {}", crate::arith::fmt_vec(v))));
            }
        }
        Ok(prob)
    }

    pub fn f(&self, x: &[Rat]) -> Rat {
        self.pieces.iter().map(|p| p.affine().eval(x)).min().expect("pieces")
    }

    pub fn pi(&self, x: &[Rat]) -> Rat {
        x.iter().zip(&self.pi_exponents).fold(Rat::one(), |a, (xi, &e)| {
            let mut t = a;
            for _ in 0..e {
                t *= xi;
            }
            t
        })
    }

    pub fn degree(&self) -> usize {
        self.pi_exponents.iter().map(|&e| e as usize).sum()
    }

    fn pi_density(&self) -> PolyDensity {
        let mut factors = Vec::new();
        for (i, &e) in self.pi_exponents.iter().enumerate() {
            for _ in 0..e {
                factors.push(Affine::coord(self.rank, i));
            }
        }
        if factors.is_empty() {
            PolyDensity::one(self.rank)
        } else {
            PolyDensity::product(factors)
        }
    }

    fn linearity_cells(&self) -> Vec<(usize, Polytope)> {
        let mut distinct: Vec<usize> = Vec::new();
        for i in 0..self.pieces.len() {
            let a = self.pieces[i].affine();
            if !distinct.iter().any(|&j| self.pieces[j].affine() == a) {
                distinct.push(i);
            }
        }
        let mut out = Vec::new();
        for &j in &distinct {
            let pj = self.pieces[j].affine();
            let extra: Vec<HalfSpace> = distinct
                .iter()
                .filter(|&&k| k != j)
                .map(|&k| {
                    let d = self.pieces[k].affine().sub(&pj);
                    HalfSpace::new(d.linear, d.constant)
                })
                .collect();
            let c = self.polytope.intersect(&extra);
            if c.is_full_dimensional() {
                out.push((j, c));
            }
        }
        out
    }
}

fn kpow(k: &BigInt, e: usize) -> Rat {
    Rat::from_integer(num_traits::pow(k.clone(), e))
}

/// Brute-force `S_k(f; pi)`.
pub fn sk_oracle(p: &LatSumProblem, k: &BigInt, bound: u128) -> Result<Rat> {
    if !k.is_positive() {
        return Err(Error::Invalid("k must be positive".into()));
    }
    let mut total = Rat::zero();
    for lam in scaled_lattice_points(&p.polytope, k, bound)? {
        let kf = p.pieces.iter().map(|pc| pc.k_eval(k, &lam)).min().expect("pieces");
        let x: Vec<Rat> = lam.into_iter().map(Rat::from_integer).collect();
        total += Rat::from_integer(floor(&kf)) * p.pi(&x);
    }
    Ok(total)
}

/// `int_{partial Delta} f pi dsigma` with the lattice measure, cell by cell.
fn boundary_term(p: &LatSumProblem, pi: &PolyDensity) -> Rat {
    let mut total = Rat::zero();
    let outer: Vec<HalfSpace> = p.polytope.halfspaces.iter().map(|h| h.canonical()).collect();
    for (a, cell) in &p.cells {
        let g = pi.mul_affine(&p.pieces[*a].affine());
        for h in &cell.halfspaces {
            let hc = h.canonical();
            if !outer.contains(&hc) {
                continue;
            }
            let n: Vec<Rat> = primitive(&h.normal).into_iter().map(Rat::from_integer).collect();
            let pts: Vec<Vec<Rat>> = cell.vertices.iter().filter(|v| h.eval(v).is_zero()).cloned().collect();
            let facet = Polytope::from_points(p.rank, &pts);
            for s in triangulate(&facet) {
                let mu = lattice_facet_measure(&s, &n);
                total += integrate_simplex_with_measure(&g, &s, &mu);
            }
        }
    }
    total
}

/// The three displayed terms of the expansion, evaluated exactly.
pub fn sk_expansion(p: &LatSumProblem, k: &BigInt) -> Rat {
    let r = p.rank;
    let d = p.degree();
    let pi = p.pi_density();
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let mut main = Rat::zero();
    let mut jump = Rat::zero();
    for (a, cell) in &p.cells {
        main += integrate_polytope(&pi.mul_affine(&p.pieces[*a].affine()), cell);
        let pa = Rat::from_integer(p.pieces[*a].p.abs());
        jump += (Rat::one() - pa.recip()) * integrate_polytope(&pi, cell);
    }
    let bdry = boundary_term(p, &pi);
    kpow(k, r + d + 1) * main + &half * kpow(k, r + d) * bdry - half * kpow(k, r + d) * jump
}

/// `|S_k - expansion| / k^{r+d-1}` for each `k`.
pub fn scaled_residuals(p: &LatSumProblem, ks: &[BigInt], bound: u128) -> Result<Vec<Rat>> {
    let e = (p.rank + p.degree()).saturating_sub(1);
    ks.iter()
        .map(|k| {
            let diff = sk_oracle(p, k, bound)? - sk_expansion(p, k);
            Ok(diff.abs() / kpow(k, e))
        })
        .collect()
}

/// `true` when every scaled residual is at most twice the first one.
pub fn expansion_residual_test(p: &LatSumProblem, ks: &[BigInt], bound: u128) -> Result<bool> {
    let res = scaled_residuals(p, ks, bound)?;
    let Some(first) = res.first() else { return Ok(true) };
    let cap = first * Rat::from_integer(BigInt::from(2));
    Ok(res.iter().all(|x| *x <= cap))
}

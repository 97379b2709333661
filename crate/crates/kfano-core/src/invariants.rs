// SPDX-License-Identifier: MIT OR Apache-2.0

//! The Duistermaat-Heckman density, Weyl dimensions, volume, barycenters,
//! Futaki invariants and the non-Archimedean functionals.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::afun::Geometry;
use crate::arith::{dot, floor, Affine, Covector, Rat, Weight};
use crate::error::{Error, Result};
use crate::integrate::{integrate_polytope, integrate_polytope_many, PolyDensity};
use crate::lp::{minimize, LpOutcome};
use crate::polyhedra::{hrep_to_vrep, HalfSpace, Polytope};
use crate::variety::{build_anticanonical, AnticanonicalData, CurvePointId, HVector, VarietyData};

/// `b - (kappa_P, 0)` of one `Delta_x^O`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Barycenter {
    pub mu: Weight,
    pub t: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FutakiValue {
    pub value: Rat,
    pub v0: HVector,
    pub barycenter_used: Barycenter,
}

/// `prod <lambda, alpha^vee> / <rho, alpha^vee>` over the unipotent coroots.
pub fn eval_pi(data: &VarietyData, lambda: &[Rat]) -> Rat {
    data.pi_factors
        .iter()
        .fold(Rat::one(), |acc, f| acc * dot(lambda, &f.coroot) / &f.denom)
}

/// Weyl dimension `prod <lambda + rho, beta^vee> / <rho, beta^vee>` over all
/// positive coroots.
pub fn weyl_dim(data: &VarietyData, lambda: &[Rat]) -> Result<Rat> {
    if data.positive_coroots.is_empty() && !data.pi_factors.is_empty() {
        return Err(Error::Missing("positive coroots".into()));
    }
    Ok(data.positive_coroots.iter().fold(Rat::one(), |acc, f| {
        let s: Rat = lambda.iter().zip(data.rho.iter()).zip(f.coroot.iter()).map(|((l, r), c)| (l + r) * c).sum();
        acc * s / &f.denom
    }))
}

pub fn dimension_n(data: &VarietyData) -> usize {
    data.rank + data.pi_factors.len() + 1
}

/// `pi(mu + kappa_P)` as a product of affine forms in `mu`.
pub fn pi_density(data: &VarietyData) -> PolyDensity {
    let r = data.rank;
    let mut factors = Vec::new();
    let mut c = Rat::one();
    for f in &data.pi_factors {
        factors.push(Affine::new(f.coroot.0.clone(), dot(&data.kappa_p, &f.coroot)));
        c /= &f.denom;
    }
    if factors.is_empty() {
        return PolyDensity::constant(r, c);
    }
    PolyDensity::product(factors).scale(&c)
}

/// Cached computation for one input.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub data: VarietyData,
    pub anticanonical: AnticanonicalData,
    pub geometry: Geometry,
    pub pi: PolyDensity,
    pub volume: Rat,
    pub barycenters: BTreeMap<CurvePointId, Barycenter>,
    pub delta_o: BTreeMap<CurvePointId, Polytope>,
}

impl Analysis {
    pub fn new(data: &VarietyData) -> Result<Analysis> {
        let m = build_anticanonical(data)?;
        let geometry = Geometry::new(data, &m)?;
        let pi = pi_density(data);
        let r = data.rank;
        let classes = geometry.classes.clone();

        // per cell: A pi, mu_i A pi, (A/2 - A_x + a_x - 1) A pi for each class
        let mut sums = vec![Rat::zero(); 1 + r + classes.len()];
        for cell in &geometry.subdivision.cells {
            let api = pi.mul_affine(&cell.a_total);
            let mut fs = vec![api.clone()];
            for i in 0..r {
                fs.push(api.mul_affine(&Affine::coord(r, i)));
            }
            for x in &classes {
                let ax = &cell.a_x[x];
                let shift = geometry.a_of(x) - Rat::one();
                let g = cell.a_total.scale(&Rat::new(1.into(), 2.into())).sub(ax).add_const(&shift);
                fs.push(api.mul_affine(&g));
            }
            for (s, v) in sums.iter_mut().zip(integrate_polytope_many(&fs, &cell.polytope)) {
                *s += v;
            }
        }
        let volume = sums[0].clone();
        if !volume.is_positive() {
            return Err(Error::Domain(format!("not Fano-like input: volume {volume}")));
        }
        let mu = Weight(sums[1..=r].iter().map(|s| s / &volume).collect());
        let barycenters = classes
            .iter()
            .enumerate()
            .map(|(j, x)| (x.clone(), Barycenter { mu: mu.clone(), t: &sums[1 + r + j] / &volume }))
            .collect();
        let delta_o = classes.iter().map(|x| (x.clone(), geometry.delta_x_o(x))).collect();
        Ok(Analysis { data: data.clone(), anticanonical: m, geometry, pi, volume, barycenters, delta_o })
    }

    pub fn rank(&self) -> usize {
        self.data.rank
    }

    pub fn classes(&self) -> &[CurvePointId] {
        &self.geometry.classes
    }

    /// The class whose data applies to `v`: central vectors all share one
    /// `mu`-barycenter, so any class works and the generic one is used.
    pub fn class_of(&self, v: &HVector) -> CurvePointId {
        if v.is_central() {
            CurvePointId::Generic
        } else {
            v.point.clone()
        }
    }

    pub fn barycenter(&self, x: &CurvePointId) -> Result<&Barycenter> {
        self.barycenters.get(x).ok_or_else(|| Error::NotAGValuation { point: format!("{x}") })
    }

    fn check_valuation(&self, v0: &HVector) -> Result<()> {
        if v0.ell.len() != self.rank() {
            return Err(Error::Dimension { expected: self.rank(), found: v0.ell.len() });
        }
        if !v0.is_central() && !self.data.is_known_point(&v0.point) {
            return Err(Error::NotAGValuation { point: format!("{}", v0.point) });
        }
        if !self.data.in_valuation_cone(v0)? {
            return Err(Error::NotAGValuation { point: format!("{v0}") });
        }
        Ok(())
    }

    /// `V = int_{Delta_x^O} pi d(mu, t)`, the three-dimensional form of the volume.
    pub fn volume_over_delta_o(&self, x: &CurvePointId) -> Rat {
        integrate_polytope(&self.pi.extend(1), &self.delta_o[x])
    }

    /// `(mu_b, t_b)` recomputed directly on `Delta_x^O` in `(mu, t)` coordinates.
    pub fn barycenter_over_delta_o(&self, x: &CurvePointId) -> Result<Barycenter> {
        let b = crate::integrate::weighted_barycenter(&self.pi.extend(1), &self.delta_o[x])?;
        let r = self.rank();
        Ok(Barycenter { mu: Weight(b[..r].to_vec()), t: b[r].clone() })
    }

    /// `Fut = <kappa_P - b, v0> = -(ell0(mu_b) + h0 t_b)`.
    pub fn futaki(&self, v0: &HVector) -> Result<FutakiValue> {
        self.check_valuation(v0)?;
        Ok(self.futaki_unchecked(v0))
    }

    fn futaki_unchecked(&self, v0: &HVector) -> FutakiValue {
        let b = &self.barycenters[&self.class_of(v0)];
        let value = -(dot(&b.mu, &v0.ell) + &v0.h * &b.t);
        FutakiValue { value, v0: v0.clone(), barycenter_used: b.clone() }
    }

    /// The Futaki invariant from the cell integrals over
    /// `{0 <= t <= tau~0}` and `{tau~0 <= t <= tau0}`, without barycenters.
    pub fn futaki_direct(&self, v0: &HVector) -> Result<Rat> {
        self.check_valuation(v0)?;
        let x0 = self.class_of(v0);
        let h0 = v0.h.clone();
        let r = self.rank();
        let ell0 = Affine::new(v0.ell.0.clone(), Rat::zero());
        let pi3 = self.pi.extend(1);
        let t = Affine::coord(r + 1, r);
        let lift = |a: &Affine| a.extend(1);
        let tlow = |a: &Affine| {
            // t >= a  <=>  t - a >= 0
            let d = t.sub(&lift(a));
            HalfSpace::new(d.linear, d.constant)
        };
        let thigh = |a: &Affine| {
            let d = lift(a).sub(&t);
            HalfSpace::new(d.linear, d.constant)
        };
        let cell_hs = |p: &Polytope| -> Vec<HalfSpace> {
            p.all_inequalities()
                .into_iter()
                .map(|h| {
                    let mut n = h.normal;
                    n.push(Rat::zero());
                    HalfSpace::new(n, h.offset)
                })
                .collect()
        };
        let zero = Affine::constant(r, Rat::zero());
        let verts = self.geometry.subdivision_vertices();

        if h0.is_zero() {
            // tau0 = m0 + ell0 with m0 making it positive on Delta_Z
            let worst = verts.iter().map(|v| -ell0.eval(v)).max().unwrap_or_else(Rat::zero);
            let m0 = Rat::from_integer(floor(&worst) + 1);
            let tau = ell0.add_const(&m0);
            let mut total = Rat::zero();
            for cell in &self.geometry.subdivision.cells {
                let mut hs = cell_hs(&cell.polytope);
                hs.push(tlow(&zero));
                hs.push(thigh(&tau));
                let p1 = hrep_to_vrep(r + 1, &hs)?;
                let a = pi3.mul_affine(&lift(&cell.a_total));
                total -= integrate_polytope(&a, &p1);
            }
            total += &m0 * &self.volume;
            return Ok(total / &self.volume);
        }

        let ax0 = |cell: &crate::afun::Cell| cell.a_x[&x0].clone();
        let worst = verts
            .iter()
            .map(|v| &h0 * self.geometry.a_x(&x0, v) - ell0.eval(v))
            .max()
            .unwrap_or_else(Rat::zero);
        let m0 = Rat::from_integer(floor(&worst) + 1);
        let a0 = self.geometry.a_of(&x0);
        let c = (&m0 - &h0 * (&a0 - Rat::one())) / &h0;
        let mut total = Rat::zero();
        for cell in &self.geometry.subdivision.cells {
            let axc = ax0(cell);
            let tau_t = ell0.add_const(&m0).sub(&axc.scale(&h0));
            let tau = tau_t.add(&cell.a_total.scale(&h0));
            let base = cell_hs(&cell.polytope);

            let mut hs1 = base.clone();
            hs1.push(tlow(&zero));
            hs1.push(thigh(&tau_t));
            let p1 = hrep_to_vrep(r + 1, &hs1)?;
            total -= integrate_polytope(&pi3.mul_affine(&lift(&cell.a_total)), &p1);

            let mut hs2 = base;
            hs2.push(tlow(&tau_t));
            hs2.push(thigh(&tau));
            let p2 = hrep_to_vrep(r + 1, &hs2)?;
            // c - (A - A_x0 + (m0 + ell0 - t)/h0)
            let inner = lift(&cell.a_total.sub(&axc).add(&ell0.add_const(&m0).scale(&h0.recip())))
                .sub(&t.scale(&h0.recip()));
            let integrand = Affine::constant(r + 1, c.clone()).sub(&inner);
            total += integrate_polytope(&pi3.mul_affine(&integrand), &p2);
        }
        Ok(total / &self.volume)
    }

    /// `max_{Delta_x^O} <., v0> - <b, v0>`.
    pub fn jna(&self, v0: &HVector) -> Result<Rat> {
        self.check_valuation(v0)?;
        let x = self.class_of(v0);
        let b = &self.barycenters[&x];
        let r = self.rank();
        let max = self.delta_o[&x]
            .vertices
            .iter()
            .map(|p| v0.pair_with(&p[..r], &p[r]))
            .max()
            .unwrap_or_else(Rat::zero);
        Ok(max - v0.pair_with(&b.mu, &b.t))
    }

    /// Minimum of `jna(v0 + ell')` over `ell'` in the span of the central
    /// lineality, by linear programming on the epigraph.
    pub fn min_twisted_jna(&self, v0: &HVector) -> Result<(Rat, Covector)> {
        self.check_valuation(v0)?;
        let basis = crate::stability::central_lineality(&self.data)?;
        let r = self.rank();
        if basis.is_empty() {
            return Ok((self.jna(v0)?, Covector::zero(r)));
        }
        let x = self.class_of(v0);
        let b = &self.barycenters[&x];
        let s = basis.len();
        // variables (c_1..c_s, z): z - sum c_j L_j(mu_v - mu_b) >= <v - b, v0>
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for p in &self.delta_o[&x].vertices {
            let d: Vec<Rat> = p[..r].iter().zip(b.mu.iter()).map(|(a, c)| a - c).collect();
            let mut row: Vec<Rat> = basis.iter().map(|l| -dot(l, &d)).collect();
            row.push(Rat::one());
            rows.push(row);
            rhs.push(dot(&v0.ell, &d) + &v0.h * (&p[r] - &b.t));
        }
        let mut cost = vec![Rat::zero(); s];
        cost.push(Rat::one());
        match minimize(&cost, &rows, &rhs) {
            LpOutcome::Optimal { value, x } => {
                let mut ell = vec![Rat::zero(); r];
                for (cj, l) in x[..s].iter().zip(&basis) {
                    for (e, li) in ell.iter_mut().zip(l.iter()) {
                        *e += cj * li;
                    }
                }
                Ok((value, Covector(ell)))
            }
            LpOutcome::Unbounded => Err(Error::Invalid("twisted J^NA unbounded below".into())),
            LpOutcome::Infeasible => Err(Error::Invalid("twisted J^NA program infeasible".into())),
        }
    }

    /// `tau0(mu) = m0 + ell0(mu) + h0 (A(mu) - A_x0(mu))`.
    pub fn tau0_at(&self, v0: &HVector, m0: &Rat, mu: &[Rat]) -> Rat {
        let x0 = self.class_of(v0);
        let mut t = m0 + dot(&v0.ell, mu);
        if !v0.h.is_zero() {
            t += &v0.h * (self.geometry.a_total(mu) - self.geometry.a_x(&x0, mu));
        }
        t
    }

    /// `max_{Delta_Z} tau0`, attained at a vertex of the subdivision.
    pub fn lambda_max(&self, v0: &HVector, m0: &Rat) -> Rat {
        self.geometry
            .subdivision_vertices()
            .iter()
            .map(|v| self.tau0_at(v0, m0, v))
            .max()
            .unwrap_or_else(|| m0.clone())
    }

    /// Leading coefficients `(V, nV/2)` of `h0(X, -kK_X)`.
    pub fn h0_coefficients(&self) -> (Rat, Rat) {
        let n = Rat::from_integer(BigInt::from(dimension_n(&self.data)));
        (self.volume.clone(), &self.volume * n / Rat::from_integer(2.into()))
    }
}

pub fn volume(data: &VarietyData) -> Result<Rat> {
    let m = build_anticanonical(data)?;
    let g = Geometry::new(data, &m)?;
    let pi = pi_density(data);
    Ok(g.subdivision
        .cells
        .iter()
        .map(|c| integrate_polytope(&pi.mul_affine(&c.a_total), &c.polytope))
        .fold(Rat::zero(), |a, b| a + b))
}

pub fn barycenters(data: &VarietyData) -> Result<BTreeMap<CurvePointId, Barycenter>> {
    Ok(Analysis::new(data)?.barycenters)
}

pub fn futaki(data: &VarietyData, v0: &HVector) -> Result<FutakiValue> {
    Analysis::new(data)?.futaki(v0)
}

pub fn jna(data: &VarietyData, v0: &HVector) -> Result<Rat> {
    Analysis::new(data)?.jna(v0)
}

pub fn min_twisted_jna(data: &VarietyData, v0: &HVector) -> Result<(Rat, Covector)> {
    Analysis::new(data)?.min_twisted_jna(v0)
}

pub fn lambda_max(data: &VarietyData, v0: &HVector, m0: &Rat) -> Result<Rat> {
    Ok(Analysis::new(data)?.lambda_max(v0, m0))
}

pub fn h0_coefficients(data: &VarietyData) -> Result<(Rat, Rat)> {
    Ok(Analysis::new(data)?.h0_coefficients())
}

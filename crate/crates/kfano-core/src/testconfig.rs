// SPDX-License-Identifier: MIT OR Apache-2.0

//! Equivariant test configurations `(v0, m0)`: the function `tau0`, the
//! polytope `Delta_Z(L)`, filtration dimensions and the brute-force
//! lattice oracles for `h0` and `w_k`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::afun::selection_sums;
use crate::arith::{dot, floor, gcd_vec, is_integral, AffForm, Covector, Rat};
use crate::error::{Error, Result};
use crate::invariants::{eval_pi, weyl_dim, Analysis};
use crate::polyhedra::{hrep_to_vrep, scaled_lattice_points, HalfSpace, Polytope};
use crate::variety::{CurvePointId, HVector};

/// Default limit on enumerated lattice boxes.
pub const DEFAULT_MAX_LATTICE: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestConfig {
    pub v0: HVector,
    pub m0: BigInt,
    /// Multiplicity of the central fibre, negative.
    pub m: BigInt,
}

impl TestConfig {
    /// Integral central fibre (`m = -1`).
    pub fn new(v0: HVector, m0: impl Into<BigInt>) -> Self {
        TestConfig { v0, m0: m0.into(), m: -BigInt::one() }
    }

    pub fn with_multiplicity(mut self, m: impl Into<BigInt>) -> Self {
        self.m = m.into();
        self
    }

    fn m0_rat(&self) -> Rat {
        Rat::from_integer(self.m0.clone())
    }
}

/// Result of [`validate_tc`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TcValidation {
    pub ok: bool,
    /// `min tau0` over the subdivision vertices for the given `m0`.
    pub min_tau0: Rat,
    /// Least integer `m0` with `tau0 > 0` on `Delta_Z`.
    pub minimal_m0: BigInt,
}

fn check_integral(an: &Analysis, tc: &TestConfig) -> Result<()> {
    let v = &tc.v0;
    if v.ell.len() != an.rank() {
        return Err(Error::Dimension { expected: an.rank(), found: v.ell.len() });
    }
    if !v.ell.iter().all(is_integral) || !is_integral(&v.h) || v.h.is_negative() {
        return Err(Error::Invalid(format!("v0 = {v} is not integral")));
    }
    if !tc.m.is_negative() {
        return Err(Error::Invalid("multiplicity m must be negative".into()));
    }
    if tc.m < -BigInt::one() {
        let mut all: Vec<BigInt> = v.ell.iter().map(|x| x.to_integer()).collect();
        all.push(v.h.to_integer());
        all.push(tc.m.clone());
        if !gcd_vec(&all).is_one() {
            return Err(Error::Invalid("(v0, m) must be primitive".into()));
        }
    }
    if !v.is_central() && !an.data.is_known_point(&v.point) {
        return Err(Error::NotAGValuation { point: format!("{}", v.point) });
    }
    if !an.data.in_valuation_cone(v)? {
        return Err(Error::NotAGValuation { point: format!("{v}") });
    }
    Ok(())
}

/// `tau0(mu) = m0 + ell0(mu) + h0 (A(mu) - A_x0(mu))` on `Delta_Z`.
pub fn tau0(an: &Analysis, tc: &TestConfig, mu: &[Rat]) -> Result<Rat> {
    if !an.geometry.delta_z.contains(mu) {
        return Err(Error::Domain(format!("{} is outside Delta_Z", crate::arith::fmt_vec(mu))));
    }
    Ok(an.tau0_at(&tc.v0, &tc.m0_rat(), mu))
}

/// Membership test `tau0 > 0` on `Delta_Z` by a vertex scan.
pub fn validate_tc(an: &Analysis, tc: &TestConfig) -> Result<TcValidation> {
    check_integral(an, tc)?;
    let verts = an.geometry.subdivision_vertices();
    let zero = Rat::zero();
    let deficit = verts.iter().map(|v| -an.tau0_at(&tc.v0, &zero, v)).max().unwrap_or_else(Rat::zero);
    let minimal_m0 = floor(&deficit) + 1;
    let min_tau0 = tc.m0_rat() - &deficit;
    Ok(TcValidation { ok: min_tau0.is_positive(), min_tau0, minimal_m0 })
}

/// `A(D, mu, t)`: the `x0` term becomes `min{A_x0, (-t + m0 + ell0)/h0}`;
/// for `h0 = 0` it is `A` where `-t + m0 + ell0 >= 0` and 0 elsewhere.
pub fn a_of_d(an: &Analysis, tc: &TestConfig, mu: &[Rat], t: &Rat) -> Result<Rat> {
    if !an.geometry.delta_z.contains(mu) {
        return Err(Error::Domain(format!("{} is outside Delta_Z", crate::arith::fmt_vec(mu))));
    }
    let g = &an.geometry;
    let c = tc.m0_rat() + dot(&tc.v0.ell, mu) - t;
    let a = g.a_total(mu);
    if tc.v0.h.is_zero() {
        return Ok(if c.is_negative() { Rat::zero() } else { a });
    }
    let x0 = an.class_of(&tc.v0);
    let ax0 = g.a_x(&x0, mu);
    let cut = c / &tc.v0.h;
    let m = if cut < ax0 { cut } else { ax0.clone() };
    Ok(a - ax0 + m)
}

/// `{(mu, t) : mu in Delta_Z, 0 <= t <= tau0(mu)}`.
pub fn build_delta_z_l(an: &Analysis, tc: &TestConfig) -> Result<Polytope> {
    let g = &an.geometry;
    let r = an.rank();
    let lift = |h: &HalfSpace, tc: Rat| {
        let mut n = h.normal.clone();
        n.push(tc);
        HalfSpace::new(n, h.offset.clone())
    };
    let mut hs: Vec<HalfSpace> = g.delta_z.all_inequalities().iter().map(|h| lift(h, Rat::zero())).collect();
    let mut t = alloc::vec![Rat::zero(); r];
    t.push(Rat::one());
    hs.push(HalfSpace::new(t, Rat::zero()));
    let x0 = an.class_of(&tc.v0);
    let h0 = &tc.v0.h;
    let upper = |s: &crate::arith::Affine| {
        // m0 + ell0 + h0 S - t >= 0
        let n: Vec<Rat> = tc.v0.ell.iter().zip(&s.linear).map(|(l, a)| l + h0 * a).collect();
        lift(&HalfSpace::new(n, tc.m0_rat() + h0 * &s.constant), -Rat::one())
    };
    if h0.is_zero() {
        hs.push(upper(&crate::arith::Affine::constant(r, Rat::zero())));
    } else {
        let others: Vec<&crate::afun::PLFunc> =
            g.funcs.iter().filter(|(y, _)| **y != CurvePointId::Generic && **y != x0).map(|(_, f)| f).collect();
        for s in selection_sums(&others, r) {
            hs.push(upper(&s));
        }
    }
    hrep_to_vrep(r + 1, &hs)
}

/// `k A_x(nu / k)` for an integer point `nu` (also meaningful at `k = 0`).
fn k_eval(f: &[AffForm], k: &BigInt, nu: &[Rat]) -> Rat {
    let kr = Rat::from_integer(k.clone());
    f.iter()
        .map(|p| (&p.constant * &kr + dot(&p.linear, nu)) / &p.divisor_of_jump)
        .min()
        .expect("pieces")
}

fn in_k_delta(an: &Analysis, k: &BigInt, nu: &[Rat]) -> bool {
    let p = &an.geometry.delta_z;
    let kr = Rat::from_integer(k.clone());
    !p.is_empty()
        && p.halfspaces.iter().all(|h| !(&h.offset * &kr + dot(&h.normal, nu)).is_negative())
        && p.equalities.iter().all(|h| (&h.offset * &kr + dot(&h.normal, nu)).is_zero())
}

/// `sum over marked x of floor(k A_x(nu/k))`.
fn floor_sum(an: &Analysis, k: &BigInt, nu: &[Rat], skip: Option<&CurvePointId>) -> BigInt {
    an.geometry
        .funcs
        .iter()
        .filter(|(x, _)| **x != CurvePointId::Generic && Some(*x) != skip)
        .fold(BigInt::zero(), |acc, (_, f)| acc + floor(&k_eval(&f.pieces, k, nu)))
}

fn shifted(an: &Analysis, k: &BigInt, lambda: &[Rat]) -> Option<Vec<Rat>> {
    let kr = Rat::from_integer(k.clone());
    let nu: Vec<Rat> = lambda.iter().zip(an.geometry.lambda0.iter()).map(|(l, l0)| l - l0 * &kr).collect();
    nu.iter().all(is_integral).then_some(nu)
}

/// `dim (R_k)^{(B)}_lambda = max{0, sum_x floor(k A_x) + 1}` for
/// `nu = lambda - k lambda0` in `k Delta_Z`, else 0.
pub fn dim_rk(an: &Analysis, k: &BigInt, nu: &[Rat]) -> BigInt {
    if !in_k_delta(an, k, nu) {
        return BigInt::zero();
    }
    let d: BigInt = floor_sum(an, k, nu, None) + 1;
    if d.is_negative() {
        BigInt::zero()
    } else {
        d
    }
}

fn filtration_dim_nu(an: &Analysis, tc: &TestConfig, k: &BigInt, nu: &[Rat], tau: &BigInt) -> BigInt {
    if !in_k_delta(an, k, nu) {
        return BigInt::zero();
    }
    let kr = Rat::from_integer(k.clone());
    let c = Rat::from_integer(tau * &tc.m) + &kr * tc.m0_rat() + dot(&tc.v0.ell, nu);
    let h0 = &tc.v0.h;
    if h0.is_zero() {
        return if c.is_negative() { BigInt::zero() } else { dim_rk(an, k, nu) };
    }
    let x0 = an.class_of(&tc.v0);
    let kax0 = k_eval(&an.geometry.funcs[&x0].pieces, k, nu);
    let cut = c / h0;
    let m = if cut < kax0 { cut } else { kax0 };
    let skip = if x0 == CurvePointId::Generic { None } else { Some(&x0) };
    let d: BigInt = floor(&m) + floor_sum(an, k, nu, skip) + 1;
    if d.is_negative() {
        BigInt::zero()
    } else {
        d
    }
}

/// `dim (F^tau R_k)^{(B)}_lambda` for a weight `lambda` of `R_k`.
pub fn filtration_dim(an: &Analysis, tc: &TestConfig, k: &BigInt, lambda: &[Rat], tau: &BigInt) -> BigInt {
    match shifted(an, k, lambda) {
        Some(nu) => filtration_dim_nu(an, tc, k, &nu, tau),
        None => BigInt::zero(),
    }
}

fn lattice(an: &Analysis, k: &BigInt, bound: u128) -> Result<Vec<Vec<Rat>>> {
    if k.is_negative() {
        return Err(Error::Invalid("k must be nonnegative".into()));
    }
    Ok(scaled_lattice_points(&an.geometry.delta_z, k, bound)?
        .into_iter()
        .map(|p| p.into_iter().map(Rat::from_integer).collect())
        .collect())
}

fn highest_weight(an: &Analysis, k: &BigInt, nu: &[Rat]) -> Vec<Rat> {
    let kr = Rat::from_integer(k.clone());
    nu.iter().zip(an.geometry.lambda0.iter()).map(|(n, l)| n + l * &kr).collect()
}

fn integral(q: Rat, what: &str) -> Result<BigInt> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(Error::Invalid(format!("{what} is not an integer: {q}")))
    }
}

/// `h0(X, L^k)` by summing `dim (R_k)_lambda * dim V_lambda`.
pub fn oracle_h0(an: &Analysis, k: &BigInt, bound: u128) -> Result<BigInt> {
    let mut total = Rat::zero();
    for nu in lattice(an, k, bound)? {
        let d = dim_rk(an, k, &nu);
        if d.is_zero() {
            continue;
        }
        total += Rat::from_integer(d) * weyl_dim(&an.data, &highest_weight(an, k, &nu))?;
    }
    integral(total, "h0")
}

/// `F(0), F(1), ..` until the filtration vanishes.
fn filtration_profile(an: &Analysis, tc: &TestConfig, k: &BigInt, nu: &[Rat]) -> Result<Vec<BigInt>> {
    let mut out = Vec::new();
    let cap = 1_000_000usize;
    let mut tau = BigInt::zero();
    loop {
        let f = filtration_dim_nu(an, tc, k, nu, &tau);
        if f.is_zero() {
            return Ok(out);
        }
        out.push(f);
        tau += 1;
        if out.len() > cap {
            return Err(Error::Invalid("filtration does not terminate".into()));
        }
    }
}

/// `w_k = sum_lambda dim V_lambda sum_tau tau (F^tau - F^{tau+1})`.
pub fn oracle_wk(an: &Analysis, tc: &TestConfig, k: &BigInt, bound: u128) -> Result<BigInt> {
    check_integral(an, tc)?;
    let mut total = Rat::zero();
    for nu in lattice(an, k, bound)? {
        let prof = filtration_profile(an, tc, k, &nu)?;
        if prof.is_empty() {
            continue;
        }
        let mut s = BigInt::zero();
        for (tau, f) in prof.iter().enumerate() {
            let next = prof.get(tau + 1).cloned().unwrap_or_else(BigInt::zero);
            s += BigInt::from(tau) * (f - next);
        }
        total += Rat::from_integer(s) * weyl_dim(&an.data, &highest_weight(an, k, &nu))?;
    }
    integral(total, "w_k")
}

/// Largest `tau` with a nonzero filtration piece at level `k`.
pub fn max_grading(an: &Analysis, tc: &TestConfig, k: &BigInt, bound: u128) -> Result<Option<BigInt>> {
    let mut best: Option<BigInt> = None;
    for nu in lattice(an, k, bound)? {
        let n = filtration_profile(an, tc, k, &nu)?.len();
        if n > 0 {
            let t = BigInt::from(n - 1);
            if best.as_ref().map_or(true, |b| t > *b) {
                best = Some(t);
            }
        }
    }
    Ok(best)
}

/// Number of `nu in k Delta_Z` with `sum_x floor(k A_x(nu/k)) < 0`.
pub fn bad_point_count(an: &Analysis, k: &BigInt, bound: u128) -> Result<usize> {
    Ok(lattice(an, k, bound)?.iter().filter(|nu| floor_sum(an, k, nu, None).is_negative()).count())
}

/// `sum_{nu in k Delta_Z} floor(k A(nu/k)) pi(nu + k kappa_P)`.
pub fn anticanonical_sk(an: &Analysis, k: &BigInt, bound: u128) -> Result<Rat> {
    let mut total = Rat::zero();
    for nu in lattice(an, k, bound)? {
        let ka: Rat = an
            .geometry
            .funcs
            .iter()
            .filter(|(x, _)| **x != CurvePointId::Generic)
            .map(|(_, f)| k_eval(&f.pieces, k, &nu))
            .sum();
        let w = eval_pi(&an.data, &highest_weight(an, k, &nu));
        total += Rat::from_integer(floor(&ka)) * w;
    }
    Ok(total)
}

/// The configuration associated to `q (v0 + ell')` after base change by `q`.
pub fn twist(tc: &TestConfig, ell: &Covector, q: &BigInt) -> Result<TestConfig> {
    if !q.is_positive() {
        return Err(Error::Invalid("q must be positive".into()));
    }
    let qr = Rat::from_integer(q.clone());
    let new_ell = tc.v0.ell.plus(ell).scaled(&qr);
    let h = &tc.v0.h * &qr;
    if !new_ell.iter().all(is_integral) || !is_integral(&h) {
        return Err(Error::Invalid("twisted v0 is not integral".into()));
    }
    let point = if h.is_zero() { CurvePointId::Generic } else { tc.v0.point.clone() };
    Ok(TestConfig { v0: HVector::new(point, new_ell, h), m0: &tc.m0 * q, m: tc.m.clone() })
}

/// The central fibre is spherical exactly when `v0` is not central.
pub fn central_fibre_spherical(tc: &TestConfig) -> bool {
    !tc.v0.h.is_zero()
}

// SPDX-License-Identifier: MIT OR Apache-2.0

//! Input data of a polarized complexity-one G-variety, its validation and
//! the anticanonical divisor.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{dot, Covector, Rat, Weight};
use crate::error::{Error, Result};
use crate::polyhedra::{Cone, Polytope};

/// A point of the curve: one of finitely many marked points, or the class
/// of all remaining (generic) points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurvePointId {
    Marked(String),
    Generic,
}

impl CurvePointId {
    pub fn marked(name: &str) -> Self {
        CurvePointId::Marked(name.to_string())
    }

    /// `"generic"` maps to [`CurvePointId::Generic`].
    pub fn parse(name: &str) -> Self {
        if name == "generic" {
            CurvePointId::Generic
        } else {
            CurvePointId::Marked(name.to_string())
        }
    }
}

impl fmt::Display for CurvePointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePointId::Marked(n) => f.write_str(n),
            CurvePointId::Generic => f.write_str("generic"),
        }
    }
}

/// `v = ell + h q_x` in the hyperspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HVector {
    pub point: CurvePointId,
    pub ell: Covector,
    pub h: Rat,
}

impl HVector {
    pub fn new(point: CurvePointId, ell: Covector, h: Rat) -> Self {
        HVector { point, ell, h }
    }

    pub fn central(ell: Covector) -> Self {
        HVector { point: CurvePointId::Generic, ell, h: Rat::zero() }
    }

    /// `q_x` itself.
    pub fn q(point: CurvePointId, rank: usize) -> Self {
        HVector { point, ell: Covector::zero(rank), h: Rat::one() }
    }

    pub fn is_central(&self) -> bool {
        self.h.is_zero()
    }

    /// `(ell_1, .., ell_r, h)`.
    pub fn coords(&self) -> Vec<Rat> {
        let mut v = self.ell.0.clone();
        v.push(self.h.clone());
        v
    }

    pub fn from_coords(point: CurvePointId, v: &[Rat]) -> Self {
        let r = v.len() - 1;
        HVector { point, ell: Covector(v[..r].to_vec()), h: v[r].clone() }
    }

    pub fn scaled(&self, s: &Rat) -> Self {
        HVector { point: self.point.clone(), ell: self.ell.scaled(s), h: &self.h * s }
    }

    /// Pairing with a point `(mu, t)`: `ell(mu) + h t`.
    pub fn pair_with(&self, mu: &[Rat], t: &Rat) -> Rat {
        dot(&self.ell, mu) + &self.h * t
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_central() {
            write!(f, "{} (central)", self.ell)
        } else {
            write!(f, "{} + {} q_{}", self.ell, self.h, self.point)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DivisorKind {
    GStable,
    ColourTypeA,
    ColourTypeAPrime,
    ColourTypeB,
    ColourCentralToStable,
}

impl DivisorKind {
    pub fn is_colour(self) -> bool {
        self != DivisorKind::GStable
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DivisorKind::GStable => "g_stable",
            DivisorKind::ColourTypeA => "colour_a",
            DivisorKind::ColourTypeAPrime => "colour_a_prime",
            DivisorKind::ColourTypeB => "colour_b",
            DivisorKind::ColourCentralToStable => "colour_central_to_stable",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "g_stable" => DivisorKind::GStable,
            "colour_a" => DivisorKind::ColourTypeA,
            "colour_a_prime" => DivisorKind::ColourTypeAPrime,
            "colour_b" => DivisorKind::ColourTypeB,
            "colour_central_to_stable" => DivisorKind::ColourCentralToStable,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorRecord {
    pub name: String,
    pub v: HVector,
    pub kind: DivisorKind,
    /// `<alpha^vee, kappa_P>` for type-b and type-a' colours.
    pub alpha_pairing: Option<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiFactor {
    pub coroot: Covector,
    /// `<rho, alpha^vee>`.
    pub denom: Rat,
}

impl PiFactor {
    pub fn new(coroot: Covector, denom: Rat) -> Self {
        PiFactor { coroot, denom }
    }
}

/// H-representation of a valuation cone slice `V_x` in `(ell, h)` coordinates:
/// each row `n` means `<n, (ell, h)> >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationCone {
    pub point: CurvePointId,
    pub inequalities: Vec<Vec<Rat>>,
}

/// User-supplied face `A_x` of the valuation cone (needed only when the
/// variety is G x k^*-spherical).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutFace {
    pub point: CurvePointId,
    pub rays: Vec<Vec<Rat>>,
    pub lineality: Vec<Vec<Rat>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyData {
    pub rank: usize,
    pub pi_factors: Vec<PiFactor>,
    pub kappa_p: Weight,
    pub rho: Weight,
    pub positive_coroots: Vec<PiFactor>,
    /// Marked points with their anticanonical coefficient `a_x`.
    pub marked_points: Vec<(String, Rat)>,
    pub divisors: Vec<DivisorRecord>,
    pub valuation_cones: Vec<ValuationCone>,
    pub aut_faces: Vec<AutFace>,
    pub is_quasihomogeneous: bool,
    pub is_g_times_gm_spherical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Diagnostic {
    pub field: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

fn diag(field: impl Into<String>, message: impl Into<String>) -> Diagnostic {
    Diagnostic { field: field.into(), message: message.into() }
}

impl VarietyData {
    /// Marked points followed by the generic class.
    pub fn point_classes(&self) -> Vec<CurvePointId> {
        let mut v: Vec<CurvePointId> =
            self.marked_points.iter().map(|(n, _)| CurvePointId::Marked(n.clone())).collect();
        v.push(CurvePointId::Generic);
        v
    }

    pub fn a_x(&self, x: &CurvePointId) -> Rat {
        match x {
            CurvePointId::Generic => Rat::zero(),
            CurvePointId::Marked(n) => self
                .marked_points
                .iter()
                .find(|(m, _)| m == n)
                .map(|(_, a)| a.clone())
                .unwrap_or_else(Rat::zero),
        }
    }

    pub fn is_known_point(&self, x: &CurvePointId) -> bool {
        match x {
            CurvePointId::Generic => true,
            CurvePointId::Marked(n) => self.marked_points.iter().any(|(m, _)| m == n),
        }
    }

    /// Divisors with positive jump sitting over `x`.
    pub fn jump_divisors(&self, x: &CurvePointId) -> Vec<&DivisorRecord> {
        self.divisors.iter().filter(|d| d.v.h.is_positive() && &d.v.point == x).collect()
    }

    pub fn central_divisors(&self) -> Vec<&DivisorRecord> {
        self.divisors.iter().filter(|d| d.v.h.is_zero()).collect()
    }

    fn declared_cone(&self, x: &CurvePointId) -> Option<&ValuationCone> {
        self.valuation_cones.iter().find(|c| &c.point == x)
    }

    /// H-rep rows of `V_x`; marked points without their own entry use the
    /// generic template.
    pub fn valuation_rows(&self, x: &CurvePointId) -> Option<&[Vec<Rat>]> {
        self.declared_cone(x)
            .or_else(|| self.declared_cone(&CurvePointId::Generic))
            .map(|c| c.inequalities.as_slice())
    }

    /// `V_x` as a cone in `(ell, h)`-space of dimension `rank + 1`.
    pub fn valuation_cone(&self, x: &CurvePointId) -> Result<Cone> {
        let rows = self
            .valuation_rows(x)
            .ok_or_else(|| Error::Missing(format!("valuation cone for {x}")))?;
        Ok(Cone::from_hrep(self.rank + 1, rows, &[]))
    }

    /// The central cone `V cap Q`: the `h = 0` slice of the generic cone.
    pub fn central_cone(&self) -> Result<Cone> {
        let rows = self
            .valuation_rows(&CurvePointId::Generic)
            .ok_or_else(|| Error::Missing("valuation cone for generic".into()))?;
        let sliced: Vec<Vec<Rat>> = rows.iter().map(|r| r[..self.rank].to_vec()).collect();
        Ok(Cone::from_hrep(self.rank, &sliced, &[]))
    }

    /// Membership of `v` in the valuation cone of its point class
    /// (central vectors are tested against the central cone).
    pub fn in_valuation_cone(&self, v: &HVector) -> Result<bool> {
        if v.h.is_negative() {
            return Ok(false);
        }
        if v.is_central() {
            return Ok(self.central_cone()?.contains(&v.ell));
        }
        let rows = self
            .valuation_rows(&v.point)
            .ok_or_else(|| Error::Missing(format!("valuation cone for {}", v.point)))?;
        let c = v.coords();
        Ok(rows.iter().all(|r| !dot(r, &c).is_negative()))
    }

    /// Copy with a different distribution of the anticanonical coefficients.
    pub fn with_a(&self, a: &[(String, Rat)]) -> VarietyData {
        let mut d = self.clone();
        for (n, v) in a {
            if let Some(e) = d.marked_points.iter_mut().find(|(m, _)| m == n) {
                e.1 = v.clone();
            }
        }
        d
    }
}

/// Checks the type invariants; an empty list means the data is usable.
pub fn validate(data: &VarietyData) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let r = data.rank;
    if r == 0 {
        out.push(diag("lattice.rank", "rank must be at least 1"));
    }
    let check_len = |out: &mut Vec<Diagnostic>, field: String, len: usize, want: usize| {
        if len != want {
            out.push(diag(field, format!("expected length {want}, found {len}")));
        }
    };
    check_len(&mut out, "weights.kappa_P".into(), data.kappa_p.len(), r);
    check_len(&mut out, "weights.rho".into(), data.rho.len(), r);
    for (i, f) in data.pi_factors.iter().enumerate() {
        check_len(&mut out, format!("pi_factor[{i}].coroot"), f.coroot.len(), r);
        if !f.denom.is_positive() {
            out.push(diag(format!("pi_factor[{i}].denom"), "denominator must be positive"));
        } else if f.coroot.len() == r && data.kappa_p.len() == r && !dot(&data.kappa_p, &f.coroot).is_positive() {
            out.push(diag(format!("pi_factor[{i}]"), "pi factor is not positive at kappa_P"));
        }
    }
    for (i, f) in data.positive_coroots.iter().enumerate() {
        check_len(&mut out, format!("coroot[{i}].coroot"), f.coroot.len(), r);
        if !f.denom.is_positive() {
            out.push(diag(format!("coroot[{i}].denom"), "denominator must be positive"));
        }
    }
    let mut names = BTreeSet::new();
    let mut sum = Rat::zero();
    for (n, a) in &data.marked_points {
        if n == "generic" {
            out.push(diag(format!("point.{n}"), "\"generic\" is reserved"));
        }
        if !names.insert(n.clone()) {
            out.push(diag(format!("point.{n}"), "duplicate marked point name"));
        }
        sum += a;
    }
    if sum != Rat::from_integer(2.into()) {
        out.push(diag("point.a", format!("anticanonical degree \u{2260} 2 (sum of a_x is {sum})")));
    }
    let mut dnames = BTreeSet::new();
    for d in &data.divisors {
        let f = format!("divisor.{}", d.name);
        if !dnames.insert(d.name.clone()) {
            out.push(diag(&f, "duplicate divisor name"));
        }
        check_len(&mut out, format!("{f}.ell"), d.v.ell.len(), r);
        if d.v.h.is_negative() {
            out.push(diag(&f, "jump h must be nonnegative"));
        }
        if d.v.h.is_positive() && !data.is_known_point(&d.v.point) {
            out.push(diag(&f, format!("unknown point {}", d.v.point)));
        }
        if d.v.h.is_positive() && d.kind.is_colour() && !data.is_quasihomogeneous {
            out.push(diag(&f, "colour with positive jump in a non-quasihomogeneous input"));
        }
        if d.kind == DivisorKind::ColourTypeB && d.alpha_pairing.is_none() {
            out.push(diag(&f, "type-b colour needs alpha_pairing"));
        }
    }
    let generic: Vec<&DivisorRecord> = data.jump_divisors(&CurvePointId::Generic);
    match generic.len() {
        0 => out.push(diag("divisor", "no divisor with h>0 at generic point")),
        1 => {
            let g = generic[0];
            if !g.v.h.is_one() || !g.v.ell.is_zero() {
                out.push(diag(format!("divisor.{}", g.name), "generic divisor must be q_x (h = 1, ell = 0)"));
            }
        }
        _ => out.push(diag("divisor", "more than one divisor with h>0 at generic point")),
    }
    for c in &data.valuation_cones {
        if !data.is_known_point(&c.point) {
            out.push(diag(format!("valuation_cone.{}", c.point), "unknown point"));
        }
        for row in &c.inequalities {
            if row.len() != r + 1 {
                out.push(diag(format!("valuation_cone.{}", c.point), format!("row length {} != rank + 1", row.len())));
            }
        }
    }
    if data.declared_cone(&CurvePointId::Generic).is_none() {
        out.push(diag("valuation_cone.generic", "missing valuation cone for the generic point"));
    }
    if !out.is_empty() {
        return out;
    }
    for d in &data.divisors {
        if d.kind != DivisorKind::GStable {
            continue;
        }
        match data.in_valuation_cone(&d.v) {
            Ok(true) => {}
            Ok(false) => out.push(diag(format!("divisor.{}", d.name), "G-stable divisor outside the valuation cone")),
            Err(e) => out.push(diag(format!("divisor.{}", d.name), e.to_string())),
        }
    }
    if data.is_g_times_gm_spherical {
        for x in data.point_classes() {
            if !data.aut_faces.iter().any(|f| f.point == x) {
                out.push(diag(format!("aut_face.{x}"), "spherical input needs A_x for every point class"));
            }
        }
    }
    out
}

/// Coefficients `m_D` of an anticanonical B-stable divisor with weight `lambda0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnticanonicalData {
    pub coefficients: BTreeMap<String, Rat>,
    pub lambda0: Weight,
}

impl AnticanonicalData {
    pub fn m(&self, name: &str) -> Rat {
        self.coefficients.get(name).cloned().unwrap_or_else(Rat::zero)
    }
}

/// `m_D = 1 - h_D + h_D a_{x_D}` for every divisor with a jump, 1 for central
/// G-stable divisors, and the colour rule for central colours.
pub fn build_anticanonical(data: &VarietyData) -> Result<AnticanonicalData> {
    let mut coefficients = BTreeMap::new();
    for d in &data.divisors {
        let m = if d.v.h.is_positive() {
            Rat::one() - &d.v.h + &d.v.h * data.a_x(&d.v.point)
        } else {
            match d.kind {
                DivisorKind::GStable | DivisorKind::ColourCentralToStable => Rat::one(),
                DivisorKind::ColourTypeA | DivisorKind::ColourTypeAPrime => match &d.alpha_pairing {
                    Some(p) => p / Rat::from_integer(2.into()),
                    None => Rat::one(),
                },
                DivisorKind::ColourTypeB => d
                    .alpha_pairing
                    .clone()
                    .ok_or_else(|| Error::Invalid(format!("type-b colour {} without alpha_pairing", d.name)))?,
            }
        };
        coefficients.insert(d.name.clone(), m);
    }
    Ok(AnticanonicalData { coefficients, lambda0: data.kappa_p.clone() })
}

/// Output of [`affine_cone_data`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineConeData {
    /// `(name, (ell, h, -m))` for every divisor.
    pub extended: Vec<(String, Vec<Rat>)>,
    /// `sum_x conv{ v_hat_D / h_D - q_x }` in the same `(ell, h, -m)` layout.
    pub p_hat: Polytope,
}

/// Extends each `v_D` by the coordinate `-m_D`.
pub fn affine_cone_data(data: &VarietyData, m: &AnticanonicalData) -> AffineConeData {
    let dim = data.rank + 2;
    let extended: Vec<(String, Vec<Rat>)> = data
        .divisors
        .iter()
        .map(|d| {
            let mut v = d.v.coords();
            v.push(-m.m(&d.name));
            (d.name.clone(), v)
        })
        .collect();
    let mut sum: Vec<Vec<Rat>> = vec![vec![Rat::zero(); dim]];
    let mut any = false;
    for x in data.point_classes() {
        let pts: Vec<Vec<Rat>> = data
            .jump_divisors(&x)
            .iter()
            .map(|d| {
                let h = &d.v.h;
                let mut v: Vec<Rat> = d.v.ell.iter().map(|c| c / h).collect();
                v.push(Rat::zero());
                v.push(-m.m(&d.name) / h);
                v
            })
            .collect();
        if pts.is_empty() {
            continue;
        }
        any = true;
        let hull = Polytope::from_points(dim, &pts).vertices;
        let mut next = Vec::with_capacity(sum.len() * hull.len());
        for s in &sum {
            for p in &hull {
                next.push(crate::arith::add_vec(s, p));
            }
        }
        sum = Polytope::from_points(dim, &next).vertices;
    }
    let p_hat = if any { Polytope::from_points(dim, &sum) } else { Polytope::empty(dim) };
    AffineConeData { extended, p_hat }
}

// SPDX-License-Identifier: MIT OR Apache-2.0

//! K-stability verdicts from the barycenters, with per-class certificates.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::arith::{dot, Covector, Rat};
use crate::error::{Error, Result};
use crate::invariants::Analysis;
use crate::polyhedra::{cone_equal, intersect_with_hyperplane, Cone};
use crate::variety::{CurvePointId, HVector, VarietyData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Unstable,
    Semistable,
    Polystable,
    UniformlyStable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Unstable => "k_unstable",
            Verdict::Semistable => "k_semistable",
            Verdict::Polystable => "k_polystable",
            Verdict::UniformlyStable => "uniformly_k_stable",
        }
    }

    pub fn is_semistable(self) -> bool {
        self >= Verdict::Semistable
    }

    pub fn is_polystable(self) -> bool {
        self >= Verdict::Polystable
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Everything checked at one point class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCertificate {
    pub point: CurvePointId,
    /// `kappa_P - b` as the functional `(-mu_b, -t_b)` on `(ell, h)`.
    pub functional: Vec<Rat>,
    pub cone: Cone,
    /// Pairing of the functional with every ray of `V_x`.
    pub ray_pairings: Vec<Rat>,
    /// Pairing with every lineality basis vector of `V_x` (must vanish).
    pub lineality_pairings: Vec<Rat>,
    pub semistable: bool,
    /// `(kappa_P - b)^perp cap V_x`.
    pub slice: Cone,
    pub aut_face: Cone,
    pub polystable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub verdict: Verdict,
    pub classes: Vec<ClassCertificate>,
    pub witness: Option<HVector>,
}

/// Basis of `V cap -V cap Q`.
pub fn central_lineality(data: &VarietyData) -> Result<Vec<Covector>> {
    Ok(data.central_cone()?.lineality.into_iter().map(Covector).collect())
}

/// `A_x`: the user face in the spherical case, otherwise `A` at `h = 0`.
pub fn aut_face(data: &VarietyData, x: &CurvePointId) -> Result<Cone> {
    let r = data.rank;
    if data.is_g_times_gm_spherical {
        let f = data
            .aut_faces
            .iter()
            .find(|f| &f.point == x)
            .ok_or_else(|| Error::Missing(format!("A_x for {x} (spherical input)")))?;
        return Ok(Cone::from_generators(r + 1, &f.rays, &f.lineality));
    }
    let lin: Vec<Vec<Rat>> = central_lineality(data)?
        .into_iter()
        .map(|l| {
            let mut v = l.0;
            v.push(Rat::zero());
            v
        })
        .collect();
    Ok(Cone::from_generators(r + 1, &[], &lin))
}

fn functional(an: &Analysis, x: &CurvePointId) -> Vec<Rat> {
    let b = &an.barycenters[x];
    let mut f: Vec<Rat> = b.mu.iter().map(|c| -c.clone()).collect();
    f.push(-b.t.clone());
    f
}

fn certificate(an: &Analysis, x: &CurvePointId) -> Result<ClassCertificate> {
    let cone = an.data.valuation_cone(x)?;
    let f = functional(an, x);
    let ray_pairings: Vec<Rat> = cone.rays.iter().map(|r| dot(&f, r)).collect();
    let lineality_pairings: Vec<Rat> = cone.lineality.iter().map(|l| dot(&f, l)).collect();
    let semistable =
        ray_pairings.iter().all(|p| !p.is_negative()) && lineality_pairings.iter().all(|p| p.is_zero());
    let slice = intersect_with_hyperplane(&cone, &f);
    let aut = aut_face(&an.data, x)?;
    let polystable = semistable && cone_equal(&slice, &aut);
    Ok(ClassCertificate {
        point: x.clone(),
        functional: f,
        cone,
        ray_pairings,
        lineality_pairings,
        semistable,
        slice,
        aut_face: aut,
        polystable,
    })
}

/// `kappa_P - b in (V_x)^vee` at every class, with certificates.
pub fn semistable_check(an: &Analysis) -> Result<(bool, Vec<ClassCertificate>)> {
    let certs = an.classes().iter().map(|x| certificate(an, x)).collect::<Result<Vec<_>>>()?;
    Ok((certs.iter().all(|c| c.semistable), certs))
}

/// `(kappa_P - b)^perp cap V_x = A_x` at every class (after semistability).
pub fn polystable_check(an: &Analysis) -> Result<bool> {
    let (ss, certs) = semistable_check(an)?;
    Ok(ss && certs.iter().all(|c| c.polystable))
}

/// The generator of some `V_x` with the most negative pairing, if any.
fn witness(certs: &[ClassCertificate]) -> Option<HVector> {
    let mut best: Option<(Rat, CurvePointId, Vec<Rat>)> = None;
    for c in certs {
        let mut cands: Vec<(Rat, Vec<Rat>)> =
            c.cone.rays.iter().zip(&c.ray_pairings).map(|(r, p)| (p.clone(), r.clone())).collect();
        for (l, p) in c.cone.lineality.iter().zip(&c.lineality_pairings) {
            if p.is_positive() {
                cands.push((-p.clone(), l.iter().map(|x| -x.clone()).collect()));
            } else {
                cands.push((p.clone(), l.clone()));
            }
        }
        for (p, v) in cands {
            if p.is_negative() && best.as_ref().map_or(true, |(bp, _, _)| p < *bp) {
                best = Some((p, c.point.clone(), v));
            }
        }
    }
    best.map(|(_, x, v)| HVector::from_coords(x, &v))
}

pub fn stability_report(an: &Analysis) -> Result<StabilityReport> {
    let (ss, classes) = semistable_check(an)?;
    let ps = ss && classes.iter().all(|c| c.polystable);
    let verdict = match (ss, ps) {
        (false, _) => Verdict::Unstable,
        (true, false) => Verdict::Semistable,
        (true, true) if an.data.is_g_times_gm_spherical => Verdict::Polystable,
        (true, true) => Verdict::UniformlyStable,
    };
    let witness = if ss { None } else { witness(&classes) };
    Ok(StabilityReport { verdict, classes, witness })
}

/// Verdict for horospherical input (central cone = whole space): the
/// `mu`-part of `kappa_P - b` must vanish and the `t`-part be nonnegative.
/// Polystable needs `b = kappa_P` when spherical and `-t_b > 0` otherwise;
/// the latter is reported as uniformly stable, as in [`stability_report`].
pub fn horospherical_check(an: &Analysis) -> Result<Verdict> {
    let r = an.rank();
    if central_lineality(&an.data)?.len() != r {
        return Err(Error::Invalid("horospherical check needs the central cone to be the whole space".into()));
    }
    let bs: Vec<_> = an.classes().iter().map(|x| &an.barycenters[x]).collect();
    let ss = bs.iter().all(|b| b.mu.is_zero() && !b.t.is_positive());
    if !ss {
        return Ok(Verdict::Unstable);
    }
    if an.data.is_g_times_gm_spherical {
        if bs.iter().all(|b| b.t.is_zero()) {
            return Ok(Verdict::Polystable);
        }
        return Ok(Verdict::Semistable);
    }
    if bs.iter().all(|b| b.t.is_negative()) {
        Ok(Verdict::UniformlyStable)
    } else {
        Ok(Verdict::Semistable)
    }
}

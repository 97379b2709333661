// SPDX-License-Identifier: MIT OR Apache-2.0

//! TOML variety files.
//!
//! Rationals are written either as TOML integers or as `"p/q"` strings.

use std::path::Path;

use kfano_core::arith::{parse_rat, Covector, Rat, Weight};
use kfano_core::variety::{
    AutFace, CurvePointId, DivisorKind, DivisorRecord, HVector, PiFactor, ValuationCone, VarietyData,
};
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed variety file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError::Field { field: field.into(), message: message.into() }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum RatValue {
    Int(i64),
    Str(String),
}

impl RatValue {
    fn to_rat(&self, field: &str) -> Result<Rat, ParseError> {
        match self {
            RatValue::Int(i) => Ok(Rat::from_integer((*i).into())),
            RatValue::Str(s) => parse_rat(s).ok_or_else(|| field_err(field, format!("not a rational: {s:?}"))),
        }
    }
}

fn rats(v: &[RatValue], field: &str) -> Result<Vec<Rat>, ParseError> {
    v.iter().map(|x| x.to_rat(field)).collect()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Lattice {
    rank: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Weights {
    #[serde(rename = "kappa_P")]
    kappa_p: Vec<RatValue>,
    rho: Vec<RatValue>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CorootEntry {
    coroot: Vec<RatValue>,
    denom: RatValue,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointEntry {
    name: String,
    a: RatValue,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DivisorEntry {
    name: String,
    #[serde(default)]
    point: Option<String>,
    h: RatValue,
    ell: Vec<RatValue>,
    kind: String,
    #[serde(default)]
    alpha_pairing: Option<RatValue>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConeEntry {
    point: String,
    inequalities: Vec<Vec<RatValue>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AutFaceEntry {
    point: String,
    #[serde(default)]
    rays: Vec<Vec<RatValue>>,
    #[serde(default)]
    lineality: Vec<Vec<RatValue>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Flags {
    #[serde(default)]
    quasihomogeneous: bool,
    #[serde(default)]
    g_times_gm_spherical: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VarietyFile {
    lattice: Lattice,
    weights: Weights,
    #[serde(default)]
    pi_factor: Vec<CorootEntry>,
    #[serde(default)]
    coroot: Vec<CorootEntry>,
    #[serde(default)]
    point: Vec<PointEntry>,
    #[serde(default)]
    divisor: Vec<DivisorEntry>,
    #[serde(default)]
    valuation_cone: Vec<ConeEntry>,
    #[serde(default)]
    aut_face: Vec<AutFaceEntry>,
    #[serde(default)]
    flags: Flags,
}

fn coroots(v: &[CorootEntry], table: &str) -> Result<Vec<PiFactor>, ParseError> {
    v.iter()
        .enumerate()
        .map(|(i, c)| {
            let f = format!("{table}[{i}]");
            Ok(PiFactor::new(Covector(rats(&c.coroot, &f)?), c.denom.to_rat(&f)?))
        })
        .collect()
}

/// Parses the text of a variety file. Structural problems (bad TOML,
/// malformed rationals, unknown divisor kinds, ragged cone rows) are parse
/// errors; semantic checks are left to [`kfano_core::variety::validate`].
pub fn parse_variety(text: &str) -> Result<VarietyData, ParseError> {
    let f: VarietyFile = toml::from_str(text)?;
    let r = f.lattice.rank;
    let mut divisors = Vec::new();
    for d in &f.divisor {
        let field = format!("divisor.{}", d.name);
        let kind = DivisorKind::parse(&d.kind).ok_or_else(|| field_err(&field, format!("unknown kind {:?}", d.kind)))?;
        let h = d.h.to_rat(&field)?;
        let point = CurvePointId::parse(d.point.as_deref().unwrap_or("generic"));
        let alpha_pairing = d.alpha_pairing.as_ref().map(|a| a.to_rat(&field)).transpose()?;
        divisors.push(DivisorRecord {
            name: d.name.clone(),
            v: HVector::new(point, Covector(rats(&d.ell, &field)?), h),
            kind,
            alpha_pairing,
        });
    }
    let mut valuation_cones = Vec::new();
    for c in &f.valuation_cone {
        let field = format!("valuation_cone.{}", c.point);
        let mut rows = Vec::new();
        for row in &c.inequalities {
            let row = rats(row, &field)?;
            if row.len() != r + 2 {
                return Err(field_err(&field, format!("rows need rank + 2 = {} entries, found {}", r + 2, row.len())));
            }
            if !num_traits::Zero::is_zero(&row[r + 1]) {
                return Err(field_err(&field, "cone rows must have constant term 0"));
            }
            rows.push(row[..=r].to_vec());
        }
        valuation_cones.push(ValuationCone { point: CurvePointId::parse(&c.point), inequalities: rows });
    }
    let mut aut_faces = Vec::new();
    for a in &f.aut_face {
        let field = format!("aut_face.{}", a.point);
        let rays = a.rays.iter().map(|v| rats(v, &field)).collect::<Result<Vec<_>, _>>()?;
        let lineality = a.lineality.iter().map(|v| rats(v, &field)).collect::<Result<Vec<_>, _>>()?;
        aut_faces.push(AutFace { point: CurvePointId::parse(&a.point), rays, lineality });
    }
    Ok(VarietyData {
        rank: r,
        pi_factors: coroots(&f.pi_factor, "pi_factor")?,
        kappa_p: Weight(rats(&f.weights.kappa_p, "weights.kappa_P")?),
        rho: Weight(rats(&f.weights.rho, "weights.rho")?),
        positive_coroots: coroots(&f.coroot, "coroot")?,
        marked_points: f
            .point
            .iter()
            .map(|p| Ok((p.name.clone(), p.a.to_rat(&format!("point.{}", p.name))?)))
            .collect::<Result<Vec<_>, ParseError>>()?,
        divisors,
        valuation_cones,
        aut_faces,
        is_quasihomogeneous: f.flags.quasihomogeneous,
        is_g_times_gm_spherical: f.flags.g_times_gm_spherical,
    })
}

pub fn read_variety(path: &Path) -> Result<VarietyData, ParseError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| ParseError::Io { path: path.display().to_string(), source })?;
    parse_variety(&text)
}

/// `"1,-2/3"` to rationals; the empty string gives an empty vector.
pub fn parse_rat_list(s: &str) -> Result<Vec<Rat>, ParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| parse_rat(x).ok_or_else(|| field_err("argument", format!("not a rational: {x:?}"))))
        .collect()
}

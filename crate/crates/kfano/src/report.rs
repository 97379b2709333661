// SPDX-License-Identifier: MIT OR Apache-2.0

//! JSON and Markdown reports.
//!
//! Exact values are `"p/q"` strings; every exact field `foo` has a sibling
//! `foo_decimal` carrying a 12-significant-digit approximation.

use std::fmt::Write as _;

use kfano_core::afun::affine_to_string;
use kfano_core::arith::{to_f64, Rat};
use kfano_core::invariants::{dimension_n, Analysis};
use kfano_core::polyhedra::{Cone, HalfSpace};
use kfano_core::stability::{stability_report, StabilityReport};
use kfano_core::Result;
use serde_json::{json, Map, Value};

pub fn exact(q: &Rat) -> String {
    q.to_string()
}

/// Twelve significant digits, fixed notation for moderate magnitudes.
pub fn decimal(q: &Rat) -> String {
    let x = to_f64(q);
    if x == 0.0 {
        return "0".into();
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..12).contains(&e) {
        let places = (11 - e).max(0) as usize;
        let s = format!("{x:.places$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.11e}")
    }
}

fn vec_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(exact(x))).collect())
}

fn vec_decimal(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(decimal(x))).collect())
}

fn halfspace_json(h: &HalfSpace) -> Value {
    let c = h.canonical();
    json!({ "normal": vec_json(&c.normal), "offset": exact(&c.offset) })
}

fn cone_json(c: &Cone) -> Value {
    json!({
        "rays": c.rays.iter().map(|r| vec_json(r)).collect::<Vec<_>>(),
        "lineality": c.lineality.iter().map(|r| vec_json(r)).collect::<Vec<_>>(),
    })
}

fn fmt_row(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(exact).collect();
    format!("({})", parts.join(", "))
}

fn fmt_cone(c: &Cone) -> String {
    if c.is_trivial() {
        return "{0}".into();
    }
    let mut parts: Vec<String> = c.rays.iter().map(|r| format!("ray {}", fmt_row(r))).collect();
    parts.extend(c.lineality.iter().map(|l| format!("line {}", fmt_row(l))));
    parts.join(", ")
}

fn inequality_string(h: &HalfSpace) -> String {
    let c = h.canonical();
    let a = kfano_core::arith::Affine::new(c.normal.clone(), c.offset.clone());
    format!("{} >= 0", affine_to_string(&a, "mu"))
}

/// Everything the report shows, computed once.
pub struct ReportData {
    pub analysis: Analysis,
    pub stability: StabilityReport,
}

impl ReportData {
    pub fn new(analysis: Analysis) -> Result<ReportData> {
        let stability = stability_report(&analysis)?;
        Ok(ReportData { analysis, stability })
    }
}

pub fn to_json(rd: &ReportData) -> Value {
    let an = &rd.analysis;
    let dz = &an.geometry.delta_z;
    let mut afuns = Map::new();
    for (x, f) in &an.geometry.funcs {
        let pieces: Vec<Value> = f
            .distinct_pieces()
            .iter()
            .map(|&i| {
                let a = f.affine(i);
                json!({
                    "divisor": f.labels[i],
                    "formula": affine_to_string(&a, "mu"),
                    "linear": vec_json(&a.linear),
                    "constant": exact(&a.constant),
                })
            })
            .collect();
        afuns.insert(x.to_string(), Value::Array(pieces));
    }
    let mut bary = Map::new();
    for x in an.classes() {
        let b = &an.barycenters[x];
        bary.insert(
            x.to_string(),
            json!({
                "mu": vec_json(&b.mu),
                "mu_decimal": vec_decimal(&b.mu),
                "t": exact(&b.t),
                "t_decimal": decimal(&b.t),
            }),
        );
    }
    let classes: Vec<Value> = rd
        .stability
        .classes
        .iter()
        .map(|c| {
            json!({
                "point": c.point.to_string(),
                "kappa_minus_b": vec_json(&c.functional),
                "kappa_minus_b_decimal": vec_decimal(&c.functional),
                "valuation_cone": cone_json(&c.cone),
                "ray_pairings": vec_json(&c.ray_pairings),
                "lineality_pairings": vec_json(&c.lineality_pairings),
                "semistable": c.semistable,
                "orthogonal_slice": cone_json(&c.slice),
                "aut_face": cone_json(&c.aut_face),
                "polystable": c.polystable,
            })
        })
        .collect();
    let (c0, c1) = an.h0_coefficients();
    json!({
        "rank": an.rank(),
        "dimension": dimension_n(&an.data),
        "delta_z": {
            "inequalities": dz.halfspaces.iter().map(halfspace_json).collect::<Vec<_>>(),
            "equalities": dz.equalities.iter().map(halfspace_json).collect::<Vec<_>>(),
            "vertices": dz.vertices.iter().map(|v| vec_json(v)).collect::<Vec<_>>(),
        },
        "a_functions": afuns,
        "volume": exact(&an.volume),
        "volume_decimal": decimal(&an.volume),
        "h0_coefficients": { "leading": exact(&c0), "second": exact(&c1) },
        "barycenters_minus_kappa": bary,
        "stability": {
            "verdict": rd.stability.verdict.as_str(),
            "classes": classes,
            "witness": rd.stability.witness.as_ref().map(|w| json!({
                "point": w.point.to_string(),
                "ell": vec_json(&w.ell),
                "h": exact(&w.h),
            })),
        },
    })
}

pub fn to_json_string(rd: &ReportData) -> String {
    let mut s = serde_json::to_string_pretty(&to_json(rd)).expect("json");
    s.push('\n');
    s
}

pub fn to_markdown(rd: &ReportData) -> String {
    let an = &rd.analysis;
    let dz = &an.geometry.delta_z;
    let mut s = String::new();
    let _ = writeln!(s, "# kfano report\n");
    let _ = writeln!(s, "rank {}, dimension n = {}\n", an.rank(), dimension_n(&an.data));
    let _ = writeln!(s, "## Delta_Z (shifted by kappa_P)\n");
    for h in &dz.halfspaces {
        let _ = writeln!(s, "- `{}`", inequality_string(h));
    }
    for h in &dz.equalities {
        let _ = writeln!(s, "- `{}` (equality)", inequality_string(h).replace(">=", "="));
    }
    let _ = writeln!(s, "\nVertices:\n");
    for v in &dz.vertices {
        let _ = writeln!(s, "- `{}`", fmt_row(v));
    }
    let _ = writeln!(s, "\n## A_x\n");
    let _ = writeln!(s, "| point | A_x = min of |");
    let _ = writeln!(s, "|---|---|");
    for (x, f) in &an.geometry.funcs {
        let pieces: Vec<String> =
            f.distinct_pieces().iter().map(|&i| format!("`{}`", affine_to_string(&f.affine(i), "mu"))).collect();
        let _ = writeln!(s, "| {x} | {} |", pieces.join(", "));
    }
    let _ = writeln!(s, "\n## Volume\n");
    let _ = writeln!(s, "V = `{}` (~{})\n", exact(&an.volume), decimal(&an.volume));
    let _ = writeln!(s, "## Barycenters b - (kappa_P, 0)\n");
    let _ = writeln!(s, "| point | mu | t | t (decimal) |");
    let _ = writeln!(s, "|---|---|---|---|");
    for x in an.classes() {
        let b = &an.barycenters[x];
        let _ = writeln!(s, "| {x} | `{}` | `{}` | {} |", fmt_row(&b.mu), exact(&b.t), decimal(&b.t));
    }
    let _ = writeln!(s, "\n## Stability\n");
    let _ = writeln!(s, "verdict: **{}**\n", rd.stability.verdict.as_str());
    let _ = writeln!(s, "| point | kappa_P - b | semistable | slice | A_x | polystable |");
    let _ = writeln!(s, "|---|---|---|---|---|---|");
    for c in &rd.stability.classes {
        let _ = writeln!(
            s,
            "| {} | `{}` | {} | {} | {} | {} |",
            c.point,
            fmt_row(&c.functional),
            c.semistable,
            fmt_cone(&c.slice),
            fmt_cone(&c.aut_face),
            c.polystable
        );
    }
    if let Some(w) = &rd.stability.witness {
        let _ = writeln!(s, "\ndestabilizing direction at {}: ell = `{}`, h = `{}`", w.point, fmt_row(&w.ell), exact(&w.h));
    }
    s
}

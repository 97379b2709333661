// SPDX-License-Identifier: MIT OR Apache-2.0
#![allow(dead_code)]

use kfano_core::arith::{int, parse_rat, Covector, Rat, Weight};
use kfano_core::variety::{
    AutFace, CurvePointId, DivisorKind, DivisorRecord, HVector, PiFactor, ValuationCone, VarietyData,
};

pub fn q(s: &str) -> Rat {
    parse_rat(s).expect("rational literal")
}

pub fn v(xs: &[&str]) -> Vec<Rat> {
    xs.iter().map(|s| q(s)).collect()
}

pub fn iv(xs: &[i64]) -> Vec<Rat> {
    xs.iter().map(|&x| int(x)).collect()
}

fn div(name: &str, point: CurvePointId, ell: &[i64], h: Rat, kind: DivisorKind) -> DivisorRecord {
    DivisorRecord { name: name.into(), v: HVector::new(point, Covector(iv(ell)), h), kind, alpha_pairing: None }
}

fn jump(name: &str, point: &str, ell: &[i64], h: i64, kind: DivisorKind) -> DivisorRecord {
    div(name, CurvePointId::parse(point), ell, int(h), kind)
}

fn central(name: &str, ell: &[i64], kind: DivisorKind) -> DivisorRecord {
    div(name, CurvePointId::Generic, ell, int(0), kind)
}

fn cone(point: &str, rows: &[&[i64]]) -> ValuationCone {
    ValuationCone { point: CurvePointId::parse(point), inequalities: rows.iter().map(|r| iv(r)).collect() }
}

/// The ordered-triangles example; `cartan` selects the Cartan pairing for pi.
pub fn sl3(cartan: bool) -> VarietyData {
    use DivisorKind::*;
    let pis: Vec<PiFactor> = if cartan {
        vec![
            PiFactor::new(Covector(iv(&[2, -1])), int(1)),
            PiFactor::new(Covector(iv(&[-1, 2])), int(1)),
            PiFactor::new(Covector(iv(&[1, 1])), int(2)),
        ]
    } else {
        vec![
            PiFactor::new(Covector(iv(&[1, 0])), int(1)),
            PiFactor::new(Covector(iv(&[0, 1])), int(1)),
            PiFactor::new(Covector(iv(&[1, 1])), int(2)),
        ]
    };
    let mut divisors = vec![central("W", &[0, -1], GStable), central("W~", &[-1, 0], GStable)];
    divisors.push(jump("D_inf", "inf", &[-1, -1], 1, ColourTypeA));
    for i in 1..=3 {
        let x = format!("x{i}");
        divisors.push(jump(&format!("W{i}"), &x, &[0, 0], 1, GStable));
        divisors.push(jump(&format!("D{i}"), &x, &[0, 1], 1, ColourTypeA));
        divisors.push(jump(&format!("D~{i}"), &x, &[1, 0], 1, ColourTypeA));
    }
    divisors.push(jump("D_x", "generic", &[0, 0], 1, ColourTypeA));
    let mut cones: Vec<ValuationCone> =
        (1..=3).map(|i| cone(&format!("x{i}"), &[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]])).collect();
    cones.push(cone("inf", &[&[-1, 0, -2], &[0, -1, -2], &[0, 0, 1]]));
    cones.push(cone("generic", &[&[-1, 0, -1], &[0, -1, -1], &[0, 0, 1]]));
    VarietyData {
        rank: 2,
        positive_coroots: pis.clone(),
        pi_factors: pis,
        kappa_p: Weight(iv(&[2, 2])),
        rho: Weight(iv(&[1, 1])),
        marked_points: vec![
            ("x1".into(), q("2/3")),
            ("x2".into(), q("2/3")),
            ("x3".into(), q("2/3")),
            ("inf".into(), q("0")),
        ],
        divisors,
        valuation_cones: cones,
        aut_faces: vec![],
        is_quasihomogeneous: true,
        is_g_times_gm_spherical: false,
    }
}

/// Rank 1: `Delta_Z = [0, 1]`, `A = 1 - mu`, `pi = 1`, central cone the whole line.
pub fn segment() -> VarietyData {
    use DivisorKind::*;
    let mut lower = central("B", &[1], ColourTypeB);
    lower.alpha_pairing = Some(int(0));
    VarietyData {
        rank: 1,
        pi_factors: vec![],
        positive_coroots: vec![],
        kappa_p: Weight(iv(&[0])),
        rho: Weight(iv(&[0])),
        marked_points: vec![("p".into(), int(1)), ("q".into(), int(1))],
        divisors: vec![
            lower,
            jump("Dp", "p", &[-2], 2, GStable),
            jump("Dq", "q", &[0], 2, GStable),
            jump("Dg", "generic", &[0], 1, GStable),
        ],
        valuation_cones: vec![cone("generic", &[&[0, 1]])],
        aut_faces: vec![],
        is_quasihomogeneous: false,
        is_g_times_gm_spherical: false,
    }
}

fn square_divisors() -> Vec<DivisorRecord> {
    use DivisorKind::*;
    vec![
        central("E1", &[1, 0], ColourCentralToStable),
        central("E2", &[-1, 0], ColourCentralToStable),
        central("E3", &[0, 1], ColourCentralToStable),
        central("E4", &[0, -1], ColourCentralToStable),
    ]
}

/// Rank 2 on the square `[-1, 1]^2` with constant `A`; `h` is the jump at each
/// of the marked points (equal coefficients), `central_rows` the h = 0 part
/// of the generic cone.
pub fn square(points: usize, h: i64, central_rows: &[&[i64]]) -> VarietyData {
    use DivisorKind::*;
    let a = Rat::new(2.into(), (points as i64).into());
    let mut divisors = square_divisors();
    let mut marked = Vec::new();
    for i in 0..points {
        let x = format!("p{i}");
        divisors.push(jump(&format!("D{i}"), &x, &[0, 0], h, GStable));
        marked.push((x, a.clone()));
    }
    divisors.push(jump("Dg", "generic", &[0, 0], 1, GStable));
    let mut rows: Vec<Vec<i64>> = central_rows.iter().map(|r| vec![r[0], r[1], 0]).collect();
    rows.push(vec![0, 0, 1]);
    let rows: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    VarietyData {
        rank: 2,
        pi_factors: vec![],
        positive_coroots: vec![],
        kappa_p: Weight(iv(&[0, 0])),
        rho: Weight(iv(&[0, 0])),
        marked_points: marked,
        divisors,
        valuation_cones: vec![cone("generic", &rows)],
        aut_faces: vec![],
        is_quasihomogeneous: false,
        is_g_times_gm_spherical: false,
    }
}

/// Horospherical square whose barycenters all equal `kappa_P`, flagged spherical.
pub fn horo_spherical() -> VarietyData {
    let mut d = square(2, 1, &[]);
    d.is_g_times_gm_spherical = true;
    d.aut_faces = d
        .point_classes()
        .into_iter()
        .map(|x| AutFace { point: x, rays: vec![iv(&[0, 0, 1])], lineality: vec![iv(&[1, 0, 0]), iv(&[0, 1, 0])] })
        .collect();
    d
}

pub fn marked(name: &str) -> CurvePointId {
    CurvePointId::marked(name)
}

pub fn hv(point: &str, ell: &[i64], h: i64) -> HVector {
    HVector::new(CurvePointId::parse(point), Covector(iv(ell)), int(h))
}

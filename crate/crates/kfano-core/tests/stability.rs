// SPDX-License-Identifier: MIT OR Apache-2.0

mod common;

use common::*;
use kfano_core::arith::{int, rat, Covector, Rat, Weight};
use kfano_core::error::Error;
use kfano_core::invariants::Analysis;
use kfano_core::polyhedra::cone_equal;
use kfano_core::stability::*;
use kfano_core::variety::{CurvePointId, VarietyData};

#[test]
fn triangles_are_uniformly_stable() {
    let an = Analysis::new(&sl3(false)).unwrap();
    let rep = stability_report(&an).unwrap();
    assert_eq!(rep.verdict, Verdict::UniformlyStable);
    assert_eq!(rep.verdict.as_str(), "uniformly_k_stable");
    assert!(rep.witness.is_none());
    assert_eq!(rep.classes.len(), 5);
    for c in &rep.classes {
        assert!(c.semistable && c.polystable, "{}", c.point);
        assert!(c.ray_pairings.iter().all(|p| *p > int(0)));
        assert!(c.slice.is_trivial());
    }
    assert!(central_lineality(&an.data).unwrap().is_empty());
    assert!(polystable_check(&an).unwrap());
    assert!(matches!(horospherical_check(&an), Err(Error::Invalid(_))));
}

#[test]
fn corrupted_barycenter_is_destabilized() {
    let mut an = Analysis::new(&sl3(false)).unwrap();
    for i in 1..=3 {
        let b = an.barycenters.get_mut(&marked(&format!("x{i}"))).unwrap();
        b.t = -b.t.clone();
    }
    let rep = stability_report(&an).unwrap();
    assert_eq!(rep.verdict, Verdict::Unstable);
    let w = rep.witness.expect("witness");
    assert!(an.data.in_valuation_cone(&w).unwrap());
    assert!(matches!(&w.point, CurvePointId::Marked(n) if n.starts_with('x')));
    assert!(an.futaki(&w).unwrap().value < int(0));
    let (ss, certs) = semistable_check(&an).unwrap();
    assert!(!ss);
    assert_eq!(certs.iter().filter(|c| !c.semistable).count(), 3);
}

#[test]
fn verdict_order() {
    use Verdict::*;
    assert!(Unstable < Semistable && Semistable < Polystable && Polystable < UniformlyStable);
    assert!(!Unstable.is_semistable());
    assert!(Semistable.is_semistable() && !Semistable.is_polystable());
    assert!(UniformlyStable.is_polystable());
    assert_eq!(Polystable.to_string(), "k_polystable");
    assert_eq!(Semistable.as_str(), "k_semistable");
    assert_eq!(Unstable.as_str(), "k_unstable");
}

#[test]
fn horospherical_toys() {
    // b = kappa_P everywhere, not spherical: the t-part vanishes, so only semistable
    let an = Analysis::new(&square(2, 1, &[])).unwrap();
    for x in an.classes() {
        assert_eq!(an.barycenters[x].t, int(0));
    }
    assert_eq!(horospherical_check(&an).unwrap(), Verdict::Semistable);
    assert_eq!(stability_report(&an).unwrap().verdict, Verdict::Semistable);

    // the same polytope flagged spherical with A_x = V_x
    let an = Analysis::new(&horo_spherical()).unwrap();
    assert_eq!(horospherical_check(&an).unwrap(), Verdict::Polystable);
    assert_eq!(stability_report(&an).unwrap().verdict, Verdict::Polystable);

    // three points with jump 2: A = 1/2 and t_b < 0 at every class
    let an = Analysis::new(&square(3, 2, &[])).unwrap();
    for x in an.classes() {
        assert!(an.barycenters[x].t < int(0), "{x}");
    }
    assert_eq!(an.barycenters[&marked("p0")].t, rat(-1, 4));
    assert_eq!(an.barycenters[&CurvePointId::Generic].t, rat(-3, 4));
    assert_eq!(horospherical_check(&an).unwrap(), Verdict::UniformlyStable);
    assert_eq!(stability_report(&an).unwrap().verdict, Verdict::UniformlyStable);
}

#[test]
fn orthogonal_ray_gives_semistable_only() {
    let an = Analysis::new(&square(2, 1, &[&[-1, 0]])).unwrap();
    let rep = stability_report(&an).unwrap();
    assert_eq!(rep.verdict, Verdict::Semistable);
    let c = &rep.classes[0];
    assert!(c.semistable && !c.polystable);
    assert!(c.slice.contains(&iv(&[-1, 0, 0])));
    assert!(!c.aut_face.contains(&iv(&[-1, 0, 0])));
}

#[test]
fn spherical_needs_aut_faces() {
    let mut d = horo_spherical();
    d.aut_faces.clear();
    assert!(matches!(aut_face(&d, &CurvePointId::Generic), Err(Error::Missing(_))));
    let d = horo_spherical();
    let f = aut_face(&d, &marked("p0")).unwrap();
    assert!(cone_equal(&f, &d.valuation_cone(&marked("p0")).unwrap()));
}

/// `lambda -> U lambda` on weights, `ell -> U^{-T} ell` on covectors.
fn transform(d: &VarietyData) -> VarietyData {
    let u = |w: &[Rat]| vec![&w[0] + &w[1], w[1].clone()];
    let ut = |c: &[Rat]| vec![c[0].clone(), &c[1] - &c[0]];
    let mut e = d.clone();
    e.kappa_p = Weight(u(&d.kappa_p));
    e.rho = Weight(u(&d.rho));
    for f in e.pi_factors.iter_mut().chain(e.positive_coroots.iter_mut()) {
        f.coroot = Covector(ut(&f.coroot));
    }
    for div in &mut e.divisors {
        div.v.ell = Covector(ut(&div.v.ell));
    }
    // a row r pairs with ell, so it transforms like a weight
    for c in &mut e.valuation_cones {
        for row in &mut c.inequalities {
            let mut nr = u(&row[..2]);
            nr.push(row[2].clone());
            *row = nr;
        }
    }
    e
}

#[test]
fn unimodular_change_of_basis() {
    for d in [sl3(false), square(2, 1, &[&[-1, 0]]), square(3, 2, &[])] {
        let a = Analysis::new(&d).unwrap();
        let b = Analysis::new(&transform(&d)).unwrap();
        assert_eq!(a.volume, b.volume);
        assert_eq!(stability_report(&a).unwrap().verdict, stability_report(&b).unwrap().verdict);
        for x in a.classes() {
            assert_eq!(a.barycenters[x].t, b.barycenters[x].t);
            let mu = &a.barycenters[x].mu;
            assert_eq!(b.barycenters[x].mu.0, vec![&mu[0] + &mu[1], mu[1].clone()]);
        }
    }
}

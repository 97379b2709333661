// SPDX-License-Identifier: MIT OR Apache-2.0

use kfano_core::arith::{int, rat, Rat};
use kfano_core::error::Error;
use kfano_core::polyhedra::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn hs(n: &[i64], c: i64) -> HalfSpace {
    HalfSpace::new(n.iter().map(|&x| int(x)).collect(), int(c))
}

fn pt(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| int(x)).collect()
}

#[test]
fn square_vertices_and_redundancy() {
    let p = hrep_to_vrep(
        2,
        &[hs(&[1, 0], 1), hs(&[-1, 0], 1), hs(&[0, 1], 1), hs(&[0, -1], 1), hs(&[-1, -1], 5)],
    )
    .unwrap();
    assert_eq!(p.vertices, vec![pt(&[-1, -1]), pt(&[-1, 1]), pt(&[1, -1]), pt(&[1, 1])]);
    assert_eq!(p.halfspaces.len(), 4);
    assert_eq!(p.volume(), int(4));
    assert!(p.contains(&pt(&[0, 1])));
    assert!(!p.contains(&[rat(3, 2), int(0)]));
}

#[test]
fn unbounded_reports_ray() {
    match hrep_to_vrep(2, &[hs(&[1, 0], 0), hs(&[0, 1], 0)]) {
        Err(Error::Unbounded { ray }) => assert!(ray.iter().all(|x| *x >= int(0))),
        o => panic!("{o:?}"),
    }
}

#[test]
fn empty_and_lower_dimensional() {
    let e = hrep_to_vrep(1, &[hs(&[1], -2), hs(&[-1], 1)]).unwrap();
    assert!(e.is_empty());
    let seg = hrep_to_vrep(2, &[hs(&[1, 0], 0), hs(&[-1, 0], 0), hs(&[0, 1], 0), hs(&[0, -1], 2)]).unwrap();
    assert_eq!(seg.dim(), Some(1));
    assert_eq!(seg.equalities.len(), 1);
    assert_eq!(seg.volume(), int(0));
}

#[test]
fn cube_triangulation() {
    let mut pts = Vec::new();
    for i in 0..8 {
        pts.push(pt(&[i & 1, (i >> 1) & 1, (i >> 2) & 1]));
    }
    let c = Polytope::from_points(3, &pts);
    assert_eq!(c.halfspaces.len(), 6);
    let simplices = triangulate(&c);
    let total = simplices.iter().fold(int(0), |a, s| a + s.volume());
    assert_eq!(total, int(1));
    assert!(simplices.iter().all(|s| s.volume() > int(0)));
}

#[test]
fn cones_dual_and_lineality() {
    // the half-plane h >= 0 in (ell, h)
    let c = Cone::from_hrep(2, &[pt(&[0, 1])], &[]);
    assert_eq!(c.lineality.len(), 1);
    assert_eq!(c.rays, vec![pt(&[0, 1])]);
    assert_eq!(lineality_space(&c).len(), 1);
    let d = dual_cone(&c);
    assert_eq!(d.rays, vec![pt(&[0, 1])]);
    assert!(d.lineality.is_empty());
    let s = intersect_with_hyperplane(&c, &pt(&[0, 1]));
    assert!(s.rays.is_empty());
    assert_eq!(s.lineality.len(), 1);
    let quadrant = Cone::from_generators(2, &[pt(&[1, 0]), pt(&[0, 1])], &[]);
    assert!(cone_equal(&dual_cone(&quadrant), &quadrant));
    assert!(quadrant.subset_of(&Cone::full(2)));
    assert!(Cone::zero(2).is_trivial());
}

#[test]
fn lattice_points_of_dilates() {
    let tri = Polytope::from_points(2, &[pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])]);
    for k in 1..6i64 {
        let n = scaled_lattice_points(&tri, &BigInt::from(k), 1_000_000).unwrap().len() as i64;
        assert_eq!(n, (k + 1) * (k + 2) / 2);
    }
    match scaled_lattice_points(&tri, &BigInt::from(10_000), 1000) {
        Err(Error::EnumerationBound { .. }) => {}
        o => panic!("{o:?}"),
    }
}

#[test]
fn normal_fan_of_square() {
    let sq = Polytope::from_points(2, &[pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1]), pt(&[1, 1])]);
    let fan = normal_fan_at_vertices(&sq.as_polyhedron());
    assert_eq!(fan.len(), 4);
    assert!(fan.iter().all(|c| c.dim() == 2 && c.rays.len() == 2));
}

fn points2() -> impl Strategy<Value = Vec<Vec<Rat>>> {
    prop::collection::vec(prop::collection::vec((-6i64..7, 1i64..4).prop_map(|(n, d)| rat(n, d)), 2), 3..9)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hull_round_trip(ps in points2()) {
        let p = Polytope::from_points(2, &ps);
        for q in &ps {
            prop_assert!(p.contains(q));
        }
        for v in &p.vertices {
            prop_assert!(ps.contains(v));
        }
        // H-rep back to V-rep gives the same vertices
        let again = hrep_to_vrep(2, &p.all_inequalities()).unwrap();
        prop_assert_eq!(&again.vertices, &p.vertices);
        // the triangulation tiles the hull
        let vol = triangulate(&p).iter().fold(int(0), |a, s| a + s.volume());
        prop_assert_eq!(vol, p.volume());
    }

    #[test]
    fn shoelace_agrees(ps in points2()) {
        let p = Polytope::from_points(2, &ps);
        prop_assume!(p.is_full_dimensional());
        // order vertices by angle around the centroid using exact cross products
        let n = Rat::from_integer(BigInt::from(p.vertices.len()));
        let cx = p.vertices.iter().fold(int(0), |a, v| a + &v[0]) / &n;
        let cy = p.vertices.iter().fold(int(0), |a, v| a + &v[1]) / &n;
        let mut vs = p.vertices.clone();
        let half = |v: &Vec<Rat>| v[1] < cy || (v[1] == cy && v[0] < cx);
        vs.sort_by(|a, b| {
            half(a).cmp(&half(b)).then_with(|| {
                let c = (&a[0] - &cx) * (&b[1] - &cy) - (&a[1] - &cy) * (&b[0] - &cx);
                int(0).cmp(&c)
            })
        });
        let mut twice = int(0);
        for i in 0..vs.len() {
            let (a, b) = (&vs[i], &vs[(i + 1) % vs.len()]);
            twice += &a[0] * &b[1] - &a[1] * &b[0];
        }
        let area = if twice < int(0) { -twice } else { twice } / int(2);
        prop_assert_eq!(area, p.volume());
    }
}

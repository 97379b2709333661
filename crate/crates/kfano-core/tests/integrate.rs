// SPDX-License-Identifier: MIT OR Apache-2.0

use kfano_core::arith::{int, rat, to_f64, Affine, Rat};
use kfano_core::integrate::*;
use kfano_core::polyhedra::{HalfSpace, Polytope, Simplex};
use proptest::prelude::*;

fn pt(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| int(x)).collect()
}

#[test]
fn monomials_on_the_standard_simplex() {
    // int_{Delta^2} x^a y^b = a! b! / (a + b + 2)!
    let s = Simplex::new(vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])]);
    let x = Affine::coord(2, 0);
    let y = Affine::coord(2, 1);
    assert_eq!(integrate_simplex(&PolyDensity::one(2), &s), rat(1, 2));
    assert_eq!(integrate_simplex(&PolyDensity::affine(x.clone()), &s), rat(1, 6));
    assert_eq!(integrate_simplex(&PolyDensity::product(vec![x.clone(), x.clone()]), &s), rat(1, 12));
    assert_eq!(integrate_simplex(&PolyDensity::product(vec![x.clone(), y.clone()]), &s), rat(1, 24));
    assert_eq!(integrate_simplex(&PolyDensity::product(vec![x.clone(), x, y.clone(), y]), &s), rat(4, 720));
}

#[test]
fn barycenter_of_a_square() {
    let sq = Polytope::from_points(2, &[pt(&[0, 0]), pt(&[2, 0]), pt(&[0, 2]), pt(&[2, 2])]);
    let b = weighted_barycenter(&PolyDensity::one(2), &sq).unwrap();
    assert_eq!(b, pt(&[1, 1]));
    let bx = weighted_barycenter(&PolyDensity::coord(2, 0), &sq).unwrap();
    assert_eq!(bx, vec![rat(4, 3), int(1)]);
    assert!(weighted_barycenter(&PolyDensity::zero(2), &sq).is_err());
}

#[test]
fn lattice_boundary_measure() {
    // the lattice length of every edge of the standard triangle is 1
    let tri = Polytope::from_points(2, &[pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])]);
    assert_eq!(integrate_boundary_lattice(&PolyDensity::one(2), &tri), int(3));
    let big = Polytope::from_points(2, &[pt(&[0, 0]), pt(&[3, 0]), pt(&[0, 3])]);
    assert_eq!(integrate_boundary_lattice(&PolyDensity::one(2), &big), int(9));
    // segment [0, 4] in rank 1: two endpoints, each of lattice measure 1
    let seg = Polytope::from_points(1, &[pt(&[0]), pt(&[4])]);
    assert_eq!(integrate_boundary_lattice(&PolyDensity::affine(Affine::coord(1, 0)), &seg), int(4));
}

#[test]
fn reflection_symmetric_gradient_vanishes() {
    // pi = x y (x + y); the swap (x, y) -> (y, x) fixes the polytope and
    // negates d/dx pi - d/dy pi
    let p = Polytope::from_points(2, &[pt(&[0, 0]), pt(&[3, 1]), pt(&[1, 3]), pt(&[2, 2])]);
    // d/dx pi - d/dy pi = y(2x + y) - x(x + 2y) = y^2 - x^2
    let x = Affine::coord(2, 0);
    let y = Affine::coord(2, 1);
    let g = PolyDensity::product(vec![y.clone(), y.clone()]).add(&PolyDensity::product(vec![x.clone(), x]).scale(&int(-1)));
    assert_eq!(integrate_polytope(&g, &p), int(0));
}

/// Midpoint rule on an `n x n` grid over the box `[0, w] x [0, w]`, for a
/// polytope whose facets are axis-aligned or pass through grid corners.
fn grid(f: &PolyDensity, p: &Polytope, w: f64, n: usize) -> f64 {
    let h = w / n as f64;
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            let x = [(i as f64 + 0.5) * h, (j as f64 + 0.5) * h];
            let inside = p.halfspaces.iter().all(|hs| {
                to_f64(&hs.offset) + x.iter().zip(&hs.normal).map(|(a, b)| a * to_f64(b)).sum::<f64>() >= 0.0
            });
            if inside {
                let q: Vec<Rat> = x.iter().map(|v| Rat::from_float(*v).unwrap()).collect();
                s += to_f64(&f.eval(&q)) * h * h;
            }
        }
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // exact integral against a grid-refinement oracle on boxes
    #[test]
    fn box_integrals_match_grid(a in 1i64..4, b in 1i64..4, c0 in -3i64..4, c1 in -3i64..4, c2 in 0i64..3) {
        let bx = Polytope::from_points(2, &[pt(&[0, 0]), pt(&[a, 0]), pt(&[0, b]), pt(&[a, b])]);
        let f = PolyDensity::product(vec![
            Affine::new(vec![int(c0), int(c1)], int(c2)),
            Affine::new(vec![int(1), int(0)], int(1)),
        ]);
        let exact = to_f64(&integrate_polytope(&f, &bx));
        let approx = grid(&f, &bx, 4.0, 160);
        prop_assert!((exact - approx).abs() <= 1e-3 * (1.0 + exact.abs()), "{} vs {}", exact, approx);
    }

    // additivity under cutting a simplex by a hyperplane
    #[test]
    fn cut_additivity(cut in 1i64..6, e in 0usize..3) {
        let tri = Polytope::from_points(2, &[pt(&[0, 0]), pt(&[6, 0]), pt(&[0, 6])]);
        let mut fs = vec![Affine::constant(2, int(1))];
        for _ in 0..e { fs.push(Affine::new(vec![int(1), int(2)], int(1))); }
        let f = PolyDensity::product(fs);
        let left = tri.intersect(&[HalfSpace::new(vec![int(-1), int(0)], int(cut))]);
        let right = tri.intersect(&[HalfSpace::new(vec![int(1), int(0)], int(-cut))]);
        prop_assert_eq!(integrate_polytope(&f, &left) + integrate_polytope(&f, &right), integrate_polytope(&f, &tri));
    }
}

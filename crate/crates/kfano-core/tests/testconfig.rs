// SPDX-License-Identifier: MIT OR Apache-2.0

mod common;

use common::*;
use kfano_core::arith::{int, rat, Covector, Rat};
use kfano_core::invariants::Analysis;
use kfano_core::testconfig::*;
use kfano_core::variety::{CurvePointId, HVector};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

const BOUND: u128 = DEFAULT_MAX_LATTICE;

fn k(n: i64) -> BigInt {
    BigInt::from(n)
}

fn triangles() -> Analysis {
    Analysis::new(&sl3(false)).unwrap()
}

#[test]
fn tau0_and_validation() {
    let an = triangles();
    let tc = TestConfig::new(HVector::q(marked("x1"), 2), 0);
    // tau0(0) = m0 + A(0) - A_x1(0) = 2 - 2/3
    assert_eq!(tau0(&an, &tc, &iv(&[0, 0])).unwrap(), rat(4, 3));
    assert!(tau0(&an, &tc, &iv(&[3, 0])).is_err());
    let val = validate_tc(&an, &tc).unwrap();
    let m = val.minimal_m0.clone();
    assert!(validate_tc(&an, &TestConfig::new(tc.v0.clone(), m.clone())).unwrap().ok);
    assert!(!validate_tc(&an, &TestConfig::new(tc.v0.clone(), m - 1)).unwrap().ok);
    // non-integral, outside the cone, bad multiplicity
    let half = HVector::new(marked("x1"), Covector(vec![rat(-1, 2), int(0)]), int(1));
    assert!(validate_tc(&an, &TestConfig::new(half, 3)).is_err());
    assert!(validate_tc(&an, &TestConfig::new(hv("x1", &[1, 0], 1), 3)).is_err());
    assert!(validate_tc(&an, &TestConfig::new(hv("x1", &[0, 0], 1), 3).with_multiplicity(0)).is_err());
    assert!(validate_tc(&an, &TestConfig::new(hv("x1", &[0, -2], 2), 3).with_multiplicity(-2)).is_err());
    assert!(validate_tc(&an, &TestConfig::new(hv("x1", &[0, -2], 1), 3).with_multiplicity(-2)).is_ok());
}

#[test]
fn a_of_d_cuts_the_x0_term() {
    let an = triangles();
    let tc = TestConfig::new(HVector::q(marked("x1"), 2), 2);
    let mu = iv(&[0, 0]);
    assert_eq!(a_of_d(&an, &tc, &mu, &int(0)).unwrap(), int(2));
    // (2 - 3)/1 = -1 replaces A_x1 = 2/3
    assert_eq!(a_of_d(&an, &tc, &mu, &int(3)).unwrap(), int(2) - rat(2, 3) - int(1));
    let central = TestConfig::new(HVector::central(Covector(iv(&[-1, 0]))), 3);
    assert_eq!(a_of_d(&an, &central, &mu, &int(3)).unwrap(), int(2));
    assert_eq!(a_of_d(&an, &central, &mu, &int(4)).unwrap(), int(0));
    let zl = build_delta_z_l(&an, &tc).unwrap();
    assert_eq!(zl.ambient_dim, 3);
    let top = zl.vertices.iter().map(|v| v[2].clone()).max().unwrap();
    assert_eq!(top, an.lambda_max(&tc.v0, &int(2)));
}

#[test]
fn h0_oracle_values() {
    let an = triangles();
    assert_eq!(oracle_h0(&an, &k(0), BOUND).unwrap(), k(1));
    assert_eq!(oracle_h0(&an, &k(1), BOUND).unwrap(), k(27));
    assert_eq!(oracle_h0(&an, &k(4), BOUND).unwrap(), k(129725));
    let seg = Analysis::new(&segment()).unwrap();
    // sum_{nu=0}^{k} (floor((k - 2 nu)/2) + floor(k/2) + 1)
    for kk in 1..8i64 {
        let want: i64 = (0..=kk).map(|nu| (kk - 2 * nu).div_euclid(2) + kk / 2 + 1).map(|d| d.max(0)).sum();
        assert_eq!(oracle_h0(&seg, &k(kk), BOUND).unwrap(), k(want));
    }
    assert!(oracle_h0(&an, &k(-1), BOUND).is_err());
    assert!(oracle_h0(&an, &k(1000), 1000).is_err());
}

#[test]
fn wk_of_the_trivial_configuration() {
    let an = triangles();
    let tc = TestConfig::new(HVector::central(Covector::zero(2)), 1);
    for kk in 1..4 {
        let h0 = oracle_h0(&an, &k(kk), BOUND).unwrap();
        assert_eq!(oracle_wk(&an, &tc, &k(kk), BOUND).unwrap(), k(kk) * h0);
    }
    let q = TestConfig::new(HVector::q(marked("x1"), 2), validate_tc(&an, &TestConfig::new(HVector::q(marked("x1"), 2), 0)).unwrap().minimal_m0);
    assert_eq!(oracle_wk(&an, &q, &k(2), BOUND).unwrap(), k(8113));
}

#[test]
fn wk_resums_the_filtration() {
    let an = triangles();
    let tc = TestConfig::new(hv("inf", &[-2, -3], 1), 6);
    assert!(validate_tc(&an, &tc).unwrap().ok);
    let kk = k(2);
    let mut total = BigInt::zero();
    for lam in kfano_core::polyhedra::scaled_lattice_points(&an.geometry.delta_z, &kk, BOUND).unwrap() {
        let nu: Vec<Rat> = lam.into_iter().map(Rat::from_integer).collect();
        let full: Vec<Rat> = nu.iter().zip(an.geometry.lambda0.iter()).map(|(n, l)| n + l * int(2)).collect();
        let w = kfano_core::invariants::weyl_dim(&an.data, &full).unwrap().to_integer();
        let mut tau = k(1);
        loop {
            let f = filtration_dim(&an, &tc, &kk, &full, &tau);
            if f.is_zero() {
                break;
            }
            total += f * &w;
            tau += 1;
        }
    }
    assert_eq!(oracle_wk(&an, &tc, &kk, BOUND).unwrap(), total);
}

#[test]
fn bad_points_come_from_the_index() {
    let an = triangles();
    assert!(bad_point_count(&an, &k(1), BOUND).unwrap() > 0);
    assert_eq!(bad_point_count(&an, &k(3), BOUND).unwrap(), 0);
    assert_eq!(bad_point_count(&an, &k(6), BOUND).unwrap(), 0);
    assert_eq!(anticanonical_sk(&an, &k(2), BOUND).unwrap(), int(2272));
}

#[test]
fn twists() {
    let tc = TestConfig::new(HVector::central(Covector(iv(&[1, -1]))), 2);
    let t = twist(&tc, &Covector(iv(&[-1, 0])), &k(2)).unwrap();
    assert_eq!(t.v0.ell, Covector(iv(&[0, -2])));
    assert_eq!(t.m0, k(4));
    assert!(twist(&tc, &Covector(vec![rat(1, 2), int(0)]), &k(1)).is_err());
    let t = twist(&tc, &Covector(vec![rat(1, 2), int(0)]), &k(2)).unwrap();
    assert_eq!(t.v0.ell, Covector(iv(&[3, -2])));
    assert!(twist(&tc, &Covector::zero(2), &k(0)).is_err());
    assert!(!central_fibre_spherical(&tc));
    assert!(central_fibre_spherical(&TestConfig::new(HVector::q(marked("x1"), 2), 2)));
}

#[test]
fn max_grading_against_lambda_max() {
    let seg = Analysis::new(&segment()).unwrap();
    let tc = TestConfig::new(HVector::central(Covector(iv(&[1]))), 2);
    assert_eq!(seg.lambda_max(&tc.v0, &int(2)), int(3));
    for kk in [2i64, 4, 6] {
        assert_eq!(max_grading(&seg, &tc, &k(kk), BOUND).unwrap(), Some(k(3 * kk)));
    }
    let an = triangles();
    let tc = TestConfig::new(hv("x2", &[-1, 0], 1), 3);
    let lm = an.lambda_max(&tc.v0, &int(3));
    for kk in 1..4i64 {
        let g = max_grading(&an, &tc, &k(kk), BOUND).unwrap().unwrap();
        assert!(Rat::from_integer(g) <= lm.clone() * int(kk));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn filtration_is_decreasing(a in -2i64..1, b in -2i64..1, h in 0i64..3, kk in 1i64..4,
                                n1 in -8i64..4, n2 in -8i64..4) {
        let an = triangles();
        let v = HVector::new(if h == 0 { CurvePointId::Generic } else { marked("x3") }, Covector(iv(&[a, b])), int(h));
        let m0 = validate_tc(&an, &TestConfig::new(v.clone(), 0)).unwrap().minimal_m0;
        let lm = an.lambda_max(&v, &Rat::from_integer(m0.clone()));
        let tc = TestConfig::new(v, m0);
        let top = kfano_core::arith::floor(&(lm * int(kk))) + 2;
        let lam: Vec<Rat> = vec![int(n1 + 2 * kk), int(n2 + 2 * kk)];
        let mut prev = dim_rk(&an, &k(kk), &iv(&[n1, n2]));
        let mut tau = k(0);
        while tau <= top {
            let f = filtration_dim(&an, &tc, &k(kk), &lam, &tau);
            tau += 1;
            prop_assert!(f <= prev);
            prev = f;
        }
        prop_assert!(prev.is_zero());
    }
}

// SPDX-License-Identifier: MIT OR Apache-2.0

use kfano_core::arith::{int, rat, Rat};
use kfano_core::error::Error;
use kfano_core::latsum::*;
use kfano_core::polyhedra::Polytope;
use num_bigint::BigInt;
use proptest::prelude::*;

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

fn pt(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| int(x)).collect()
}

fn piece(q: &[i64], r: i64, p: i64) -> LatPiece {
    LatPiece::new(q.iter().map(|&x| b(x)).collect(), b(r), b(p))
}

#[test]
fn unit_segment() {
    let seg = Polytope::from_points(1, &[pt(&[0]), pt(&[1])]);
    let p = LatSumProblem::new(seg, vec![piece(&[1], 0, 1)], vec![0]).unwrap();
    assert_eq!(sk_oracle(&p, &b(2), 1000).unwrap(), int(3));
    for k in 1..10i64 {
        assert_eq!(sk_expansion(&p, &b(k)), rat(k * k, 2) + rat(k, 2));
        assert_eq!(sk_oracle(&p, &b(k), 1000).unwrap(), rat(k * (k + 1), 2));
    }
    assert!(expansion_residual_test(&p, &[b(2), b(4), b(8)], 1000).unwrap());
}

#[test]
fn jump_term_for_halves() {
    // f = min(lambda, (2 - lambda)... ) with a denominator-2 piece: f = (4 - lambda)/2 on [0, 4]
    let seg = Polytope::from_points(1, &[pt(&[0]), pt(&[4])]);
    let p = LatSumProblem::new(seg, vec![piece(&[-1], 4, 2)], vec![0]).unwrap();
    // exact sum: sum_{l=0}^{4k} floor((4k - l)/2)
    for k in 1..6i64 {
        let want: i64 = (0..=4 * k).map(|l| (4 * k - l).div_euclid(2)).sum();
        assert_eq!(sk_oracle(&p, &b(k), 1000).unwrap(), int(want));
    }
    // k^2 * 4 + k/2 * 2 - k/2 * (1/2) * 4
    assert_eq!(sk_expansion(&p, &b(3)), int(36) + int(3) - int(3));
}

#[test]
fn preconditions() {
    let seg = Polytope::from_points(1, &[pt(&[0]), pt(&[1])]);
    let err = |r: Result<LatSumProblem, Error>| matches!(r, Err(Error::Precondition(_)));
    assert!(err(LatSumProblem::new(seg.clone(), vec![piece(&[1], 0, 2)], vec![0])));
    assert!(err(LatSumProblem::new(seg.clone(), vec![piece(&[2], 0, 2)], vec![0])));
    assert!(err(LatSumProblem::new(seg.clone(), vec![piece(&[1], 0, -1)], vec![0])));
    assert!(err(LatSumProblem::new(seg.clone(), vec![], vec![0])));
    let half = Polytope::from_points(1, &[pt(&[0]), vec![rat(1, 2)]]);
    assert!(err(LatSumProblem::new(half, vec![piece(&[1], 0, 1)], vec![0])));
    // crossing point of the two pieces at 1/2 is not integral
    assert!(err(LatSumProblem::new(seg.clone(), vec![piece(&[1], 0, 1), piece(&[-1], 1, 1)], vec![0])));
    assert!(matches!(LatSumProblem::new(seg, vec![piece(&[1], 0, 1)], vec![0, 1]), Err(Error::Dimension { .. })));
}

#[test]
fn weighted_triangle() {
    let tri = Polytope::from_points(2, &[pt(&[0, 0]), pt(&[2, 0]), pt(&[0, 2])]);
    let p = LatSumProblem::new(tri, vec![piece(&[0, 0], 1, 1), piece(&[-1, 0], 2, 1)], vec![1, 0]).unwrap();
    assert_eq!(p.cells.len(), 2);
    assert_eq!(p.degree(), 1);
    // direct sum for k = 1: points with f = min(1, 2 - x), pi = x
    let want: Rat = [(1, 0), (2, 0), (1, 1)].iter().map(|&(x, _)| int(x) * int(1.min(2 - x))).sum();
    assert_eq!(sk_oracle(&p, &b(1), 1000).unwrap(), want);
    assert!(expansion_residual_test(&p, &[b(2), b(4), b(8), b(16)], 1_000_000).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    // for integral f with p = 1 the sum is a polynomial in k: the residual is O(k^{r+d-1})
    #[test]
    fn residual_is_bounded_rank1(lo in -3i64..1, w in 1i64..5, c in -2i64..3, s in -2i64..3, e in 0u32..2) {
        let seg = Polytope::from_points(1, &[pt(&[lo]), pt(&[lo + w])]);
        let p = LatSumProblem::new(seg, vec![piece(&[s], c, 1)], vec![e]).unwrap();
        let ks: Vec<BigInt> = [2, 4, 8, 16].iter().map(|&k| b(k)).collect();
        let res = scaled_residuals(&p, &ks, 1_000_000).unwrap();
        for (i, r) in res.iter().enumerate() {
            prop_assert!(*r <= res[0].clone() * int(2) + int(0), "{:?} at {}", res, i);
        }
    }
}

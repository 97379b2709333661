// SPDX-License-Identifier: MIT OR Apache-2.0

//! One line per acceptance criterion; exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use kfano::cli::max_lattice;
use kfano::{parse_variety, read_variety};
use kfano_core::afun::{build_delta_z, Geometry};
use kfano_core::arith::{ceil, int, rat, to_f64, Affine, Covector, Rat};
use kfano_core::invariants::Analysis;
use kfano_core::latsum::{expansion_residual_test, scaled_residuals, LatPiece, LatSumProblem};
use kfano_core::polyhedra::{hrep_to_vrep, scaled_lattice_points, HalfSpace, Polytope};
use kfano_core::stability::{stability_report, Verdict};
use kfano_core::testconfig::{dim_rk, filtration_dim, oracle_h0, tau0, validate_tc, TestConfig};
use kfano_core::variety::{build_anticanonical, validate, CurvePointId, HVector, VarietyData};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

struct Outcome {
    pass: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass: ok, detail: detail.into() }
}

fn fixture() -> VarietyData {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../kfano/examples/sl3-triangles.toml");
    let d = read_variety(&p).expect("fixture parses");
    assert!(validate(&d).is_empty(), "fixture validates");
    d
}

fn rng() -> TestRunner {
    TestRunner::deterministic()
}

fn range(r: &mut TestRunner, lo: i64, hi: i64) -> i64 {
    (lo..=hi).new_tree(r).expect("strategy").current()
}

fn coin(r: &mut TestRunner, p: f64) -> bool {
    proptest::bool::weighted(p).new_tree(r).expect("strategy").current()
}

fn q(s: &str) -> Rat {
    kfano_core::arith::parse_rat(s).unwrap()
}

fn iv(xs: &[i64]) -> Vec<Rat> {
    xs.iter().map(|&x| int(x)).collect()
}

fn hs(n: &[i64], c: i64) -> HalfSpace {
    HalfSpace::new(iv(n), int(c))
}

fn canonical_rows(p: &Polytope) -> Vec<HalfSpace> {
    let mut v: Vec<HalfSpace> = p.halfspaces.iter().map(|h| h.canonical()).collect();
    v.sort();
    v
}

fn criterion_1() -> Outcome {
    let d = fixture();
    let m = build_anticanonical(&d).unwrap();
    let dz = build_delta_z(&d, &m).unwrap();
    let table = hrep_to_vrep(
        2,
        &[hs(&[2, -1], 2), hs(&[-1, 2], 2), hs(&[-1, -1], 2), hs(&[-1, 0], 1), hs(&[0, -1], 1)],
    )
    .unwrap();
    let same_rows = canonical_rows(&dz) == canonical_rows(&table) && dz.equalities.is_empty();
    let same_vertices = dz.vertices == table.vertices;
    verdict(
        same_rows && same_vertices,
        format!(
            "{} facets, 2 - l1 - l2 >= 0 redundant, vertices {}",
            dz.halfspaces.len(),
            dz.vertices.iter().map(|v| kfano_core::arith::fmt_vec(v)).collect::<Vec<_>>().join(" ")
        ),
    )
}

fn sorted_pieces(g: &Geometry, x: &CurvePointId) -> Vec<Affine> {
    let f = &g.funcs[x];
    let mut v: Vec<Affine> = f.distinct_pieces().iter().map(|&i| f.affine(i)).collect();
    v.sort_by(|a, b| (&a.linear, &a.constant).cmp(&(&b.linear, &b.constant)));
    v
}

fn criterion_2() -> Outcome {
    let d = fixture();
    let g = Geometry::new(&d, &build_anticanonical(&d).unwrap()).unwrap();
    let aff = |l: &[i64], c: &str| Affine::new(iv(l), q(c));
    let mut xi = vec![aff(&[1, 0], "2/3"), aff(&[0, 1], "2/3"), aff(&[0, 0], "2/3")];
    xi.sort_by(|a, b| (&a.linear, &a.constant).cmp(&(&b.linear, &b.constant)));
    let mut ok = sorted_pieces(&g, &CurvePointId::marked("inf")) == vec![aff(&[-1, -1], "0")];
    ok &= sorted_pieces(&g, &CurvePointId::Generic) == vec![aff(&[0, 0], "0")];
    for i in 1..=3 {
        ok &= sorted_pieces(&g, &CurvePointId::marked(&format!("x{i}"))) == xi;
    }
    verdict(ok, "A_inf = -l1 - l2, A_xi = min{2/3 + l1, 2/3 + l2, 2/3}, A_generic = 0")
}

/// `int_{Delta_Z} (A/2 - A_x + a_x - 1) A pi / int_{Delta_Z} A pi` by nested
/// midpoint sums: the inner variable runs over the exact fibre of `Delta_Z`.
fn grid_t(an: &Analysis, x: &CurvePointId, n: usize) -> f64 {
    let g = &an.geometry;
    let f64v = |v: &[Rat]| v.iter().map(to_f64).collect::<Vec<f64>>();
    let pieces = |y: &CurvePointId| -> Vec<(Vec<f64>, f64)> {
        let f = &g.funcs[y];
        f.distinct_pieces().iter().map(|&i| f.affine(i)).map(|a| (f64v(&a.linear), to_f64(&a.constant))).collect()
    };
    let marked: Vec<Vec<(Vec<f64>, f64)>> =
        g.funcs.keys().filter(|y| **y != CurvePointId::Generic).map(pieces).collect();
    let own = pieces(x);
    let shift = to_f64(&g.a_of(x)) - 1.0;
    let kappa = f64v(&an.data.kappa_p);
    let pis: Vec<(Vec<f64>, f64)> = an.data.pi_factors.iter().map(|p| (f64v(&p.coroot), to_f64(&p.denom))).collect();
    let pl = |ps: &[(Vec<f64>, f64)], m: &[f64]| {
        ps.iter().map(|(l, c)| c + l[0] * m[0] + l[1] * m[1]).fold(f64::INFINITY, f64::min)
    };
    let rows: Vec<(f64, f64, f64)> =
        g.delta_z.halfspaces.iter().map(|h| (to_f64(&h.offset), to_f64(&h.normal[0]), to_f64(&h.normal[1]))).collect();
    let lo1 = g.delta_z.vertices.iter().map(|v| to_f64(&v[0])).fold(f64::INFINITY, f64::min);
    let hi1 = g.delta_z.vertices.iter().map(|v| to_f64(&v[0])).fold(f64::NEG_INFINITY, f64::max);
    let (mut num, mut den) = (0.0, 0.0);
    let h1 = (hi1 - lo1) / n as f64;
    for i in 0..n {
        let m1 = lo1 + (i as f64 + 0.5) * h1;
        let (mut lo2, mut hi2) = (f64::NEG_INFINITY, f64::INFINITY);
        for &(c, a, b) in &rows {
            let r = c + a * m1;
            if b > 0.0 {
                lo2 = lo2.max(-r / b);
            } else if b < 0.0 {
                hi2 = hi2.min(-r / b);
            }
        }
        if hi2 <= lo2 {
            continue;
        }
        let h2 = (hi2 - lo2) / n as f64;
        for j in 0..n {
            let m = [m1, lo2 + (j as f64 + 0.5) * h2];
            let a: f64 = marked.iter().map(|p| pl(p, &m)).sum();
            let pi: f64 = pis.iter().map(|(c, d)| ((m[0] + kappa[0]) * c[0] + (m[1] + kappa[1]) * c[1]) / d).product();
            let w = a * pi * h1 * h2;
            den += w;
            num += (a / 2.0 - pl(&own, &m) + shift) * w;
        }
    }
    num / den
}

fn fibre_lengths_hold(an: &Analysis) -> bool {
    let g = &an.geometry;
    an.classes().iter().all(|x| {
        let o = &an.delta_o[x];
        g.subdivision_vertices().iter().all(|mu| {
            let (mut lo, mut hi): (Option<Rat>, Option<Rat>) = (None, None);
            for h in &o.halfspaces {
                let c = &h.offset + &h.normal[0] * &mu[0] + &h.normal[1] * &mu[1];
                let n = &h.normal[2];
                if n.is_zero() {
                    continue;
                }
                let b = -c / n;
                if n.is_positive() {
                    lo = Some(lo.map_or(b.clone(), |l| l.max(b)));
                } else {
                    hi = Some(hi.map_or(b.clone(), |u| u.min(b)));
                }
            }
            matches!((lo, hi), (Some(l), Some(u)) if &u - &l == g.a_total(mu))
        })
    })
}

fn criterion_3() -> Outcome {
    let an = Analysis::new(&fixture()).unwrap();
    let mu_ok = an.classes().iter().all(|x| an.barycenters[x].mu.0 == vec![rat(16141, 76706), rat(16141, 76706)]);
    let t = |x: &str| an.barycenters[&CurvePointId::parse(x)].t.clone();
    let (t_inf, t_x) = (t("inf"), t("x1"));
    let want_inf = rat(-10496, 191765);
    let want_x = rat(-333316, 575295);
    let xs_equal = (1..=3).all(|i| t(&format!("x{i}")) == t_x);
    let inf_ok = t_inf == want_inf;
    let x_ok = t_x == want_x && xs_equal;

    let t_gen = t("generic");
    let table_gen = rat(-22425547, 15360);
    let volume_ok = an.classes().iter().all(|x| an.volume_over_delta_o(x) == an.volume);
    let fibre_ok = fibre_lengths_hold(&an);
    let exact = to_f64(&t_gen);
    let coarse = grid_t(&an, &CurvePointId::Generic, 600);
    let fine = grid_t(&an, &CurvePointId::Generic, 1200);
    let rel = (fine - exact).abs() / exact.abs();
    let grid_ok = rel < 1e-4 && (fine - exact).abs() <= (coarse - exact).abs() + 1e-12;
    let generic_ok = t_gen == table_gen || (volume_ok && fibre_ok && grid_ok);
    let mut detail = format!(
        "lambda parts {}; t(inf) = {} vs table {} (ratio {}); t(x_i) = {} vs table {} (ratio {}); generic t = {} vs table {}",
        if mu_ok { "exact" } else { "differ" },
        t_inf,
        want_inf,
        &want_inf / &t_inf,
        t_x,
        want_x,
        &want_x / &t_x,
        t_gen,
        table_gen,
    );
    if t_gen != table_gen {
        detail += &format!(
            " (flagged erratum candidate; volume identity {}, fibre identity {}, grid oracle rel. err {:.1e})",
            volume_ok, fibre_ok, rel
        );
    }
    if !(inf_ok && x_ok) {
        detail += "; the recomputed t-components are exactly half the tabulated ones at inf and x_i, \
                   so the exact match cannot hold under the stated t_b integrand";
    }
    verdict(mu_ok && inf_ok && x_ok && generic_ok, detail)
}

fn criterion_4() -> Outcome {
    let an = Analysis::new(&fixture()).unwrap();
    let rep = stability_report(&an).unwrap();
    let certs_ok = rep.classes.iter().all(|c| c.semistable && c.polystable && c.slice.is_trivial());
    verdict(
        rep.verdict == Verdict::UniformlyStable && certs_ok && rep.classes.len() == 5,
        format!("verdict {}, (kappa_P - b)^perp cap V_x = {{0}} at all {} classes", rep.verdict, rep.classes.len()),
    )
}

fn h0_gaps(an: &Analysis, ks: &[i64], bound: u128) -> (Vec<f64>, Vec<f64>) {
    let v = &an.volume;
    let mut g1 = Vec::new();
    let mut g2 = Vec::new();
    for &k in ks {
        let h = Rat::from_integer(oracle_h0(an, &BigInt::from(k), bound).unwrap());
        let k6 = int(k).pow(6);
        let k5 = int(k).pow(5);
        g1.push(to_f64(&(&h / &k6 - v).abs()));
        g2.push(to_f64(&((&h - v * &k6) / &k5 - int(3) * v).abs()));
    }
    (g1, g2)
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

fn criterion_5() -> Outcome {
    let an = Analysis::new(&fixture()).unwrap();
    let bound = max_lattice().unwrap();
    let (g1, g2) = h0_gaps(&an, &[4, 8, 16], bound);
    let ok = strictly_decreasing(&g1) && strictly_decreasing(&g2);
    let (s1, s2) = h0_gaps(&an, &[12, 24, 48], bound);
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.4e}")).collect::<Vec<_>>().join(", ");
    verdict(
        ok,
        format!(
            "k = 4, 8, 16: |h0/k^6 - V| = [{}], |(h0 - V k^6)/k^5 - 3V| = [{}]; \
             the A_x have denominator 3, so h0 is a quasi-polynomial of period 3 and these k mix residues; \
             along k = 12, 24, 48 the gaps are [{}] and [{}] ({})",
            fmt(&g1),
            fmt(&g2),
            fmt(&s1),
            fmt(&s2),
            if strictly_decreasing(&s1) && strictly_decreasing(&s2) { "strictly decreasing" } else { "not monotone" }
        ),
    )
}

/// A random integral `v0` with class `x` inside `V_x`.
fn random_v0(an: &Analysis, x: &CurvePointId, rng: &mut TestRunner) -> HVector {
    loop {
        let ell = Covector(vec![int(range(rng, -4, 1)), int(range(rng, -4, 1))]);
        let h = if *x == CurvePointId::Generic { range(rng, 0, 2) } else { range(rng, 1, 3) };
        let v = HVector::new(x.clone(), ell, int(h));
        let v = if h == 0 { HVector::central(v.ell) } else { v };
        if an.data.in_valuation_cone(&v).unwrap() {
            return v;
        }
    }
}

fn criterion_6() -> Outcome {
    let an = Analysis::new(&fixture()).unwrap();
    let mut rng = rng();
    let mut bad = Vec::new();
    let mut n = 0;
    for x in an.classes().to_vec() {
        for _ in 0..20 {
            let v = random_v0(&an, &x, &mut rng);
            let a = an.futaki(&v).unwrap().value;
            let b = an.futaki_direct(&v).unwrap();
            n += 1;
            if a != b {
                bad.push(format!("{v}: {a} vs {b}"));
            }
        }
    }
    verdict(bad.is_empty(), format!("{n} configurations, {} mismatches {}", bad.len(), bad.join("; ")))
}

fn random_problem(rng: &mut TestRunner) -> Option<LatSumProblem> {
    let b = BigInt::from;
    let rank = range(rng, 1, 2) as usize;
    let poly = if rank == 1 {
        let lo = range(rng, -3, 1);
        Polytope::from_points(1, &[iv(&[lo]), iv(&[lo + range(rng, 1, 4)])])
    } else {
        let mut pts = Vec::new();
        for _ in 0..range(rng, 3, 4) {
            pts.push(iv(&[range(rng, -2, 2), range(rng, -2, 2)]));
        }
        Polytope::from_points(2, &pts)
    };
    if !poly.is_full_dimensional() {
        return None;
    }
    let mut pieces = Vec::new();
    for _ in 0..range(rng, 1, 2) {
        let p = if coin(rng, 0.3) { 2 } else { 1 };
        let qv: Vec<BigInt> = (0..rank).map(|_| b(range(rng, -2, 2))).collect();
        pieces.push(LatPiece::new(qv, b(range(rng, -2, 4)), b(p)));
    }
    let exps: Vec<u32> = (0..rank).map(|_| range(rng, 0, 1) as u32).collect();
    LatSumProblem::new(poly, pieces, exps).ok()
}

fn criterion_7() -> Outcome {
    let ks: Vec<BigInt> = [2, 4, 8, 16, 32].iter().map(|&k| BigInt::from(k)).collect();
    let bound = max_lattice().unwrap();
    let hand = LatSumProblem::new(
        Polytope::from_points(1, &[iv(&[0]), iv(&[1])]),
        vec![LatPiece::new(vec![BigInt::from(1)], BigInt::from(0), BigInt::from(1))],
        vec![0],
    )
    .unwrap();
    let mut problems = vec![hand];
    let mut rng = rng();
    while problems.len() < 26 {
        if let Some(p) = random_problem(&mut rng) {
            problems.push(p);
        }
    }
    let mut failed = Vec::new();
    for (i, p) in problems.iter().enumerate() {
        if !expansion_residual_test(p, &ks, bound).unwrap() {
            let r = scaled_residuals(p, &ks, bound).unwrap();
            failed.push(format!("#{i} residuals {}", kfano_core::arith::fmt_vec(&r)));
        }
    }
    let rank2 = problems.iter().filter(|p| p.rank == 2).count();
    let halves = problems.iter().filter(|p| p.pieces.iter().any(|pc| pc.p > BigInt::from(1))).count();
    let weighted = problems.iter().filter(|p| p.degree() > 0).count();
    verdict(
        failed.is_empty(),
        format!(
            "{} problems ({rank2} of rank 2, {halves} with denominator-2 pieces, {weighted} with nonconstant pi), {} over the bound {}",
            problems.len(),
            failed.len(),
            failed.join("; ")
        ),
    )
}

fn criterion_8() -> Outcome {
    let d = fixture();
    let e = d.with_a(&[("x1".into(), int(2)), ("x2".into(), int(0)), ("x3".into(), int(0))]);
    let a = Analysis::new(&d).unwrap();
    let b = Analysis::new(&e).unwrap();
    let same = a.classes().iter().all(|x| a.delta_o[x].vertices == b.delta_o[x].vertices)
        && a.barycenters == b.barycenters
        && a.volume == b.volume;
    verdict(same && validate(&e).is_empty(), "Delta_x^O vertices and barycenters unchanged at every class")
}

const SEGMENT: &str = r#"
[lattice]
rank = 1
[weights]
kappa_P = [0]
rho = [0]
[[point]]
name = "p"
a = 1
[[point]]
name = "q"
a = 1
[[divisor]]
name = "B"
h = 0
ell = [1]
kind = "colour_b"
alpha_pairing = 0
[[divisor]]
name = "Dp"
point = "p"
h = 2
ell = [-2]
kind = "g_stable"
[[divisor]]
name = "Dq"
point = "q"
h = 2
ell = [0]
kind = "g_stable"
[[divisor]]
name = "Dg"
h = 1
ell = [0]
kind = "g_stable"
[[valuation_cone]]
point = "generic"
inequalities = [[0, 1, 0]]
"#;

fn criterion_9() -> Outcome {
    let an = Analysis::new(&fixture()).unwrap();
    let mut rng = rng();
    let classes = an.classes().to_vec();
    let mut ok = true;
    for i in 0..50 {
        let v = random_v0(&an, &classes[i % classes.len()], &mut rng);
        let j = an.jna(&v).unwrap();
        ok &= !j.is_negative();
        let (m, ell) = an.min_twisted_jna(&v).unwrap();
        ok &= m == j && ell.is_zero();
    }
    ok &= an.jna(&HVector::central(Covector::zero(2))).unwrap().is_zero();
    let seg = Analysis::new(&parse_variety(SEGMENT).unwrap()).unwrap();
    let lin_ok = (-3..=3).all(|c| {
        let v = HVector::central(Covector(iv(&[c])));
        seg.min_twisted_jna(&v).unwrap().0.is_zero()
    });
    verdict(
        ok && lin_ok,
        "jna >= 0 on 50 valuations, jna(0) = 0, no twist on the fixture (A = {0}), 0 on a full-lineality segment",
    )
}

fn criterion_10() -> Outcome {
    let an = Analysis::new(&fixture()).unwrap();
    let mut rng = rng();
    let classes = an.classes().to_vec();
    let verts = an.geometry.delta_z.vertices.clone();
    let mut tcs = Vec::new();
    for i in 0..15 {
        let v = random_v0(&an, &classes[i % classes.len()], &mut rng);
        let least = validate_tc(&an, &TestConfig::new(v.clone(), 0)).unwrap().minimal_m0;
        for d in -2..=1 {
            tcs.push(TestConfig::new(v.clone(), &least + d));
        }
    }
    let mut iff_ok = true;
    let mut accepted = Vec::new();
    for tc in &tcs {
        let val = validate_tc(&an, tc).unwrap();
        let m0 = Rat::from_integer(tc.m0.clone());
        let scan = an.geometry.subdivision_vertices().iter().map(|p| an.tau0_at(&tc.v0, &m0, p)).min().unwrap();
        iff_ok &= val.ok == scan.is_positive();
        if val.ok {
            accepted.push(tc.clone());
        }
    }
    let mut violations = 0;
    for _ in 0..1000 {
        let w: Vec<i64> = verts.iter().map(|_| range(&mut rng, 0, 12)).collect();
        let total: i64 = w.iter().sum::<i64>().max(1);
        let mut p = vec![int(0), int(0)];
        for (v, wi) in verts.iter().zip(&w) {
            for (c, vc) in p.iter_mut().zip(v) {
                *c += vc * rat(*wi, total);
            }
        }
        if w.iter().all(|&x| x == 0) {
            p = verts[0].clone();
        }
        for tc in &accepted {
            if !tau0(&an, tc, &p).unwrap().is_positive() {
                violations += 1;
            }
        }
    }

    // tau <= 0 gives the whole weight space once tau~0 = m0 + ell0 - h0 A_x0 >= 0
    let mut filt_ok = true;
    let mut checked = 0usize;
    let bound = max_lattice().unwrap();
    for i in 0..10 {
        let v = random_v0(&an, &classes[i % classes.len()], &mut rng);
        let x0 = an.class_of(&v);
        let least = validate_tc(&an, &TestConfig::new(v.clone(), 0)).unwrap().minimal_m0;
        let need = an
            .geometry
            .subdivision_vertices()
            .iter()
            .map(|p| &v.h * an.geometry.a_x(&x0, p) - kfano_core::arith::dot(&v.ell, p))
            .max()
            .unwrap();
        let tc = TestConfig::new(v, least.max(ceil(&need)));
        for k in 1..=4i64 {
            let kb = BigInt::from(k);
            for nu in scaled_lattice_points(&an.geometry.delta_z, &kb, bound).unwrap() {
                let nu: Vec<Rat> = nu.into_iter().map(Rat::from_integer).collect();
                let lam: Vec<Rat> = nu.iter().zip(an.geometry.lambda0.iter()).map(|(n, l)| n + l * int(k)).collect();
                let want = dim_rk(&an, &kb, &nu);
                for tau in -2..=0 {
                    filt_ok &= filtration_dim(&an, &tc, &kb, &lam, &BigInt::from(tau)) == want;
                    checked += 1;
                }
            }
        }
    }
    verdict(
        iff_ok && violations == 0 && filt_ok,
        format!(
            "{} configurations ({} accepted), 1000 sampled points, {} violations; {} filtration checks at tau <= 0",
            tcs.len(),
            accepted.len(),
            violations,
            checked
        ),
    )
}

type Criterion = (u32, fn() -> Outcome, Option<Duration>);

fn main() {
    let criteria: [Criterion; 10] = [
        (1, criterion_1, Some(Duration::from_secs(1))),
        (2, criterion_2, None),
        (3, criterion_3, Some(Duration::from_secs(10))),
        (4, criterion_4, None),
        (5, criterion_5, Some(Duration::from_secs(60))),
        (6, criterion_6, None),
        (7, criterion_7, Some(Duration::from_secs(30))),
        (8, criterion_8, None),
        (9, criterion_9, None),
        (10, criterion_10, None),
    ];
    let mut failures = 0;
    for (n, f, limit) in criteria {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome { pass: false, detail: format!("panicked: {msg}") }
        });
        let took = start.elapsed();
        let slow = limit.is_some_and(|l| took > l);
        let ok = out.pass && !slow;
        if !ok {
            failures += 1;
        }
        let budget = limit.map(|l| format!(" of {}s", l.as_secs())).unwrap_or_default();
        let slow_note = if slow { " (over the time budget)" } else { "" };
        println!(
            "criterion {n}: {} [{:.2}s{budget}]{slow_note} {}",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            out.detail
        );
    }
    println!("acceptance: {} of 10 criteria pass", 10 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}

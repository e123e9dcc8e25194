#![allow(clippy::excessive_precision)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sphinv_core::solver::equation_from_row;
use sphinv_core::{coefficients, normalize, parse_equation, solve, ConstExpr, Family, Limits, RawEquation, ZeroRoot};

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

/// `sum(terms) - rhs` in the original variable.
fn lhs_minus_rhs(eq: &RawEquation, x: f64) -> f64 {
    let s = eq.scale.value() * x;
    let mut v = -eq.rhs.value();
    for t in &eq.terms {
        v += t.coef.value() * s.powi(t.power as i32) * t.factor.apply(s);
    }
    v
}

/// Sign changes of the original equation on `[-r, r]` at step `h`, away
/// from the origin (pole or removed root).
fn scan_roots(eq: &RawEquation, r: f64, h: f64) -> Vec<f64> {
    let steps = (2.0 * r / h).round() as i64;
    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for k in 0..=steps {
        let x = -r + h * k as f64;
        if x.abs() < 0.5 * h {
            prev = None;
            continue;
        }
        let g = lhs_minus_rhs(eq, x);
        if let Some((px, pg)) = prev {
            if pg == 0.0 {
                out.push(px);
            } else if pg * g < 0.0 {
                let (mut a, mut b, mut ga) = (px, x, pg);
                for _ in 0..60 {
                    let m = 0.5 * (a + b);
                    let gm = lhs_minus_rhs(eq, m);
                    if gm * ga > 0.0 {
                        a = m;
                        ga = gm;
                    } else {
                        b = m;
                    }
                }
                out.push(0.5 * (a + b));
            }
        }
        prev = Some((x, g));
    }
    out
}

fn solutions(eq: &RawEquation, limits: Limits) -> Vec<f64> {
    let nf = normalize(eq).unwrap();
    solve(&nf, limits).unwrap().solutions.iter().map(|s| s.x).collect()
}

fn assert_paired(got: &[f64], oracle: &[f64], what: &str) {
    assert_eq!(got.len(), oracle.len(), "{}: {:?} vs {:?}", what, got, oracle);
    for (a, b) in got.iter().zip(oracle) {
        assert!((a - b).abs() <= 1e-6, "{}: {} vs {}", what, a, b);
    }
}

#[test]
fn worked_examples() {
    let xs = solutions(&parse_equation("sin(x) = x/2").unwrap(), Limits::default());
    assert_eq!(xs.len(), 2);
    assert!((xs[1] - 1.895494267033980947).abs() < 1e-14 && xs[0] == -xs[1]);

    let eq = parse_equation("(1/x + 3/x^2 + 3/x^3) exp(-x) = 3/(3 log(2) - pi)").unwrap();
    let set = solve(&normalize(&eq).unwrap(), Limits::default()).unwrap();
    let found: Vec<(i64, f64)> = set.solutions.iter().map(|s| (s.branch, s.x)).collect();
    assert_eq!(found.len(), 2);
    assert_eq!((found[0].0, found[1].0), (-1, 0));
    assert!((found[0].1 + 3.235928302520054).abs() < 1e-13);
    assert!((found[1].1 + 0.9873351381816300).abs() < 1e-13);
    for (_, x) in found {
        assert!(eq.residual(x) <= 1e-10);
    }
}

#[test]
fn zero_root_reporting() {
    let n = normalize(&parse_equation("sin(x) = x/2").unwrap()).unwrap();
    assert_eq!(n.zero_root, ZeroRoot::Annihilated);
    let n = normalize(&parse_equation("tan(x) = x").unwrap()).unwrap();
    // tan x - x vanishes at 0 but the cleared form divides by cos; the j_1 form is continuous there
    assert_eq!(n.zero_root, ZeroRoot::Annihilated);
    let n = normalize(&parse_equation("sin(x)/x^2 - cos(x)/x = 0").unwrap()).unwrap();
    assert_eq!(n.zero_root, ZeroRoot::Introduced);
    let n = normalize(&parse_equation("cos(x) = x").unwrap()).unwrap();
    assert_eq!(n.zero_root, ZeroRoot::None);
}

#[test]
fn tangent_line_solution_counts() {
    // cos x = c0 x within |x| <= 10, against the scan of cos x - c0 x
    let cases = [
        (2.0, "2"),
        (0.336508, "0.336508"),
        (0.3, "0.3"),
        (-0.336508, "-0.336508"),
        (-0.4, "-0.4"),
    ];
    let mut counts = Vec::new();
    for (c0, text) in cases {
        let eq = parse_equation(&format!("cos(x) = {} x", text)).unwrap();
        let got = solutions(&eq, Limits::MaxAbsX(10.0));
        let oracle = scan_roots(&eq, 10.0, 1e-3);
        assert_paired(&got, &oracle, text);
        for x in &got {
            assert!((x.cos() - c0 * x).abs() < 1e-12);
        }
        counts.push(got.len());
    }
    // the quoted 0.336508 lies just inside the tangent ordinate 0.3365084...
    assert_eq!(counts, [1, 3, 3, 3, 1]);
}

#[test]
fn brute_force_completeness() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for trial in 0..25 {
        let family = if rng.gen_bool(0.5) { Family::Y } else { Family::J };
        let n = rng.gen_range(0..=3);
        let mut c0 = 0;
        while c0 == 0 {
            c0 = rng.gen_range(-12..=12);
        }
        let c0 = ConstExpr::rational(q(c0, rng.gen_range(1..=40)));
        let lambda = q(
            rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 },
            rng.gen_range(1..=5),
        );
        let shift = rng.gen_range(0..=n as i64 + 1);
        let eq = equation_from_row(&coefficients(family, n), &lambda, shift, &c0);
        let got = solutions(&eq, Limits::MaxAbsX(40.0));
        let oracle = scan_roots(&eq, 40.0, 1e-3);
        assert_paired(&got, &oracle, &format!("trial {} {}", trial, eq));
        for x in got {
            assert!(eq.residual(x) <= 1e-10, "{}: residual {} at {}", eq, eq.residual(x), x);
        }
    }
}

fn row_equation() -> impl Strategy<Value = RawEquation> {
    (
        prop::sample::select(Family::ALL.to_vec()),
        0u32..=4,
        (-20i64..=20).prop_filter("nonzero", |p| *p != 0),
        1i64..=9,
        (-9i64..=9).prop_filter("nonzero", |p| *p != 0),
        1i64..=9,
        0i64..=3,
    )
        .prop_map(|(family, n, lp, lq, cp, cq, shift)| {
            equation_from_row(
                &coefficients(family, n),
                &q(lp, lq),
                shift,
                &ConstExpr::rational(q(cp, cq)),
            )
        })
}

proptest! {
    #[test]
    fn normal_form_ignores_an_overall_factor(eq in row_equation(), kp in (-30i64..=30).prop_filter("nonzero", |k| *k != 0), kq in 1i64..=7) {
        let k = q(kp, kq);
        let mut scaled = eq.clone();
        for t in &mut scaled.terms {
            t.coef = t.coef.scale(&k);
        }
        scaled.rhs = scaled.rhs.scale(&k);
        let a = normalize(&eq).unwrap();
        let b = normalize(&scaled).unwrap();
        prop_assert_eq!((a.family, a.order, &a.c0, a.shift, a.zero_root), (b.family, b.order, &b.c0, b.shift, b.zero_root));
        prop_assert_eq!(a.lambda, b.lambda * k);
    }

    #[test]
    fn every_solution_satisfies_the_original(eq in row_equation()) {
        let nf = normalize(&eq).unwrap();
        let set = solve(&nf, Limits::MaxAbsBranch(6)).unwrap();
        for s in &set.solutions {
            prop_assert!(eq.residual(s.x) <= 1e-10, "{}: {} residual {}", eq, s.x, eq.residual(s.x));
        }
    }
}

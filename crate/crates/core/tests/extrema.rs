#![allow(clippy::excessive_precision)]

use sphinv_core::{branch_interval, infsupum, Endpoint, Error, Extrema, Family, Ordinate, SphericalBessel};

fn finite(o: Ordinate) -> f64 {
    o.finite().expect("stationary record")
}

fn six_digits(got: f64, quoted: f64) {
    assert!((got - quoted).abs() <= 5e-6, "{} vs quoted {}", got, quoted);
}

#[test]
fn y0_table() {
    let rows = [
        (-2, -6.12125, 0.161228),
        (-1, -2.79839, -0.336508),
        (1, 2.79839, 0.336508),
        (2, 6.12125, -0.161228),
    ];
    for (m, x, v) in rows {
        let r = infsupum(Family::Y, 0, m).unwrap();
        six_digits(r.abscissa, x);
        six_digits(finite(r.ordinate), v);
    }
    let pole = infsupum(Family::Y, 0, 0).unwrap();
    assert_eq!(
        pole.ordinate,
        Ordinate::Pole {
            from_below: f64::INFINITY,
            from_above: f64::NEG_INFINITY
        }
    );
}

#[test]
fn j0_table() {
    let rows = [
        (-2, -7.72525, 0.128375),
        (-1, -4.49341, -0.217234),
        (0, 0.0, 1.0),
        (1, 4.49341, -0.217234),
        (2, 7.72525, 0.128375),
    ];
    for (m, x, v) in rows {
        let r = infsupum(Family::J, 0, m).unwrap();
        six_digits(r.abscissa, x);
        six_digits(finite(r.ordinate), v);
    }
}

#[test]
fn high_precision_abscissas() {
    // 40-digit roots of the derivative
    let y = infsupum(Family::Y, 0, 1).unwrap().abscissa;
    assert!((y - 2.798386045783887).abs() < 4e-15);
    let j = infsupum(Family::J, 0, 2).unwrap().abscissa;
    assert!((j - 7.725251836937707).abs() < 8e-15);
    let k = infsupum(Family::K, 2, -1).unwrap();
    assert!((k.abscissa + 1.7832434280487487).abs() < 4e-15);
    assert!((finite(k.ordinate) + 0.8709989939232175).abs() < 4e-15);
}

#[test]
fn missing_records_and_branches() {
    assert!(matches!(infsupum(Family::K, 1, -1), Err(Error::NoSuchExtremum { .. })));
    assert!(matches!(infsupum(Family::I, 1, 0), Err(Error::NoSuchExtremum { .. })));
    assert!(matches!(
        branch_interval(Family::I, 1, 0),
        Err(Error::NoSuchBranch { .. })
    ));
    assert!(matches!(
        branch_interval(Family::K, 3, -1),
        Err(Error::NoSuchBranch { .. })
    ));
    assert!(branch_interval(Family::K, 4, -1).is_ok());
    assert!(branch_interval(Family::I, 2, 0).is_ok());
}

#[test]
fn branch_shapes() {
    let b = branch_interval(Family::Y, 0, 1).unwrap();
    assert_eq!(b.left, 0.0);
    assert_eq!(b.left_kind, Endpoint::Pole);
    six_digits(b.right, 2.79839);
    assert!(b.increasing);
    assert_eq!(b.range.lo, f64::NEG_INFINITY);
    six_digits(b.range.hi, 0.336508);

    let b = branch_interval(Family::K, 0, 1).unwrap();
    assert_eq!((b.left, b.right), (0.0, f64::INFINITY));
    assert!(!b.increasing);
    assert_eq!((b.range.lo, b.range.hi), (0.0, f64::INFINITY));
    assert!(!b.range.lo_closed && !b.range.hi_closed);

    let b = branch_interval(Family::I, 1, 1).unwrap();
    assert_eq!((b.left, b.right), (f64::NEG_INFINITY, f64::INFINITY));

    let b = branch_interval(Family::I, 0, 1).unwrap();
    assert_eq!(b.left, 0.0);
    assert!(b.left_closed && b.range.lo_closed);
    assert_eq!(b.range.lo, 1.0);

    let b = branch_interval(Family::K, 2, 0).unwrap();
    assert!((b.left + 1.78324).abs() < 5e-6);
    assert!(b.left_closed);
}

/// Bisection on the sign of `f'` down to adjacent floats.
fn bisect_stationary(f: &SphericalBessel, mut a: f64, mut b: f64) -> f64 {
    let sa = f.slope(a).signum();
    loop {
        let m = 0.5 * (a + b);
        if m <= a.min(b) || m >= a.max(b) {
            return m;
        }
        if f.slope(m).signum() == sa {
            a = m;
        } else {
            b = m;
        }
    }
}

#[test]
fn refinement_agrees_with_plain_bisection() {
    for family in [Family::Y, Family::J] {
        for n in 0..=5 {
            let f = SphericalBessel::new(family, n);
            let ext = Extrema::with_positive_count(family, n, 12);
            for m in 1..=12 {
                let x = ext.record(m).unwrap().abscissa;
                let oracle = bisect_stationary(&f, x - 0.1, x + 0.1);
                assert!(
                    (x - oracle).abs() <= 1e-12 * x.abs(),
                    "{:?}_{} m={} {} {}",
                    family,
                    n,
                    m,
                    x,
                    oracle
                );
            }
        }
    }
}

#[test]
fn derivative_changes_sign_across_each_record() {
    for family in Family::ALL {
        for n in 0..=6 {
            let f = SphericalBessel::new(family, n);
            let ext = Extrema::with_positive_count(family, n, 8);
            for m in -8..=8 {
                let Ok(r) = ext.record(m) else { continue };
                let Ordinate::Finite(_) = r.ordinate else { continue };
                let x = r.abscissa;
                let (l, h) = (f.slope(x - 1e-4), f.slope(x + 1e-4));
                assert!(l * h < 0.0, "{:?}_{} m={} at {}: {} {}", family, n, m, x, l, h);
                let scale = f.slope(x - 1e-2).abs().max(f.slope(x + 1e-2).abs());
                assert!(f.slope(x).abs() <= 1e-13 * scale.max(1.0), "{:?}_{} m={}", family, n, m);
            }
        }
    }
}

#[test]
fn spacing_tends_to_pi() {
    for family in [Family::Y, Family::J] {
        for n in 0..=4 {
            let ext = Extrema::with_positive_count(family, n, 22);
            for m in 10..20 {
                for sign in [1, -1] {
                    let a = ext.record(sign * m).unwrap().abscissa;
                    let b = ext.record(sign * (m + 1)).unwrap().abscissa;
                    assert!(((b - a).abs() - core::f64::consts::PI).abs() < 0.05);
                }
            }
        }
    }
}

#[test]
fn abscissas_increase_with_index() {
    for family in [Family::Y, Family::J] {
        for n in 0..=6 {
            let ext = Extrema::with_positive_count(family, n, 10);
            let xs: Vec<f64> = (-9..=9).map(|m| ext.record(m).unwrap().abscissa).collect();
            assert!(xs.windows(2).all(|w| w[0] < w[1]), "{:?}_{}", family, n);
        }
    }
}

/// Branch intervals tile the line: each right end is the next left end.
#[test]
fn branches_tile_the_line() {
    for family in Family::ALL {
        for n in 0..=5 {
            let ext = Extrema::with_positive_count(family, n, 10);
            let bs: Vec<i64> = (-8..=8).filter(|&b| ext.has_branch(b)).collect();
            for w in bs.windows(2) {
                let (a, b) = (ext.branch(w[0]).unwrap(), ext.branch(w[1]).unwrap());
                assert_eq!(a.right, b.left);
                assert!(!(a.right_closed && b.left_closed));
            }
            if matches!(family, Family::I | Family::K) {
                assert_eq!(ext.branch(bs[0]).unwrap().left, f64::NEG_INFINITY);
                assert_eq!(ext.branch(*bs.last().unwrap()).unwrap().right, f64::INFINITY);
            }
            let f = SphericalBessel::new(family, n);
            for &b in &bs {
                let br = ext.branch(b).unwrap();
                let (lo, hi) = match (br.left.is_finite(), br.right.is_finite()) {
                    (true, true) => (br.left, br.right),
                    (true, false) => (br.left, br.left + 30.0),
                    (false, true) => (br.right - 30.0, br.right),
                    (false, false) => (-30.0, 30.0),
                };
                let signs: Vec<f64> = (1..200)
                    .map(|k| lo + (hi - lo) * f64::from(k) / 200.0)
                    .filter(|x| *x != 0.0)
                    .map(|x| f.slope(x).signum())
                    .collect();
                let want = if br.increasing { 1.0 } else { -1.0 };
                assert!(signs.iter().all(|s| *s == want), "{:?}_{} b={}", family, n, b);
            }
        }
    }
}

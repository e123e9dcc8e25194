//! Lambert W on its two real branches, and the same values through `k_0`.
//!
//! `k_0(t) = e^{-t}/t = c` is `t e^t = 1/c`, so `W_b(d) = inverse_b'(k_0)(1/d)`
//! with `b' = 1` for `d > 0`, `b' = 0` for `-1/e <= d < 0` on `W_0`, and
//! `b' = -1` on `W_{-1}`.

use core::f64::consts::E;
use core::fmt;
use core::str::FromStr;

use crate::error::Error;
use crate::extrema::Extrema;
use crate::inverse::{inverse_on, TOLERANCE_FLOOR};
use crate::laurent::Family;
use crate::math;

/// `-1/e`, the common left end of both real branches.
pub const BRANCH_POINT: f64 = -1.0 / E;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WBranch {
    /// `W_0`, defined on `[-1/e, inf)`.
    Principal,
    /// `W_{-1}`, defined on `[-1/e, 0)`.
    MinusOne,
}

impl WBranch {
    pub fn index(self) -> i32 {
        match self {
            WBranch::Principal => 0,
            WBranch::MinusOne => -1,
        }
    }
}

impl fmt::Display for WBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

impl FromStr for WBranch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "0" => Ok(WBranch::Principal),
            "-1" => Ok(WBranch::MinusOne),
            _ => Err(Error::InvalidArgument(alloc::format!(
                "Lambert W branch must be 0 or -1, got {:?}",
                s
            ))),
        }
    }
}

fn check_domain(branch: WBranch, d0: f64) -> Result<(), Error> {
    if !d0.is_finite() {
        return Err(Error::Domain("Lambert W argument must be finite".into()));
    }
    if d0 < BRANCH_POINT && !near_branch_point(d0) {
        return Err(Error::Domain(alloc::format!("W({}) with argument below -1/e", d0)));
    }
    if branch == WBranch::MinusOne && d0 >= 0.0 {
        return Err(Error::Domain(alloc::format!("W_-1({}) needs a negative argument", d0)));
    }
    Ok(())
}

/// Within rounding of `-1/e`, where both branches equal `-1`.
fn near_branch_point(d0: f64) -> bool {
    (d0 - BRANCH_POINT).abs() <= 2.0 * f64::EPSILON * -BRANCH_POINT
}

/// `W_b(d0)`: the `x` on branch `b` with `x e^x = d0`.
pub fn lambert_w(branch: WBranch, d0: f64) -> Result<f64, Error> {
    check_domain(branch, d0)?;
    if d0 == 0.0 {
        return Ok(0.0);
    }
    if near_branch_point(d0) {
        return Ok(-1.0);
    }
    if branch == WBranch::Principal && d0 > 3.0 {
        return Ok(log_newton(d0, asymptotic_seed(d0)));
    }
    let seed = seed(branch, d0);
    Ok(halley(d0, seed))
}

fn seed(branch: WBranch, d0: f64) -> f64 {
    // series in p = sqrt(2(e d0 + 1)) about the branch point
    let p = math::sqrt((2.0 * (E * d0 + 1.0)).max(0.0));
    match branch {
        WBranch::Principal if d0 < -0.25 => -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p,
        WBranch::Principal => libm::log1p(d0),
        WBranch::MinusOne if d0 < -0.25 => -1.0 - p - p * p / 3.0 - 11.0 / 72.0 * p * p * p,
        WBranch::MinusOne => {
            let l1 = math::log(-d0);
            let l2 = math::log(-l1);
            l1 - l2 + l2 / l1
        }
    }
}

fn asymptotic_seed(d0: f64) -> f64 {
    let l1 = math::log(d0);
    let l2 = math::log(l1);
    l1 - l2 + l2 / l1
}

/// Halley's iteration on `w e^w - d0`.
fn halley(d0: f64, mut w: f64) -> f64 {
    for _ in 0..64 {
        let ew = math::exp(w);
        let f = w * ew - d0;
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        if denom == 0.0 || !denom.is_finite() {
            break;
        }
        let step = f / denom;
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    w
}

/// Newton on `w + ln w - ln d0`, free of overflow for large `d0`.
fn log_newton(d0: f64, mut w: f64) -> f64 {
    let ld = math::log(d0);
    for _ in 0..64 {
        let g = w + math::log(w) - ld;
        let step = g / (1.0 + 1.0 / w);
        w -= step;
        if step.abs() <= 2.0 * f64::EPSILON * w {
            break;
        }
    }
    w
}

/// `W_b(d0)` computed as `inverse_b'(k_0)(1/d0)`.
pub fn w_via_k0(branch: WBranch, d0: f64) -> Result<f64, Error> {
    check_domain(branch, d0)?;
    if d0 == 0.0 {
        return Ok(0.0);
    }
    if near_branch_point(d0) {
        return Ok(-1.0);
    }
    let k_branch = match branch {
        WBranch::Principal if d0 > 0.0 => 1,
        WBranch::Principal => 0,
        WBranch::MinusOne => -1,
    };
    let ext = Extrema::new(Family::K, 0);
    inverse_on(&ext, k_branch, 1.0 / d0, TOLERANCE_FLOOR)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    const OMEGA: f64 = 0.567_143_290_409_783_9;

    #[test]
    fn known_values() {
        assert_eq!(lambert_w(WBranch::Principal, 0.0).unwrap(), 0.0);
        assert!((lambert_w(WBranch::Principal, E).unwrap() - 1.0).abs() < 2e-16);
        assert!((lambert_w(WBranch::Principal, 1.0).unwrap() - OMEGA).abs() < 2e-16);
        assert_eq!(lambert_w(WBranch::MinusOne, BRANCH_POINT).unwrap(), -1.0);
        assert_eq!(lambert_w(WBranch::Principal, BRANCH_POINT).unwrap(), -1.0);
    }

    #[test]
    fn domains() {
        assert!(matches!(lambert_w(WBranch::Principal, -0.5), Err(Error::Domain(_))));
        assert!(matches!(lambert_w(WBranch::MinusOne, 0.0), Err(Error::Domain(_))));
        assert!(matches!(w_via_k0(WBranch::MinusOne, 1.0), Err(Error::Domain(_))));
        assert!(lambert_w(WBranch::Principal, f64::INFINITY).is_err());
    }

    #[test]
    fn large_arguments() {
        let w = lambert_w(WBranch::Principal, 1e300).unwrap();
        let back = w + math::log(w);
        assert!((back - math::log(1e300)).abs() < 1e-13 * back);
        let w = lambert_w(WBranch::MinusOne, -1e-300).unwrap();
        assert!(((-w).ln() + w - (1e-300f64).ln()).abs() < 1e-12 * 700.0);
    }

    #[test]
    fn bridge_examples() {
        for (b, d) in [
            (WBranch::Principal, 2.0),
            (WBranch::Principal, -0.2),
            (WBranch::MinusOne, -0.2),
        ] {
            let a = lambert_w(b, d).unwrap();
            let v = w_via_k0(b, d).unwrap();
            assert!((a - v).abs() <= 1e-12 * a.abs().max(1.0), "{:?} {} {} {}", b, d, a, v);
        }
    }
}

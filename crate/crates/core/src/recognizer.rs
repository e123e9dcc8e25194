//! Recognize a decimal constant as `inverse_b(f_n)(c0)`.
//!
//! Forward strategy: evaluate `t = f_n(x)` at the input, snap `t` to a small
//! rational (optionally times `pi`, `1/pi` or `log 2`), then invert again on
//! the branch holding the input and score the agreement.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::constexpr::{integer_entropy, ConstExpr, NamedConst};
use crate::error::Error;
use crate::extrema::Extrema;
use crate::inverse::{inverse_on, TOLERANCE_FLOOR};
use crate::laurent::Family;
use crate::math;

/// Relative error treated as exact agreement: a few units in the last place
/// of binary64, which cannot hold more than about 16 digits.
pub const AGREEMENT_FLOOR: f64 = 4.0 / 9_007_199_254_740_992.0;

/// Least relative snap tolerance, whatever the supplied precision.
const SNAP_FLOOR: f64 = 64.0 * f64::EPSILON;

/// `inverse_b(f_n)` costs one function node, one family symbol and one application.
const WRAPPER_NODES: f64 = 3.0;

/// A decimal constant with its count of significant digits.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatInput {
    pub text: String,
    pub value: f64,
    pub precision: u32,
}

impl FloatInput {
    pub fn parse(text: &str) -> Result<Self, Error> {
        let t = text.trim();
        let mantissa = t.split(['e', 'E']).next().unwrap_or("");
        let digits: String = mantissa
            .trim_start_matches(['+', '-'])
            .chars()
            .filter(|c| *c != '.')
            .collect();
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) || mantissa.matches('.').count() > 1 {
            return Err(Error::InvalidArgument(alloc::format!(
                "not a decimal number: {:?}",
                text
            )));
        }
        let value: f64 = t
            .parse()
            .map_err(|_| Error::InvalidArgument(alloc::format!("not a decimal number: {:?}", text)))?;
        if !value.is_finite() || value == 0.0 {
            return Err(Error::Domain("input must be finite and nonzero".into()));
        }
        let significant = digits.trim_start_matches('0');
        let precision = significant.len() as u32;
        if precision < 6 {
            return Err(Error::InvalidArgument(alloc::format!(
                "{} significant digits given; at least 6 are needed",
                precision
            )));
        }
        Ok(FloatInput {
            text: String::from(t),
            value,
            precision,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub max_order: u32,
    /// Only branches with `|b|` up to this are reported.
    pub max_branch: u64,
    /// Bound on `|p|` and `q` of a snapped `p/q`.
    pub max_den: u64,
    /// Also try `p/q * pi`, `p/q / pi` and `p/q * log(2)`.
    pub multipliers: bool,
    pub min_margin: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_order: 3,
            max_branch: 16,
            max_den: 100,
            multipliers: true,
            min_margin: 0.0,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.max_den < 1 {
            return Err(Error::InvalidArgument("rational bound must be at least 1".into()));
        }
        if self.max_order > 64 {
            return Err(Error::InvalidArgument("maximum order is 64".into()));
        }
        if !self.min_margin.is_finite() && self.min_margin != f64::NEG_INFINITY {
            return Err(Error::InvalidArgument("minimum margin must not be NaN or +inf".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub family: Family,
    pub order: u32,
    pub branch: i64,
    pub c0: ConstExpr,
    pub value: f64,
    pub agreement: f64,
    pub entropy10: f64,
    pub margin: f64,
}

impl Candidate {
    pub fn tag(&self) -> String {
        alloc::format!("{}", self)
    }

    fn key_cmp(&self, other: &Self) -> Ordering {
        other
            .margin
            .total_cmp(&self.margin)
            .then(self.family.symbol().cmp(&other.family.symbol()))
            .then(self.order.cmp(&other.order))
            .then(self.branch.cmp(&other.branch))
            .then_with(|| self.tag().cmp(&other.tag()))
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "inverse_{}({}_{})({})",
            self.branch,
            self.family.symbol(),
            self.order,
            self.c0
        )
    }
}

/// Complexity of `inverse_b(f_n)(c0)`.
pub fn entropy10(family: Family, order: u32, branch: i64, c0: &ConstExpr) -> f64 {
    let _ = family;
    let atom = |i: i64| if i == 0 { 0.0 } else { integer_entropy(i) };
    WRAPPER_NODES + atom(i64::from(order)) + atom(branch) + c0.entropy10()
}

/// Matching significant digits, in `[0, P]`.
pub fn agreement(candidate: f64, input: &FloatInput) -> f64 {
    if !candidate.is_finite() || candidate.signum() != input.value.signum() {
        return 0.0;
    }
    let rel = (candidate - input.value).abs() / input.value.abs();
    let p = f64::from(input.precision);
    if rel <= AGREEMENT_FLOOR {
        return p;
    }
    (-math::log10(rel)).clamp(0.0, p)
}

/// Convergents `p/q` of `t` with `|p|, q <= bound` within `tol` of `t`.
fn snaps(t: f64, bound: u64, tol: f64) -> Vec<BigRational> {
    let mut out = Vec::new();
    if !t.is_finite() {
        return out;
    }
    let bound = bound as f64;
    let (mut p0, mut q0, mut p1, mut q1) = (0.0f64, 1.0f64, 1.0f64, 0.0f64);
    let mut r = t;
    for _ in 0..64 {
        let a = math::floor(r);
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > bound || p2.abs() > bound {
            break;
        }
        if (t - p2 / q2).abs() <= tol {
            out.push(BigRational::new(BigInt::from(p2 as i64), BigInt::from(q2 as i64)));
            break;
        }
        let frac = r - a;
        if frac == 0.0 {
            break;
        }
        r = 1.0 / frac;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    out
}

#[derive(Clone, Copy)]
enum Multiplier {
    One,
    Pi,
    InvPi,
    Log2,
}

impl Multiplier {
    fn value(self) -> f64 {
        match self {
            Multiplier::One => 1.0,
            Multiplier::Pi => core::f64::consts::PI,
            Multiplier::InvPi => core::f64::consts::FRAC_1_PI,
            Multiplier::Log2 => core::f64::consts::LN_2,
        }
    }

    fn attach(self, r: BigRational) -> ConstExpr {
        let r = ConstExpr::rational(r);
        let pi = || ConstExpr::constant(NamedConst::Pi);
        let built = match self {
            Multiplier::One => Ok(r),
            Multiplier::Pi => r.mul(pi()),
            Multiplier::InvPi => r.div(pi()),
            Multiplier::Log2 => ConstExpr::integer(2).log().and_then(|l| r.mul(l)),
        };
        built.expect("rational times a positive constant")
    }
}

/// Candidates from one row `f_n`, unranked.
pub fn search_row(input: &FloatInput, cfg: &SearchConfig, family: Family, order: u32) -> Vec<Candidate> {
    let ext = Extrema::new(family, order);
    search_row_in(&ext, input, cfg)
}

/// As [`search_row`] on precomputed extrema.
pub fn search_row_in(ext: &Extrema, input: &FloatInput, cfg: &SearchConfig) -> Vec<Candidate> {
    let (family, order) = (ext.family(), ext.order());
    let x = input.value;
    let f = ext.function();
    let t = f.raw(x, 0);
    if !t.is_finite() {
        return Vec::new();
    }
    let branch = match ext.branch_of(x) {
        Some(b) if b.unsigned_abs() <= cfg.max_branch => b,
        _ => return Vec::new(),
    };
    let scale = t.abs().max((x * f.raw(x, 1)).abs());
    let rel = math::powi(10.0, -(input.precision as i32 - 2)).max(SNAP_FLOOR);
    let tol = rel * scale;

    let multipliers: &[Multiplier] = if cfg.multipliers {
        &[Multiplier::One, Multiplier::Pi, Multiplier::InvPi, Multiplier::Log2]
    } else {
        &[Multiplier::One]
    };
    let mut out = Vec::new();
    for &m in multipliers {
        let mv = m.value();
        for r in snaps(t / mv, cfg.max_den, tol / mv) {
            if r.is_zero() && !matches!(m, Multiplier::One) {
                continue;
            }
            let c0 = m.attach(r);
            let Ok(value) = inverse_on(ext, branch, c0.value(), TOLERANCE_FLOOR) else {
                continue;
            };
            let agreement = agreement(value, input);
            let entropy = entropy10(family, order, branch, &c0);
            let margin = agreement - entropy;
            if margin < cfg.min_margin {
                continue;
            }
            out.push(Candidate {
                family,
                order,
                branch,
                c0,
                value,
                agreement,
                entropy10: entropy,
                margin,
            });
        }
    }
    out
}

/// Sort by margin, best first, with a total tie-break.
pub fn rank(mut candidates: Vec<Candidate>) -> Vec<Candidate> {
    candidates.sort_by(Candidate::key_cmp);
    candidates.dedup_by(|a, b| a.tag() == b.tag());
    candidates
}

/// Every candidate with `n <= cfg.max_order`, ranked.
pub fn recognize(input: &FloatInput, cfg: &SearchConfig) -> Result<Vec<Candidate>, Error> {
    cfg.validate()?;
    let mut all = Vec::new();
    for family in Family::ALL {
        for order in 0..=cfg.max_order {
            all.extend(search_row(input, cfg, family, order));
        }
    }
    Ok(rank(all))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_counting() {
        assert_eq!(FloatInput::parse("0.739085133215160642").unwrap().precision, 18);
        assert_eq!(FloatInput::parse("-1.89549426703398094").unwrap().precision, 18);
        assert_eq!(FloatInput::parse("1.23450e3").unwrap().precision, 6);
        assert!(FloatInput::parse("0.00123").is_err());
        assert!(FloatInput::parse("0.000000").is_err());
        assert!(FloatInput::parse("1.2.3456").is_err());
    }

    #[test]
    fn agreement_examples() {
        let input = FloatInput::parse("0.739085133215160642").unwrap();
        assert_eq!(agreement(input.value, &input), 18.0);
        assert!((agreement(input.value * (1.0 + 1e-6), &input) - 6.0).abs() < 1e-6);
        assert_eq!(agreement(-input.value, &input), 0.0);
    }

    #[test]
    fn wrapper_entropy() {
        let e = entropy10(Family::Y, 0, 1, &ConstExpr::integer(-1));
        assert!((e - 4.0).abs() < 1e-12);
    }

    #[test]
    fn continued_fraction_snaps() {
        let s = snaps(0.5 + 1e-17, 100, 1e-14);
        assert_eq!(s, [BigRational::new(1.into(), 2.into())]);
        assert!(snaps(core::f64::consts::PI, 100, 1e-14).is_empty());
        assert_eq!(snaps(-3.0, 10, 1e-14), [BigRational::from_integer((-3).into())]);
    }

    #[test]
    fn dottie() {
        let input = FloatInput::parse("0.739085133215160642").unwrap();
        let ranked = recognize(&input, &SearchConfig::default()).unwrap();
        let top = &ranked[0];
        assert_eq!(top.tag(), "inverse_1(y_0)(-1)");
        assert!(top.agreement >= 17.5);
        assert!((3.0..=5.0).contains(&top.entropy10));
        assert_eq!(top.margin, top.agreement - top.entropy10);
    }

    #[test]
    fn omega() {
        let input = FloatInput::parse("0.567143290409783873").unwrap();
        let ranked = recognize(&input, &SearchConfig::default()).unwrap();
        assert_eq!(ranked[0].tag(), "inverse_1(k_0)(1)");
    }
}

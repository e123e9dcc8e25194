//! Floating-point evaluation of `f_n`, `f_n'` and `f_n''` from the exact rows.
//!
//! The exact row is differentiated symbolically (still integer coefficients)
//! and each form is evaluated by Horner's rule in `u = 1/x`. Near the origin
//! the `j_n` and `i_n` Laurent forms cancel catastrophically, so there the
//! Maclaurin series is summed instead.

use alloc::vec::Vec;

use crate::error::Error;
use crate::laurent::{coefficients, DenseForm, Family, LaurentForm};
use crate::math;

/// Side from which a pole at `x = 0` is approached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// From negative abscissas toward zero.
    FromBelow,
    /// From positive abscissas toward zero.
    FromAbove,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalOptions {
    /// `|x|` below which `j_n` and `i_n` use the Maclaurin series.
    pub near_zero_threshold: f64,
    /// Number of series terms used below the threshold.
    pub series_terms: usize,
    /// When set, evaluating at a pole returns the signed one-sided limit
    /// instead of [`Error::Pole`].
    pub pole_direction: Option<Direction>,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            near_zero_threshold: 0.5,
            series_terms: 30,
            pole_direction: None,
        }
    }
}

impl EvalOptions {
    pub fn new(near_zero_threshold: f64, series_terms: usize) -> Result<Self, Error> {
        if !(near_zero_threshold > 0.0) || !near_zero_threshold.is_finite() {
            return Err(Error::InvalidArgument("near_zero_threshold must be positive".into()));
        }
        if series_terms < 8 {
            return Err(Error::InvalidArgument("series_terms must be at least 8".into()));
        }
        Ok(EvalOptions {
            near_zero_threshold,
            series_terms,
            pole_direction: None,
        })
    }

    pub fn with_pole_direction(mut self, direction: Direction) -> Self {
        self.pole_direction = Some(direction);
        self
    }
}

/// Above this many terms the adaptive series gives up; only reached for
/// orders far beyond what the Laurent coefficients can represent in binary64.
const MAX_SERIES_TERMS: usize = 400;

/// Above this `x`, `sinh x` and `cosh x` agree to the last bit and are about to overflow.
const HYPERBOLIC_OVERFLOW: f64 = 700.0;

#[derive(Clone, Debug)]
struct Form64 {
    p: Vec<f64>,
    q: Vec<f64>,
}

impl Form64 {
    fn new(form: &DenseForm) -> Self {
        let (p, q) = form.to_f64();
        Form64 { p, q }
    }
}

fn horner(coeffs: &[f64], u: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * u + c)
}

fn horner_abs(coeffs: &[f64], u: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * u + c.abs())
}

/// Precompiled `f_n` together with its first two derivatives.
#[derive(Clone, Debug)]
pub struct SphericalBessel {
    family: Family,
    order: u32,
    forms: [Form64; 3],
    /// Maclaurin coefficients `a_k` of `x^(n+2k)` (`j_n`, `i_n` only).
    series: Vec<f64>,
    leading_sign: f64,
}

impl SphericalBessel {
    pub fn new(family: Family, order: u32) -> Self {
        Self::from_form(&coefficients(family, order))
    }

    pub fn from_form(form: &LaurentForm) -> Self {
        let family = form.family;
        let order = form.order;
        let f0 = form.dense();
        let f1 = f0.derivative(family);
        let f2 = f1.derivative(family);
        let series = match family {
            Family::J | Family::I => maclaurin(family, order, MAX_SERIES_TERMS),
            Family::Y | Family::K => Vec::new(),
        };
        let leading_sign = if form.leading() < &num_bigint::BigInt::from(0) {
            -1.0
        } else {
            1.0
        };
        SphericalBessel {
            family,
            order,
            forms: [Form64::new(&f0), Form64::new(&f1), Form64::new(&f2)],
            series,
            leading_sign,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn eval(&self, x: f64, opts: &EvalOptions) -> Result<f64, Error> {
        self.eval_nth(x, 0, opts)
    }

    pub fn derivative(&self, x: f64, opts: &EvalOptions) -> Result<f64, Error> {
        self.eval_nth(x, 1, opts)
    }

    pub fn second_derivative(&self, x: f64, opts: &EvalOptions) -> Result<f64, Error> {
        self.eval_nth(x, 2, opts)
    }

    fn eval_nth(&self, x: f64, d: usize, opts: &EvalOptions) -> Result<f64, Error> {
        if x == 0.0 && self.family.has_pole() {
            return match opts.pole_direction {
                Some(dir) => Ok(self.pole_limit(d, dir)),
                None => Err(Error::Pole {
                    family: self.family,
                    order: self.order,
                }),
            };
        }
        Ok(self.nth(x, d, opts))
    }

    /// `f_n(x)` with default options; `NaN` at a pole.
    pub fn value(&self, x: f64) -> f64 {
        self.raw(x, 0)
    }

    /// `f_n'(x)` with default options; `NaN` at a pole.
    pub fn slope(&self, x: f64) -> f64 {
        self.raw(x, 1)
    }

    pub(crate) fn raw(&self, x: f64, d: usize) -> f64 {
        if x == 0.0 && self.family.has_pole() {
            return f64::NAN;
        }
        self.nth(x, d, &EvalOptions::default())
    }

    /// One-sided limit of the `d`-th derivative at the pole.
    pub fn pole_limit(&self, d: usize, direction: Direction) -> f64 {
        // f ~ a x^-(n+1): each derivative contributes a factor of sign -1
        let mut sign = self.leading_sign * if d % 2 == 1 { -1.0 } else { 1.0 };
        if direction == Direction::FromBelow && (self.order as usize + 1 + d) % 2 == 1 {
            sign = -sign;
        }
        sign * f64::INFINITY
    }

    /// Sum of absolute values of the terms in the `d`-th derivative; the
    /// scale against which cancellation in `f^(d)(x)` is judged.
    pub fn magnitude(&self, x: f64, d: usize) -> f64 {
        let ax = x.abs();
        if self.uses_series(ax, &EvalOptions::default()) {
            return self.series_sum(ax, d, None, true);
        }
        let form = &self.forms[d];
        let u = 1.0 / x;
        let (a, b) = self.factors(x);
        horner_abs(&form.p, u.abs()) * a.abs() + horner_abs(&form.q, u.abs()) * b.abs()
    }

    fn factors(&self, x: f64) -> (f64, f64) {
        let primary = self.family.primary().apply(x);
        let co = self.family.cofactor().map_or(0.0, |c| c.apply(x));
        (primary, co)
    }

    fn uses_series(&self, ax: f64, opts: &EvalOptions) -> bool {
        match self.family {
            Family::J | Family::I => ax < opts.near_zero_threshold || ax < series_band(self.order),
            Family::Y | Family::K => false,
        }
    }

    fn nth(&self, x: f64, d: usize, opts: &EvalOptions) -> f64 {
        if let Some(parity) = self.family.parity(self.order) {
            if x < 0.0 {
                let s = if d % 2 == 1 { -parity } else { parity };
                return s * self.nth(-x, d, opts);
            }
        }
        if self.uses_series(x.abs(), opts) {
            let terms = (x.abs() < opts.near_zero_threshold).then_some(opts.series_terms);
            return self.series_sum(x, d, terms, false);
        }
        let form = &self.forms[d];
        let u = 1.0 / x;
        if self.family == Family::I && x > HYPERBOLIC_OVERFLOW {
            // sinh and cosh both overflow; combine the polynomials first so
            // that opposite-signed infinities cannot meet
            let h = horner(&form.p, u) + horner(&form.q, u);
            return h * math::exp(x) * 0.5;
        }
        let (a, b) = self.factors(x);
        let pq = horner(&form.p, u) * a;
        if form.q.is_empty() {
            pq
        } else {
            pq + horner(&form.q, u) * b
        }
    }

    /// `d`-th derivative of `sum_k a_k x^(n+2k)` at `x >= 0`.
    ///
    /// With `terms = None` the sum runs until the terms stop contributing.
    fn series_sum(&self, x: f64, d: usize, terms: Option<usize>, absolute: bool) -> f64 {
        let n = self.order as usize;
        let limit = terms.unwrap_or(MAX_SERIES_TERMS).min(self.series.len());
        let mut sum = 0.0;
        for (k, &a) in self.series.iter().enumerate().take(limit) {
            let power = n + 2 * k;
            if power < d {
                continue;
            }
            let falling = (0..d).fold(1.0, |acc, i| acc * (power - i) as f64);
            let term = a * falling * math::powi(x, (power - d) as i32);
            sum += if absolute { term.abs() } else { term };
            if terms.is_none() && k > 2 && term.abs() <= f64::EPSILON * 1e-3 * sum.abs() {
                break;
            }
        }
        sum
    }
}

/// `|x|` below which the series is preferred regardless of the threshold.
///
/// For `|x| < n` the Laurent form of `j_n`/`i_n` subtracts terms of size
/// `(2n-1)!!/|x|^(n+1)` to produce a value of size `|x|^n/(2n+1)!!`, while the
/// series converges with little cancellation.
fn series_band(order: u32) -> f64 {
    f64::from(order)
}

/// `a_k = s^k / (2^k k! (2n+2k+1)!!)` with `s = -1` for `j_n`, `+1` for `i_n`.
fn maclaurin(family: Family, order: u32, count: usize) -> Vec<f64> {
    let sign = if family == Family::J { -1.0 } else { 1.0 };
    let n = f64::from(order);
    let mut a0 = 1.0;
    for m in 0..=order {
        a0 /= 2.0 * f64::from(m) + 1.0;
    }
    let mut out = Vec::with_capacity(count);
    let mut a = a0;
    for k in 0..count {
        if k > 0 {
            let kf = k as f64;
            a *= sign / (2.0 * kf * (2.0 * n + 2.0 * kf + 1.0));
        }
        out.push(a);
    }
    out
}

/// `f_n(x)`.
pub fn eval(family: Family, order: u32, x: f64, opts: &EvalOptions) -> Result<f64, Error> {
    SphericalBessel::new(family, order).eval(x, opts)
}

/// `f_n'(x)` from the symbolically differentiated Laurent form.
pub fn eval_derivative(family: Family, order: u32, x: f64, opts: &EvalOptions) -> Result<f64, Error> {
    SphericalBessel::new(family, order).derivative(x, opts)
}

//! Exact integer Laurent rows of the spherical Bessel families.
//!
//! Every `f_n` of the four families is a strict integer Laurent polynomial in
//! `x` times a trigonometric, hyperbolic or exponential factor, plus (except
//! for `k_n`) a second such product on the co-factor:
//!
//! ```text
//! y_n(x) = p(x) cos x  + q(x) sin x
//! j_n(x) = p(x) sin x  + q(x) cos x
//! i_n(x) = p(x) sinh x + q(x) cosh x
//! k_n(x) = p(x) e^{-x}
//! ```
//!
//! `p` has `n + 1` coefficients (powers `x^-1 ..= x^-(n+1)`) and `q` has `n`.
//! Two independent generators are provided: the three-term recurrences
//! ([`coefficients`]) and the Rayleigh operator formulas
//! ([`rayleigh_coefficients`]). They must agree integer for integer.
//!
//! `k_n` uses the table normalization `k_0(x) = e^{-x}/x`. The DLMF function
//! of the same name is [`DLMF_K_FACTOR`] times this one.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::math;

/// DLMF's modified spherical Bessel function of the second kind is this
/// constant times [`Family::K`].
pub const DLMF_K_FACTOR: f64 = core::f64::consts::FRAC_PI_2;

/// One of the four spherical Bessel families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Spherical Bessel function of the second kind, `y_n`.
    Y,
    /// Spherical Bessel function of the first kind, `j_n`.
    J,
    /// Modified spherical Bessel function of the first kind, `i_n`.
    I,
    /// Modified spherical Bessel function of the second kind, `k_n`.
    K,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Y, Family::J, Family::I, Family::K];

    /// Lower-case letter used in closed-form tags (`y_0`, `k_2`, ...).
    pub fn symbol(self) -> char {
        match self {
            Family::Y => 'y',
            Family::J => 'j',
            Family::I => 'i',
            Family::K => 'k',
        }
    }

    /// Factor multiplying `p(x)`, the polynomial with the deepest pole.
    pub fn primary(self) -> Factor {
        match self {
            Family::Y => Factor::Cos,
            Family::J => Factor::Sin,
            Family::I => Factor::Sinh,
            Family::K => Factor::ExpNeg,
        }
    }

    /// Factor multiplying `q(x)`; `k_n` has none.
    pub fn cofactor(self) -> Option<Factor> {
        match self {
            Family::Y => Some(Factor::Sin),
            Family::J => Some(Factor::Cos),
            Family::I => Some(Factor::Cosh),
            Family::K => None,
        }
    }

    /// `Some(s)` when `f_n(-x) = s f_n(x)`.
    pub fn parity(self, order: u32) -> Option<f64> {
        match self {
            Family::Y => Some(-math::neg_one_pow(order)),
            Family::J | Family::I => Some(math::neg_one_pow(order)),
            Family::K => None,
        }
    }

    /// Whether `f_n` has a pole at the origin.
    pub fn has_pole(self) -> bool {
        matches!(self, Family::Y | Family::K)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Y => "Y",
            Family::J => "J",
            Family::I => "I",
            Family::K => "K",
        };
        f.write_str(s)
    }
}

/// Error returned when a family name does not parse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownFamily;

impl fmt::Display for UnknownFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown family (expected one of Y, J, I, K)")
    }
}

impl core::error::Error for UnknownFamily {}

impl FromStr for Family {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Y" | "y" => Ok(Family::Y),
            "J" | "j" => Ok(Family::J),
            "I" | "i" => Ok(Family::I),
            "K" | "k" => Ok(Family::K),
            _ => Err(UnknownFamily),
        }
    }
}

/// Elementary factor that a Laurent term can carry. `One` marks a bare power of `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    Cos,
    Sin,
    Cosh,
    Sinh,
    /// `e^{-x}`.
    ExpNeg,
    One,
}

impl Factor {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Factor::Cos => math::cos(x),
            Factor::Sin => math::sin(x),
            Factor::Cosh => math::cosh(x),
            Factor::Sinh => math::sinh(x),
            Factor::ExpNeg => math::exp(-x),
            Factor::One => 1.0,
        }
    }

    /// Value at `x = 0`.
    pub fn at_zero(self) -> i32 {
        match self {
            Factor::Sin | Factor::Sinh => 0,
            Factor::Cos | Factor::Cosh | Factor::ExpNeg | Factor::One => 1,
        }
    }

    /// Name as written in equations, e.g. `cos`.
    pub fn name(self) -> &'static str {
        match self {
            Factor::Cos => "cos",
            Factor::Sin => "sin",
            Factor::Cosh => "cosh",
            Factor::Sinh => "sinh",
            Factor::ExpNeg => "exp",
            Factor::One => "",
        }
    }
}

/// Exact coefficient row of `f_n` for one family and order.
///
/// `pcoeffs[l - 1]` is the coefficient of `x^-l` on [`Family::primary`],
/// `qcoeffs[l - 1]` the coefficient of `x^-l` on [`Family::cofactor`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentForm {
    pub family: Family,
    pub order: u32,
    pub pcoeffs: Vec<BigInt>,
    pub qcoeffs: Vec<BigInt>,
}

impl LaurentForm {
    /// Coefficient of `x^-(n+1)` on the primary factor.
    pub fn leading(&self) -> &BigInt {
        &self.pcoeffs[self.order as usize]
    }

    fn from_dense(family: Family, order: u32, form: DenseForm) -> Self {
        let n = order as usize;
        let take = |v: &[BigInt], len: usize| -> Vec<BigInt> {
            (1..=len)
                .map(|l| v.get(l).cloned().unwrap_or_else(BigInt::zero))
                .collect()
        };
        debug_assert!(form.p.first().is_none_or(Zero::is_zero));
        debug_assert!(form.p.len() <= n + 2 && form.q.len() <= n + 1);
        let qlen = if family == Family::K { 0 } else { n };
        LaurentForm {
            family,
            order,
            pcoeffs: take(&form.p, n + 1),
            qcoeffs: take(&form.q, qlen),
        }
    }

    pub(crate) fn dense(&self) -> DenseForm {
        let mut p = vec![BigInt::zero()];
        p.extend(self.pcoeffs.iter().cloned());
        let mut q = vec![BigInt::zero()];
        q.extend(self.qcoeffs.iter().cloned());
        DenseForm { p, q }.trimmed()
    }
}

impl fmt::Display for LaurentForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = |f: &mut fmt::Formatter<'_>, coeffs: &[BigInt]| -> fmt::Result {
            let mut first = true;
            for (i, c) in coeffs.iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                let l = i + 1;
                let sign = if c.is_negative() { "-" } else { "+" };
                if first {
                    if c.is_negative() {
                        f.write_str("-")?;
                    }
                } else {
                    write!(f, " {} ", sign)?;
                }
                first = false;
                if l == 1 {
                    write!(f, "{}/x", c.abs())?;
                } else {
                    write!(f, "{}/x^{}", c.abs(), l)?;
                }
            }
            Ok(())
        };
        f.write_str("(")?;
        poly(f, &self.pcoeffs)?;
        write!(f, ") {}", factor_text(self.family.primary()))?;
        if let Some(co) = self.family.cofactor() {
            if self.qcoeffs.iter().any(|c| !c.is_zero()) {
                f.write_str(" + (")?;
                poly(f, &self.qcoeffs)?;
                write!(f, ") {}", factor_text(co))?;
            }
        }
        Ok(())
    }
}

fn factor_text(factor: Factor) -> &'static str {
    match factor {
        Factor::Cos => "cos(x)",
        Factor::Sin => "sin(x)",
        Factor::Cosh => "cosh(x)",
        Factor::Sinh => "sinh(x)",
        Factor::ExpNeg => "exp(-x)",
        Factor::One => "1",
    }
}

/// `p(x) A(x) + q(x) B(x)` with `p[l]`, `q[l]` the coefficients of `x^-l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct DenseForm {
    pub(crate) p: Vec<BigInt>,
    pub(crate) q: Vec<BigInt>,
}

impl DenseForm {
    fn seed() -> Self {
        DenseForm {
            p: vec![BigInt::zero(), BigInt::from(1)],
            q: Vec::new(),
        }
    }

    fn trimmed(mut self) -> Self {
        while self.p.last().is_some_and(Zero::is_zero) {
            self.p.pop();
        }
        while self.q.last().is_some_and(Zero::is_zero) {
            self.q.pop();
        }
        self
    }

    /// Multiply by `x^-k` (shifts index by `k`).
    fn shifted(mut self, k: i64) -> Self {
        fn shift(v: Vec<BigInt>, k: i64) -> Vec<BigInt> {
            if k >= 0 {
                let mut out = vec![BigInt::zero(); k as usize];
                out.extend(v);
                out
            } else {
                let drop = (-k) as usize;
                assert!(
                    v.iter().take(drop).all(Zero::is_zero),
                    "shift would create non-negative powers"
                );
                v.into_iter().skip(drop).collect()
            }
        }
        self.p = shift(self.p, k);
        self.q = shift(self.q, k);
        self
    }

    fn scaled(mut self, s: &BigInt) -> Self {
        for c in self.p.iter_mut().chain(self.q.iter_mut()) {
            *c *= s;
        }
        self
    }

    fn minus(self, other: &DenseForm) -> Self {
        let sub = |mut a: Vec<BigInt>, b: &[BigInt]| {
            if a.len() < b.len() {
                a.resize(b.len(), BigInt::zero());
            }
            for (x, y) in a.iter_mut().zip(b) {
                *x -= y;
            }
            a
        };
        DenseForm {
            p: sub(self.p, &other.p),
            q: sub(self.q, &other.q),
        }
        .trimmed()
    }

    fn plus(self, other: &DenseForm) -> Self {
        let neg = DenseForm {
            p: other.p.iter().map(|c| -c).collect(),
            q: other.q.iter().map(|c| -c).collect(),
        };
        self.minus(&neg)
    }

    /// Exact `d/dx` for the family's factor pair.
    pub(crate) fn derivative(&self, family: Family) -> Self {
        // d/dx c x^-l = -l c x^-(l+1)
        let poly_d = |v: &[BigInt]| -> Vec<BigInt> {
            let mut out = vec![BigInt::zero(); v.len() + 1];
            for (l, c) in v.iter().enumerate() {
                out[l + 1] = -(c * BigInt::from(l));
            }
            out
        };
        let add = |mut a: Vec<BigInt>, b: &[BigInt], sign: i32| {
            if a.len() < b.len() {
                a.resize(b.len(), BigInt::zero());
            }
            for (x, y) in a.iter_mut().zip(b) {
                if sign > 0 {
                    *x += y;
                } else {
                    *x -= y;
                }
            }
            a
        };
        let dp = poly_d(&self.p);
        let dq = poly_d(&self.q);
        // (P A + Q B)' = (P' + s_a Q) A + (Q' + s_b P) B with A' = s_b B, B' = s_a A
        let (p, q) = match family {
            Family::Y => (add(dp, &self.q, 1), add(dq, &self.p, -1)),
            Family::J => (add(dp, &self.q, -1), add(dq, &self.p, 1)),
            Family::I => (add(dp, &self.q, 1), add(dq, &self.p, 1)),
            Family::K => (add(dp, &self.p, -1), Vec::new()),
        };
        DenseForm { p, q }.trimmed()
    }

    pub(crate) fn to_f64(&self) -> (Vec<f64>, Vec<f64>) {
        let conv = |v: &[BigInt]| v.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
        (conv(&self.p), conv(&self.q))
    }
}

fn base_row(family: Family, order: u32) -> DenseForm {
    let v = |xs: &[i64]| xs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
    let (p, q) = match (family, order) {
        (Family::Y, 0) => (v(&[0, -1]), v(&[])),
        (Family::Y, _) => (v(&[0, 0, -1]), v(&[0, -1])),
        (Family::J, 0) => (v(&[0, 1]), v(&[])),
        (Family::J, _) => (v(&[0, 0, 1]), v(&[0, -1])),
        (Family::I, 0) => (v(&[0, 1]), v(&[])),
        (Family::I, _) => (v(&[0, 0, -1]), v(&[0, 1])),
        (Family::K, 0) => (v(&[0, 1]), v(&[])),
        (Family::K, _) => (v(&[0, 1, 1]), v(&[])),
    };
    DenseForm { p, q }
}

/// Exact Laurent row of `f_n` by upward three-term recurrence on the
/// coefficient vectors.
///
/// ```text
/// y_{n+1} = (2n+1)/x y_n - y_{n-1}        (same for j)
/// i_{n+1} = i_{n-1} - (2n+1)/x i_n
/// k_{n+1} = k_{n-1} + (2n+1)/x k_n
/// ```
pub fn coefficients(family: Family, order: u32) -> LaurentForm {
    if order <= 1 {
        return LaurentForm::from_dense(family, order, base_row(family, order));
    }
    let mut prev = base_row(family, 0);
    let mut cur = base_row(family, 1);
    for m in 1..order {
        let factor = BigInt::from(2 * u64::from(m) + 1);
        let lifted = cur.clone().scaled(&factor).shifted(1);
        let next = match family {
            Family::Y | Family::J => lifted.minus(&prev),
            Family::I => prev.minus(&lifted),
            Family::K => lifted.plus(&prev),
        };
        prev = cur;
        cur = next;
    }
    LaurentForm::from_dense(family, order, cur)
}

/// Exact Laurent row of `f_n` from the Rayleigh formulas
///
/// ```text
/// y_n = -(-x)^n (1/x d/dx)^n cos x / x
/// j_n =  (-x)^n (1/x d/dx)^n sin x / x
/// i_n =    x^n  (1/x d/dx)^n sinh x / x
/// k_n =  (-x)^n (1/x d/dx)^n e^{-x} / x
/// ```
///
/// Independent of [`coefficients`]; the two routes are checked against each other.
pub fn rayleigh_coefficients(family: Family, order: u32) -> LaurentForm {
    let mut form = DenseForm::seed();
    for _ in 0..order {
        form = form.derivative(family).shifted(1);
    }
    let sign: i64 = match family {
        Family::Y => -(math::neg_one_pow(order) as i64),
        Family::J | Family::K => math::neg_one_pow(order) as i64,
        Family::I => 1,
    };
    let form = form.shifted(-i64::from(order)).scaled(&BigInt::from(sign));
    LaurentForm::from_dense(family, order, form)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn table_rows() {
        let y0 = coefficients(Family::Y, 0);
        assert_eq!(ints(&y0.pcoeffs), [-1]);
        assert!(y0.qcoeffs.is_empty());

        let y3 = coefficients(Family::Y, 3);
        assert_eq!(ints(&y3.pcoeffs), [0, 6, 0, -15]);
        assert_eq!(ints(&y3.qcoeffs), [1, 0, -15]);

        let k4 = coefficients(Family::K, 4);
        assert_eq!(ints(&k4.pcoeffs), [1, 10, 45, 105, 105]);
        assert!(k4.qcoeffs.is_empty());

        let j2 = coefficients(Family::J, 2);
        assert_eq!(ints(&j2.pcoeffs), [-1, 0, 3]);
        assert_eq!(ints(&j2.qcoeffs), [0, -3]);

        let i2 = coefficients(Family::I, 2);
        assert_eq!(ints(&i2.pcoeffs), [1, 0, 3]);
        assert_eq!(ints(&i2.qcoeffs), [0, -3]);

        let k2 = coefficients(Family::K, 2);
        assert_eq!(ints(&k2.pcoeffs), [1, 3, 3]);
    }

    #[test]
    fn rayleigh_rows() {
        assert_eq!(rayleigh_coefficients(Family::Y, 0), coefficients(Family::Y, 0));
        let y2 = rayleigh_coefficients(Family::Y, 2);
        assert_eq!(ints(&y2.pcoeffs), [1, 0, -3]);
        assert_eq!(ints(&y2.qcoeffs), [0, -3]);
        let i1 = rayleigh_coefficients(Family::I, 1);
        assert_eq!(ints(&i1.pcoeffs), [0, -1]);
        assert_eq!(ints(&i1.qcoeffs), [1]);
    }

    #[test]
    fn row_shapes() {
        for family in Family::ALL {
            for n in 0..15 {
                let row = coefficients(family, n);
                assert_eq!(row.pcoeffs.len(), n as usize + 1);
                let qlen = if family == Family::K { 0 } else { n as usize };
                assert_eq!(row.qcoeffs.len(), qlen);
                assert!(!row.leading().is_zero());
                if family == Family::K {
                    assert!(row.pcoeffs.iter().all(|c| c.is_positive()));
                }
            }
        }
    }

    #[test]
    fn leading_coefficient_is_double_factorial() {
        // |c_{n+1}| = (2n-1)!!
        let mut dfact = BigInt::from(1);
        for n in 1..25u32 {
            dfact *= BigInt::from(2 * n - 1);
            for family in Family::ALL {
                assert_eq!(coefficients(family, n).leading().abs(), dfact);
            }
        }
    }

    #[test]
    fn display_row() {
        let s = alloc::format!("{}", coefficients(Family::Y, 3));
        assert_eq!(s, "(-15/x^4 + 6/x^2) cos(x) + (-15/x^3 + 1/x) sin(x)");
        let s = alloc::format!("{}", coefficients(Family::K, 1));
        assert_eq!(s, "(1/x^2 + 1/x) exp(-x)");
    }
}

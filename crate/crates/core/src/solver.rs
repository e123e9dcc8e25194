//! Reduce `sum c_k x^k F_k(x) = c` to a tabulated row `f_n(x) = c0` and
//! return every real solution as `inverse_b(f_n)(c0)`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::constexpr::{combine, ConstExpr};
use crate::error::Error;
use crate::extrema::Extrema;
use crate::inverse::{branches_containing_in, inverse_on, Limits, DEFAULT_TOLERANCE};
use crate::laurent::{coefficients, Factor, Family, LaurentForm};
use crate::math;

/// `coef * s^power * factor(s)` with `s = scale * x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coef: ConstExpr,
    pub power: i64,
    pub factor: Factor,
}

impl Term {
    pub fn new(coef: ConstExpr, power: i64, factor: Factor) -> Self {
        Term { coef, power, factor }
    }

    fn eval(&self, s: f64) -> f64 {
        self.coef.value() * math::powi(s, self.power as i32) * self.factor.apply(s)
    }
}

/// `sum(terms) = rhs`, as produced by the parser.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RawEquation {
    /// Terms in `s = scale * x`.
    pub terms: Vec<Term>,
    pub rhs: ConstExpr,
    /// Common argument multiplier of every factor; `1` for `cos(x)`, `pi/180` for `cos(pi x/180)`.
    pub scale: ConstExpr,
    /// Factor the equation was multiplied by to clear `tan` or `cot`.
    pub cleared: Option<Factor>,
}

impl RawEquation {
    pub fn new(terms: Vec<Term>, rhs: ConstExpr) -> Self {
        RawEquation {
            terms,
            rhs,
            scale: ConstExpr::integer(1),
            cleared: None,
        }
    }

    /// `|lhs(x) - rhs| / (sum |term| + |rhs|)`.
    pub fn residual(&self, x: f64) -> f64 {
        let s = self.scale.value() * x;
        let mut sum = 0.0;
        let mut size = self.rhs.value().abs();
        for t in &self.terms {
            let v = t.eval(s);
            sum += v;
            size += v.abs();
        }
        let r = (sum - self.rhs.value()).abs();
        if size == 0.0 {
            r
        } else {
            r / size
        }
    }

    /// Whether `x = 0` is in the domain and satisfies the equation.
    pub fn admits_zero(&self) -> bool {
        if self.cleared == Some(Factor::Sin) || self.terms.iter().any(|t| t.power < 0) {
            return false;
        }
        let mut at_zero = ConstExpr::integer(0);
        for t in self.terms.iter().filter(|t| t.power == 0) {
            let v = t.coef.scale(&BigRational::from_integer(t.factor.at_zero().into()));
            at_zero = match combine(at_zero, v) {
                Ok(c) => c,
                Err(_) => return false,
            };
        }
        constants_equal(&at_zero, &self.rhs)
    }

    fn has_unit_scale(&self) -> bool {
        self.scale.as_rational().is_some_and(One::is_one)
    }
}

fn constants_equal(a: &ConstExpr, b: &ConstExpr) -> bool {
    match (a.as_rational(), b.as_rational()) {
        (Some(x), Some(y)) => x == y,
        _ => (a.value() - b.value()).abs() <= 1e-14 * a.value().abs().max(b.value().abs()).max(1.0),
    }
}

fn write_coef(f: &mut fmt::Formatter<'_>, c: &ConstExpr, bare: bool) -> fmt::Result {
    let one = c.as_rational().is_some_and(One::is_one);
    let minus_one = c.as_rational().is_some_and(|r| (-r).is_one());
    if one {
        return if bare { f.write_str("1") } else { Ok(()) };
    }
    if minus_one {
        return f.write_str(if bare { "-1" } else { "-" });
    }
    if c.is_sum() {
        write!(f, "({})", c)?;
    } else {
        write!(f, "{}", c)?;
    }
    if !bare {
        f.write_str("*")?;
    }
    Ok(())
}

impl fmt::Display for RawEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = if self.has_unit_scale() {
            String::from("x")
        } else {
            alloc::format!("({}*x)", self.scale)
        };
        let arg = if self.has_unit_scale() {
            String::from("x")
        } else {
            alloc::format!("{}*x", self.scale)
        };
        for (i, t) in self.terms.iter().enumerate() {
            let coef = if i > 0 && t.coef.leads_negative() {
                f.write_str(" - ")?;
                t.coef.clone().neg()
            } else {
                if i > 0 {
                    f.write_str(" + ")?;
                }
                t.coef.clone()
            };
            let factor = match t.factor {
                Factor::One => None,
                Factor::ExpNeg => Some(alloc::format!("exp(-{})", arg)),
                other => Some(alloc::format!("{}({})", other.name(), arg)),
            };
            let bare = factor.is_none() && t.power <= 0;
            write_coef(f, &coef, bare)?;
            if t.power > 0 {
                f.write_str(&var)?;
                if t.power > 1 {
                    write!(f, "^{}", t.power)?;
                }
                if factor.is_some() {
                    f.write_str("*")?;
                }
            }
            if let Some(name) = factor {
                f.write_str(&name)?;
            }
            if t.power < 0 {
                write!(f, "/{}", var)?;
                if t.power < -1 {
                    write!(f, "^{}", -t.power)?;
                }
            }
        }
        write!(f, " = {}", self.rhs)
    }
}

/// What became of `x = 0` when the equation was normalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZeroRoot {
    None,
    /// `x = 0` solves the original equation but was divided out.
    Annihilated,
    /// `x = 0` solves the normal form (by continuity of `j_n`, `i_n`) but
    /// not the original equation.
    Introduced,
}

impl ZeroRoot {
    pub fn name(self) -> &'static str {
        match self {
            ZeroRoot::None => "none",
            ZeroRoot::Annihilated => "annihilated",
            ZeroRoot::Introduced => "introduced",
        }
    }
}

/// `f_n(s) = c0` together with the bookkeeping that relates it to the raw equation.
#[derive(Clone, Debug, PartialEq)]
pub struct EquationNormalForm {
    pub family: Family,
    pub order: u32,
    /// Multiplier taking the shifted left side to the tabulated row.
    pub lambda: BigRational,
    pub c0: ConstExpr,
    /// Both sides were multiplied by `s^-shift`.
    pub shift: i64,
    pub zero_root: ZeroRoot,
    pub scale: ConstExpr,
    pub cleared: Option<Factor>,
}

impl EquationNormalForm {
    /// `inverse_b(f_n)(c0)` in the closed-form tag syntax.
    pub fn tag(&self, branch: i64) -> String {
        let inner = alloc::format!(
            "inverse_{}({}_{})({})",
            branch,
            self.family.symbol(),
            self.order,
            self.c0
        );
        if self.scale.as_rational().is_some_and(One::is_one) {
            inner
        } else {
            match ConstExpr::integer(1).div(self.scale.clone()) {
                Ok(inv) if inv.is_sum() => alloc::format!("({})*{}", inv, inner),
                Ok(inv) => alloc::format!("{}*{}", inv, inner),
                Err(_) => inner,
            }
        }
    }
}

fn family_of(factor: Factor) -> Option<Family> {
    match factor {
        Factor::Cos => Some(Family::Y),
        Factor::Sin => Some(Family::J),
        Factor::Sinh => Some(Family::I),
        Factor::ExpNeg => Some(Family::K),
        Factor::Cosh | Factor::One => None,
    }
}

fn not_transformable(reason: impl Into<String>, hint: Option<String>) -> Error {
    Error::NotTransformable {
        reason: reason.into(),
        hint,
    }
}

fn row_hint(family: Family, order: u32) -> Option<String> {
    Some(alloc::format!(
        "{}_{}(x) = {}",
        family.symbol(),
        order,
        coefficients(family, order)
    ))
}

/// Bring `eq` to `f_n(s) = c0`.
pub fn normalize(eq: &RawEquation) -> Result<EquationNormalForm, Error> {
    if eq.terms.is_empty() {
        return Err(not_transformable("empty equation", None));
    }
    let (factor_terms, plain): (Vec<&Term>, Vec<&Term>) = eq.terms.iter().partition(|t| t.factor != Factor::One);
    if factor_terms.is_empty() {
        return Err(not_transformable("no cos, sin, cosh, sinh or exp(-x) factor", None));
    }
    let circular = factor_terms
        .iter()
        .any(|t| matches!(t.factor, Factor::Cos | Factor::Sin));
    let hyperbolic = factor_terms
        .iter()
        .any(|t| matches!(t.factor, Factor::Cosh | Factor::Sinh));
    let exponential = factor_terms.iter().any(|t| t.factor == Factor::ExpNeg);
    if u8::from(circular) + u8::from(hyperbolic) + u8::from(exponential) > 1 {
        return Err(Error::MixedFactors);
    }

    let max_power = factor_terms.iter().map(|t| t.power).max().expect("nonempty");
    let shift = match plain.first() {
        None => max_power + 1,
        Some(first) => {
            if plain.iter().any(|t| t.power != first.power) {
                return Err(not_transformable(
                    "terms without a factor must share one power of x",
                    None,
                ));
            }
            first.power
        }
    };
    if max_power - shift != -1 {
        return Err(not_transformable(
            alloc::format!(
                "after dividing by x^{} the factor terms are not a strict Laurent row",
                shift
            ),
            None,
        ));
    }

    // l = shift - power >= 1
    let depth = factor_terms.iter().map(|t| shift - t.power).max().expect("nonempty");
    let order = u32::try_from(depth - 1).map_err(|_| not_transformable("bad depth", None))?;
    let deepest: Vec<Factor> = factor_terms
        .iter()
        .filter(|t| shift - t.power == depth)
        .map(|t| t.factor)
        .collect();
    let family = match deepest.as_slice() {
        [f] => family_of(*f).ok_or_else(|| {
            not_transformable(
                alloc::format!("{}(x) cannot carry the deepest pole of any row", f.name()),
                None,
            )
        })?,
        _ => return Err(not_transformable("two factors carry the deepest power of 1/x", None)),
    };
    let row = coefficients(family, order);

    let n = order as usize;
    let mut p = vec![BigRational::zero(); n + 1];
    let mut q = vec![BigRational::zero(); n];
    for t in &factor_terms {
        let c = t.coef.as_rational().ok_or_else(|| {
            not_transformable(
                alloc::format!("coefficient {} of a factor term is not rational", t.coef),
                None,
            )
        })?;
        let l = (shift - t.power) as usize;
        let slot = if t.factor == family.primary() {
            &mut p[l - 1]
        } else if Some(t.factor) == family.cofactor() && l <= n {
            &mut q[l - 1]
        } else {
            return Err(not_transformable(
                alloc::format!(
                    "{}(x)/x^{} does not occur in row {}_{}",
                    t.factor.name(),
                    l,
                    family.symbol(),
                    order
                ),
                row_hint(family, order),
            ));
        };
        *slot += c;
    }
    if p[n].is_zero() {
        return Err(not_transformable("leading coefficient cancels", None));
    }
    let to_q = |v: &BigInt| BigRational::from_integer(v.clone());
    let lambda = to_q(row.leading()) / &p[n];
    let matches = |left: &[BigRational], right: &[BigInt]| left.iter().zip(right).all(|(a, b)| a * &lambda == to_q(b));
    if !matches(&p, &row.pcoeffs) || !matches(&q, &row.qcoeffs) {
        return Err(not_transformable(
            alloc::format!("left side is not a rational multiple of {}_{}", family.symbol(), order),
            row_hint(family, order),
        ));
    }

    // c0 = lambda * (rhs - sum of plain coefficients), rational parts folded last
    let mut c0 = eq.rhs.scale(&lambda);
    let mut rational_part = BigRational::zero();
    for t in &plain {
        match t.coef.as_rational() {
            Some(r) => rational_part -= r * &lambda,
            None => c0 = combine(c0, t.coef.scale(&-&lambda))?,
        }
    }
    let c0 = combine(c0, ConstExpr::rational(rational_part))?;

    let original = eq.admits_zero();
    let normal = normal_form_admits_zero(family, order, &c0);
    let zero_root = match (original, normal) {
        (true, _) => ZeroRoot::Annihilated,
        (false, true) => ZeroRoot::Introduced,
        (false, false) => ZeroRoot::None,
    };

    Ok(EquationNormalForm {
        family,
        order,
        lambda,
        c0,
        shift,
        zero_root,
        scale: eq.scale.clone(),
        cleared: eq.cleared,
    })
}

/// `j_n(0) = i_n(0) = [n = 0]` by continuity.
fn normal_form_admits_zero(family: Family, order: u32, c0: &ConstExpr) -> bool {
    if !matches!(family, Family::J | Family::I) {
        return false;
    }
    let at_zero = ConstExpr::integer(i64::from(order == 0));
    constants_equal(c0, &at_zero)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub branch: i64,
    /// Closed form, e.g. `inverse_1(y_0)(-1)`.
    pub tag: String,
    pub x: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSet {
    pub family: Family,
    pub order: u32,
    pub c0: ConstExpr,
    /// Ordered by abscissa.
    pub solutions: Vec<Solution>,
    /// More solutions exist beyond the limits.
    pub truncated: bool,
    /// `x = 0` is never listed; its status is reported here.
    pub zero_root: ZeroRoot,
}

/// Every real solution of the normal form within `limits`.
///
/// `Limits::MaxAbsX` bounds `|x|` of the returned solutions; `MaxAbsBranch`
/// bounds the branch index.
pub fn solve(nf: &EquationNormalForm, limits: Limits) -> Result<SolutionSet, Error> {
    let mut ext = Extrema::new(nf.family, nf.order);
    solve_with(&mut ext, nf, limits)
}

/// As [`solve`], reusing (and growing) `ext`.
pub fn solve_with(ext: &mut Extrema, nf: &EquationNormalForm, limits: Limits) -> Result<SolutionSet, Error> {
    let a = nf.scale.value();
    if !(a.is_finite() && a != 0.0) {
        return Err(Error::InvalidArgument(
            "argument scale must be finite and nonzero".into(),
        ));
    }
    let s_limits = match limits {
        Limits::MaxAbsX(x) => Limits::MaxAbsX(x * a.abs()),
        other => other,
    };
    let c = nf.c0.value();
    let search = branches_containing_in(ext, c, s_limits);
    let mut solutions = Vec::new();
    for &b in &search.branches {
        let s = inverse_on(ext, b, c, DEFAULT_TOLERANCE)?;
        if s == 0.0 {
            continue;
        }
        if let Some(f) = nf.cleared {
            // roots of the multiplier that cleared tan/cot are not roots of the original
            if f.apply(s).abs() <= 1e-12 {
                continue;
            }
        }
        let x = s / a;
        if let Limits::MaxAbsX(max) = limits {
            if x.abs() > max {
                continue;
            }
        }
        solutions.push(Solution {
            branch: b,
            tag: nf.tag(b),
            x,
        });
    }
    solutions.sort_by(|u, v| u.x.total_cmp(&v.x));
    Ok(SolutionSet {
        family: nf.family,
        order: nf.order,
        c0: nf.c0.clone(),
        solutions,
        truncated: search.truncated,
        zero_root: nf.zero_root,
    })
}

/// The row `lambda * f_n` as a raw equation with right side `lambda * c0`,
/// multiplied through by `x^shift`.
pub fn equation_from_row(row: &LaurentForm, lambda: &BigRational, shift: i64, c0: &ConstExpr) -> RawEquation {
    let mut terms = Vec::new();
    let mut push = |coeffs: &[BigInt], factor: Factor| {
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let l = i as i64 + 1;
            let coef = BigRational::from_integer(c.clone()) * lambda;
            terms.push(Term::new(ConstExpr::rational(coef), shift - l, factor));
        }
    };
    push(&row.pcoeffs, row.family.primary());
    if let Some(co) = row.family.cofactor() {
        push(&row.qcoeffs, co);
    }
    let mut rhs = c0.scale(lambda);
    if shift != 0 {
        // move lambda c0 x^shift to the left
        terms.push(Term::new(rhs.neg(), shift, Factor::One));
        rhs = ConstExpr::integer(0);
    }
    terms.sort_by_key(|t| (t.factor, t.power));
    RawEquation::new(terms, rhs)
}

/// Sign of the leading coefficient of a row, for tests and diagnostics.
pub fn leading_sign(row: &LaurentForm) -> i32 {
    if row.leading().is_negative() {
        -1
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_equation;
    use alloc::string::ToString;

    fn nf(text: &str) -> EquationNormalForm {
        normalize(&parse_equation(text).unwrap()).unwrap()
    }

    #[test]
    fn worked_normal_forms() {
        let n = nf("cos(x) = x");
        assert_eq!((n.family, n.order), (Family::Y, 0));
        assert_eq!(n.lambda, -BigRational::one());
        assert_eq!(n.c0, ConstExpr::integer(-1));
        assert_eq!(n.zero_root, ZeroRoot::None);

        let n = nf("sin(x) = x/2");
        assert_eq!((n.family, n.order), (Family::J, 0));
        assert_eq!(n.c0, ConstExpr::ratio(1, 2));
        assert_eq!(n.zero_root, ZeroRoot::Annihilated);

        let n = nf("sin(x)/x^2 - cos(x)/x = 0");
        assert_eq!((n.family, n.order, n.c0.clone()), (Family::J, 1, ConstExpr::integer(0)));
        assert_eq!(n.zero_root, ZeroRoot::Introduced);

        let n = nf("(1/x + 3/x^2 + 3/x^3) exp(-x) = 3/(3 log(2) - pi)");
        assert_eq!((n.family, n.order), (Family::K, 2));
        assert!(n.lambda.is_one());
        assert_eq!(n.c0.to_string(), "3/(3*log(2) - pi)");
    }

    #[test]
    fn rejections() {
        let e = normalize(&parse_equation("cos(x) + sinh(x) = 1").unwrap()).unwrap_err();
        assert_eq!(e, Error::MixedFactors);
        let e = normalize(&parse_equation("cos(x) + 2 sin(x)/x = 0").unwrap()).unwrap_err();
        assert!(matches!(e, Error::NotTransformable { hint: Some(_), .. }), "{:?}", e);
        let e = normalize(&parse_equation("cos(x) = x^3").unwrap()).unwrap_err();
        assert!(matches!(e, Error::NotTransformable { .. }));
        let e = normalize(&parse_equation("cos(x) = x + x^2").unwrap()).unwrap_err();
        assert!(matches!(e, Error::NotTransformable { .. }));
    }

    #[test]
    fn worked_solves() {
        let s = solve(&nf("cos(x) = x"), Limits::default()).unwrap();
        assert_eq!(s.solutions.len(), 1);
        assert_eq!(s.solutions[0].tag, "inverse_1(y_0)(-1)");
        assert!((s.solutions[0].x - 0.739_085_133_215_160_6).abs() < 1e-15);

        let s = solve(&nf("sin(x) = x/2"), Limits::default()).unwrap();
        let xs: Vec<f64> = s.solutions.iter().map(|s| s.x).collect();
        assert_eq!(xs.len(), 2);
        assert_eq!(xs[0], -xs[1]);
        assert!((xs[1] - 1.895_494_267_033_981).abs() < 1e-14);

        let s = solve(&nf("tan(x) - x = 0"), Limits::MaxAbsBranch(3)).unwrap();
        let hit = s.solutions.iter().find(|s| s.branch == 2).unwrap();
        assert!((hit.x - 4.493_409_457_909_064).abs() < 1e-13);
        assert_eq!(hit.tag, "inverse_2(j_1)(0)");
        assert!(s.truncated);
    }

    #[test]
    fn degree_mode() {
        let eq = parse_equation("cos(pi*x/180) = x").unwrap();
        let n = normalize(&eq).unwrap();
        assert_eq!(n.c0.to_string(), "-180/pi");
        let s = solve(&n, Limits::default()).unwrap();
        assert_eq!(s.solutions.len(), 1);
        let x = s.solutions[0].x;
        assert!((x - 0.999_847_741_531_088_1).abs() < 1e-14);
        assert!(eq.residual(x) < 1e-14);
        assert_eq!(s.solutions[0].tag, "180/pi*inverse_1(y_0)(-180/pi)");
    }

    #[test]
    fn row_round_trip() {
        let row = coefficients(Family::Y, 3);
        let lambda = BigRational::new(BigInt::from(-2), BigInt::from(7));
        let eq = equation_from_row(&row, &lambda, 2, &ConstExpr::ratio(1, 3));
        let n = normalize(&eq).unwrap();
        assert_eq!((n.family, n.order), (Family::Y, 3));
        assert_eq!(n.c0, ConstExpr::ratio(1, 3));
        let back = parse_equation(&eq.to_string()).unwrap();
        assert_eq!(back, eq);
    }
}

//! Exact constant expressions: rationals, `pi`, `e`, `log`, `sqrt`, the four
//! arithmetic operators and integer powers, with a cached binary64 value.
//!
//! Products are kept canonical as a rational times a sorted product of atoms
//! (named constants, logs, roots, sums) raised to integer powers, so
//! `pi * (2/pi)` folds to `2` and printing then reparsing is lossless.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::math;

/// Khinchin's constant. Only used when scoring expressions that mention it.
pub const KHINCHIN: f64 = 2.685_452_001_065_306_4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedConst {
    Pi,
    E,
    Khinchin,
}

impl NamedConst {
    pub fn value(self) -> f64 {
        match self {
            NamedConst::Pi => core::f64::consts::PI,
            NamedConst::E => core::f64::consts::E,
            NamedConst::Khinchin => KHINCHIN,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NamedConst::Pi => "pi",
            NamedConst::E => "e",
            NamedConst::Khinchin => "Khinchin",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Rational(BigRational),
    Const(NamedConst),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    /// Natural logarithm.
    Log(Box<Node>),
    Sqrt(Box<Node>),
    /// Integer power, exponent at least 2.
    Pow(Box<Node>, i64),
}

/// An exact expression tree together with its float value.
#[derive(Clone, Debug)]
pub struct ConstExpr {
    node: Node,
    value: f64,
}

impl PartialEq for ConstExpr {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

impl Eq for ConstExpr {}

impl core::hash::Hash for ConstExpr {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.node.hash(state);
    }
}

fn rational_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn eval(node: &Node) -> f64 {
    match node {
        Node::Rational(r) => rational_f64(r),
        Node::Const(c) => c.value(),
        Node::Neg(a) => -eval(a),
        Node::Add(a, b) => eval(a) + eval(b),
        Node::Sub(a, b) => eval(a) - eval(b),
        Node::Mul(a, b) => eval(a) * eval(b),
        Node::Div(a, b) => eval(a) / eval(b),
        Node::Log(a) => math::log(eval(a)),
        Node::Sqrt(a) => math::sqrt(eval(a)),
        Node::Pow(a, k) => math::powi(eval(a), *k as i32),
    }
}

/// Atoms with nonzero integer exponents, sorted by atom.
type Atoms = Vec<(Node, i64)>;

/// `a * b`, or `a / b` when `sign` is `-1`.
fn merge(mut a: Atoms, b: Atoms, sign: i64) -> Atoms {
    for (node, e) in b {
        match a.binary_search_by(|(n, _)| n.cmp(&node)) {
            Ok(i) => a[i].1 += sign * e,
            Err(i) => a.insert(i, (node, sign * e)),
        }
    }
    a.retain(|(_, e)| *e != 0);
    a
}

fn rational_pow(r: &BigRational, k: i64) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..k.unsigned_abs() {
        out *= r;
    }
    if k < 0 {
        out.recip()
    } else {
        out
    }
}

fn product(atoms: impl Iterator<Item = (Node, i64)>) -> Option<Node> {
    atoms
        .map(|(n, e)| if e == 1 { n } else { Node::Pow(Box::new(n), e) })
        .reduce(|acc, n| Node::Mul(Box::new(acc), Box::new(n)))
}

// Fallible arithmetic; the operator traits cannot report division by zero.
#[allow(clippy::should_implement_trait)]
impl ConstExpr {
    fn from_node(node: Node) -> Result<Self, Error> {
        let value = eval(&node);
        if !value.is_finite() {
            return Err(Error::Domain(alloc::format!(
                "constant {} does not evaluate to a finite number",
                Display(&node)
            )));
        }
        Ok(ConstExpr { node, value })
    }

    fn unchecked(node: Node) -> Self {
        let value = eval(&node);
        ConstExpr { node, value }
    }

    pub fn rational(r: BigRational) -> Self {
        Self::unchecked(Node::Rational(r))
    }

    pub fn integer(i: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(i)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn constant(c: NamedConst) -> Self {
        Self::unchecked(Node::Const(c))
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.node {
            Node::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Whether the top node is a sum or difference (needs parentheses as a factor).
    pub fn is_sum(&self) -> bool {
        matches!(self.node, Node::Add(..) | Node::Sub(..))
    }

    /// Whether the printed form starts with a minus sign.
    pub fn leads_negative(&self) -> bool {
        leading_minus(&self.node)
    }

    pub fn is_zero(&self) -> bool {
        self.as_rational().is_some_and(Zero::is_zero)
    }

    pub fn neg(self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn add(self, rhs: Self) -> Result<Self, Error> {
        if rhs.is_zero() {
            return Ok(self);
        }
        if self.is_zero() {
            return Ok(rhs);
        }
        match (self.node, rhs.node) {
            (Node::Rational(a), Node::Rational(b)) => Ok(Self::rational(a + b)),
            (a, b) => Self::from_node(Node::Add(Box::new(a), Box::new(b))),
        }
    }

    pub fn sub(self, rhs: Self) -> Result<Self, Error> {
        if rhs.is_zero() {
            return Ok(self);
        }
        if self.is_zero() {
            return Ok(rhs.neg());
        }
        match (self.node, rhs.node) {
            (Node::Rational(a), Node::Rational(b)) => Ok(Self::rational(a - b)),
            (a, b) => Self::from_node(Node::Sub(Box::new(a), Box::new(b))),
        }
    }

    pub fn mul(self, rhs: Self) -> Result<Self, Error> {
        if let Some(r) = rhs.as_rational() {
            return Ok(self.scale(r));
        }
        let (ca, a) = Self::split(self.node);
        let (cb, b) = Self::split(rhs.node);
        Self::from_node(Self::join(ca * cb, merge(a, b, 1)))
    }

    pub fn div(self, rhs: Self) -> Result<Self, Error> {
        if rhs.is_zero() || rhs.value == 0.0 {
            return Err(Error::Domain("division by zero".into()));
        }
        if let Some(r) = rhs.as_rational() {
            return Ok(self.scale(&r.recip()));
        }
        let (ca, a) = Self::split(self.node);
        let (cb, b) = Self::split(rhs.node);
        Self::from_node(Self::join(ca / cb, merge(a, b, -1)))
    }

    /// `self^k`; negative `k` needs a nonzero base.
    pub fn powi(self, k: i64) -> Result<Self, Error> {
        if k < 0 && (self.is_zero() || self.value == 0.0) {
            return Err(Error::Domain("division by zero".into()));
        }
        let (c, atoms) = Self::split(self.node);
        let atoms = atoms
            .into_iter()
            .map(|(n, e)| (n, e * k))
            .filter(|(_, e)| *e != 0)
            .collect();
        Self::from_node(Self::join(rational_pow(&c, k), atoms))
    }

    pub fn log(self) -> Result<Self, Error> {
        if !(self.value > 0.0) || self.as_rational().is_some_and(|r| !r.is_positive()) {
            return Err(Error::Domain(alloc::format!("log({}) of a nonpositive number", self)));
        }
        Self::from_node(Node::Log(Box::new(self.node)))
    }

    pub fn sqrt(self) -> Result<Self, Error> {
        if self.value < 0.0 || self.as_rational().is_some_and(Signed::is_negative) {
            return Err(Error::Domain(alloc::format!("sqrt({}) of a negative number", self)));
        }
        Self::from_node(Node::Sqrt(Box::new(self.node)))
    }

    /// `node = coef * prod(atom^e)`.
    fn split(node: Node) -> (BigRational, Atoms) {
        match node {
            Node::Rational(r) => (r, Vec::new()),
            Node::Neg(a) => {
                let (c, atoms) = Self::split(*a);
                (-c, atoms)
            }
            Node::Mul(a, b) => {
                let (ca, a) = Self::split(*a);
                let (cb, b) = Self::split(*b);
                (ca * cb, merge(a, b, 1))
            }
            Node::Div(a, b) => {
                let (ca, a) = Self::split(*a);
                let (cb, b) = Self::split(*b);
                (ca / cb, merge(a, b, -1))
            }
            Node::Pow(a, k) => {
                let (c, atoms) = Self::split(*a);
                (
                    rational_pow(&c, k),
                    atoms.into_iter().map(|(n, e)| (n, e * k)).collect(),
                )
            }
            node => (BigRational::one(), alloc::vec![(node, 1)]),
        }
    }

    fn join(coef: BigRational, atoms: Atoms) -> Node {
        if coef.is_zero() {
            return Node::Rational(coef);
        }
        let num = product(atoms.iter().filter(|(_, e)| *e > 0).cloned());
        let den = product(atoms.iter().filter(|(_, e)| *e < 0).map(|(n, e)| (n.clone(), -e)));
        let scaled = |coef: BigRational, n: Node| {
            if coef.is_one() {
                n
            } else if (-&coef).is_one() {
                Node::Neg(Box::new(n))
            } else {
                Node::Mul(Box::new(Node::Rational(coef)), Box::new(n))
            }
        };
        match (num, den) {
            (None, None) => Node::Rational(coef),
            (Some(n), None) => scaled(coef, n),
            (None, Some(d)) => Node::Div(Box::new(Node::Rational(coef)), Box::new(d)),
            (Some(n), Some(d)) => Node::Div(Box::new(scaled(coef, n)), Box::new(d)),
        }
    }

    /// `s * self`, folding `s` into the expression's rational coefficient so
    /// that `scale(scale(e, a), b) == scale(e, a * b)`.
    pub fn scale(&self, s: &BigRational) -> Self {
        let (coef, core) = Self::split(self.node.clone());
        Self::unchecked(Self::join(coef * s, core))
    }

    /// Canonical form: the same expression with its rational coefficient folded.
    pub fn canonical(&self) -> Self {
        self.scale(&BigRational::one())
    }

    /// Complexity score: `log10` of each nonzero integer atom, one more for a
    /// negative literal, and one per operator, function or named constant.
    /// Scaling an expression by a rational literal costs only the literal.
    pub fn entropy10(&self) -> f64 {
        node_entropy(&self.node)
    }
}

/// `a + b`, written as `a - (-b)` when `b` carries a leading minus.
pub fn combine(a: ConstExpr, b: ConstExpr) -> Result<ConstExpr, Error> {
    if b.leads_negative() {
        a.sub(b.neg())
    } else {
        a.add(b)
    }
}

/// `log10|p| + log10|q|` of a literal `p/q`, plus one if it is negative.
pub fn literal_entropy(r: &BigRational) -> f64 {
    let digits = |i: &BigInt| {
        if i.is_zero() {
            0.0
        } else {
            big_log10(&i.abs())
        }
    };
    let sign = if r.is_negative() { 1.0 } else { 0.0 };
    digits(r.numer()) + digits(r.denom()) + sign
}

fn big_log10(i: &BigInt) -> f64 {
    match i.to_f64() {
        Some(v) if v.is_finite() => math::log10(v),
        _ => {
            // beyond binary64: count decimal digits of the leading part
            let s = alloc::format!("{}", i);
            let lead: f64 = s[..17].parse().unwrap_or(1.0);
            math::log10(lead) + (s.len() - 17) as f64
        }
    }
}

/// Integer atom cost, with the negative sign counted like a literal's.
pub fn integer_entropy(i: i64) -> f64 {
    literal_entropy(&BigRational::from_integer(BigInt::from(i)))
}

fn node_entropy(node: &Node) -> f64 {
    let is_lit = |n: &Node| matches!(n, Node::Rational(_));
    match node {
        Node::Rational(r) => literal_entropy(r),
        Node::Const(_) => 1.0,
        Node::Neg(a) => 1.0 + node_entropy(a),
        Node::Add(a, b) | Node::Sub(a, b) => 1.0 + node_entropy(a) + node_entropy(b),
        Node::Mul(a, b) => {
            let op = if is_lit(a) || is_lit(b) { 0.0 } else { 1.0 };
            op + node_entropy(a) + node_entropy(b)
        }
        Node::Div(a, b) => {
            let op = if is_lit(b) { 0.0 } else { 1.0 };
            op + node_entropy(a) + node_entropy(b)
        }
        Node::Log(a) | Node::Sqrt(a) => 1.0 + node_entropy(a),
        Node::Pow(a, k) => 1.0 + integer_entropy(*k) + node_entropy(a),
    }
}

const PREC_SUM: u8 = 1;
const PREC_PRODUCT: u8 = 2;
const PREC_UNARY: u8 = 3;
const PREC_ATOM: u8 = 4;

fn prec(node: &Node) -> u8 {
    match node {
        Node::Rational(r) if r.is_integer() && !r.is_negative() => PREC_ATOM,
        Node::Rational(r) if r.is_integer() => PREC_UNARY,
        Node::Rational(_) => PREC_PRODUCT,
        Node::Const(_) | Node::Log(_) | Node::Sqrt(_) | Node::Pow(..) => PREC_ATOM,
        Node::Neg(_) => PREC_UNARY,
        Node::Add(..) | Node::Sub(..) => PREC_SUM,
        Node::Mul(..) | Node::Div(..) => PREC_PRODUCT,
    }
}

struct Display<'a>(&'a Node);

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(f, self.0, 0, false)
    }
}

fn write_node(f: &mut fmt::Formatter<'_>, node: &Node, parent: u8, right: bool) -> fmt::Result {
    let p = prec(node);
    // a signed operand after a binary operator reads better parenthesized
    let signed_right = right && parent > 0 && p <= PREC_UNARY && leading_minus(node);
    let paren = p < parent || (right && p == parent && p != PREC_ATOM) || signed_right;
    if paren {
        f.write_str("(")?;
    }
    match node {
        Node::Rational(r) => {
            if r.is_integer() {
                write!(f, "{}", r.numer())?;
            } else {
                write!(f, "{}/{}", r.numer(), r.denom())?;
            }
        }
        Node::Const(c) => f.write_str(c.name())?,
        Node::Neg(a) => {
            f.write_str("-")?;
            write_node(f, a, PREC_UNARY, false)?;
        }
        Node::Add(a, b) => binary(f, a, " + ", b, PREC_SUM)?,
        Node::Sub(a, b) => binary(f, a, " - ", b, PREC_SUM)?,
        Node::Mul(a, b) => match fraction(a) {
            Some(r) => {
                write_scaled(f, r.numer(), b)?;
                write!(f, "/{}", r.denom())?;
            }
            None => binary(f, a, "*", b, PREC_PRODUCT)?,
        },
        Node::Div(a, b) => match a.as_ref() {
            Node::Mul(c, n) if fraction(c).is_some() => {
                let r = fraction(c).expect("checked");
                write_scaled(f, r.numer(), n)?;
                write!(f, "/({}*", r.denom())?;
                write_node(f, b, PREC_PRODUCT, false)?;
                f.write_str(")")?;
            }
            _ => binary(f, a, "/", b, PREC_PRODUCT)?,
        },
        Node::Log(a) => {
            f.write_str("log(")?;
            write_node(f, a, 0, false)?;
            f.write_str(")")?;
        }
        Node::Sqrt(a) => {
            f.write_str("sqrt(")?;
            write_node(f, a, 0, false)?;
            f.write_str(")")?;
        }
        Node::Pow(a, k) => {
            if prec(a) < PREC_ATOM || matches!(**a, Node::Pow(..)) {
                f.write_str("(")?;
                write_node(f, a, 0, false)?;
                f.write_str(")")?;
            } else {
                write_node(f, a, PREC_ATOM, false)?;
            }
            write!(f, "^{}", k)?;
        }
    }
    if paren {
        f.write_str(")")?;
    }
    Ok(())
}

/// Non-integer rational coefficient, printed as `p*rest/q`.
fn fraction(node: &Node) -> Option<&BigRational> {
    match node {
        Node::Rational(r) if !r.is_integer() => Some(r),
        _ => None,
    }
}

fn write_scaled(f: &mut fmt::Formatter<'_>, p: &BigInt, rest: &Node) -> fmt::Result {
    if p.is_one() {
        write_node(f, rest, PREC_PRODUCT, false)
    } else if (-p).is_one() {
        f.write_str("-")?;
        write_node(f, rest, PREC_UNARY, false)
    } else {
        write!(f, "{}*", p)?;
        write_node(f, rest, PREC_PRODUCT, true)
    }
}

fn leading_minus(node: &Node) -> bool {
    match node {
        Node::Rational(r) => r.is_negative(),
        Node::Neg(_) => true,
        Node::Mul(a, _) | Node::Div(a, _) => leading_minus(a),
        _ => false,
    }
}

fn binary(f: &mut fmt::Formatter<'_>, a: &Node, op: &str, b: &Node, p: u8) -> fmt::Result {
    write_node(f, a, p, false)?;
    f.write_str(op)?;
    write_node(f, b, p, true)
}

impl fmt::Display for ConstExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(f, &self.node, 0, false)
    }
}

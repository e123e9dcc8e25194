//! Recursive-descent parser for equations and constant expressions.
//!
//! ```text
//! equation := sum '=' sum
//! sum      := product (('+' | '-') product)*
//! product  := unary (('*' | '/')? unary)*        juxtaposition multiplies
//! unary    := ('-' | '+') unary | power
//! power    := primary ('^' exponent)?
//! primary  := number | 'x' | 'pi' | 'e' | name '(' sum ')' | '(' sum ')'
//! ```
//!
//! Both sides are expanded into sums of monomials
//! `c * x^k * cos^a sin^b cosh^c sinh^d exp(-x)^f` with exact coefficients.
//! `tan` and `cot` are `sin/cos` and `cos/sin`; negative trigonometric
//! exponents are cleared by multiplying the whole equation through.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::constexpr::{combine, ConstExpr, NamedConst};
use crate::error::Error;
use crate::laurent::Factor;
use crate::solver::{RawEquation, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParseErrorKind {
    Syntax,
    UnsupportedFunction,
    /// Well formed, but outside the Laurent-factor grammar.
    NotTransformable,
    /// `log` of a nonpositive or `sqrt` of a negative constant, or division by zero.
    Domain,
}

/// Parse failure with the byte offset it refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
    pub message: String,
    pub hint: Option<String>,
}

impl ParseError {
    fn new(offset: usize, kind: ParseErrorKind, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            kind,
            message: message.into(),
            hint: None,
        }
    }

    fn syntax(offset: usize, message: impl Into<String>) -> Self {
        Self::new(offset, ParseErrorKind::Syntax, message)
    }

    fn with_hint(mut self, hint: impl Into<String>) -> Self {
        self.hint = Some(hint.into());
        self
    }

    /// The input line followed by a caret under the offending byte.
    pub fn caret(&self, input: &str) -> String {
        let col = input
            .get(..self.offset.min(input.len()))
            .map_or(self.offset, |s| s.chars().count());
        let mut out = String::from(input);
        out.push('\n');
        out.extend(core::iter::repeat_n(' ', col));
        out.push('^');
        out
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::UnsupportedFunction => "unsupported function",
            ParseErrorKind::NotTransformable => "not transformable",
            ParseErrorKind::Domain => "domain error",
        };
        write!(f, "{} at offset {}: {}", what, self.offset, self.message)?;
        if let Some(h) = &self.hint {
            write!(f, " (hint: {})", h)?;
        }
        Ok(())
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Name(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    offset: usize,
}

const FUNCTIONS: [&str; 10] = ["cos", "sin", "cosh", "sinh", "tan", "cot", "exp", "log", "ln", "sqrt"];
const CONSTANTS: [&str; 5] = ["x", "pi", "e", "Khinchin", "khinchin"];
const UNSUPPORTED: [&str; 14] = [
    "sec", "csc", "tanh", "coth", "sech", "csch", "asin", "acos", "atan", "arcsin", "arccos", "arctan", "abs", "pow",
];

fn known(name: &str) -> bool {
    FUNCTIONS.contains(&name) || CONSTANTS.contains(&name) || UNSUPPORTED.contains(&name)
}

fn lex(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < input.len() {
        let c = input[i..].chars().next().expect("in bounds");
        let len = c.len_utf8();
        match c {
            c if c.is_whitespace() => i += len,
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let int = &input[start..i];
                let mut frac = "";
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    let fs = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    frac = &input[fs..i];
                }
                if int.is_empty() && frac.is_empty() {
                    return Err(ParseError::syntax(start, "expected digits"));
                }
                out.push(Token {
                    tok: Tok::Num(decimal(int, frac)),
                    offset: start,
                });
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let name = &input[start..i];
                if !known(name) {
                    return Err(unknown_name(input, start, i, name));
                }
                out.push(Token {
                    tok: Tok::Name(name.to_owned()),
                    offset: start,
                });
            }
            'π' => {
                out.push(Token {
                    tok: Tok::Name("pi".to_owned()),
                    offset: i,
                });
                i += len;
            }
            '+' | '-' | '*' | '/' | '^' | '=' | '(' | ')' => {
                out.push(Token {
                    tok: Tok::Sym(c),
                    offset: i,
                });
                i += len;
            }
            '\u{2212}' | '×' | '·' => {
                let sym = if c == '\u{2212}' { '-' } else { '*' };
                out.push(Token {
                    tok: Tok::Sym(sym),
                    offset: i,
                });
                i += len;
            }
            _ => {
                return Err(ParseError::syntax(i, alloc::format!("unexpected character {:?}", c)));
            }
        }
    }
    out.push(Token {
        tok: Tok::End,
        offset: input.len(),
    });
    Ok(out)
}

fn unknown_name(input: &str, start: usize, end: usize, name: &str) -> ParseError {
    // `co s(x)`: a split function name is reported at the whitespace
    let rest = &input[end..];
    let trimmed = rest.trim_start();
    let is_prefix = FUNCTIONS.iter().any(|f| f.len() > name.len() && f.starts_with(name));
    if is_prefix && trimmed.len() < rest.len() && trimmed.starts_with(|c: char| c.is_ascii_alphabetic()) {
        return ParseError::syntax(end, alloc::format!("whitespace inside function name {:?}", name));
    }
    ParseError::syntax(start, alloc::format!("unknown name {:?}", name))
}

fn decimal(int: &str, frac: &str) -> BigRational {
    let digits: String = alloc::format!("{}{}", int, frac);
    let numer: BigInt = digits.parse().unwrap_or_else(|_| BigInt::zero());
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    BigRational::new(numer, denom)
}

/// Index into the factor exponent array.
const COS: usize = 0;
const SIN: usize = 1;
const COSH: usize = 2;
const SINH: usize = 3;
const EXPNEG: usize = 4;
const FACTORS: [Factor; 5] = [Factor::Cos, Factor::Sin, Factor::Cosh, Factor::Sinh, Factor::ExpNeg];

#[derive(Clone, Debug)]
struct Mono {
    coef: ConstExpr,
    xpow: i64,
    fx: [i64; 5],
}

impl Mono {
    fn constant(c: ConstExpr) -> Self {
        Mono {
            coef: c,
            xpow: 0,
            fx: [0; 5],
        }
    }

    fn key(&self) -> (i64, [i64; 5]) {
        (self.xpow, self.fx)
    }

    fn is_constant(&self) -> bool {
        self.xpow == 0 && self.fx == [0; 5]
    }

    fn mul(&self, other: &Mono) -> Result<Mono, Error> {
        let mut fx = self.fx;
        for (a, b) in fx.iter_mut().zip(other.fx) {
            *a += b;
        }
        Ok(Mono {
            coef: self.coef.clone().mul(other.coef.clone())?,
            xpow: self.xpow + other.xpow,
            fx,
        })
    }
}

#[derive(Clone, Debug)]
struct Sum {
    monos: Vec<Mono>,
}

impl Sum {
    fn zero() -> Self {
        Sum { monos: Vec::new() }
    }

    fn mono(m: Mono) -> Self {
        let mut s = Sum::zero();
        s.push(m).expect("pushing into an empty sum cannot fail");
        s
    }

    fn push(&mut self, m: Mono) -> Result<(), Error> {
        if m.coef.is_zero() {
            return Ok(());
        }
        if let Some(i) = self.monos.iter().position(|x| x.key() == m.key()) {
            let old = self.monos[i].coef.clone();
            let merged = combine(old, m.coef)?;
            if merged.is_zero() {
                self.monos.remove(i);
            } else {
                self.monos[i].coef = merged;
            }
        } else {
            self.monos.push(m);
        }
        Ok(())
    }

    fn add(mut self, other: Sum) -> Result<Sum, Error> {
        for m in other.monos {
            self.push(m)?;
        }
        Ok(self)
    }

    fn neg(self) -> Sum {
        Sum {
            monos: self
                .monos
                .into_iter()
                .map(|m| Mono {
                    coef: m.coef.neg(),
                    ..m
                })
                .collect(),
        }
    }

    fn mul(&self, other: &Sum) -> Result<Sum, Error> {
        let mut out = Sum::zero();
        for a in &self.monos {
            for b in &other.monos {
                out.push(a.mul(b)?)?;
            }
        }
        Ok(out)
    }

    fn single(&self) -> Option<&Mono> {
        match self.monos.as_slice() {
            [m] => Some(m),
            _ => None,
        }
    }

    /// The value as a constant expression, if it has no `x` and no factors.
    fn constant(&self) -> Option<ConstExpr> {
        match self.monos.as_slice() {
            [] => Some(ConstExpr::integer(0)),
            [m] if m.is_constant() => Some(m.coef.clone()),
            _ => None,
        }
    }
}

fn lift(offset: usize) -> impl Fn(Error) -> ParseError {
    move |e| match e {
        Error::Parse(p) => p,
        Error::Domain(msg) => ParseError::new(offset, ParseErrorKind::Domain, msg),
        other => ParseError::new(offset, ParseErrorKind::NotTransformable, alloc::format!("{}", other)),
    }
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    /// Shared argument `a` of every `f(a x)`, with the offset it was first seen.
    scale: Option<(ConstExpr, usize)>,
    allow_x: bool,
    _input: &'a str,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str, allow_x: bool) -> Result<Self, ParseError> {
        Ok(Parser {
            tokens: lex(input)?,
            pos: 0,
            scale: None,
            allow_x,
            _input: input,
        })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(ParseError::syntax(
                self.peek().offset,
                alloc::format!("expected '{}'", c),
            ))
        }
    }

    fn sum(&mut self) -> Result<Sum, ParseError> {
        let mut acc = self.product()?;
        loop {
            let offset = self.peek().offset;
            if self.eat('+') {
                let rhs = self.product()?;
                acc = acc.add(rhs).map_err(lift(offset))?;
            } else if self.eat('-') {
                let rhs = self.product()?;
                acc = acc.add(rhs.neg()).map_err(lift(offset))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_primary(&self) -> bool {
        matches!(self.peek().tok, Tok::Name(_) | Tok::Sym('('))
    }

    fn product(&mut self) -> Result<Sum, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let offset = self.peek().offset;
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = acc.mul(&rhs).map_err(lift(offset))?;
            } else if self.eat('/') {
                let rhs_offset = self.peek().offset;
                let rhs = self.unary()?;
                let inv = self.reciprocal(&rhs, rhs_offset)?;
                acc = acc.mul(&inv).map_err(lift(offset))?;
            } else if self.starts_primary() {
                let rhs = self.power()?;
                acc = acc.mul(&rhs).map_err(lift(offset))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn reciprocal(&self, s: &Sum, offset: usize) -> Result<Sum, ParseError> {
        let m = s.single().ok_or_else(|| {
            if s.monos.is_empty() {
                ParseError::new(offset, ParseErrorKind::Domain, "division by zero")
            } else {
                ParseError::new(offset, ParseErrorKind::NotTransformable, "division by a sum of terms")
            }
        })?;
        let coef = ConstExpr::integer(1).div(m.coef.clone()).map_err(lift(offset))?;
        let mut fx = m.fx;
        for e in fx.iter_mut() {
            *e = -*e;
        }
        Ok(Sum::mono(Mono {
            coef,
            xpow: -m.xpow,
            fx,
        }))
    }

    fn unary(&mut self) -> Result<Sum, ParseError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Sum, ParseError> {
        let start = self.peek().offset;
        let is_e = self.peek().tok == Tok::Name("e".to_owned());
        if is_e && self.tokens.get(self.pos + 1).map(|t| &t.tok) == Some(&Tok::Sym('^')) {
            self.next();
            self.next();
            let arg_offset = self.peek().offset;
            let arg = self.unary()?;
            return self.exponential(arg, arg_offset, start);
        }
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let exp_offset = self.peek().offset;
        let k = self.integer_exponent()?;
        self.raise(base, k, exp_offset)
    }

    fn integer_exponent(&mut self) -> Result<i64, ParseError> {
        let paren = self.eat('(');
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let t = self.next();
        let k = match &t.tok {
            Tok::Num(r) if r.is_integer() => {
                i64::try_from(r.to_integer()).map_err(|_| ParseError::syntax(t.offset, "exponent too large"))?
            }
            _ => return Err(ParseError::syntax(t.offset, "exponent must be an integer")),
        };
        if paren {
            self.expect(')')?;
        }
        Ok(if neg { -k } else { k })
    }

    fn raise(&self, base: Sum, k: i64, offset: usize) -> Result<Sum, ParseError> {
        if k < 0 {
            let inv = self.reciprocal(&base, offset)?;
            return self.raise(inv, -k, offset);
        }
        if base.single().is_none() && k > 16 {
            return Err(ParseError::new(
                offset,
                ParseErrorKind::NotTransformable,
                "power of a sum is limited to 16",
            ));
        }
        let mut acc = Sum::mono(Mono::constant(ConstExpr::integer(1)));
        for _ in 0..k {
            acc = acc.mul(&base).map_err(lift(offset))?;
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Sum, ParseError> {
        let t = self.next();
        match t.tok {
            Tok::Num(r) => Ok(Sum::mono(Mono::constant(ConstExpr::rational(r)))),
            Tok::Sym('(') => {
                let s = self.sum()?;
                self.expect(')')?;
                Ok(s)
            }
            Tok::Name(name) => self.named(&name, t.offset),
            Tok::End => Err(ParseError::syntax(t.offset, "unexpected end of input")),
            Tok::Sym(c) => Err(ParseError::syntax(t.offset, alloc::format!("unexpected '{}'", c))),
        }
    }

    fn named(&mut self, name: &str, offset: usize) -> Result<Sum, ParseError> {
        let constant = |c: NamedConst| Ok(Sum::mono(Mono::constant(ConstExpr::constant(c))));
        match name {
            "x" if self.allow_x => Ok(Sum::mono(Mono {
                coef: ConstExpr::integer(1),
                xpow: 1,
                fx: [0; 5],
            })),
            "x" => Err(ParseError::syntax(offset, "a constant expression cannot mention x")),
            "pi" => constant(NamedConst::Pi),
            "e" => constant(NamedConst::E),
            "Khinchin" | "khinchin" => constant(NamedConst::Khinchin),
            f if UNSUPPORTED.contains(&f) => Err(ParseError::new(
                offset,
                ParseErrorKind::UnsupportedFunction,
                alloc::format!("{} is not supported", f),
            )),
            f => {
                self.expect('(')?;
                let arg_offset = self.peek().offset;
                let arg = self.sum()?;
                self.expect(')')?;
                self.apply(f, arg, arg_offset, offset)
            }
        }
    }

    fn apply(&mut self, f: &str, arg: Sum, arg_offset: usize, offset: usize) -> Result<Sum, ParseError> {
        let fx = |i: usize, e: i64| {
            let mut v = [0; 5];
            v[i] = e;
            v
        };
        match f {
            "log" | "ln" | "sqrt" => {
                let c = arg.constant().ok_or_else(|| {
                    ParseError::new(
                        arg_offset,
                        ParseErrorKind::NotTransformable,
                        alloc::format!("{} of a non-constant", f),
                    )
                })?;
                let v = if f == "sqrt" { c.sqrt() } else { c.log() }.map_err(lift(arg_offset))?;
                Ok(Sum::mono(Mono::constant(v)))
            }
            "exp" => self.exponential(arg, arg_offset, offset),
            _ => {
                let a = self.argument(&arg, arg_offset)?;
                self.share_scale(a, arg_offset)?;
                let powers = match f {
                    "cos" => fx(COS, 1),
                    "sin" => fx(SIN, 1),
                    "cosh" => fx(COSH, 1),
                    "sinh" => fx(SINH, 1),
                    "tan" => {
                        let mut v = fx(SIN, 1);
                        v[COS] = -1;
                        v
                    }
                    "cot" => {
                        let mut v = fx(COS, 1);
                        v[SIN] = -1;
                        v
                    }
                    _ => unreachable!("lexer only admits known names"),
                };
                Ok(Sum::mono(Mono {
                    coef: ConstExpr::integer(1),
                    xpow: 0,
                    fx: powers,
                }))
            }
        }
    }

    /// `exp(arg)` or `e^arg`; only decaying exponentials `exp(-a x)` fit.
    fn exponential(&mut self, arg: Sum, arg_offset: usize, offset: usize) -> Result<Sum, ParseError> {
        if arg.constant().is_some() {
            return Err(ParseError::new(
                offset,
                ParseErrorKind::NotTransformable,
                "exponential of a constant is not supported",
            ));
        }
        let a = self.argument(&arg, arg_offset)?;
        if a.value() > 0.0 {
            return Err(ParseError::new(
                offset,
                ParseErrorKind::NotTransformable,
                "only the decaying exponential exp(-x) is supported",
            )
            .with_hint("substitute x = -s to turn exp(x) into exp(-s)"));
        }
        self.share_scale(a.neg(), arg_offset)?;
        let mut v = [0; 5];
        v[EXPNEG] = 1;
        Ok(Sum::mono(Mono {
            coef: ConstExpr::integer(1),
            xpow: 0,
            fx: v,
        }))
    }

    /// `a` for an argument of the form `a * x`.
    fn argument(&self, arg: &Sum, offset: usize) -> Result<ConstExpr, ParseError> {
        match arg.single() {
            Some(m) if m.xpow == 1 && m.fx == [0; 5] => Ok(m.coef.canonical()),
            _ => Err(ParseError::new(
                offset,
                ParseErrorKind::NotTransformable,
                "function arguments must be a constant multiple of x",
            )),
        }
    }

    fn share_scale(&mut self, a: ConstExpr, offset: usize) -> Result<(), ParseError> {
        match &self.scale {
            None => {
                self.scale = Some((a, offset));
                Ok(())
            }
            Some((s, _)) if *s == a => Ok(()),
            Some((s, _)) => Err(ParseError::new(
                offset,
                ParseErrorKind::NotTransformable,
                alloc::format!("argument {}*x differs from the earlier {}*x", a, s),
            )),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        let t = self.peek();
        match t.tok {
            Tok::End => Ok(()),
            _ => Err(ParseError::syntax(t.offset, "unexpected trailing input")),
        }
    }
}

/// Parse `lhs = rhs` into factor-bearing terms on the left and a constant on the right.
pub fn parse_equation(text: &str) -> Result<RawEquation, ParseError> {
    let mut p = Parser::new(text, true)?;
    let lhs = p.sum()?;
    let eq_offset = p.peek().offset;
    if !p.eat('=') {
        return Err(ParseError::syntax(eq_offset, "expected '='"));
    }
    let rhs = p.sum()?;
    p.finish()?;
    let mut diff = lhs.add(rhs.neg()).map_err(lift(eq_offset))?;

    // clear tan/cot denominators
    let mut cleared = None;
    for (idx, factor) in [(COS, Factor::Cos), (SIN, Factor::Sin)] {
        let min = diff.monos.iter().map(|m| m.fx[idx]).min().unwrap_or(0);
        if min < 0 {
            if cleared.is_some() || min < -1 {
                return Err(ParseError::new(
                    0,
                    ParseErrorKind::NotTransformable,
                    "clearing tan/cot leaves products of trigonometric factors",
                ));
            }
            for m in diff.monos.iter_mut() {
                m.fx[idx] -= min;
            }
            cleared = Some(factor);
        }
    }

    let scale = p
        .scale
        .as_ref()
        .map_or_else(|| ConstExpr::integer(1), |(s, _)| s.clone());
    let mut terms = Vec::new();
    let mut constant = ConstExpr::integer(0);
    for m in diff.monos {
        let nonzero: Vec<usize> = (0..5).filter(|&i| m.fx[i] != 0).collect();
        let factor = match nonzero.as_slice() {
            [] => Factor::One,
            [i] if m.fx[*i] == 1 => FACTORS[*i],
            _ => {
                return Err(ParseError::new(
                    0,
                    ParseErrorKind::NotTransformable,
                    "each term may carry at most one cos, sin, cosh, sinh or exp(-x) factor",
                )
                .with_hint(match cleared {
                    Some(_) => "tan/cot could not be cleared into a single factor per term",
                    None => "expand the equation so each term has one factor",
                }))
            }
        };
        if factor == Factor::One && m.xpow == 0 {
            constant = combine(constant, m.coef).map_err(lift(eq_offset))?;
            continue;
        }
        // the parsed terms are in x; the solver works in s = a x
        let coef = to_scaled(m.coef, &scale, m.xpow).map_err(lift(eq_offset))?;
        terms.push(Term {
            coef,
            power: m.xpow,
            factor,
        });
    }
    if !terms.iter().any(|t| t.factor != Factor::One) {
        return Err(ParseError::new(
            0,
            ParseErrorKind::NotTransformable,
            "no cos, sin, cosh, sinh or exp(-x) factor",
        ));
    }
    terms.sort_by_key(|t| (t.factor, t.power));
    Ok(RawEquation {
        terms,
        rhs: constant.neg(),
        scale,
        cleared,
    })
}

/// `c x^k` rewritten in `s = a x`: `c a^-k s^k`.
fn to_scaled(c: ConstExpr, a: &ConstExpr, k: i64) -> Result<ConstExpr, Error> {
    if a.as_rational().is_some_and(One::is_one) || k == 0 {
        return Ok(c);
    }
    let mut ak = ConstExpr::integer(1);
    for _ in 0..k.unsigned_abs() {
        ak = ak.mul(a.clone())?;
    }
    if k > 0 {
        c.div(ak)
    } else {
        c.mul(ak)
    }
}

/// Parse a constant expression over rationals, `pi`, `e`, `log`, `sqrt`.
pub fn parse_const(text: &str) -> Result<ConstExpr, ParseError> {
    let mut p = Parser::new(text, false)?;
    let s = p.sum()?;
    p.finish()?;
    s.constant()
        .ok_or_else(|| ParseError::syntax(0, "not a constant expression"))
}

impl From<Error> for ParseError {
    fn from(e: Error) -> Self {
        lift(0)(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn terms(text: &str) -> Vec<(String, i64, Factor)> {
        parse_equation(text)
            .unwrap()
            .terms
            .into_iter()
            .map(|t| (t.coef.to_string(), t.power, t.factor))
            .collect()
    }

    fn t(c: &str, k: i64, f: Factor) -> (String, i64, Factor) {
        (c.to_string(), k, f)
    }

    #[test]
    fn worked_forms() {
        assert_eq!(terms("cos(x) = x"), [t("1", 0, Factor::Cos), t("-1", 1, Factor::One)]);
        assert_eq!(
            terms("tan(x) - x = 0"),
            [t("-1", 1, Factor::Cos), t("1", 0, Factor::Sin)]
        );
        assert_eq!(
            terms("sin(x)/x^2 - cos(x)/x = 0"),
            [t("-1", -1, Factor::Cos), t("1", -2, Factor::Sin)]
        );
        let eq = parse_equation("(1/x + 3/x^2 + 3/x^3) exp(-x) = 3/(3 log(2) - pi)").unwrap();
        assert_eq!(eq.terms.len(), 3);
        assert_eq!(eq.rhs.to_string(), "3/(3*log(2) - pi)");
    }

    #[test]
    fn implicit_multiplication() {
        assert_eq!(terms("2x cos(x) = 1"), terms("2*x*cos(x) = 1"));
        assert_eq!(terms("  sin ( x )=x/ 2"), terms("sin(x) = x/2"));
    }

    #[test]
    fn decimals_are_exact() {
        let eq = parse_equation("sin(x) = 0.5x").unwrap();
        let plain = eq.terms.iter().find(|t| t.factor == Factor::One).unwrap();
        assert_eq!(plain.coef.to_string(), "-1/2");
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_equation("co s(x) = 1").unwrap_err();
        assert_eq!((e.kind, e.offset), (ParseErrorKind::Syntax, 2));
        let e = parse_equation("cos(x) + sec(x) = 1").unwrap_err();
        assert_eq!((e.kind, e.offset), (ParseErrorKind::UnsupportedFunction, 9));
        let e = parse_equation("x e^x = 1").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NotTransformable);
        assert!(e.hint.unwrap().contains("x = -s"));
        let e = parse_equation("cos(x) = ").unwrap_err();
        assert_eq!(e.offset, 9);
        let e = parse_equation("cos(x) / (x + 1) = 1").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NotTransformable);
        let e = parse_equation("cos(2x) = sin(x)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NotTransformable);
    }

    #[test]
    fn constants() {
        let c = parse_const("3/(3*log(2) - pi)").unwrap();
        assert!((c.value() + 2.824_456_865_281_069).abs() < 1e-14);
        assert_eq!(parse_const("-1").unwrap(), ConstExpr::integer(-1));
        let e = parse_const("sqrt(-2)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Domain);
        assert!(parse_const("1/(2-2)").is_err());
        assert!(parse_const("x").is_err());
    }

    #[test]
    fn degree_argument() {
        let eq = parse_equation("cos(pi*x/180) = x").unwrap();
        assert_eq!(eq.scale.to_string(), "pi/180");
        assert_eq!(eq.terms[1].coef.to_string(), "-180/pi");
        let eq = parse_equation("e^(-x) x^-1 = 2").unwrap();
        assert_eq!(eq.terms[0].factor, Factor::ExpNeg);
    }

    #[test]
    fn caret() {
        let e = parse_equation("co s(x) = 1").unwrap_err();
        assert_eq!(e.caret("co s(x) = 1"), "co s(x) = 1\n  ^");
    }
}
